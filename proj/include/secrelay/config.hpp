// Copyright 2026 The secrelay Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "secrelay/ao.hpp"
#include "secrelay/baselines.hpp"
#include "secrelay/model.hpp"

namespace secrelay {

// Raised for malformed, unknown or out-of-range configuration entries.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  AoOptions ao;
  DcOptions dc;    // power stage
  ScpOptions scp;  // trajectory stage
  StaticGrid grid;
  bool grid_from_scenario = true;  // grid bounds follow default_static_grid
  FerrySweep ferry;
  bool multistart = true;  // ao: default_starts instead of the single start
  bool snapshots = false;  // write trajectory_iter_<l>.csv
  std::uint64_t seed = 0;
  std::string output_dir = "out";
  std::string input;  // eval/check: trajectory.csv to load
};

struct Config {
  Scenario scenario;
  RunOptions run;
};

// Powers: "<number> W" or "<number> dBm". Throws ConfigError.
double parse_power(const std::string& text);

// Reference SNR: plain linear number or "<number> dB".
double parse_ref_snr(const std::string& text);

// Keys not listed in config_keys() are rejected; absent keys keep their
// defaults. Scenario invariants are checked after parsing.
Config parse_config(const std::map<std::string, std::string>& entries);

// "key = value" lines, '#' or ';' comments, no sections.
Config load_config(const std::string& path);

// Every key, in canonical order.
const std::vector<std::string>& config_keys();

// Fully resolved configuration as canonical strings; parse_config of the
// result reproduces the same Config bit for bit.
std::vector<std::pair<std::string, std::string>> resolve_config(const Config& cfg);

}  // namespace secrelay
