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

#include <map>
#include <string>

#include "secrelay/ao.hpp"
#include "secrelay/config.hpp"
#include "secrelay/model.hpp"
#include "secrelay/report.hpp"

namespace secrelay {

// Header: slot,x_m,y_m,p_s_w,p_r_w,r_relay,r_bob,r_eve. One row per slot
// (1-based), every value printed with 17 significant digits.
std::string trajectory_csv(const Scenario& scn, const Trajectory& traj, const PowerAllocation& pw);
void write_trajectory_csv(const std::string& path, const Scenario& scn, const Trajectory& traj,
                          const PowerAllocation& pw);

struct Plan {
  Trajectory traj;
  PowerAllocation pw;
};

// Reads the position and power columns of a trajectory CSV. Throws
// std::runtime_error on malformed input.
Plan read_trajectory_csv(const std::string& path);

// report.json: command, status, per-iteration objectives, KKT residuals,
// feasibility slacks of the returned plan, wall-clock time, notes and the
// resolved configuration. `extra` holds command-specific scalars.
std::string report_json(const std::string& command, const Config& cfg, const RunReport& rep,
                        const Evaluation& final_eval, const std::map<std::string, double>& extra = {});

// The configuration embedded in a report produced by report_json.
Config config_from_report(const std::string& json_text);

void write_text(const std::string& path, const std::string& text);

}  // namespace secrelay
