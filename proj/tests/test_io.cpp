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

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "secrelay/config.hpp"
#include "secrelay/io.hpp"

using namespace secrelay;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("secrelay_test_" + name)).string();
}

std::map<std::string, std::string> base_entries() {
  return {{"p_bar_s", "10 dBm"}, {"p_bar_r", "10 dBm"}};
}

}  // namespace

TEST_CASE("powers need a unit") {
  CHECK_THROWS_AS(parse_power("10"), ConfigError);
  CHECK_THROWS_AS(parse_power("10 mW"), ConfigError);
  CHECK_THROWS_AS(parse_power("W"), ConfigError);
  CHECK_THROWS_AS(parse_power("-1 W"), ConfigError);
  CHECK(parse_power("0.01 W") == 0.01);
  CHECK(parse_power("0.25W") == 0.25);
  CHECK(parse_power("10 dBm") == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(parse_power("30 dBm") == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(parse_power("\"0 dBm\"") == doctest::Approx(1e-3).epsilon(1e-15));
}

TEST_CASE("reference snr in dB or linear") {
  CHECK(parse_ref_snr("80 dB") == doctest::Approx(1e8).epsilon(1e-15));
  CHECK(parse_ref_snr("1e8") == 1e8);
  CHECK_THROWS_AS(parse_ref_snr("80 dBm"), ConfigError);
  CHECK_THROWS_AS(parse_ref_snr("0"), ConfigError);
}

TEST_CASE("unknown keys and bad values are rejected") {
  auto e = base_entries();
  e["p_bar_x"] = "1 W";
  CHECK_THROWS_AS(parse_config(e), ConfigError);

  e = base_entries();
  e["p_bar_s"] = "10";
  CHECK_THROWS_AS(parse_config(e), ConfigError);

  e = base_entries();
  e["n_slots"] = "1";
  CHECK_THROWS_AS(parse_config(e), ConfigError);

  e = base_entries();
  e["n_slots"] = "12.5";
  CHECK_THROWS_AS(parse_config(e), ConfigError);

  e = base_entries();
  e["bob_x_m"] = "0";
  CHECK_THROWS_AS(parse_config(e), ConfigError);

  e = base_entries();
  e["start_x_m"] = "10";
  CHECK_THROWS_AS(parse_config(e), ConfigError);

  e = base_entries();
  e["multistart"] = "maybe";
  CHECK_THROWS_AS(parse_config(e), ConfigError);

  e = base_entries();
  e["static_bounds_m"] = "0,1,2";
  CHECK_THROWS_AS(parse_config(e), ConfigError);
}

TEST_CASE("defaults follow the reference scenario") {
  const Config c = parse_config({});
  const Scenario s;
  CHECK(c.scenario == s);
  CHECK_FALSE(c.scenario.start.has_value());
  const StaticGrid g = default_static_grid(s);
  CHECK(c.run.grid.x_lo == g.x_lo);
  CHECK(c.run.grid.y_hi == g.y_hi);
}

TEST_CASE("config file with comments and endpoints") {
  const std::string path = temp_path("cfg.ini");
  {
    std::ofstream f(path);
    f << "# comment\n; another\nn_slots = 40\np_bar_s = 0.02 W\np_bar_r = \"7 dBm\"\n"
      << "start_x_m = 200\nstart_y_m = -100\nend_x_m = none\nend_y_m = none\nao_max_iter = 5\n";
  }
  const Config c = load_config(path);
  CHECK(c.scenario.n_slots == 40);
  CHECK(c.scenario.p_bar_s == 0.02);
  REQUIRE(c.scenario.start.has_value());
  CHECK(c.scenario.start->y == -100.0);
  CHECK_FALSE(c.scenario.end.has_value());
  CHECK(c.run.ao.max_iter == 5);
  {
    std::ofstream f(path);
    f << "[section]\nn_slots = 40\n";
  }
  CHECK_THROWS_AS(load_config(path), ConfigError);
  {
    std::ofstream f(path);
    f << "n_slots = 40\nn_slots = 41\n";
  }
  CHECK_THROWS_AS(load_config(path), ConfigError);
  std::filesystem::remove(path);
}

TEST_CASE("resolved config round-trips through report.json") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::map<std::string, std::string> e;
    char buf[64];
    auto put = [&](const char* k, double v, const char* unit = "") {
      std::snprintf(buf, sizeof buf, "%.6f%s", v, unit);
      e[k] = buf;
    };
    put("bob_x_m", 500.0 + 3000.0 * u(rng));
    put("eve_x_m", 3000.0 * u(rng));
    put("eve_y_m", -300.0 + 600.0 * u(rng));
    put("altitude_m", 50.0 + 200.0 * u(rng));
    put("v_max_mps", 10.0 + 90.0 * u(rng));
    put("p_bar_s", -10.0 + 30.0 * u(rng), " dBm");
    put("p_bar_r", 0.05 * u(rng), " W");
    put("ref_snr", 60.0 + 30.0 * u(rng), " dB");
    e["n_slots"] = std::to_string(2 + static_cast<int>(200 * u(rng)));
    if (trial % 2 == 0) {
      put("start_x_m", 100.0 * u(rng));
      put("start_y_m", 100.0 * u(rng));
      put("end_x_m", 100.0 * u(rng));
      put("end_y_m", 100.0 * u(rng));
    }
    if (trial % 3 == 0) e["static_bounds_m"] = "0,2000,-300,300";
    const Config c = parse_config(e);
    const std::string json = report_json("check", c, RunReport{}, evaluate(c.scenario, initial_trajectory(with_free_endpoints(c.scenario)), zero_power(c.scenario.slots())));
    const Config back = config_from_report(json);
    CHECK(back.scenario == c.scenario);
    CHECK(resolve_config(back) == resolve_config(c));
  }
}

TEST_CASE("every key appears in the resolved config") {
  const auto resolved = resolve_config(parse_config({}));
  REQUIRE(resolved.size() == config_keys().size());
  for (std::size_t i = 0; i < resolved.size(); ++i) CHECK(resolved[i].first == config_keys()[i]);
}

TEST_CASE("trajectory csv layout and exact read-back") {
  Scenario s;
  s.n_slots = 7;
  const Trajectory t = initial_trajectory(s);
  PowerAllocation pw = source_only_power(s);
  pw.p_r[3] = 1.0 / 3.0 * 1e-4;
  const std::string csv = trajectory_csv(s, t, pw);
  CHECK(csv.rfind("slot,x_m,y_m,p_s_w,p_r_w,r_relay,r_bob,r_eve\n", 0) == 0);
  CHECK(csv == trajectory_csv(s, t, pw));
  CHECK(csv.find("3.3333333333333335e-05") != std::string::npos);

  const std::string path = temp_path("traj.csv");
  write_trajectory_csv(path, s, t, pw);
  const Plan p = read_trajectory_csv(path);
  CHECK(p.traj.xy == t.xy);
  CHECK(p.pw.p_s == pw.p_s);
  CHECK(p.pw.p_r == pw.p_r);

  {
    std::ofstream f(path);
    f << "slot,x_m,y_m,p_s_w,p_r_w\n1,0,0,abc,0\n";
  }
  CHECK_THROWS(read_trajectory_csv(path));
  {
    std::ofstream f(path);
    f << "slot,x_m,y_m,p_s_w,p_r_w\n2,0,0,0,0\n";
  }
  CHECK_THROWS(read_trajectory_csv(path));
  std::filesystem::remove(path);
}
