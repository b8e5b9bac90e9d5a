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

#include "secrelay/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace secrelay {

namespace {

void append(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); }

nlohmann::json series(const std::vector<double>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (double x : v) a.push_back(finite_or_null(x));
  return a;
}

}  // namespace

std::string trajectory_csv(const Scenario& scn, const Trajectory& traj, const PowerAllocation& pw) {
  const RateProfile r = rate_profile(scn, traj, pw);
  std::string out = "slot,x_m,y_m,p_s_w,p_r_w,r_relay,r_bob,r_eve\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out += std::to_string(i + 1);
    for (double v : {traj.xy[i].x, traj.xy[i].y, pw.p_s[i], pw.p_r[i], r.r_relay[i], r.r_bob[i], r.r_eve[i]}) {
      out += ',';
      append(out, v);
    }
    out += '\n';
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  if (!f) throw std::runtime_error("write to " + path + " failed");
}

void write_trajectory_csv(const std::string& path, const Scenario& scn, const Trajectory& traj,
                          const PowerAllocation& pw) {
  write_text(path, trajectory_csv(scn, traj, pw));
}

Plan read_trajectory_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(f, line) || line.rfind("slot,x_m,y_m,p_s_w,p_r_w", 0) != 0)
    throw std::runtime_error(path + ": missing trajectory header");
  Plan p;
  std::size_t expect = 1;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    double v[5];
    for (int k = 0; k < 5; ++k) {
      if (!std::getline(ss, cell, ',')) throw std::runtime_error(path + ": short row " + std::to_string(expect));
      try {
        std::size_t used = 0;
        v[k] = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw std::runtime_error(path + ": bad number '" + cell + "' in row " + std::to_string(expect));
      }
    }
    if (v[0] != static_cast<double>(expect)) throw std::runtime_error(path + ": slots must be numbered 1..N");
    p.traj.xy.push_back({v[1], v[2]});
    p.pw.p_s.push_back(v[3]);
    p.pw.p_r.push_back(v[4]);
    ++expect;
  }
  return p;
}

std::string report_json(const std::string& command, const Config& cfg, const RunReport& rep,
                        const Evaluation& e, const std::map<std::string, double>& extra) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["status"] = solver::to_string(rep.status);
  j["iterations"] = rep.iterations;
  j["objective"] = series(rep.objectives);
  j["objective_per_slot"] = e.rates.secrecy_avg;
  j["final_objective"] = e.rates.secrecy_sum;
  j["kkt_residuals"] = series(rep.kkt_residuals);
  j["final_kkt"] = finite_or_null(rep.final_kkt);
  j["slack_tightness"] = series(rep.slack_tightness);
  nlohmann::ordered_json feas;
  feas["feasible"] = e.feasible;
  feas["mobility"] = {{"feasible", e.mobility.feasible}, {"worst_slack_m2", e.mobility.worst_slack}};
  feas["causality"] = {{"feasible", e.causality.feasible}, {"worst_gap", e.causality.worst_gap}};
  feas["budget"] = {{"feasible", e.budget.feasible},
                    {"source_slack_w", e.budget.source_slack},
                    {"relay_slack_w", e.budget.relay_slack},
                    {"min_power_w", e.budget.min_power},
                    {"structural_zeros", e.budget.structural_zeros}};
  j["feasibility"] = feas;
  for (const auto& [k, v] : extra) j[k] = finite_or_null(v);
  j["notes"] = rep.notes;
  j["wall_seconds"] = rep.wall_seconds;
  nlohmann::ordered_json c;
  for (const auto& [k, v] : resolve_config(cfg)) c[k] = v;
  j["config"] = c;
  return j.dump(2) + "\n";
}

Config config_from_report(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(ex.what());
  }
  if (!j.contains("config") || !j["config"].is_object()) throw ConfigError("report has no config object");
  std::map<std::string, std::string> entries;
  for (const auto& [k, v] : j["config"].items()) {
    if (!v.is_string()) throw ConfigError("config value of '" + k + "' is not a string");
    entries[k] = v.get<std::string>();
  }
  return parse_config(entries);
}

}  // namespace secrelay
