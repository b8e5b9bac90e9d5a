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

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "secrelay/ao.hpp"
#include "secrelay/baselines.hpp"
#include "secrelay/config.hpp"
#include "secrelay/io.hpp"
#include "secrelay/power_dc.hpp"
#include "secrelay/trajectory_scp.hpp"

namespace fs = std::filesystem;
using namespace secrelay;

namespace {

enum Exit { kOk = 0, kConfig = 2, kInfeasible = 3, kNumerical = 4 };

struct Job {
  std::string command;  // ao, trajectory, power, static, ferry, eval, check
  std::string config_path;
  std::string out_dir;
  std::string input;
  bool snapshots = false;
};

std::mutex g_err;

void diag(const Job& job, const std::string& msg) {
  std::lock_guard<std::mutex> lock(g_err);
  std::fprintf(stderr, "%s: %s\n", job.config_path.c_str(), msg.c_str());
}

int status_exit(solver::Status s) {
  switch (s) {
    case solver::Status::optimal:
    case solver::Status::max_iter:
      return kOk;
    case solver::Status::infeasible:
      return kInfeasible;
    default:
      return kNumerical;
  }
}

Plan start_plan(const Config& cfg) {
  if (!cfg.run.input.empty()) return read_trajectory_csv(cfg.run.input);
  return {initial_trajectory(cfg.scenario), source_only_power(cfg.scenario)};
}

void write_snapshots(const fs::path& dir, const Scenario& scn, const std::vector<Trajectory>& traj,
                     const std::vector<PowerAllocation>& pw) {
  for (std::size_t l = 0; l < traj.size(); ++l)
    write_trajectory_csv((dir / ("trajectory_iter_" + std::to_string(l) + ".csv")).string(), scn, traj[l], pw[l]);
}

int finish(const Job& job, const Config& cfg, const fs::path& dir, const Trajectory& traj,
           const PowerAllocation& pw, const RunReport& rep, const std::map<std::string, double>& extra = {}) {
  const Evaluation e = evaluate(cfg.scenario, traj, pw);
  write_trajectory_csv((dir / "trajectory.csv").string(), cfg.scenario, traj, pw);
  write_text((dir / "report.json").string(), report_json(job.command, cfg, rep, e, extra));
  for (const std::string& n : rep.notes) diag(job, n);
  int code = status_exit(rep.status);
  if (code == kOk && !e.feasible) code = kInfeasible;
  if (code != kOk) diag(job, std::string("status ") + solver::to_string(rep.status) + (e.feasible ? "" : ", plan infeasible"));
  return code;
}

int run_job(const Job& job) {
  Config cfg;
  try {
    cfg = load_config(job.config_path);
    if (!job.input.empty()) cfg.run.input = job.input;
    if (!job.out_dir.empty()) cfg.run.output_dir = job.out_dir;
    if (job.snapshots) cfg.run.snapshots = true;
  } catch (const ConfigError& e) {
    diag(job, std::string("config error: ") + e.what());
    return kConfig;
  }
  const Scenario& scn = cfg.scenario;
  const fs::path dir = cfg.run.output_dir;
  try {
    fs::create_directories(dir);
    if (job.command == "check" || job.command == "eval") {
      if (job.command == "eval" && cfg.run.input.empty()) {
        diag(job, "config error: eval needs an input trajectory (--input or input =)");
        return kConfig;
      }
      if (cfg.run.input.empty()) {
        const Plan p = start_plan(cfg);
        RunReport rep;
        rep.objectives.push_back(secrecy_sum(scn, p.traj, p.pw));
        return finish(job, cfg, dir, p.traj, p.pw, rep);
      }
      Plan p;
      try {
        p = start_plan(cfg);
        validate_trajectory(scn, p.traj);
        validate_power(scn, p.pw);
      } catch (const std::exception& e) {
        diag(job, std::string("input error: ") + e.what());
        return kConfig;
      }
      RunReport rep;
      rep.objectives.push_back(secrecy_sum(scn, p.traj, p.pw));
      return finish(job, cfg, dir, p.traj, p.pw, rep);
    }
    if (job.command == "power") {
      const Plan p = start_plan(cfg);
      const DcResult r = dc_allocate(scn, p.traj, source_only_power(scn), cfg.run.dc);
      return finish(job, cfg, dir, p.traj, r.pw, r.report);
    }
    if (job.command == "trajectory") {
      const Trajectory t0 = cfg.run.input.empty() ? initial_trajectory(scn) : read_trajectory_csv(cfg.run.input).traj;
      double alpha = 1.0;
      const PowerAllocation pw = restore_feasibility(scn, t0, equal_power(scn), &alpha);
      ScpOptions o = cfg.run.scp;
      o.keep_snapshots = cfg.run.snapshots;
      const ScpResult r = scp_optimize(scn, pw, t0, o);
      if (cfg.run.snapshots)
        write_snapshots(dir, scn, r.report.snapshots, std::vector<PowerAllocation>(r.report.snapshots.size(), pw));
      return finish(job, cfg, dir, r.traj, pw, r.report, {{"relay_power_scale", alpha}});
    }
    if (job.command == "ao") {
      AoOptions o = cfg.run.ao;
      o.keep_snapshots = cfg.run.snapshots;
      const AoResult r = cfg.run.multistart ? ao_multistart(scn, default_starts(scn), o) : ao_optimize(scn, o);
      if (cfg.run.snapshots) write_snapshots(dir, scn, r.report.snapshots, r.power_snapshots);
      RunReport rep = r.report;
      rep.notes.insert(rep.notes.begin(), "best start: " + r.start);
      return finish(job, cfg, dir, r.traj, r.pw, rep);
    }
    if (job.command == "static") {
      const StaticResult r = static_relay_best(scn, cfg.run.grid, cfg.run.dc);
      return finish(job, cfg, dir, r.traj, r.pw, r.report,
                    {{"location_x_m", r.location.x},
                     {"location_y_m", r.location.y},
                     {"evaluated", r.evaluated},
                     {"pruned", r.pruned}});
    }
    if (job.command == "ferry") {
      const FerryResult r = data_ferry(scn, cfg.run.ferry);
      return finish(job, cfg, dir, r.traj, r.pw, r.report,
                    {{"hover_alice_slots", r.hover_alice}, {"transit_slots", r.transit}, {"relay_level", r.relay_level}});
    }
    diag(job, "unknown command " + job.command);
    return kConfig;
  } catch (const std::invalid_argument& e) {
    diag(job, std::string("infeasible: ") + e.what());
    return kInfeasible;
  } catch (const std::exception& e) {
    diag(job, std::string("error: ") + e.what());
    return kNumerical;
  }
}

// Runs every job; with `parallel`, on a pool of hardware threads.
int run_all(const std::vector<Job>& jobs, bool parallel) {
  std::vector<int> codes(jobs.size(), kOk);
  if (!parallel || jobs.size() < 2) {
    for (std::size_t i = 0; i < jobs.size(); ++i) codes[i] = run_job(jobs[i]);
  } else {
    std::atomic<std::size_t> next{0};
    const unsigned n = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), jobs.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) codes[i] = run_job(jobs[i]);
      });
    for (std::thread& th : pool) th.join();
  }
  return *std::max_element(codes.begin(), codes.end());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secrecy-rate optimization for a UAV mobile relay"};
  app.require_subcommand(1);

  std::vector<std::string> configs;
  std::string out_dir, input, baseline_kind;
  bool battery = false, snapshots = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("configs", configs, "Scenario configuration file(s)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory (overrides output_dir)");
    sub->add_flag("--battery", battery, "Run several configurations concurrently, one output directory each");
  };

  CLI::App* ao = app.add_subcommand("ao", "Alternating power and trajectory optimization");
  common(ao);
  ao->add_flag("--snapshots", snapshots, "Write trajectory_iter_<l>.csv after each outer iteration");
  CLI::App* traj = app.add_subcommand("trajectory", "Trajectory optimization with equal power");
  common(traj);
  traj->add_flag("--snapshots", snapshots, "Write trajectory_iter_<l>.csv after each iteration");
  traj->add_option("--input", input, "Initial trajectory CSV");
  CLI::App* power = app.add_subcommand("power", "Power allocation on a fixed trajectory");
  common(power);
  power->add_option("--input", input, "Trajectory CSV (default: initial trajectory)");
  CLI::App* base = app.add_subcommand("baseline", "Static relaying or data ferrying");
  base->add_option("kind", baseline_kind, "static or ferry")->required()->check(CLI::IsMember({"static", "ferry"}));
  common(base);
  CLI::App* eval = app.add_subcommand("eval", "Evaluate a trajectory CSV");
  common(eval);
  eval->add_option("--input", input, "Trajectory CSV");
  CLI::App* check = app.add_subcommand("check", "Validate a configuration and its start plan");
  common(check);
  check->add_option("--input", input, "Trajectory CSV (default: initial trajectory, source-only power)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  std::string command = app.get_subcommands().front()->get_name();
  if (command == "baseline") command = baseline_kind;

  std::vector<Job> jobs;
  const bool separate = battery || configs.size() > 1;
  std::set<std::string> used;
  for (const std::string& c : configs) {
    Job j;
    j.command = command;
    j.config_path = c;
    j.input = input;
    j.snapshots = snapshots;
    j.out_dir = out_dir;
    if (separate) {
      std::string base_dir = out_dir;
      if (base_dir.empty()) {
        try {
          base_dir = load_config(c).run.output_dir;
        } catch (const ConfigError&) {
          base_dir = "out";
        }
      }
      std::string name = fs::path(c).stem().string();
      if (!used.insert(name).second) name += "_" + std::to_string(jobs.size() + 1);
      j.out_dir = (fs::path(base_dir) / name).string();
    }
    jobs.push_back(j);
  }
  return run_all(jobs, battery);
}
