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

#include "secrelay/ao.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "secrelay/baselines.hpp"

namespace secrelay {

AoResult ao_optimize(const Scenario& scn, const Trajectory& traj0, const PowerAllocation& pw0,
                     const AoOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  scn.validate();
  validate_trajectory(scn, traj0);
  validate_power(scn, pw0);
  if (!check_mobility(scn, traj0).feasible) throw std::invalid_argument("initial trajectory violates mobility");
  if (!check_causality(scn, traj0, pw0).feasible || !check_power_budget(scn, pw0).feasible)
    throw std::invalid_argument("initial power allocation is infeasible");

  AoResult out;
  out.traj = traj0;
  out.pw = pw0;
  RunReport& rep = out.report;
  double f = secrecy_sum(scn, out.traj, out.pw);
  rep.objectives.push_back(f);
  if (opts.keep_snapshots) {
    rep.snapshots.push_back(out.traj);
    out.power_snapshots.push_back(out.pw);
  }

  auto usable = [](solver::Status s) { return s == solver::Status::optimal || s == solver::Status::max_iter; };

  for (int it = 1; it <= opts.max_iter; ++it) {
    const DcResult dc = dc_allocate(scn, out.traj, out.pw, opts.dc);
    rep.kkt_residuals.insert(rep.kkt_residuals.end(), dc.report.kkt_residuals.begin(), dc.report.kkt_residuals.end());
    if (!usable(dc.report.status)) {
      rep.status = dc.report.status;
      rep.notes.push_back("power stage failed at outer iteration " + std::to_string(it));
      break;
    }
    const PowerAllocation pw = dc.pw;

    const ScpResult scp = scp_optimize(scn, pw, out.traj, opts.scp);
    rep.kkt_residuals.insert(rep.kkt_residuals.end(), scp.report.kkt_residuals.begin(),
                             scp.report.kkt_residuals.end());
    rep.slack_tightness.insert(rep.slack_tightness.end(), scp.report.slack_tightness.begin(),
                               scp.report.slack_tightness.end());
    if (!usable(scp.report.status)) {
      // The power update alone is still a consistent pair.
      out.pw = pw;
      const double fp = secrecy_sum(scn, out.traj, out.pw);
      rep.objectives.push_back(fp);
      if (opts.keep_snapshots) {
        rep.snapshots.push_back(out.traj);
        out.power_snapshots.push_back(out.pw);
      }
      rep.iterations = it;
      rep.status = scp.report.status;
      rep.notes.push_back("trajectory stage failed at outer iteration " + std::to_string(it));
      break;
    }
    out.pw = pw;
    out.traj = scp.traj;
    const double fn = secrecy_sum(scn, out.traj, out.pw);
    rep.objectives.push_back(fn);
    rep.final_kkt = std::max(dc.report.final_kkt, scp.report.final_kkt);
    rep.iterations = it;
    if (opts.keep_snapshots) {
      rep.snapshots.push_back(out.traj);
      out.power_snapshots.push_back(out.pw);
    }
    const double rel = std::abs(fn - f) / std::max(std::abs(f), 1e-12);
    f = fn;
    if (rel < opts.rel_tol || (fn == 0.0 && rep.objectives[rep.objectives.size() - 2] == 0.0)) break;
  }
  if (rep.iterations >= opts.max_iter && rep.status == solver::Status::optimal) rep.status = solver::Status::max_iter;
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

AoResult ao_optimize(const Scenario& scn, const AoOptions& opts) {
  AoResult r = ao_optimize(scn, initial_trajectory(scn), source_only_power(scn), opts);
  r.start = "initial";
  return r;
}

namespace {

// Constant-speed pass over the Alice-Bob segment, centred on its midpoint
// and shortened when the horizon cannot cover it.
Trajectory line_trajectory(const Scenario& scn) {
  const std::size_t n = scn.slots();
  const Vec2 a = scn.alice, b = scn.bob;
  const double len = std::sqrt(squared_distance(a, b));
  const double span = std::min(len, static_cast<double>(n - 1) * scn.step_budget());
  const Vec2 mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
  const Vec2 u = len > 0.0 ? Vec2{(b.x - a.x) / len, (b.y - a.y) / len} : Vec2{0.0, 0.0};
  Trajectory t;
  t.xy.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) - 0.5 : 0.0;
    t.xy.push_back({mid.x + f * span * u.x, mid.y + f * span * u.y});
  }
  return t;
}

}  // namespace

std::vector<AoStart> default_starts(const Scenario& scn) {
  std::vector<AoStart> starts;
  starts.push_back({"initial", initial_trajectory(scn), source_only_power(scn)});
  if (!scn.start && !scn.end) starts.push_back({"line", line_trajectory(scn), source_only_power(scn)});
  const FerryResult ferry = data_ferry(scn);
  if (check_mobility(scn, ferry.traj).feasible) starts.push_back({"ferry", ferry.traj, ferry.pw});
  if (!scn.start && !scn.end) {
    const StaticResult hover = static_relay_best(scn);
    starts.push_back({"hover", hover.traj, hover.pw});
  }
  return starts;
}

AoResult ao_multistart(const Scenario& scn, const std::vector<AoStart>& starts, const AoOptions& opts) {
  if (starts.empty()) throw std::invalid_argument("no AO starts");
  AoResult best;
  std::vector<std::string> summary;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    AoResult r = ao_optimize(scn, starts[k].traj, starts[k].pw, opts);
    r.start = starts[k].label;
    summary.push_back("start " + r.start + ": " + std::to_string(r.report.final_objective()));
    if (k == 0 || r.report.final_objective() > best.report.final_objective()) best = std::move(r);
  }
  best.report.notes.insert(best.report.notes.end(), summary.begin(), summary.end());
  return best;
}

Evaluation evaluate(const Scenario& scn, const Trajectory& traj, const PowerAllocation& pw) {
  scn.validate();
  validate_trajectory(scn, traj);
  validate_power(scn, pw);
  Evaluation e;
  e.rates = rate_profile(scn, traj, pw);
  e.mobility = check_mobility(scn, traj);
  e.causality = check_causality(e.rates);
  e.budget = check_power_budget(scn, pw);
  e.feasible = e.mobility.feasible && e.causality.feasible && e.budget.feasible;
  e.report.objectives.push_back(e.rates.secrecy_sum);
  if (!e.mobility.feasible) e.report.notes.push_back("mobility violated");
  if (!e.causality.feasible) e.report.notes.push_back("information causality violated");
  if (!e.budget.feasible) e.report.notes.push_back("power budget violated");
  return e;
}

}  // namespace secrelay
