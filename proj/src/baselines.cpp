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

#include "secrelay/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace secrelay {
namespace {

double log2_1p(double v) { return std::log1p(v) / std::numbers::ln2; }

struct Candidate {
  Vec2 p;
  double ub;
};

}  // namespace

StaticGrid default_static_grid(const Scenario& scn) {
  StaticGrid g;
  g.x_lo = std::min(scn.alice.x, scn.bob.x);
  g.x_hi = std::max(scn.alice.x, scn.bob.x);
  const double s = std::abs(scn.eve.y) > 0.0 ? std::abs(scn.eve.y) : scn.altitude;
  g.y_lo = -3.0 * s;
  g.y_hi = 3.0 * s;
  return g;
}

double static_upper_bound(const Scenario& scn, Vec2 p) {
  const double n = scn.n_slots;
  const double h2 = scn.altitude * scn.altitude;
  const double a = scn.ref_snr / (h2 + squared_distance(p, scn.bob));
  const double b = scn.ref_snr / (h2 + squared_distance(p, scn.eve));
  const double c = scn.ref_snr / (h2 + squared_distance(p, scn.alice));
  if (a <= b) return 0.0;
  const double pr = n * scn.p_bar_r / (n - 1.0), ps = n * scn.p_bar_s / (n - 1.0);
  // Per-slot secrecy is concave and increasing in p_r (Jensen), and at most
  // (1 - b / a) times the Bob rate, whose sum is capped by the relay total.
  const double jensen = (n - 1.0) * (log2_1p(pr * a) - log2_1p(pr * b));
  const double bob_total = std::min((n - 1.0) * log2_1p(pr * a), (n - 1.0) * log2_1p(ps * c));
  return std::min(jensen, (1.0 - b / a) * bob_total);
}

StaticResult static_relay_best(const Scenario& scn_in, const StaticGrid& grid, const DcOptions& dc) {
  const auto t0 = std::chrono::steady_clock::now();
  const Scenario scn = with_free_endpoints(scn_in);
  scn.validate();
  const std::size_t n = scn.slots();

  StaticResult best;
  best.objective = -1.0;
  auto evaluate = [&](Vec2 p) {
    const Trajectory t = constant_trajectory(n, p);
    const DcResult r = dc_allocate(scn, t, source_only_power(scn), dc);
    ++best.evaluated;
    if (r.report.status == solver::Status::numerical_failure)
      best.report.notes.push_back("power optimization failed at a candidate");
    const double f = r.report.final_objective();
    if (f > best.objective) {
      best.objective = f;
      best.location = p;
      best.traj = t;
      best.pw = r.pw;
      best.report.kkt_residuals = r.report.kkt_residuals;
      best.report.final_kkt = r.report.final_kkt;
    }
  };
  // Visits candidates in decreasing bound order and stops once the bound
  // cannot beat the incumbent.
  auto scan = [&](std::vector<Candidate> cands) {
    std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return a.ub > b.ub; });
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (cands[i].ub <= best.objective) {
        best.pruned += static_cast<int>(cands.size() - i);
        break;
      }
      evaluate(cands[i].p);
    }
  };

  const double hx = grid.nx > 1 ? (grid.x_hi - grid.x_lo) / (grid.nx - 1) : 0.0;
  const double hy = grid.ny > 1 ? (grid.y_hi - grid.y_lo) / (grid.ny - 1) : 0.0;
  std::vector<Candidate> cands;
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.ny; ++j) {
      const Vec2 p{grid.x_lo + i * hx, grid.y_lo + j * hy};
      cands.push_back({p, static_upper_bound(scn, p)});
    }
  // The first candidate is always optimized so a result exists.
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return a.ub > b.ub; });
  evaluate(cands.front().p);
  cands.erase(cands.begin());
  scan(cands);

  double sx = hx, sy = hy;
  for (int pass = 0; pass < grid.refine_passes && (sx > 0.0 || sy > 0.0); ++pass) {
    sx *= 0.5;
    sy *= 0.5;
    const Vec2 c = best.location;
    std::vector<Candidate> local;
    for (int di = -1; di <= 1; ++di)
      for (int dj = -1; dj <= 1; ++dj) {
        if (di == 0 && dj == 0) continue;
        if ((di != 0 && sx == 0.0) || (dj != 0 && sy == 0.0)) continue;
        const Vec2 p{c.x + di * sx, c.y + dj * sy};
        local.push_back({p, static_upper_bound(scn, p)});
      }
    scan(local);
  }
  best.report.objectives = {best.objective};
  best.report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return best;
}

StaticResult static_relay_best(const Scenario& scn) { return static_relay_best(scn, default_static_grid(scn)); }

int ferry_transit_slots(const Scenario& scn) {
  const double dist = std::sqrt(squared_distance(scn.alice, scn.bob));
  return static_cast<int>(std::ceil(dist / scn.step_budget() - 1e-12));
}

FerryResult ferry_plan(const Scenario& scn_in, int n1, double relay_level) {
  const Scenario scn = with_free_endpoints(scn_in);
  scn.validate();
  const int n = scn.n_slots;
  const int m = ferry_transit_slots(scn);
  if (n1 < 1 || n1 > n - m - 1) throw std::invalid_argument("ferry split out of range");
  if (!(relay_level > 0.0 && relay_level <= 1.0)) throw std::invalid_argument("relay level outside (0, 1]");
  const int n2 = n - n1 - m;

  FerryResult out;
  out.hover_alice = n1;
  out.transit = m;
  out.relay_level = relay_level;
  const double dist = std::sqrt(squared_distance(scn.alice, scn.bob));
  const Vec2 dir{(scn.bob.x - scn.alice.x) / dist, (scn.bob.y - scn.alice.y) / dist};
  for (int i = 0; i < n; ++i) {
    if (i < n1) {
      out.traj.xy.push_back(scn.alice);
    } else if (i < n1 + m) {
      const double s = std::min((i - n1 + 1) * scn.step_budget(), dist);
      out.traj.xy.push_back(i == n1 + m - 1 ? scn.bob : Vec2{scn.alice.x + s * dir.x, scn.alice.y + s * dir.y});
    } else {
      out.traj.xy.push_back(scn.bob);
    }
  }

  PowerAllocation pw = zero_power(scn.slots());
  const double ps = n * scn.p_bar_s / n1, pr = relay_level * n * scn.p_bar_r / n2;
  const ChannelState ch = channel_state(scn, out.traj);
  double relay_total = 0.0;
  for (int i = 0; i < n1; ++i) {
    pw.p_s[i] = ps;
    relay_total += log2_1p(ps * ch.gamma_ar[i]);
  }
  // Forwarding slots: cap each power so cumulative Bob and Eve rates stay
  // within what the relay has received.
  double bob_total = 0.0, eve_total = 0.0;
  for (int i = n1 + m; i < n; ++i) {
    const double room_b = std::max(0.0, relay_total - bob_total), room_e = std::max(0.0, relay_total - eve_total);
    const double cap = std::min(std::expm1(room_b * std::numbers::ln2) / ch.gamma_rd[i],
                                std::expm1(room_e * std::numbers::ln2) / ch.gamma_re[i]);
    pw.p_r[i] = std::min(pr, cap);
    bob_total += log2_1p(pw.p_r[i] * ch.gamma_rd[i]);
    eve_total += log2_1p(pw.p_r[i] * ch.gamma_re[i]);
  }
  out.pw = pw;
  out.objective = secrecy_sum(scn, out.traj, pw);
  out.report.objectives = {out.objective};
  return out;
}

FerryResult data_ferry(const Scenario& scn_in, const FerrySweep& sweep) {
  if (sweep.relay_levels < 1) throw std::invalid_argument("relay_levels must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  const Scenario scn = with_free_endpoints(scn_in);
  scn.validate();
  const int m = ferry_transit_slots(scn);
  FerryResult best;
  if (scn.n_slots - m - 1 < 1) {
    best.traj = constant_trajectory(scn.slots(), scn.alice);
    best.pw = source_only_power(scn);
    best.transit = m;
    best.objective = 0.0;
    best.report.objectives = {0.0};
    best.report.notes.push_back("horizon too short for the ferry transit");
  } else {
    bool have = false;
    for (int n1 = 1; n1 <= scn.n_slots - m - 1; ++n1)
      for (int k = sweep.relay_levels; k >= 1; --k) {
        FerryResult r = ferry_plan(scn, n1, static_cast<double>(k) / sweep.relay_levels);
        if (!have || r.objective > best.objective) {
          best = std::move(r);
          have = true;
        }
      }
  }
  best.report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return best;
}

}  // namespace secrelay
