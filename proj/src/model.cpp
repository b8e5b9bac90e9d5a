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

#include "secrelay/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "secrelay/simd.hpp"

namespace secrelay {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

bool finite(Vec2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

double log2_1p(double v) { return std::log1p(v) / std::numbers::ln2; }

}  // namespace

void Scenario::validate() const {
  require(n_slots >= 2, "n_slots must be at least 2");
  require(std::isfinite(slot_len) && slot_len > 0.0, "slot_len must be positive");
  require(std::isfinite(altitude) && altitude > 0.0, "altitude must be positive");
  require(std::isfinite(v_max) && v_max > 0.0, "v_max must be positive");
  require(std::isfinite(ref_snr) && ref_snr > 0.0, "ref_snr must be positive");
  require(std::isfinite(p_bar_s) && p_bar_s >= 0.0, "p_bar_s must be nonnegative");
  require(std::isfinite(p_bar_r) && p_bar_r >= 0.0, "p_bar_r must be nonnegative");
  require(finite(alice) && finite(bob) && finite(eve), "terminal coordinates must be finite");
  require(!(bob == alice), "bob must not coincide with alice");
  require(!start || finite(*start), "start must be finite");
  require(!end || finite(*end), "end must be finite");
}

Scenario with_free_endpoints(Scenario scn) {
  scn.start.reset();
  scn.end.reset();
  return scn;
}

Trajectory constant_trajectory(std::size_t n, Vec2 p) {
  return Trajectory{std::vector<Vec2>(n, p)};
}

PowerAllocation zero_power(std::size_t n) {
  return PowerAllocation{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
}

PowerAllocation equal_power(const Scenario& scn) {
  const std::size_t n = scn.slots();
  PowerAllocation pw = zero_power(n);
  const double ps = scn.n_slots * scn.p_bar_s / (scn.n_slots - 1);
  const double pr = scn.n_slots * scn.p_bar_r / (scn.n_slots - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) pw.p_s[i] = ps;
  for (std::size_t i = 1; i < n; ++i) pw.p_r[i] = pr;
  return pw;
}

PowerAllocation source_only_power(const Scenario& scn) {
  PowerAllocation pw = equal_power(scn);
  std::fill(pw.p_r.begin(), pw.p_r.end(), 0.0);
  return pw;
}

void validate_trajectory(const Scenario& scn, const Trajectory& traj) {
  require(traj.size() == scn.slots(),
          "trajectory has " + std::to_string(traj.size()) + " slots, scenario has " +
              std::to_string(scn.n_slots));
  for (const Vec2& p : traj.xy) require(finite(p), "trajectory coordinates must be finite");
}

void validate_power(const Scenario& scn, const PowerAllocation& pw) {
  const std::size_t n = scn.slots();
  require(pw.p_s.size() == n && pw.p_r.size() == n, "power allocation length mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    require(std::isfinite(pw.p_s[i]) && std::isfinite(pw.p_r[i]), "powers must be finite");
    require(pw.p_s[i] >= 0.0 && pw.p_r[i] >= 0.0, "powers must be nonnegative");
  }
  require(pw.p_s[n - 1] == 0.0, "source power in the last slot must be zero");
  require(pw.p_r[0] == 0.0, "relay power in the first slot must be zero");
}

ChannelState channel_state(const Scenario& scn, const Trajectory& traj) {
  validate_trajectory(scn, traj);
  const std::size_t n = traj.size();
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = traj.xy[i].x;
    ys[i] = traj.xy[i].y;
  }
  const double h2 = scn.altitude * scn.altitude;
  ChannelState ch;
  auto fill = [&](Vec2 node, std::vector<double>& d, std::vector<double>& gamma) {
    d.resize(n);
    gamma.resize(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = std::sqrt(h2 + squared_distance(traj.xy[i], node));
    simd::active().inv_sq_dist(xs.data(), ys.data(), n, node.x, node.y, h2, scn.ref_snr,
                               gamma.data());
  };
  fill(scn.alice, ch.d_ar, ch.gamma_ar);
  fill(scn.bob, ch.d_rd, ch.gamma_rd);
  fill(scn.eve, ch.d_re, ch.gamma_re);
  return ch;
}

RateProfile rate_profile(const Scenario& scn, const ChannelState& ch,
                         const PowerAllocation& pw) {
  validate_power(scn, pw);
  require(ch.gamma_ar.size() == scn.slots(), "channel state length mismatch");
  const std::size_t n = scn.slots();
  RateProfile r;
  r.r_relay.resize(n);
  r.r_bob.resize(n);
  r.r_eve.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.r_relay[i] = log2_1p(pw.p_s[i] * ch.gamma_ar[i]);
    r.r_bob[i] = log2_1p(pw.p_r[i] * ch.gamma_rd[i]);
    r.r_eve[i] = log2_1p(pw.p_r[i] * ch.gamma_re[i]);
  }
  double s = 0.0;
  for (std::size_t i = 1; i < n; ++i) s += r.r_bob[i] - r.r_eve[i];
  r.secrecy_sum = s;
  r.secrecy_avg = s / static_cast<double>(n);
  return r;
}

RateProfile rate_profile(const Scenario& scn, const Trajectory& traj,
                         const PowerAllocation& pw) {
  return rate_profile(scn, channel_state(scn, traj), pw);
}

double secrecy_sum(const Scenario& scn, const Trajectory& traj, const PowerAllocation& pw) {
  return rate_profile(scn, traj, pw).secrecy_sum;
}

MobilityVerdict check_mobility(const Scenario& scn, const Trajectory& traj, double tol) {
  MobilityVerdict v;
  if (traj.size() == 0) {
    v.feasible = false;
    return v;
  }
  const double v2 = scn.step_budget() * scn.step_budget();
  double worst = v2;
  if (scn.start) {
    v.start_slack = v2 - squared_distance(traj.xy.front(), *scn.start);
    worst = std::min(worst, *v.start_slack);
  }
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    const double s = v2 - squared_distance(traj.xy[i + 1], traj.xy[i]);
    v.step_slack.push_back(s);
    worst = std::min(worst, s);
  }
  if (scn.end) {
    v.end_slack = v2 - squared_distance(*scn.end, traj.xy.back());
    worst = std::min(worst, *v.end_slack);
  }
  v.worst_slack = worst;
  v.feasible = worst >= -tol;
  return v;
}

CausalityVerdict check_causality(const RateProfile& r, double tol) {
  CausalityVerdict v;
  const std::size_t n = r.r_relay.size();
  double relay = 0.0, bob = 0.0, eve = 0.0;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < n; ++i) {
    relay += r.r_relay[i - 1];
    bob += r.r_bob[i];
    eve += r.r_eve[i];
    v.bob_gap.push_back(bob - relay);
    v.eve_gap.push_back(eve - relay);
    worst = std::max({worst, bob - relay, eve - relay});
  }
  v.worst_gap = n > 1 ? worst : 0.0;
  v.feasible = v.worst_gap <= tol && r.r_bob.at(0) == 0.0 && r.r_eve.at(0) == 0.0;
  return v;
}

CausalityVerdict check_causality(const Scenario& scn, const Trajectory& traj,
                                 const PowerAllocation& pw, double tol) {
  return check_causality(rate_profile(scn, traj, pw), tol);
}

BudgetVerdict check_power_budget(const Scenario& scn, const PowerAllocation& pw, double tol) {
  const std::size_t n = scn.slots();
  require(pw.p_s.size() == n && pw.p_r.size() == n, "power allocation length mismatch");
  BudgetVerdict v;
  double ss = 0.0, sr = 0.0, mn = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ss += pw.p_s[i];
    sr += pw.p_r[i];
    mn = std::min({mn, pw.p_s[i], pw.p_r[i]});
  }
  v.source_slack = scn.n_slots * scn.p_bar_s - ss;
  v.relay_slack = scn.n_slots * scn.p_bar_r - sr;
  v.min_power = mn;
  v.structural_zeros = pw.p_s[n - 1] == 0.0 && pw.p_r[0] == 0.0;
  v.feasible = v.source_slack >= -tol && v.relay_slack >= -tol && mn >= -tol &&
               v.structural_zeros;
  return v;
}

}  // namespace secrelay
