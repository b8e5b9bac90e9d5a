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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace secrelay {

// Default absolute tolerance for rate-difference and squared-distance
// feasibility checks.
inline constexpr double kFeasibilityTol = 1e-6;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double squared_distance(Vec2 a, Vec2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Problem instance: ground terminals, UAV altitude, slotting, speed limit,
// average power budgets and the reference SNR (channel power gain at 1 m
// over noise power, linear).
struct Scenario {
  Vec2 alice{0.0, 0.0};
  Vec2 bob{2000.0, 0.0};
  Vec2 eve{1000.0, 100.0};
  double altitude = 100.0;      // m
  int n_slots = 100;
  double slot_len = 1.0;        // s
  std::optional<Vec2> start;    // absent: free initial location
  std::optional<Vec2> end;      // absent: free final location
  double v_max = 50.0;          // m/s
  double ref_snr = 1e8;
  double p_bar_s = 0.01;        // W
  double p_bar_r = 0.01;        // W

  // Maximum travel per slot.
  double step_budget() const { return v_max * slot_len; }
  double horizon() const { return n_slots * slot_len; }
  std::size_t slots() const { return static_cast<std::size_t>(n_slots); }

  // Throws std::invalid_argument on any violated invariant.
  void validate() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Same instance with both endpoint constraints dropped.
Scenario with_free_endpoints(Scenario scn);

struct Trajectory {
  std::vector<Vec2> xy;
  std::size_t size() const { return xy.size(); }
};

Trajectory constant_trajectory(std::size_t n, Vec2 p);

// Per-slot transmit powers in watts. p_s[N-1] and p_r[0] are structurally
// zero (0-based indices).
struct PowerAllocation {
  std::vector<double> p_s;
  std::vector<double> p_r;
};

PowerAllocation zero_power(std::size_t n);

// p_s spread evenly over slots 1..N-1 and p_r over 2..N, each summing to
// the full budget N * p_bar.
PowerAllocation equal_power(const Scenario& scn);

// Equal source power, silent relay. Always feasible for information
// causality.
PowerAllocation source_only_power(const Scenario& scn);

struct ChannelState {
  std::vector<double> d_ar, d_rd, d_re;
  std::vector<double> gamma_ar, gamma_rd, gamma_re;
};

struct RateProfile {
  std::vector<double> r_relay, r_bob, r_eve;  // bits/s/Hz
  double secrecy_sum = 0.0;
  double secrecy_avg = 0.0;
};

struct MobilityVerdict {
  bool feasible = true;
  std::optional<double> start_slack;  // V^2 - |x[1] - x_0|^2
  std::vector<double> step_slack;     // V^2 - |x[n+1] - x[n]|^2, n = 1..N-1
  std::optional<double> end_slack;    // V^2 - |x_F - x[N]|^2
  double worst_slack = 0.0;
};

// Entry k describes the prefix ending at slot n = k + 2 (1-based).
struct CausalityVerdict {
  bool feasible = true;
  std::vector<double> bob_gap;  // sum_{i=2}^n r_bob[i] - sum_{i=1}^{n-1} r_relay[i]
  std::vector<double> eve_gap;
  double worst_gap = 0.0;
};

struct BudgetVerdict {
  bool feasible = true;
  double source_slack = 0.0;  // N * p_bar_s - sum p_s
  double relay_slack = 0.0;
  double min_power = 0.0;
  bool structural_zeros = true;
};

void validate_trajectory(const Scenario& scn, const Trajectory& traj);
void validate_power(const Scenario& scn, const PowerAllocation& pw);

ChannelState channel_state(const Scenario& scn, const Trajectory& traj);

RateProfile rate_profile(const Scenario& scn, const Trajectory& traj,
                         const PowerAllocation& pw);
RateProfile rate_profile(const Scenario& scn, const ChannelState& ch,
                         const PowerAllocation& pw);

double secrecy_sum(const Scenario& scn, const Trajectory& traj,
                   const PowerAllocation& pw);

// Works for any trajectory length >= 1; endpoint terms are skipped when the
// scenario leaves them free.
MobilityVerdict check_mobility(const Scenario& scn, const Trajectory& traj,
                               double tol = kFeasibilityTol);

CausalityVerdict check_causality(const Scenario& scn, const Trajectory& traj,
                                 const PowerAllocation& pw,
                                 double tol = kFeasibilityTol);
CausalityVerdict check_causality(const RateProfile& rates,
                                 double tol = kFeasibilityTol);

BudgetVerdict check_power_budget(const Scenario& scn, const PowerAllocation& pw,
                                 double tol = kFeasibilityTol);

}  // namespace secrelay
