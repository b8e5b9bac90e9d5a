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

#include <vector>

#include "secrelay/model.hpp"
#include "secrelay/report.hpp"
#include "secrelay/solver.hpp"

namespace secrelay {

// Straight flight from start to end at constant speed (slot n at fraction
// n / (N + 1)). With both endpoints free the UAV hovers midway between
// Alice and Bob; with one free it hovers over the fixed one. Throws
// std::invalid_argument when the endpoints are farther apart than
// (N + 1) * V.
Trajectory initial_trajectory(const Scenario& scn);

// Expansion point of the trajectory subproblem. gamma_s / gamma_r are the
// received-SNR numerators ref_snr * p (so the rate is log2(1 + gamma / d^2)).
struct TrajIterate {
  Trajectory traj;
  std::vector<double> gamma_s, gamma_r;
  std::vector<double> d_ar2, d_rd2;  // squared 3-D distances, m^2
  std::vector<double> rate_relay, rate_bob;
  std::vector<double> zeta, eta;  // squared horizontal distances to Eve and Bob
  double objective = 0.0;         // secrecy_sum
};

TrajIterate make_iterate(const Scenario& scn, const Trajectory& traj, const PowerAllocation& pw);

// Displacement (delta, xi) in meters; eps, tau in m^2 for slots 2..N
// (0-based entries 0..N-2 correspond to slots 2..N).
struct SubproblemVars {
  std::vector<double> delta, xi;
  std::vector<double> eps, tau;
};

// First-order lower bound log2(1 + gamma / (h2 + z)) >= value of a rate at
// horizontal displacement (dx, dy) from `uav`, with z the squared horizontal
// distance to `terminal`. Concave quadratic: hess is the common diagonal
// entry of its Hessian in (dx, dy).
struct QuadraticBound {
  double value = 0.0;
  double grad_x = 0.0, grad_y = 0.0;
  double hess = 0.0;
};
QuadraticBound rate_lower_bound(double gamma, double h2, Vec2 uav, Vec2 terminal, double dx, double dy);

// Tangent-plane lower bound of the squared horizontal distance.
struct AffineBound {
  double value = 0.0;
  double grad_x = 0.0, grad_y = 0.0;
};
AffineBound distance_lower_bound(Vec2 uav, Vec2 terminal, double dx, double dy);

struct RateBounds {
  std::vector<QuadraticBound> relay, bob;  // per slot
};
RateBounds rate_lower_bounds(const Scenario& scn, const TrajIterate& it, const SubproblemVars& v);

struct DistanceBounds {
  std::vector<AffineBound> zeta, eta;  // per slot
};
DistanceBounds distance_lower_bounds(const Scenario& scn, const TrajIterate& it, const SubproblemVars& v);

// Convex trajectory subproblem at `it` (minimization form). Per slot the
// decision vector holds (delta/H, xi/H) followed, for slots 2..N with
// positive relay power, by (eps/H^2, tau/H^2). Slots without relay power
// carry no slack variables. The start point is delta = xi = 0 with slacks
// 1e-3 below their affine bounds.
struct TrajSubproblem {
  solver::SmoothConvexProgram program;
  std::vector<std::size_t> offset;  // first variable of each slot
  std::vector<bool> has_slack;
  double scale = 1.0;               // H
};
TrajSubproblem build_subproblem(const Scenario& scn, const PowerAllocation& pw, const TrajIterate& it);

std::vector<double> pack_vars(const TrajSubproblem& sp, const SubproblemVars& v);
// Slack entries of slots without slack variables are set to their affine
// upper bounds at the unpacked displacement.
SubproblemVars unpack_vars(const Scenario& scn, const TrajIterate& it, const TrajSubproblem& sp,
                           const std::vector<double>& x);

// The expansion point itself: zero displacement, slacks at zeta / eta.
SubproblemVars zero_step(const TrajIterate& it);

// Scales p_r by the largest alpha in [0, 1] (40 bisection steps) for which
// information causality holds. alpha_out receives alpha when non-null.
PowerAllocation restore_feasibility(const Scenario& scn, const Trajectory& traj, const PowerAllocation& pw,
                                    double* alpha_out = nullptr);

struct ScpOptions {
  double rel_tol = 1e-4;
  int max_iter = 100;
  bool keep_snapshots = true;
  // Solve the subproblem once more at the returned trajectory to measure
  // its KKT residual at zero displacement.
  bool final_certificate = true;
  solver::SolverOptions solver;
};

struct ScpResult {
  Trajectory traj;
  RunReport report;
};

// Throws std::invalid_argument unless traj_0 is mobility feasible and
// causality feasible with pw.
ScpResult scp_optimize(const Scenario& scn, const PowerAllocation& pw, const Trajectory& traj_0,
                       const ScpOptions& opts = {});

}  // namespace secrelay
