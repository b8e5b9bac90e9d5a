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

// Decision vector of the power programs: pairs (p_s[q] / p_bar_s,
// p_r[q+1] / p_bar_r) for q = 0..N-2, so the causality prefix ending at
// slot q + 2 depends on the leading 2q + 2 entries only.
std::vector<double> pack_power(const Scenario& scn, const PowerAllocation& pw);
PowerAllocation unpack_power(const Scenario& scn, const std::vector<double>& x);

// Convex surrogate of the power problem at fixed trajectory, linearized at
// pw_k (minimization form, objective is minus the surrogate secrecy sum).
// Throws std::invalid_argument when pw_k is infeasible or a budget is zero.
solver::SmoothConvexProgram build_dc_surrogate(const Scenario& scn, const Trajectory& traj,
                                               const PowerAllocation& pw_k);

// The exact (nonconvex) power problem in the same layout. Carries values and
// gradients only; used to measure KKT residuals.
solver::SmoothConvexProgram power_problem(const Scenario& scn, const Trajectory& traj);

struct DcOptions {
  double rel_tol = 1e-5;
  int max_iter = 100;
  // Iteration also continues while the exact-problem KKT residual is above
  // this value (bounded by max_iter).
  double kkt_tol = 1e-5;
  // Extrapolating line search after each DC step (objective and exact
  // feasibility checks only).
  bool boost = true;
  // Tight inner tolerance: the interior-point objective gap has to stay
  // below the per-iteration DC progress near convergence.
  solver::SolverOptions solver = [] {
    solver::SolverOptions o;
    o.tol = 1e-9;
    return o;
  }();
};

struct DcIterate {
  PowerAllocation pw;
  double objective = 0.0;            // true secrecy sum
  double surrogate_objective = 0.0;  // surrogate value at pw
  int iteration = 0;
};

struct DcResult {
  PowerAllocation pw;
  RunReport report;
  std::vector<DcIterate> iterates;
};

DcResult dc_allocate(const Scenario& scn, const Trajectory& traj, const PowerAllocation& pw0,
                     const DcOptions& opts = {});

}  // namespace secrelay
