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
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "secrelay/linalg.hpp"

namespace secrelay::solver {

inline constexpr std::size_t kFullSupport = static_cast<std::size_t>(-1);

// One smooth function of the decision vector. The gradient of a function is
// nonzero only on the index window [support_begin, support_end); the solver
// relies on this to keep Hessian assembly proportional to the window width.
struct SmoothFunction {
  std::function<double(std::span<const double> x)> value;
  // grad has the full problem dimension and is zero on the support window
  // on entry.
  std::function<void(std::span<const double> x, std::span<double> grad)> gradient;
  // hess += weight * Hessian(x), lower triangle. Left empty for affine
  // functions.
  std::function<void(std::span<const double> x, double weight, SymMatrix& hess)> add_hessian;
  std::size_t support_begin = 0;
  std::size_t support_end = kFullSupport;
};

// minimize objective(x)  s.t.  ineqs[k](x) <= 0,  lower <= x <= upper.
struct SmoothConvexProgram {
  std::size_t dim = 0;
  SmoothFunction objective;
  std::vector<SmoothFunction> ineqs;
  // Either empty or of length dim; infinite entries mean "no bound".
  std::vector<double> lower;
  std::vector<double> upper;
  std::optional<std::vector<double>> start;
};

enum class Status { optimal, max_iter, infeasible, numerical_failure };

const char* to_string(Status s);

struct SolverOptions {
  double tol = 1e-6;
  int max_iter = 400;
  double mu_init = 0.1;
  double mu_factor = 0.2;
  double fraction_to_boundary = 0.995;
  // A barrier stage ends once its KKT error is below centering_factor * mu.
  double centering_factor = 10.0;
  // Phase I stops as soon as every constraint is below -phase1_target.
  double phase1_target = 1e-3;
  int max_backtracks = 60;
};

struct SolverResult {
  std::vector<double> x_opt;
  // Multipliers for ineqs, then for each finite lower bound, then for each
  // finite upper bound (in index order).
  std::vector<double> duals;
  Status status = Status::numerical_failure;
  double kkt_residual = 0.0;
  int iterations = 0;         // Newton steps, phase I included
  int phase1_iterations = 0;
  double objective_value = 0.0;
  // Positive when phase I found no strictly interior point and the
  // constraints were relaxed by this amount.
  double constraint_shift = 0.0;
  // Objective at the phase-II start point and after every accepted step.
  std::vector<double> objective_trace;
};

SolverResult solve(const SmoothConvexProgram& prog, const SolverOptions& opts = {});

// max(||grad f + sum_k l_k grad g_k||_inf, max_k g_k(x)_+, max_k |l_k g_k(x)|,
//     max_k (-l_k)_+), with bounds treated as constraints in the duals order
// above.
double kkt_residual(const SmoothConvexProgram& prog, std::span<const double> x,
                    std::span<const double> duals);

// Multipliers for x that give a KKT residual no larger than that of `hint`:
// nonnegative least squares on the stationarity condition over the rows whose
// slack is below a sweep of thresholds, keeping the best candidate.
std::vector<double> refine_duals(const SmoothConvexProgram& prog, std::span<const double> x,
                                 std::span<const double> hint);

struct DerivativeCheck {
  double gradient_error = 0.0;
  double hessian_error = 0.0;
  // -1 is the objective, k >= 0 is ineqs[k].
  int worst_callback = -1;
  double max_error() const { return gradient_error > hessian_error ? gradient_error : hessian_error; }
};

// Compares analytic gradients and Hessians with central differences of
// step h. Errors are relative to max(1, largest finite-difference entry) of
// the callback being checked. Callbacks without a Hessian only have their
// gradient checked.
DerivativeCheck verify_derivatives(const SmoothConvexProgram& prog,
                                   std::span<const double> x, double h);

}  // namespace secrelay::solver
