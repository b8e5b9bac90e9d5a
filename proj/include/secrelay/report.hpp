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

#include <string>
#include <vector>

#include "secrelay/model.hpp"
#include "secrelay/solver.hpp"

namespace secrelay {

// Diagnostics shared by the iterative drivers.
struct RunReport {
  solver::Status status = solver::Status::optimal;
  // True secrecy sum of the start point followed by one entry per accepted
  // iteration.
  std::vector<double> objectives;
  // Final KKT residual of every inner convex solve.
  std::vector<double> kkt_residuals;
  int iterations = 0;
  // KKT residual certifying the returned point (meaning depends on driver).
  double final_kkt = 0.0;
  // Trajectory drivers: max_n min(zeta_lb - tau, eta_lb - eps) per solve.
  std::vector<double> slack_tightness;
  std::vector<Trajectory> snapshots;
  std::vector<std::string> notes;
  double wall_seconds = 0.0;

  double final_objective() const { return objectives.empty() ? 0.0 : objectives.back(); }
};

}  // namespace secrelay
