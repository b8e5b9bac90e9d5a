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
#include "secrelay/power_dc.hpp"
#include "secrelay/report.hpp"
#include "secrelay/trajectory_scp.hpp"

namespace secrelay {

struct AoOptions {
  double rel_tol = 1e-4;
  int max_iter = 30;
  DcOptions dc;
  ScpOptions scp = [] {
    ScpOptions o;
    o.keep_snapshots = false;
    o.final_certificate = false;
    return o;
  }();
  // Record the trajectory after every outer iteration in report.snapshots.
  bool keep_snapshots = false;
};

struct AoResult {
  Trajectory traj;
  PowerAllocation pw;
  RunReport report;
  // Power allocation paired with each entry of report.snapshots.
  std::vector<PowerAllocation> power_snapshots;
  std::string start;  // label of the start that produced the result
};

// Alternates power (difference-of-concave) and trajectory (SCP) updates from
// the given feasible pair. report.objectives holds the true secrecy sum of
// the start and after every outer iteration.
AoResult ao_optimize(const Scenario& scn, const Trajectory& traj0, const PowerAllocation& pw0,
                     const AoOptions& opts = {});

// Starts from initial_trajectory(scn) with source-only power.
AoResult ao_optimize(const Scenario& scn, const AoOptions& opts = {});

struct AoStart {
  std::string label;
  Trajectory traj;
  PowerAllocation pw;
};

// Initial trajectory, (free endpoints only) a straight pass from Alice
// towards Bob, the data ferry plan and (free endpoints only) hovering at the
// static relay location. Ferry plans that violate the mobility constraints
// are skipped.
std::vector<AoStart> default_starts(const Scenario& scn);

// Runs ao_optimize from every start and keeps the best final objective (the
// first one on ties).
AoResult ao_multistart(const Scenario& scn, const std::vector<AoStart>& starts, const AoOptions& opts = {});

struct Evaluation {
  RateProfile rates;
  MobilityVerdict mobility;
  CausalityVerdict causality;
  BudgetVerdict budget;
  bool feasible = false;
  RunReport report;  // objective snapshot
};

Evaluation evaluate(const Scenario& scn, const Trajectory& traj, const PowerAllocation& pw);

}  // namespace secrelay
