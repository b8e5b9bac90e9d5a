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

#include "secrelay/power_dc.hpp"
#include "secrelay/model.hpp"
#include "secrelay/report.hpp"

namespace secrelay {

// Candidate locations for the static relay: an nx x ny grid over the box,
// then `refine_passes` 3 x 3 stencils around the incumbent with the step
// halved each pass.
struct StaticGrid {
  double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
  int nx = 41, ny = 21;
  int refine_passes = 2;
};

// Box spanning Alice and Bob in x and +-3 |eve.y| in y (+-3 H when Eve is
// on the x axis).
StaticGrid default_static_grid(const Scenario& scn);

struct StaticResult {
  Vec2 location;
  Trajectory traj;
  PowerAllocation pw;
  double objective = 0.0;
  int evaluated = 0;  // candidates that needed a power optimization
  int pruned = 0;     // candidates skipped by the upper bound
  RunReport report;
};

// Upper bound on the secrecy sum of any power allocation for a relay held at
// `p` (used to skip candidates).
double static_upper_bound(const Scenario& scn, Vec2 p);

// Endpoint constraints of scn are ignored.
StaticResult static_relay_best(const Scenario& scn, const StaticGrid& grid, const DcOptions& dc = {});
StaticResult static_relay_best(const Scenario& scn);

struct FerryResult {
  Trajectory traj;
  PowerAllocation pw;
  double objective = 0.0;
  int hover_alice = 0;  // n1
  int transit = 0;      // silent flight slots
  double relay_level = 1.0;
  RunReport report;
};

// Load-carry-deliver plan for a given split: n1 slots over Alice, the
// transit, then the remaining slots over Bob. Equal power inside each
// active phase, the source at its full budget and the relay at
// relay_level times its budget; relay power capped slot by slot so both
// causality constraints hold. Requires 1 <= n1 <= N - transit - 1.
FerryResult ferry_plan(const Scenario& scn, int n1, double relay_level = 1.0);

struct FerrySweep {
  int relay_levels = 10;  // relay_level in {1/k, ..., k/k}
};

// Number of silent slots needed to fly from Alice to Bob.
int ferry_transit_slots(const Scenario& scn);

// Best ferry plan over every admissible n1 and relay level. Endpoint
// constraints of scn are ignored. Returns objective 0 with a note when the
// transit does not fit.
FerryResult data_ferry(const Scenario& scn, const FerrySweep& sweep = {});

}  // namespace secrelay
