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

// Test-only brute-force oracles. Nothing here calls into the solver or the
// optimization modules.

#include <array>
#include <functional>

namespace oracle {

struct Box2 {
  double x_lo, x_hi, y_lo, y_hi;
};

struct GridResult {
  double value;
  double x, y;
  bool found;
};

// Minimizes f over {p in box : feasible(p)} with an n x n grid, then
// re-grids `rounds` times on a box shrunk around the incumbent.
GridResult grid_refine_minimize(const std::function<double(double, double)>& f,
                                const std::function<bool(double, double)>& feasible, Box2 box,
                                int n = 400, int rounds = 4);

}  // namespace oracle
