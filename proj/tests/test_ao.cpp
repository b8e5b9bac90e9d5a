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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "secrelay/ao.hpp"

using namespace secrelay;

namespace {

Scenario small_scenario(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Scenario s;
  s.n_slots = 8 + static_cast<int>(5 * u(rng));
  s.bob = {400.0 + 200.0 * u(rng), 0.0};
  s.eve = {s.bob.x * u(rng), -150.0 + 300.0 * u(rng)};
  s.p_bar_s = 0.002 + 0.02 * u(rng);
  s.p_bar_r = 0.002 + 0.02 * u(rng);
  return s;
}

void require_feasible(const Scenario& s, const AoResult& r) {
  const Evaluation e = evaluate(s, r.traj, r.pw);
  CHECK(e.mobility.feasible);
  CHECK(e.causality.feasible);
  CHECK(e.budget.feasible);
}

void require_monotone(const RunReport& rep, double tol) {
  for (std::size_t i = 1; i < rep.objectives.size(); ++i)
    CHECK(rep.objectives[i] >= rep.objectives[i - 1] - tol);
}

}  // namespace

TEST_CASE("silent relay budget gives zero objective") {
  Scenario s;
  s.n_slots = 20;
  s.p_bar_r = 0.0;
  const AoResult r = ao_optimize(s);
  CHECK(r.report.final_objective() == 0.0);
  require_feasible(s, r);
  for (double p : r.pw.p_r) CHECK(p == 0.0);
}

TEST_CASE("outer iterations ascend and end feasible") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 6; ++trial) {
    const Scenario s = small_scenario(rng);
    for (const AoStart& st : default_starts(s)) {
      const AoResult r = ao_optimize(s, st.traj, st.pw);
      require_monotone(r.report, 1e-6);
      require_feasible(s, r);
      CHECK(r.report.final_objective() >= r.report.objectives.front() - 1e-6);
    }
  }
}

TEST_CASE("objective sequence is the true secrecy sum") {
  std::mt19937_64 rng(5);
  const Scenario s = small_scenario(rng);
  AoOptions o;
  o.keep_snapshots = true;
  const std::vector<AoStart> starts = default_starts(s);
  const AoResult r = ao_optimize(s, starts[1].traj, starts[1].pw, o);
  CHECK(r.report.snapshots.size() == r.report.objectives.size());
  CHECK(r.report.final_objective() == doctest::Approx(secrecy_sum(s, r.traj, r.pw)).epsilon(1e-12));
}

TEST_CASE("one more outer iteration at convergence changes little") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 3; ++trial) {
    const Scenario s = small_scenario(rng);
    AoOptions o;
    const AoResult r = ao_multistart(s, default_starts(s), o);
    if (r.report.status != solver::Status::optimal) continue;
    AoOptions one = o;
    one.max_iter = 1;
    const AoResult again = ao_optimize(s, r.traj, r.pw, one);
    const double f0 = r.report.final_objective();
    const double f1 = again.report.final_objective();
    CHECK(std::abs(f1 - f0) <= o.rel_tol * std::max(std::abs(f0), 1e-12) * 10.0);
    CHECK(f1 >= f0 - 1e-6);
  }
}

TEST_CASE("free endpoints never do worse than fixed endpoints") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 3; ++trial) {
    Scenario fixed = small_scenario(rng);
    fixed.start = Vec2{0.1 * fixed.bob.x, -50.0};
    fixed.end = Vec2{0.9 * fixed.bob.x, -50.0};
    const AoResult rf = ao_optimize(fixed);
    require_feasible(fixed, rf);

    const Scenario free = with_free_endpoints(fixed);
    std::vector<AoStart> starts = default_starts(free);
    starts.push_back({"fixed", initial_trajectory(fixed), source_only_power(fixed)});
    const AoResult rr = ao_multistart(free, starts);
    require_feasible(free, rr);
    CHECK(rr.report.final_objective() >= rf.report.final_objective() - 1e-6);
  }
}

TEST_CASE("multistart keeps the best start") {
  std::mt19937_64 rng(41);
  const Scenario s = small_scenario(rng);
  const std::vector<AoStart> starts = default_starts(s);
  const AoResult best = ao_multistart(s, starts);
  for (const AoStart& st : starts) {
    const AoResult r = ao_optimize(s, st.traj, st.pw);
    CHECK(best.report.final_objective() >= r.report.final_objective());
  }
  CHECK_THROWS(ao_multistart(s, {}));
}

TEST_CASE("default starts respect the endpoint constraints") {
  Scenario s;
  s.n_slots = 40;
  s.start = Vec2{200.0, -100.0};
  s.end = Vec2{1800.0, -100.0};
  const std::vector<AoStart> starts = default_starts(s);
  REQUIRE(!starts.empty());
  for (const AoStart& st : starts) CHECK(check_mobility(s, st.traj).feasible);

  s.start.reset();
  s.end.reset();
  const std::vector<AoStart> free = default_starts(s);
  CHECK(free.size() > starts.size());
  for (const AoStart& st : free) CHECK(check_mobility(s, st.traj).feasible);
}

TEST_CASE("infeasible start pairs are rejected") {
  Scenario s;
  s.n_slots = 10;
  Trajectory t = initial_trajectory(s);
  PowerAllocation pw = equal_power(s);
  pw.p_r[1] *= 1e3;
  CHECK_THROWS(ao_optimize(s, t, pw));
  t.xy[4].x += 500.0;
  CHECK_THROWS(ao_optimize(s, t, source_only_power(s)));
}

TEST_CASE("evaluate reports each verdict") {
  Scenario s;
  s.n_slots = 10;
  const Trajectory t = initial_trajectory(s);
  const Evaluation ok = evaluate(s, t, source_only_power(s));
  CHECK(ok.feasible);
  CHECK(ok.report.final_objective() == doctest::Approx(secrecy_sum(s, t, source_only_power(s))));

  PowerAllocation over = source_only_power(s);
  over.p_s[0] += 1.0;
  const Evaluation eb = evaluate(s, t, over);
  CHECK_FALSE(eb.budget.feasible);
  CHECK_FALSE(eb.feasible);

  Trajectory fast = t;
  fast.xy[3].y += 300.0;
  const Evaluation em = evaluate(s, fast, source_only_power(s));
  CHECK_FALSE(em.mobility.feasible);

  PowerAllocation loud = zero_power(s.slots());
  loud.p_r[5] = s.p_bar_r;
  const Evaluation ec = evaluate(s, t, loud);
  CHECK_FALSE(ec.causality.feasible);
}
