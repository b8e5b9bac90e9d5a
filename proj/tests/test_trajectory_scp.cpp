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

#include <cmath>
#include <random>

#include "secrelay/power_dc.hpp"
#include "secrelay/trajectory_scp.hpp"

using namespace secrelay;

namespace {

Scenario paper_fixed_endpoints(int n = 100) {
  Scenario s;
  s.n_slots = n;
  if (n < 100) s.v_max = 3200.0 / (n + 1);
  s.start = Vec2{200.0, -100.0};
  s.end = Vec2{1800.0, -100.0};
  return s;
}

// Small scenario with a feasible straight line and a causality-feasible
// power allocation.
struct Case {
  Scenario scn;
  Trajectory traj;
  PowerAllocation pw;
};

Case random_case(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Case c;
  Scenario& s = c.scn;
  s.n_slots = n;
  s.bob = {1000.0 + 1000.0 * u(rng), -200.0 + 400.0 * u(rng)};
  s.eve = {2000.0 * u(rng), -300.0 + 600.0 * u(rng)};
  s.v_max = 100.0 + 200.0 * u(rng);
  s.start = Vec2{200.0 * u(rng), -100.0 + 200.0 * u(rng)};
  const double reach = 0.8 * (n + 1) * s.v_max;
  const double ang = -0.3 + 0.6 * u(rng);
  s.end = Vec2{s.start->x + reach * u(rng) * std::cos(ang), s.start->y + reach * u(rng) * std::sin(ang)};
  c.traj = initial_trajectory(s);
  c.pw = restore_feasibility(s, c.traj, equal_power(s));
  return c;
}

double true_rate(double gamma, double h2, Vec2 p, Vec2 t) {
  return std::log2(1.0 + gamma / (h2 + squared_distance(p, t)));
}

}  // namespace

TEST_CASE("initial trajectory") {
  SUBCASE("straight line, equal spacing") {
    const Scenario s = paper_fixed_endpoints(7);
    const Trajectory t = initial_trajectory(s);
    REQUIRE(t.size() == 7);
    for (std::size_t i = 0; i < 7; ++i) {
      CHECK(t.xy[i].x == doctest::Approx(200.0 + 1600.0 * (i + 1) / 8.0));
      CHECK(t.xy[i].y == doctest::Approx(-100.0));
    }
    CHECK(check_mobility(s, t).feasible);
  }
  SUBCASE("start equal to end") {
    Scenario s = paper_fixed_endpoints(5);
    s.end = s.start;
    const Trajectory t = initial_trajectory(s);
    for (const Vec2& p : t.xy) CHECK(p == *s.start);
  }
  SUBCASE("unreachable endpoints") {
    Scenario s = paper_fixed_endpoints(10);
    s.v_max = 1600.0 / 11.0 * 0.99;
    CHECK_THROWS_AS(initial_trajectory(s), std::invalid_argument);
  }
  SUBCASE("free endpoints hover midway") {
    const Scenario s = with_free_endpoints(paper_fixed_endpoints(4));
    for (const Vec2& p : initial_trajectory(s).xy) CHECK(p == Vec2{1000.0, 0.0});
  }
}

TEST_CASE("rate lower bounds are sound and tangent") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(-3000.0, 3000.0), disp(-50.0, 50.0), lg(2.0, 8.0);
  const double h2 = 1e4;
  for (int trial = 0; trial < 10000; ++trial) {
    const Vec2 uav{pos(rng), pos(rng)}, term{pos(rng), pos(rng)};
    const double gamma = std::pow(10.0, lg(rng));
    const double dx = disp(rng), dy = disp(rng);
    const QuadraticBound b = rate_lower_bound(gamma, h2, uav, term, dx, dy);
    const double truth = true_rate(gamma, h2, {uav.x + dx, uav.y + dy}, term);
    CHECK(b.value <= truth + 1e-9 * std::max(1.0, truth));
  }
  for (int trial = 0; trial < 200; ++trial) {
    const Vec2 uav{pos(rng), pos(rng)}, term{pos(rng), pos(rng)};
    const double gamma = std::pow(10.0, lg(rng));
    const QuadraticBound b = rate_lower_bound(gamma, h2, uav, term, 0.0, 0.0);
    CHECK(b.value == doctest::Approx(true_rate(gamma, h2, uav, term)).epsilon(1e-14));
    const double h = 1e-3;
    const double fx = (true_rate(gamma, h2, {uav.x + h, uav.y}, term) - true_rate(gamma, h2, {uav.x - h, uav.y}, term)) / (2 * h);
    const double fy = (true_rate(gamma, h2, {uav.x, uav.y + h}, term) - true_rate(gamma, h2, {uav.x, uav.y - h}, term)) / (2 * h);
    // Floor at the central-difference noise level.
    const double scale = std::max({std::abs(fx), std::abs(fy), 1e-6});
    CHECK(std::abs(b.grad_x - fx) <= 1e-5 * scale);
    CHECK(std::abs(b.grad_y - fy) <= 1e-5 * scale);
  }
}

TEST_CASE("distance lower bounds") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> pos(-3000.0, 3000.0), disp(-100.0, 100.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const Vec2 uav{pos(rng), pos(rng)}, term{pos(rng), pos(rng)};
    const double dx = disp(rng), dy = disp(rng);
    const AffineBound b = distance_lower_bound(uav, term, dx, dy);
    CHECK(b.value <= squared_distance({uav.x + dx, uav.y + dy}, term) * (1.0 + 1e-12) + 1e-9);
  }
  const Vec2 e{1000.0, 100.0};
  CHECK(distance_lower_bound({300.0, -20.0}, e, 0.0, 0.0).value == squared_distance({300.0, -20.0}, e));
  CHECK(distance_lower_bound(e, e, 0.0, 0.0).value == 0.0);
}

TEST_CASE("cached iterate quantities match recomputation") {
  std::mt19937_64 rng(13);
  const Case c = random_case(rng, 8);
  const TrajIterate it = make_iterate(c.scn, c.traj, c.pw);
  const ChannelState ch = channel_state(c.scn, c.traj);
  const RateProfile r = rate_profile(c.scn, c.traj, c.pw);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(it.d_ar2[i] == doctest::Approx(ch.d_ar[i] * ch.d_ar[i]).epsilon(1e-12));
    CHECK(it.d_rd2[i] == doctest::Approx(ch.d_rd[i] * ch.d_rd[i]).epsilon(1e-12));
    CHECK(it.rate_relay[i] == doctest::Approx(r.r_relay[i]).epsilon(1e-12));
    CHECK(it.rate_bob[i] == doctest::Approx(r.r_bob[i]).epsilon(1e-12));
  }
  CHECK(it.objective == doctest::Approx(r.secrecy_sum).epsilon(1e-12));
}

TEST_CASE("subproblem at the expansion point") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    const Case c = random_case(rng, 6 + trial);
    const TrajIterate it = make_iterate(c.scn, c.traj, c.pw);
    const TrajSubproblem sp = build_subproblem(c.scn, c.pw, it);
    const std::vector<double> x0 = pack_vars(sp, zero_step(it));
    // Tangency with the true objective.
    CHECK(-sp.program.objective.value(x0) == doctest::Approx(it.objective).epsilon(1e-9));
    // Feasible whenever the model checks pass.
    REQUIRE(check_causality(c.scn, c.traj, c.pw).feasible);
    for (const auto& g : sp.program.ineqs) CHECK(g.value(x0) <= 1e-6);
    std::mt19937_64 r2(trial);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    std::vector<double> x = x0;
    for (double& v : x) v += u(r2);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::max(x[i], 0.05 + (sp.program.lower[i] > -1e300 ? 0.0 : -1e300));
    CHECK(solver::verify_derivatives(sp.program, x, 1e-6).max_error() <= 1e-5);
  }
}

TEST_CASE("silent relay gives a constant zero objective") {
  std::mt19937_64 rng(15);
  Case c = random_case(rng, 6);
  c.pw = source_only_power(c.scn);
  const TrajIterate it = make_iterate(c.scn, c.traj, c.pw);
  const TrajSubproblem sp = build_subproblem(c.scn, c.pw, it);
  CHECK(sp.program.dim == 12);
  std::vector<double> x(sp.program.dim, 0.37);
  CHECK(sp.program.objective.value(x) == 0.0);

  const ScpResult r = scp_optimize(c.scn, c.pw, c.traj);
  CHECK(r.report.iterations == 0);
  for (std::size_t i = 0; i < c.traj.size(); ++i) CHECK(r.traj.xy[i] == c.traj.xy[i]);
  CHECK(r.report.final_objective() == 0.0);
}

TEST_CASE("moving one slot toward Bob raises the subproblem objective") {
  Scenario s = paper_fixed_endpoints(5);
  s.eve = {-5000.0, 5000.0};
  const Trajectory t = initial_trajectory(s);
  const PowerAllocation pw = restore_feasibility(s, t, equal_power(s));
  const TrajIterate it = make_iterate(s, t, pw);
  const TrajSubproblem sp = build_subproblem(s, pw, it);
  SubproblemVars v = zero_step(it);
  const double before = -sp.program.objective.value(pack_vars(sp, v));
  const Vec2 p = t.xy[3];
  const double len = std::sqrt(squared_distance(p, s.bob));
  v.delta[3] = 20.0 * (s.bob.x - p.x) / len;
  v.xi[3] = 20.0 * (s.bob.y - p.y) / len;
  CHECK(-sp.program.objective.value(pack_vars(sp, v)) > before);
}

TEST_CASE("restore feasibility") {
  std::mt19937_64 rng(16);
  const Case c = random_case(rng, 10);
  double alpha = -1.0;
  const PowerAllocation same = restore_feasibility(c.scn, c.traj, c.pw, &alpha);
  CHECK(alpha == 1.0);
  CHECK(same.p_r == c.pw.p_r);

  PowerAllocation loud = c.pw;
  for (double& p : loud.p_r) p = 10.0 * c.scn.p_bar_r;
  loud.p_r[0] = 0.0;
  REQUIRE_FALSE(check_causality(c.scn, c.traj, loud).feasible);
  const PowerAllocation fixed = restore_feasibility(c.scn, c.traj, loud, &alpha);
  CHECK(alpha < 1.0);
  CHECK(check_causality(c.scn, c.traj, fixed).feasible);
  PowerAllocation above = loud;
  for (double& p : above.p_r) p *= std::min(1.0, alpha * 1.01);
  CHECK_FALSE(check_causality(c.scn, c.traj, above).feasible);

  PowerAllocation no_source = c.pw;
  for (double& p : no_source.p_s) p = 0.0;
  for (double& p : no_source.p_r) p = c.scn.p_bar_r;
  no_source.p_r[0] = 0.0;
  const PowerAllocation silenced = restore_feasibility(c.scn, c.traj, no_source, &alpha);
  CHECK(alpha == 0.0);
  for (double p : silenced.p_r) CHECK(p == 0.0);
}

TEST_CASE("scp ascent, mobility and surrogate soundness on random cases") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 6; ++trial) {
    const Case c = random_case(rng, 8 + 2 * trial);
    const ScpResult r = scp_optimize(c.scn, c.pw, c.traj);
    CHECK(r.report.status != solver::Status::numerical_failure);
    const auto& obj = r.report.objectives;
    for (std::size_t k = 1; k < obj.size(); ++k) CHECK(obj[k] >= obj[k - 1] - 1e-6);
    for (const Trajectory& t : r.report.snapshots) {
      CHECK(check_mobility(c.scn, t, 0.0).feasible);
      CHECK(check_causality(c.scn, t, c.pw, 1e-8).feasible);
    }
    for (double k : r.report.kkt_residuals) CHECK(k <= 1e-6);
    CHECK(r.report.final_objective() == doctest::Approx(secrecy_sum(c.scn, r.traj, c.pw)).epsilon(1e-12));
  }
}

TEST_CASE("three-slot scp against a position grid") {
  // Snapping the SCP result to the oracle grid gives a grid point, so its
  // objective (when feasible) can never exceed the grid optimum; the SCP
  // result itself must also beat the straight line.
  Scenario s;
  s.n_slots = 3;
  s.start = Vec2{0.0, 0.0};
  s.end = Vec2{2000.0, 0.0};
  s.v_max = 520.0;
  s.eve = {1000.0, 300.0};
  const Trajectory t0 = initial_trajectory(s);
  const PowerAllocation pw = restore_feasibility(s, t0, equal_power(s));
  const ScpResult r = scp_optimize(s, pw, t0);
  CHECK(r.report.final_objective() >= secrecy_sum(s, t0, pw));

  const double lo_x = -600.0, hi_x = 2600.0, lo_y = -800.0, hi_y = 800.0;
  auto gx = [&](int i) { return lo_x + (hi_x - lo_x) * i / 20.0; };
  auto gy = [&](int j) { return lo_y + (hi_y - lo_y) * j / 20.0; };
  const double v2 = s.step_budget() * s.step_budget();
  double best = -1e300;
  Trajectory t = t0;
  for (int a = 0; a < 441; ++a) {
    t.xy[0] = {gx(a / 21), gy(a % 21)};
    if (squared_distance(t.xy[0], *s.start) > v2) continue;
    for (int b = 0; b < 441; ++b) {
      t.xy[1] = {gx(b / 21), gy(b % 21)};
      if (squared_distance(t.xy[1], t.xy[0]) > v2) continue;
      for (int c = 0; c < 441; ++c) {
        t.xy[2] = {gx(c / 21), gy(c % 21)};
        if (squared_distance(t.xy[2], t.xy[1]) > v2 || squared_distance(t.xy[2], *s.end) > v2) continue;
        if (!check_causality(s, t, pw).feasible) continue;
        best = std::max(best, secrecy_sum(s, t, pw));
      }
    }
  }
  REQUIRE(best > -1e300);
  Trajectory snapped = r.traj;
  for (Vec2& p : snapped.xy) {
    p.x = gx(static_cast<int>(std::lround((p.x - lo_x) / (hi_x - lo_x) * 20.0)));
    p.y = gy(static_cast<int>(std::lround((p.y - lo_y) / (hi_y - lo_y) * 20.0)));
  }
  if (check_mobility(s, snapped).feasible && check_causality(s, snapped, pw).feasible)
    CHECK(secrecy_sum(s, snapped, pw) <= best + 1e-12);
  MESSAGE("scp " << r.report.final_objective() << " grid " << best);
}

TEST_CASE("scp is deterministic") {
  std::mt19937_64 rng(18);
  const Case c = random_case(rng, 10);
  const ScpResult a = scp_optimize(c.scn, c.pw, c.traj), b = scp_optimize(c.scn, c.pw, c.traj);
  REQUIRE(a.traj.size() == b.traj.size());
  for (std::size_t i = 0; i < a.traj.size(); ++i) CHECK(a.traj.xy[i] == b.traj.xy[i]);
}
