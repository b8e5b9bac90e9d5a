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
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "secrelay/solver.hpp"

using namespace secrelay;
using namespace secrelay::solver;

namespace {

// minimize x^2  s.t.  1 - x <= 0
SmoothConvexProgram square_above_one() {
  SmoothConvexProgram p;
  p.dim = 1;
  p.objective.value = [](std::span<const double> x) { return x[0] * x[0]; };
  p.objective.gradient = [](std::span<const double> x, std::span<double> g) { g[0] = 2.0 * x[0]; };
  p.objective.add_hessian = [](std::span<const double>, double w, SymMatrix& h) { h(0, 0) += 2.0 * w; };
  SmoothFunction c;
  c.value = [](std::span<const double> x) { return 1.0 - x[0]; };
  c.gradient = [](std::span<const double>, std::span<double> g) { g[0] = -1.0; };
  p.ineqs.push_back(c);
  p.start = std::vector<double>{3.0};
  return p;
}

double log2_rational(double gamma, double a, double t) { return std::log2(1.0 + gamma / (a + t)); }

// The 1-slot, 1-D motion version of the trajectory subproblem: variables
// (u, tau), minimize c (u^2 + 2 x0 u) + log2(1 + gamma/(1 + tau)) subject to
// tau <= zeta0 + 2 (x0 - e) u, tau >= 0, u^2 <= v^2.
struct TwoVarInstance {
  double c, x0, gamma, zeta0, e, v;
};

SmoothConvexProgram two_var_program(const TwoVarInstance& in) {
  SmoothConvexProgram p;
  p.dim = 2;
  p.objective.value = [in](std::span<const double> x) {
    return in.c * (x[0] * x[0] + 2.0 * in.x0 * x[0]) + log2_rational(in.gamma, 1.0, x[1]);
  };
  p.objective.gradient = [in](std::span<const double> x, std::span<double> g) {
    const double a = 1.0 + x[1];
    g[0] = in.c * (2.0 * x[0] + 2.0 * in.x0);
    g[1] = -in.gamma / (a * (a + in.gamma) * std::numbers::ln2);
  };
  p.objective.add_hessian = [in](std::span<const double> x, double w, SymMatrix& h) {
    const double a = 1.0 + x[1];
    h(0, 0) += w * 2.0 * in.c;
    h(1, 1) += w * in.gamma * (2.0 * a + in.gamma) / (a * a * (a + in.gamma) * (a + in.gamma) * std::numbers::ln2);
  };
  SmoothFunction coupling;
  coupling.value = [in](std::span<const double> x) { return x[1] - in.zeta0 - 2.0 * (in.x0 - in.e) * x[0]; };
  coupling.gradient = [in](std::span<const double>, std::span<double> g) {
    g[0] = -2.0 * (in.x0 - in.e);
    g[1] = 1.0;
  };
  SmoothFunction ball;
  ball.value = [in](std::span<const double> x) { return x[0] * x[0] - in.v * in.v; };
  ball.gradient = [](std::span<const double> x, std::span<double> g) { g[0] = 2.0 * x[0]; };
  ball.add_hessian = [](std::span<const double>, double w, SymMatrix& h) { h(0, 0) += 2.0 * w; };
  ball.support_end = 1;
  p.ineqs = {coupling, ball};
  p.lower = {-std::numeric_limits<double>::infinity(), 0.0};
  p.start = std::vector<double>{0.0, in.zeta0 - 1e-3};
  return p;
}

TwoVarInstance random_instance(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  TwoVarInstance in;
  in.c = 0.05 + 0.5 * u01(rng);
  in.x0 = -3.0 + 6.0 * u01(rng);
  in.gamma = 1.0 + 200.0 * u01(rng);
  in.e = -3.0 + 6.0 * u01(rng);
  in.zeta0 = (in.x0 - in.e) * (in.x0 - in.e) + 0.5 * u01(rng);
  in.v = 0.2 + 0.5 * u01(rng);
  return in;
}

}  // namespace

TEST_CASE("minimize x^2 subject to x >= 1") {
  const auto prog = square_above_one();
  const SolverResult r = solve(prog);
  REQUIRE(r.status == Status::optimal);
  CHECK(r.x_opt[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.duals[0] == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(r.kkt_residual <= 1e-6);

  SUBCASE("same problem through a bound") {
    SmoothConvexProgram b = prog;
    b.ineqs.clear();
    b.lower = {1.0};
    const SolverResult rb = solve(b);
    REQUIRE(rb.status == Status::optimal);
    CHECK(rb.x_opt[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rb.duals.size() == 1);
    CHECK(rb.duals[0] == doctest::Approx(2.0).epsilon(1e-5));
  }
  SUBCASE("infeasible start goes through phase I") {
    SmoothConvexProgram q = prog;
    q.start = std::vector<double>{-5.0};
    const SolverResult rq = solve(q);
    REQUIRE(rq.status == Status::optimal);
    CHECK(rq.phase1_iterations > 0);
    CHECK(rq.x_opt[0] == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("infeasible program is reported") {
  SmoothConvexProgram p = square_above_one();
  SmoothFunction c;
  c.value = [](std::span<const double> x) { return x[0] - 0.5; };
  c.gradient = [](std::span<const double>, std::span<double> g) { g[0] = 1.0; };
  p.ineqs.push_back(c);
  CHECK(solve(p).status == Status::infeasible);
}

TEST_CASE("log-rational term is minimized at the upper end of its interval") {
  const double gamma = 1e6, h2 = 1e4, c = 2.5e4;
  // Scaled by h2 so distances are in units of H.
  SmoothConvexProgram p;
  p.dim = 1;
  p.objective.value = [&](std::span<const double> x) { return log2_rational(gamma / h2, 1.0, x[0]); };
  p.objective.gradient = [&](std::span<const double> x, std::span<double> g) {
    const double a = 1.0 + x[0], gm = gamma / h2;
    g[0] = -gm / (a * (a + gm) * std::numbers::ln2);
  };
  p.objective.add_hessian = [&](std::span<const double> x, double w, SymMatrix& h) {
    const double a = 1.0 + x[0], gm = gamma / h2;
    h(0, 0) += w * gm * (2.0 * a + gm) / (a * a * (a + gm) * (a + gm) * std::numbers::ln2);
  };
  p.lower = {0.0};
  p.upper = {c / h2};
  p.start = std::vector<double>{1.0};
  const SolverResult r = solve(p);
  REQUIRE(r.status == Status::optimal);

  // 1e5-point grid oracle in meters^2.
  double best = 1e300, arg = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double t = c * i / 99999.0;
    const double v = log2_rational(gamma, h2, t);
    if (v < best) {
      best = v;
      arg = t;
    }
  }
  CHECK(arg == doctest::Approx(c));
  CHECK(r.x_opt[0] * h2 == doctest::Approx(c).epsilon(1e-6));
  CHECK(r.objective_value == doctest::Approx(best).epsilon(1e-8));
}

TEST_CASE("kkt residual examples") {
  const auto prog = square_above_one();
  const std::vector<double> x{1.0}, l{2.0};
  CHECK(kkt_residual(prog, x, l) <= 1e-10);

  const std::vector<double> xp{1.0 + 1e-3};
  CHECK(kkt_residual(prog, xp, l) > 1e-5);

  const std::vector<double> xi{2.0}, zero{0.0};
  CHECK(kkt_residual(prog, xi, zero) == doctest::Approx(4.0));

  const std::vector<double> neg{-1.0};
  CHECK(kkt_residual(prog, x, neg) >= 1.0);
}

TEST_CASE("derivative checks on the two-variable family") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto prog = two_var_program(random_instance(rng));
    const std::vector<double> x{u(rng), 0.5 + u(rng)};
    const double h = 1e-5 * (1.0 + std::hypot(x[0], x[1]));
    const DerivativeCheck d = verify_derivatives(prog, x, h);
    CHECK(d.max_error() <= 1e-5);
  }
}

TEST_CASE("derivative check catches a wrong gradient") {
  SmoothConvexProgram p = square_above_one();
  p.objective.gradient = [](std::span<const double> x, std::span<double> g) { g[0] = 3.0 * x[0]; };
  const std::vector<double> x{1.3};
  CHECK(verify_derivatives(p, x, 1e-5).gradient_error > 0.1);
}

TEST_CASE("random two-variable instances match a refined grid oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const TwoVarInstance in = random_instance(rng);
    const auto prog = two_var_program(in);
    const SolverResult r = solve(prog);
    REQUIRE(r.status == Status::optimal);
    CHECK(r.kkt_residual <= 1e-6);

    const double tau_hi = in.zeta0 + 2.0 * std::abs(in.x0 - in.e) * in.v + 1.0;
    const auto grid = oracle::grid_refine_minimize(
        [&](double u, double t) { return prog.objective.value(std::vector<double>{u, t}); },
        [&](double u, double t) {
          return t >= 0.0 && u * u <= in.v * in.v && t <= in.zeta0 + 2.0 * (in.x0 - in.e) * u;
        },
        {-in.v, in.v, 0.0, tau_hi});
    REQUIRE(grid.found);
    CHECK(r.objective_value <= grid.value + 1e-6);
    CHECK(std::abs(r.objective_value - grid.value) <= 1e-3);
  }
}

TEST_CASE("accepted steps never increase the objective") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const SolverResult r = solve(two_var_program(random_instance(rng)));
    REQUIRE(r.status == Status::optimal);
    REQUIRE(!r.objective_trace.empty());
    for (std::size_t i = 1; i < r.objective_trace.size(); ++i)
      CHECK(r.objective_trace[i] <= r.objective_trace[i - 1] + 1e-9);
    CHECK(r.objective_value <= r.objective_trace.back() + 1e-9);
  }
}

TEST_CASE("solves are deterministic") {
  std::mt19937_64 rng(3);
  const auto prog = two_var_program(random_instance(rng));
  const SolverResult a = solve(prog), b = solve(prog);
  CHECK(a.iterations == b.iterations);
  CHECK(a.x_opt == b.x_opt);
  CHECK(a.duals == b.duals);
}

TEST_CASE("unconstrained quadratic converges in one Newton step") {
  SmoothConvexProgram p;
  p.dim = 3;
  p.objective.value = [](std::span<const double> x) {
    return (x[0] - 1) * (x[0] - 1) + 2 * (x[1] + 2) * (x[1] + 2) + 0.5 * x[2] * x[2];
  };
  p.objective.gradient = [](std::span<const double> x, std::span<double> g) {
    g[0] = 2 * (x[0] - 1);
    g[1] = 4 * (x[1] + 2);
    g[2] = x[2];
  };
  p.objective.add_hessian = [](std::span<const double>, double w, SymMatrix& h) {
    h(0, 0) += 2 * w;
    h(1, 1) += 4 * w;
    h(2, 2) += w;
  };
  const SolverResult r = solve(p);
  REQUIRE(r.status == Status::optimal);
  CHECK(r.iterations <= 2);
  CHECK(r.x_opt[1] == doctest::Approx(-2.0));
}
