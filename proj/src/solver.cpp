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

#include "secrelay/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "secrelay/simd.hpp"

namespace secrelay::solver {

const char* to_string(Status s) {
  switch (s) {
    case Status::optimal:
      return "optimal";
    case Status::max_iter:
      return "max_iter";
    case Status::infeasible:
      return "infeasible";
    case Status::numerical_failure:
      return "numerical_failure";
  }
  return "unknown";
}

namespace {

constexpr double kInteriorMargin = 1e-6;

constexpr double kInf = std::numeric_limits<double>::infinity();

// A single inequality row h(x) <= 0 of the barrier problem. Bounds become
// rows of their own; phase I appends the epigraph variable t at the end of x
// and subtracts it from every row.
struct Row {
  enum class Kind { general, lower, upper, floor } kind;
  const SmoothFunction* fn = nullptr;
  std::size_t index = 0;
  double bound = 0.0;
  std::size_t lo = 0, hi = 0;  // gradient window within the original variables
};

std::vector<Row> make_rows(const SmoothConvexProgram& prog) {
  std::vector<Row> rows;
  for (const SmoothFunction& f : prog.ineqs) {
    Row r{Row::Kind::general, &f, 0, 0.0, 0, 0};
    r.lo = std::min(f.support_begin, prog.dim);
    r.hi = std::min(f.support_end, prog.dim);
    rows.push_back(r);
  }
  if (!prog.lower.empty()) {
    for (std::size_t i = 0; i < prog.dim; ++i) {
      if (std::isfinite(prog.lower[i])) rows.push_back({Row::Kind::lower, nullptr, i, prog.lower[i], i, i + 1});
    }
  }
  if (!prog.upper.empty()) {
    for (std::size_t i = 0; i < prog.dim; ++i) {
      if (std::isfinite(prog.upper[i])) rows.push_back({Row::Kind::upper, nullptr, i, prog.upper[i], i, i + 1});
    }
  }
  return rows;
}

class Engine {
 public:
  Engine(const SmoothConvexProgram& prog, bool phase1, double shift, const SolverOptions& opts)
      : prog_(prog), phase1_(phase1), shift_(shift), opts_(opts), rows_(make_rows(prog)) {
    n_ = prog.dim + (phase1 ? 1 : 0);
    if (phase1_) rows_.push_back({Row::Kind::floor, nullptr, 0, 0.0, 0, 0});
    m_ = rows_.size();
    grads_.assign(m_, std::vector<double>(n_, 0.0));
  }

  struct Outcome {
    Status status = Status::numerical_failure;
    std::vector<double> x;
    std::vector<double> lambda;
    int iterations = 0;
    std::vector<double> objective_trace;
  };

  Outcome run(std::vector<double> x) {
    Outcome out;
    const std::size_t m = m_;
    std::vector<double> g(m);
    if (!values(x, g) || !strictly_feasible(g)) {
      out.x = std::move(x);
      return out;
    }
    double mu = opts_.mu_init;
    const double mu_min = opts_.tol * 1e-2;
    std::vector<double> lambda(m);
    for (std::size_t k = 0; k < m; ++k) lambda[k] = mu / -g[k];

    std::vector<double> grad_f(n_), r_d(n_), rhs(n_), dx(n_), jdx(m), dlambda(m);
    std::vector<double> x_trial(n_), g_trial(m);
    SymMatrix hess(n_);
    double last_reg = 0.0;
    const simd::KernelTable& kt = simd::active();

    if (!phase1_) out.objective_trace.push_back(objective_value(x));
    int it = 0;
    for (; it < opts_.max_iter; ++it) {
      objective_gradient(x, grad_f);
      for (std::size_t k = 0; k < m; ++k) row_gradient(k, x, grads_[k]);

      r_d = grad_f;
      for (std::size_t k = 0; k < m; ++k) scatter_add(k, lambda[k], r_d);
      const double stat = max_abs(r_d);
      double comp0 = 0.0;
      for (std::size_t k = 0; k < m; ++k) comp0 = std::max(comp0, std::abs(lambda[k] * g[k]));

      if (phase1_ && x[n_ - 1] <= -opts_.phase1_target) {
        out.status = Status::optimal;
        break;
      }
      if (std::max(stat, comp0) <= opts_.tol) {
        out.status = Status::optimal;
        break;
      }

      auto barrier_error = [&] {
        double e = stat;
        for (std::size_t k = 0; k < m; ++k) e = std::max(e, std::abs(lambda[k] * -g[k] - mu));
        return e;
      };
      while (mu > mu_min && barrier_error() <= opts_.centering_factor * mu) mu = std::max(mu * opts_.mu_factor, mu_min);

      // Primal-dual Newton system on the perturbed KKT conditions, with the
      // multipliers eliminated.
      hess.set_zero();
      objective_add_hessian(x, hess);
      rhs = grad_f;
      for (std::size_t k = 0; k < m; ++k) {
        const double slack = -g[k];
        // Constraint curvature is weighted by at least the central multiplier;
        // a multiplier that has collapsed would otherwise let the step run
        // along a curved boundary that the linear slack model cannot see.
        if (rows_[k].kind == Row::Kind::general && rows_[k].fn->add_hessian)
          rows_[k].fn->add_hessian(std::span<const double>(x.data(), prog_.dim), std::max(lambda[k], mu / slack),
                                   hess);
        rank_one(k, lambda[k] / slack, hess, kt);
        scatter_add(k, mu / slack, rhs);
      }
      for (double& v : rhs) v = -v;

      if (!factor_regularized(hess, last_reg, kt)) {
        out.status = Status::numerical_failure;
        break;
      }
      dx = rhs;
      cholesky_solve(hess, dx, kt);
      if (!all_finite(dx)) {
        out.status = Status::numerical_failure;
        break;
      }

      // A direction that increases the objective is replaced by the one for a
      // smaller barrier weight, which tends to the plain Newton direction.
      double f_slope = 0.0;
      for (std::size_t i = 0; i < n_; ++i) f_slope += grad_f[i] * dx[i];
      if (f_slope > 0.0) {
        if (mu > mu_min) {
          mu = std::max(mu * opts_.mu_factor, mu_min);
          continue;
        }
        out.status = std::max(stat, comp0) <= 10.0 * opts_.tol ? Status::optimal : Status::numerical_failure;
        break;
      }

      double alpha_dual = 1.0;
      for (std::size_t k = 0; k < m; ++k) {
        jdx[k] = row_dot(k, dx, kt);
        const double slack = -g[k];
        dlambda[k] = -lambda[k] + mu / slack + lambda[k] * jdx[k] / slack;
        if (dlambda[k] < 0.0)
          alpha_dual = std::min(alpha_dual, -opts_.fraction_to_boundary * lambda[k] / dlambda[k]);
      }

      // Backtracking on the primal barrier merit.
      const double phi = merit(x, g, mu);
      const double f_cur = objective_value(x);
      double slope = 0.0;
      for (std::size_t i = 0; i < n_; ++i) slope -= rhs[i] * dx[i];
      double alpha = 1.0;
      bool accepted = false;
      const bool flat = slope > -1e-14 * (1.0 + std::abs(phi));
      for (int ls = 0; ls < opts_.max_backtracks; ++ls, alpha *= 0.5) {
        for (std::size_t i = 0; i < n_; ++i) x_trial[i] = x[i] + alpha * dx[i];
        if (!values(x_trial, g_trial)) continue;
        bool inside = true;
        for (std::size_t k = 0; k < m && inside; ++k)
          inside = -g_trial[k] >= (1.0 - opts_.fraction_to_boundary) * -g[k];
        if (!inside) continue;
        const double phi_t = merit(x_trial, g_trial, mu);
        if (!std::isfinite(phi_t)) continue;
        const bool armijo = flat || phi_t <= phi + 1e-4 * alpha * slope + 1e-15 * std::abs(phi);
        if (objective_value(x_trial) > f_cur) continue;
        if (armijo) {
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        if (mu > mu_min) {
          mu = std::max(mu * opts_.mu_factor, mu_min);
          for (std::size_t k = 0; k < m; ++k) lambda[k] = mu / -g[k];
          continue;
        }
        out.status = Status::numerical_failure;
        break;
      }
      x.swap(x_trial);
      g.swap(g_trial);
      if (!phase1_) out.objective_trace.push_back(objective_value(x));
      for (std::size_t k = 0; k < m; ++k) {
        double l = lambda[k] + alpha_dual * dlambda[k];
        const double central = mu / -g[k];
        l = std::clamp(l, central * 1e-10, central * 1e10);
        lambda[k] = l;
      }
    }
    if (it >= opts_.max_iter) out.status = Status::max_iter;
    out.iterations = it;
    out.x = std::move(x);
    out.lambda = std::move(lambda);
    return out;
  }

  std::size_t dim() const { return n_; }
  const std::vector<Row>& rows() const { return rows_; }

  // Raw constraint values of the original program (no shift, no t).
  double original_row_value(std::size_t k, std::span<const double> x) const {
    const Row& r = rows_[k];
    switch (r.kind) {
      case Row::Kind::general:
        return r.fn->value(x.first(prog_.dim));
      case Row::Kind::lower:
        return r.bound - x[r.index];
      case Row::Kind::upper:
        return x[r.index] - r.bound;
      case Row::Kind::floor:
        return 0.0;
    }
    return 0.0;
  }

  bool values(std::span<const double> x, std::vector<double>& g) const {
    const double t = phase1_ ? x[n_ - 1] : 0.0;
    for (std::size_t k = 0; k < m_; ++k) {
      double v;
      if (rows_[k].kind == Row::Kind::floor) {
        v = -1.0 - t;
      } else {
        v = original_row_value(k, x) - shift_ - t;
      }
      if (!std::isfinite(v)) return false;
      g[k] = v;
    }
    return true;
  }

 private:
  static bool strictly_feasible(const std::vector<double>& g) {
    return std::all_of(g.begin(), g.end(), [](double v) { return v < 0.0; });
  }
  static bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double a) { return std::isfinite(a); });
  }
  static double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double a : v) m = std::max(m, std::abs(a));
    return m;
  }

  double objective_value(std::span<const double> x) const {
    return phase1_ ? x[n_ - 1] : prog_.objective.value(x.first(prog_.dim));
  }

  void objective_gradient(std::span<const double> x, std::vector<double>& grad) const {
    std::fill(grad.begin(), grad.end(), 0.0);
    if (phase1_) {
      grad[n_ - 1] = 1.0;
    } else {
      prog_.objective.gradient(x.first(prog_.dim), std::span<double>(grad.data(), prog_.dim));
    }
  }

  void objective_add_hessian(std::span<const double> x, SymMatrix& h) const {
    if (!phase1_ && prog_.objective.add_hessian) prog_.objective.add_hessian(x.first(prog_.dim), 1.0, h);
  }

  double merit(std::span<const double> x, const std::vector<double>& g, double mu) const {
    double phi = objective_value(x);
    for (double v : g) phi -= mu * std::log(-v);
    return phi;
  }

  void row_gradient(std::size_t k, std::span<const double> x, std::vector<double>& grad) const {
    const Row& r = rows_[k];
    std::fill(grad.begin() + r.lo, grad.begin() + r.hi, 0.0);
    switch (r.kind) {
      case Row::Kind::general:
        r.fn->gradient(x.first(prog_.dim), std::span<double>(grad.data(), prog_.dim));
        break;
      case Row::Kind::lower:
        grad[r.index] = -1.0;
        break;
      case Row::Kind::upper:
        grad[r.index] = 1.0;
        break;
      case Row::Kind::floor:
        break;
    }
    if (phase1_) grad[n_ - 1] = -1.0;
  }

  void scatter_add(std::size_t k, double w, std::vector<double>& y) const {
    const Row& r = rows_[k];
    const std::vector<double>& gk = grads_[k];
    for (std::size_t i = r.lo; i < r.hi; ++i) y[i] += w * gk[i];
    if (phase1_) y[n_ - 1] += w * gk[n_ - 1];
  }

  double row_dot(std::size_t k, const std::vector<double>& v, const simd::KernelTable& kt) const {
    const Row& r = rows_[k];
    const std::vector<double>& gk = grads_[k];
    double s = kt.dot(gk.data() + r.lo, v.data() + r.lo, r.hi - r.lo);
    if (phase1_) s += gk[n_ - 1] * v[n_ - 1];
    return s;
  }

  void rank_one(std::size_t k, double w, SymMatrix& h, const simd::KernelTable& kt) const {
    const Row& r = rows_[k];
    const std::vector<double>& gk = grads_[k];
    kt.syr_lower(h.data(), h.ld(), gk.data(), w, r.lo, r.hi);
    if (phase1_) {
      const std::size_t t = n_ - 1;
      const double wt = w * gk[t];
      for (std::size_t j = r.lo; j < r.hi; ++j) h(t, j) += wt * gk[j];
      h(t, t) += wt * gk[t];
    }
  }

  // Adds delta*I with delta doubling from 1e-10 until the factorization
  // succeeds. Restarts near the last successful value.
  bool factor_regularized(SymMatrix& h, double& last_reg, const simd::KernelTable& kt) const {
    const double floor = 1e-15 * std::max(1.0, h.max_abs_diagonal());
    SymMatrix work = h;
    if (cholesky_factor(work, floor, kt)) {
      h = std::move(work);
      last_reg = 0.0;
      return true;
    }
    double delta = std::max(1e-10, last_reg * 0.25);
    for (int attempt = 0; attempt < 200; ++attempt, delta *= 2.0) {
      work = h;
      work.add_diagonal(delta);
      if (cholesky_factor(work, floor, kt)) {
        h = std::move(work);
        last_reg = delta;
        return true;
      }
    }
    return false;
  }

  const SmoothConvexProgram& prog_;
  bool phase1_;
  double shift_;
  SolverOptions opts_;
  std::vector<Row> rows_;
  std::size_t n_ = 0, m_ = 0;
  std::vector<std::vector<double>> grads_;
};

std::vector<double> initial_point(const SmoothConvexProgram& prog) {
  std::vector<double> x = prog.start.value_or(std::vector<double>(prog.dim, 0.0));
  if (x.size() != prog.dim) throw std::invalid_argument("start point has wrong dimension");
  return x;
}

}  // namespace

SolverResult solve(const SmoothConvexProgram& prog, const SolverOptions& opts) {
  if (!prog.objective.value || !prog.objective.gradient)
    throw std::invalid_argument("objective callbacks missing");
  if ((!prog.lower.empty() && prog.lower.size() != prog.dim) ||
      (!prog.upper.empty() && prog.upper.size() != prog.dim))
    throw std::invalid_argument("bound vectors have wrong dimension");

  SolverResult res;
  std::vector<double> x = initial_point(prog);

  Engine probe(prog, false, 0.0, opts);
  const std::size_t m = probe.rows().size();
  std::vector<double> g(m);
  const bool finite_start = probe.values(x, g);
  const double worst = m == 0 ? -kInf : *std::max_element(g.begin(), g.end());

  double shift = 0.0;
  // Starts that are barely interior get huge initial multipliers, so they
  // are recentered by phase I as well.
  if (!finite_start || !(worst < -kInteriorMargin)) {
    if (!finite_start) {
      res.status = Status::numerical_failure;
      res.x_opt = x;
      return res;
    }
    // Phase I: minimize t subject to g_k(x) <= t, t >= -1.
    Engine phase1(prog, true, 0.0, opts);
    std::vector<double> xt = x;
    xt.push_back(worst + 1.0);
    Engine::Outcome p1 = phase1.run(std::move(xt));
    res.phase1_iterations = p1.iterations;
    res.iterations += p1.iterations;
    const double t_star = p1.x.back();
    p1.x.pop_back();
    x = std::move(p1.x);
    if (!probe.values(x, g)) {
      res.status = Status::numerical_failure;
      res.x_opt = x;
      return res;
    }
    const double reached = *std::max_element(g.begin(), g.end());
    if (reached > opts.tol || (p1.status != Status::optimal && !(reached < 0.0))) {
      res.status = (p1.status == Status::optimal) ? Status::infeasible : p1.status;
      if (p1.status == Status::optimal && t_star <= opts.tol) res.status = Status::infeasible;
      res.x_opt = x;
      return res;
    }
    if (reached > -1e-9) shift = std::max(0.0, reached) + 1e-9;
  }

  Engine phase2(prog, false, shift, opts);
  Engine::Outcome p2 = phase2.run(std::move(x));
  res.iterations += p2.iterations;
  res.x_opt = std::move(p2.x);
  res.duals = std::move(p2.lambda);
  res.duals.resize(m, 0.0);
  res.constraint_shift = shift;
  res.objective_trace = std::move(p2.objective_trace);
  res.objective_value = prog.objective.value(res.x_opt);
  res.kkt_residual = kkt_residual(prog, res.x_opt, res.duals);
  res.status = p2.status;
  if (!(res.kkt_residual <= opts.tol) && std::all_of(res.x_opt.begin(), res.x_opt.end(), [](double v) { return std::isfinite(v); })) {
    res.duals = refine_duals(prog, res.x_opt, res.duals);
    res.kkt_residual = kkt_residual(prog, res.x_opt, res.duals);
    if (res.status != Status::optimal && res.kkt_residual <= opts.tol) res.status = Status::optimal;
  }
  if (res.status == Status::optimal && !(res.kkt_residual <= opts.tol))
    res.status = Status::numerical_failure;
  return res;
}

double kkt_residual(const SmoothConvexProgram& prog, std::span<const double> x,
                    std::span<const double> duals) {
  const std::vector<Row> rows = make_rows(prog);
  if (duals.size() != rows.size()) throw std::invalid_argument("dual vector has wrong length");
  std::vector<double> r(prog.dim, 0.0), gk(prog.dim, 0.0);
  prog.objective.gradient(x, r);
  double primal = 0.0, comp = 0.0, sign = 0.0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const Row& row = rows[k];
    double v = 0.0;
    std::fill(gk.begin(), gk.end(), 0.0);
    switch (row.kind) {
      case Row::Kind::general:
        v = row.fn->value(x);
        row.fn->gradient(x, gk);
        break;
      case Row::Kind::lower:
        v = row.bound - x[row.index];
        gk[row.index] = -1.0;
        break;
      case Row::Kind::upper:
        v = x[row.index] - row.bound;
        gk[row.index] = 1.0;
        break;
      case Row::Kind::floor:
        break;
    }
    for (std::size_t i = row.lo; i < row.hi; ++i) r[i] += duals[k] * gk[i];
    primal = std::max(primal, v);
    comp = std::max(comp, std::abs(duals[k] * v));
    sign = std::max(sign, -duals[k]);
  }
  double stat = 0.0;
  for (double v : r) stat = std::max(stat, std::abs(v));
  return std::max({stat, primal, comp, sign});
}

namespace {

// Lawson-Hanson on min ||A l - b||_2, l >= 0, given the Gram matrix G = A^T A
// and c = A^T b.
std::vector<double> nnls(const std::vector<std::vector<double>>& gram, const std::vector<double>& c) {
  const std::size_t p = c.size();
  std::vector<double> l(p, 0.0), z(p, 0.0);
  std::vector<char> passive(p, 0);
  auto gradient = [&](std::size_t j) {
    double w = c[j];
    for (std::size_t i = 0; i < p; ++i) w -= gram[j][i] * l[i];
    return w;
  };
  double scale = 0.0;
  for (std::size_t j = 0; j < p; ++j) scale = std::max(scale, gram[j][j]);
  const double eps = 1e-13 * std::max(1.0, scale);
  auto solve_passive = [&]() -> bool {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < p; ++j)
      if (passive[j]) idx.push_back(j);
    SymMatrix a(idx.size());
    std::vector<double> rhs(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
      rhs[r] = c[idx[r]];
      for (std::size_t q = 0; q <= r; ++q) a(r, q) = gram[idx[r]][idx[q]];
    }
    a.add_diagonal(1e-14 * std::max(1.0, scale));
    if (!cholesky_factor(a, 0.0)) return false;
    cholesky_solve(a, rhs);
    std::fill(z.begin(), z.end(), 0.0);
    for (std::size_t r = 0; r < idx.size(); ++r) z[idx[r]] = rhs[r];
    return true;
  };
  for (std::size_t outer = 0; outer < 3 * p + 3; ++outer) {
    std::size_t best = p;
    double wmax = eps;
    for (std::size_t j = 0; j < p; ++j) {
      if (passive[j]) continue;
      const double w = gradient(j);
      if (w > wmax) {
        wmax = w;
        best = j;
      }
    }
    if (best == p) break;
    passive[best] = 1;
    for (std::size_t inner = 0; inner < 3 * p + 3; ++inner) {
      if (!solve_passive()) {
        passive[best] = 0;
        return l;
      }
      double alpha = 1.0;
      bool clipped = false;
      for (std::size_t j = 0; j < p; ++j) {
        if (passive[j] && z[j] <= 0.0) {
          clipped = true;
          alpha = std::min(alpha, l[j] / (l[j] - z[j]));
        }
      }
      if (!clipped) {
        l = z;
        break;
      }
      for (std::size_t j = 0; j < p; ++j) {
        if (!passive[j]) continue;
        l[j] += alpha * (z[j] - l[j]);
        if (l[j] <= 0.0) {
          l[j] = 0.0;
          passive[j] = 0;
        }
      }
    }
  }
  return l;
}

}  // namespace

std::vector<double> refine_duals(const SmoothConvexProgram& prog, std::span<const double> x,
                                 std::span<const double> hint) {
  const std::vector<Row> rows = make_rows(prog);
  const std::size_t m = rows.size(), n = prog.dim;
  std::vector<double> best(hint.begin(), hint.end());
  best.resize(m, 0.0);
  double best_kkt = kkt_residual(prog, x, best);

  std::vector<double> grad_f(n, 0.0), slack(m, 0.0);
  prog.objective.gradient(x, grad_f);
  std::vector<std::vector<double>> grads(m, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < m; ++k) {
    const Row& row = rows[k];
    switch (row.kind) {
      case Row::Kind::general:
        slack[k] = -row.fn->value(x);
        row.fn->gradient(x, grads[k]);
        break;
      case Row::Kind::lower:
        slack[k] = x[row.index] - row.bound;
        grads[k][row.index] = -1.0;
        break;
      case Row::Kind::upper:
        slack[k] = row.bound - x[row.index];
        grads[k][row.index] = 1.0;
        break;
      case Row::Kind::floor:
        break;
    }
  }

  std::vector<double> prev_set;
  for (double tau = 1e-10; tau <= 1e-3; tau *= 10.0) {
    std::vector<std::size_t> set;
    for (std::size_t k = 0; k < m; ++k)
      if (slack[k] <= tau) set.push_back(k);
    if (set.empty() || set.size() == prev_set.size()) continue;
    prev_set.assign(set.size(), 0.0);
    const std::size_t p = set.size();
    std::vector<std::vector<double>> gram(p, std::vector<double>(p, 0.0));
    std::vector<double> c(p, 0.0);
    for (std::size_t a = 0; a < p; ++a) {
      const std::vector<double>& ga = grads[set[a]];
      for (std::size_t i = 0; i < n; ++i) c[a] -= ga[i] * grad_f[i];
      for (std::size_t b = 0; b <= a; ++b) {
        double v = 0.0;
        const std::vector<double>& gb = grads[set[b]];
        for (std::size_t i = 0; i < n; ++i) v += ga[i] * gb[i];
        gram[a][b] = gram[b][a] = v;
      }
    }
    const std::vector<double> l = nnls(gram, c);
    std::vector<double> cand(m, 0.0);
    for (std::size_t a = 0; a < p; ++a) cand[set[a]] = l[a];
    const double k = kkt_residual(prog, x, cand);
    if (k < best_kkt) {
      best_kkt = k;
      best = std::move(cand);
    }
  }
  return best;
}

namespace {

void check_function(const SmoothFunction& f, std::size_t dim, std::span<const double> x, double h,
                    double& grad_err, double& hess_err) {
  std::vector<double> xp(x.begin(), x.end());
  std::vector<double> grad(dim, 0.0);
  f.gradient(x, grad);

  std::vector<double> fd(dim);
  double scale = 1.0;
  for (std::size_t i = 0; i < dim; ++i) {
    xp[i] = x[i] + h;
    const double fp = f.value(xp);
    xp[i] = x[i] - h;
    const double fm = f.value(xp);
    xp[i] = x[i];
    fd[i] = (fp - fm) / (2.0 * h);
    scale = std::max(scale, std::abs(fd[i]));
  }
  grad_err = 0.0;
  for (std::size_t i = 0; i < dim; ++i) grad_err = std::max(grad_err, std::abs(grad[i] - fd[i]) / scale);

  hess_err = 0.0;
  if (!f.add_hessian) return;
  SymMatrix hess(dim);
  f.add_hessian(x, 1.0, hess);
  // cols[j * dim + i] = d grad_i / d x_j by central differences.
  std::vector<double> cols(dim * dim);
  std::vector<double> gp(dim), gm(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    std::fill(gp.begin(), gp.end(), 0.0);
    std::fill(gm.begin(), gm.end(), 0.0);
    xp[j] = x[j] + h;
    f.gradient(xp, gp);
    xp[j] = x[j] - h;
    f.gradient(xp, gm);
    xp[j] = x[j];
    for (std::size_t i = 0; i < dim; ++i) cols[j * dim + i] = (gp[i] - gm[i]) / (2.0 * h);
  }
  auto fdh = [&](std::size_t i, std::size_t j) { return 0.5 * (cols[j * dim + i] + cols[i * dim + j]); };
  double hscale = 1.0;
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = j; i < dim; ++i) hscale = std::max(hscale, std::abs(fdh(i, j)));
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = j; i < dim; ++i)
      hess_err = std::max(hess_err, std::abs(hess(i, j) - fdh(i, j)) / hscale);
}

}  // namespace

DerivativeCheck verify_derivatives(const SmoothConvexProgram& prog, std::span<const double> x,
                                   double h) {
  DerivativeCheck out;
  auto visit = [&](const SmoothFunction& f, int id) {
    double ge = 0.0, he = 0.0;
    check_function(f, prog.dim, x, h, ge, he);
    if (std::max(ge, he) > out.max_error()) out.worst_callback = id;
    out.gradient_error = std::max(out.gradient_error, ge);
    out.hessian_error = std::max(out.hessian_error, he);
  };
  visit(prog.objective, -1);
  for (std::size_t k = 0; k < prog.ineqs.size(); ++k) visit(prog.ineqs[k], static_cast<int>(k));
  return out;
}

}  // namespace secrelay::solver
