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

#include "secrelay/power_dc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace secrelay {
namespace {

using solver::SmoothConvexProgram;
using solver::SmoothFunction;

constexpr double kLn2 = std::numbers::ln2;

double log2_1p(double v) { return std::log1p(v) / kLn2; }

// Channel gains and linearization constants in the packed layout.
struct PowerData {
  std::size_t pairs = 0;
  double ss = 1.0, sr = 1.0;  // power scales
  std::vector<double> g_ar, g_rd, g_re;
  bool linear = false;
  std::vector<double> v_k;                   // linearization point, scaled
  std::vector<double> bob0, bob1, eve0, eve1;  // value and slope at v_k

  double relay(std::size_t q, double u) const { return log2_1p(ss * u * g_ar[q]); }
  double relay_d(std::size_t q, double u) const { return ss * g_ar[q] / (kLn2 * (1.0 + ss * u * g_ar[q])); }
  double relay_dd(std::size_t q, double u) const {
    const double a = ss * g_ar[q], den = 1.0 + a * u;
    return -a * a / (kLn2 * den * den);
  }
  double bob(std::size_t q, double v) const {
    return linear ? bob0[q] + bob1[q] * (v - v_k[q]) : log2_1p(sr * v * g_rd[q]);
  }
  double bob_d(std::size_t q, double v) const {
    return linear ? bob1[q] : sr * g_rd[q] / (kLn2 * (1.0 + sr * v * g_rd[q]));
  }
  double eve(std::size_t q, double v) const {
    return linear ? eve0[q] + eve1[q] * (v - v_k[q]) : log2_1p(sr * v * g_re[q]);
  }
  double eve_d(std::size_t q, double v) const {
    return linear ? eve1[q] : sr * g_re[q] / (kLn2 * (1.0 + sr * v * g_re[q]));
  }
};

std::shared_ptr<PowerData> make_data(const Scenario& scn, const Trajectory& traj) {
  const ChannelState ch = channel_state(scn, traj);
  auto d = std::make_shared<PowerData>();
  const std::size_t n = scn.slots();
  d->pairs = n - 1;
  d->ss = scn.p_bar_s > 0.0 ? scn.p_bar_s : 1.0;
  d->sr = scn.p_bar_r > 0.0 ? scn.p_bar_r : 1.0;
  for (std::size_t q = 0; q + 1 < n; ++q) {
    d->g_ar.push_back(ch.gamma_ar[q]);
    d->g_rd.push_back(ch.gamma_rd[q + 1]);
    d->g_re.push_back(ch.gamma_re[q + 1]);
  }
  return d;
}

SmoothConvexProgram assemble(const std::shared_ptr<const PowerData>& d, double n_slots) {
  const std::size_t np = d->pairs;
  SmoothConvexProgram p;
  p.dim = 2 * np;

  p.objective.value = [d](std::span<const double> x) {
    double f = 0.0;
    for (std::size_t q = 0; q < d->pairs; ++q) {
      const double v = x[2 * q + 1];
      f += d->eve(q, v) - log2_1p(d->sr * v * d->g_rd[q]);
    }
    return f;
  };
  p.objective.gradient = [d](std::span<const double> x, std::span<double> g) {
    for (std::size_t q = 0; q < d->pairs; ++q) {
      const double v = x[2 * q + 1];
      g[2 * q + 1] = d->eve_d(q, v) - d->sr * d->g_rd[q] / (kLn2 * (1.0 + d->sr * v * d->g_rd[q]));
    }
  };
  if (d->linear) {
    p.objective.add_hessian = [d](std::span<const double> x, double w, SymMatrix& h) {
      for (std::size_t q = 0; q < d->pairs; ++q) {
        const double a = d->sr * d->g_rd[q], den = 1.0 + a * x[2 * q + 1];
        h(2 * q + 1, 2 * q + 1) += w * a * a / (kLn2 * den * den);
      }
    };
  }

  // Information causality toward Bob (eve = false) and Eve, one constraint
  // per prefix.
  for (int who = 0; who < 2; ++who) {
    const bool eve = who == 1;
    for (std::size_t k = 0; k < np; ++k) {
      SmoothFunction c;
      c.support_begin = 0;
      c.support_end = 2 * k + 2;
      c.value = [d, k, eve](std::span<const double> x) {
        double s = 0.0;
        for (std::size_t q = 0; q <= k; ++q) {
          const double v = x[2 * q + 1];
          s += (eve ? d->eve(q, v) : d->bob(q, v)) - d->relay(q, x[2 * q]);
        }
        return s;
      };
      c.gradient = [d, k, eve](std::span<const double> x, std::span<double> g) {
        for (std::size_t q = 0; q <= k; ++q) {
          const double v = x[2 * q + 1];
          g[2 * q] = -d->relay_d(q, x[2 * q]);
          g[2 * q + 1] = eve ? d->eve_d(q, v) : d->bob_d(q, v);
        }
      };
      if (d->linear) {
        c.add_hessian = [d, k](std::span<const double> x, double w, SymMatrix& h) {
          for (std::size_t q = 0; q <= k; ++q) h(2 * q, 2 * q) -= w * d->relay_dd(q, x[2 * q]);
        };
      }
      p.ineqs.push_back(std::move(c));
    }
  }

  // Average power budgets in scaled units: sum <= N.
  for (std::size_t off = 0; off < 2; ++off) {
    SmoothFunction b;
    b.value = [np, off, n_slots](std::span<const double> x) {
      double s = -n_slots;
      for (std::size_t q = 0; q < np; ++q) s += x[2 * q + off];
      return s;
    };
    b.gradient = [np, off](std::span<const double>, std::span<double> g) {
      for (std::size_t q = 0; q < np; ++q) g[2 * q + off] = 1.0;
    };
    p.ineqs.push_back(std::move(b));
  }
  p.lower.assign(p.dim, 0.0);
  return p;
}

bool power_feasible(const Scenario& scn, const Trajectory& traj, const PowerAllocation& pw) {
  return check_causality(scn, traj, pw).feasible && check_power_budget(scn, pw).feasible;
}

// Line search past the DC step along cand - from, accepting only exactly
// feasible points that improve the true objective. Updates cand and the
// initial step length for the next call; returns the objective at cand.
double boost(const Scenario& scn, const Trajectory& traj, const PowerAllocation& from,
             PowerAllocation& cand, double f_cand, double& beta) {
  PowerAllocation y = cand;
  for (double b = std::min(2.0 * beta, 64.0); b >= 1e-3; b *= 0.5) {
    for (std::size_t i = 0; i < y.p_s.size(); ++i) {
      y.p_s[i] = std::max(0.0, cand.p_s[i] + b * (cand.p_s[i] - from.p_s[i]));
      y.p_r[i] = std::max(0.0, cand.p_r[i] + b * (cand.p_r[i] - from.p_r[i]));
    }
    if (!check_causality(scn, traj, y, 0.0).feasible || !check_power_budget(scn, y, 0.0).feasible) continue;
    const double fy = secrecy_sum(scn, traj, y);
    if (fy > f_cand) {
      beta = b;
      cand = std::move(y);
      return fy;
    }
  }
  beta = std::max(0.5 * beta, 1e-3);
  return f_cand;
}

}  // namespace

std::vector<double> pack_power(const Scenario& scn, const PowerAllocation& pw) {
  const std::size_t n = scn.slots();
  const double ss = scn.p_bar_s > 0.0 ? scn.p_bar_s : 1.0;
  const double sr = scn.p_bar_r > 0.0 ? scn.p_bar_r : 1.0;
  std::vector<double> x(2 * (n - 1));
  for (std::size_t q = 0; q + 1 < n; ++q) {
    x[2 * q] = pw.p_s[q] / ss;
    x[2 * q + 1] = pw.p_r[q + 1] / sr;
  }
  return x;
}

PowerAllocation unpack_power(const Scenario& scn, const std::vector<double>& x) {
  const std::size_t n = scn.slots();
  const double ss = scn.p_bar_s > 0.0 ? scn.p_bar_s : 1.0;
  const double sr = scn.p_bar_r > 0.0 ? scn.p_bar_r : 1.0;
  PowerAllocation pw = zero_power(n);
  for (std::size_t q = 0; q + 1 < n; ++q) {
    pw.p_s[q] = std::max(0.0, x[2 * q]) * ss;
    pw.p_r[q + 1] = std::max(0.0, x[2 * q + 1]) * sr;
  }
  return pw;
}

SmoothConvexProgram build_dc_surrogate(const Scenario& scn, const Trajectory& traj,
                                       const PowerAllocation& pw_k) {
  scn.validate();
  validate_trajectory(scn, traj);
  validate_power(scn, pw_k);
  if (!(scn.p_bar_s > 0.0) || !(scn.p_bar_r > 0.0))
    throw std::invalid_argument("surrogate requires positive power budgets");
  if (!power_feasible(scn, traj, pw_k)) throw std::invalid_argument("linearization point is infeasible");

  auto d = make_data(scn, traj);
  d->linear = true;
  d->v_k = pack_power(scn, pw_k);
  for (std::size_t q = 0; q < d->pairs; ++q) d->v_k[q] = d->v_k[2 * q + 1];
  d->v_k.resize(d->pairs);
  for (std::size_t q = 0; q < d->pairs; ++q) {
    const double pb = d->sr * d->v_k[q] * d->g_rd[q], pe = d->sr * d->v_k[q] * d->g_re[q];
    d->bob0.push_back(log2_1p(pb));
    d->bob1.push_back(d->sr * d->g_rd[q] / (kLn2 * (1.0 + pb)));
    d->eve0.push_back(log2_1p(pe));
    d->eve1.push_back(d->sr * d->g_re[q] / (kLn2 * (1.0 + pe)));
  }
  SmoothConvexProgram p = assemble(d, static_cast<double>(scn.n_slots));
  p.start = pack_power(scn, pw_k);
  return p;
}

SmoothConvexProgram power_problem(const Scenario& scn, const Trajectory& traj) {
  scn.validate();
  validate_trajectory(scn, traj);
  return assemble(make_data(scn, traj), static_cast<double>(scn.n_slots));
}

namespace {

// KKT residual of the exact problem, refitting the multipliers when the
// surrogate's own do not already certify the point.
double certify(const SmoothConvexProgram& exact, const std::vector<double>& x,
               const std::vector<double>& duals, double tol) {
  const double k = solver::kkt_residual(exact, x, duals);
  if (k <= tol) return k;
  return solver::kkt_residual(exact, x, solver::refine_duals(exact, x, duals));
}

}  // namespace

DcResult dc_allocate(const Scenario& scn, const Trajectory& traj, const PowerAllocation& pw0,
                     const DcOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  scn.validate();
  validate_trajectory(scn, traj);
  validate_power(scn, pw0);

  DcResult out;
  auto finish = [&] {
    out.report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
  };
  if (!(scn.p_bar_s > 0.0) || !(scn.p_bar_r > 0.0)) {
    out.pw = scn.p_bar_s > 0.0 ? source_only_power(scn) : zero_power(scn.slots());
    out.report.objectives.push_back(0.0);
    out.report.notes.push_back("zero power budget: relay cannot forward");
    out.iterates.push_back({out.pw, 0.0, 0.0, 0});
    return finish();
  }
  if (!power_feasible(scn, traj, pw0)) throw std::invalid_argument("initial power allocation is infeasible");

  const SmoothConvexProgram exact = power_problem(scn, traj);
  PowerAllocation pw = pw0;
  double f = secrecy_sum(scn, traj, pw);
  double beta = 1.0;
  out.report.objectives.push_back(f);
  out.iterates.push_back({pw, f, f, 0});
  out.report.final_kkt = solver::kkt_residual(exact, pack_power(scn, pw),
                                              std::vector<double>(exact.ineqs.size() + exact.dim, 0.0));

  for (int it = 1; it <= opts.max_iter; ++it) {
    const SmoothConvexProgram prog = build_dc_surrogate(scn, traj, pw);
    const solver::SolverResult res = solver::solve(prog, opts.solver);
    out.report.kkt_residuals.push_back(res.kkt_residual);
    // A stalled inner solve still returns a feasible surrogate descent point;
    // it is kept when its certificate meets the solver's default tolerance.
    const bool usable = res.status == solver::Status::optimal || res.status == solver::Status::max_iter ||
                        (res.status == solver::Status::numerical_failure &&
                         res.kkt_residual <= solver::SolverOptions{}.tol);
    if (!usable) {
      out.report.status = res.status;
      out.report.notes.push_back(std::string("power subproblem failed: ") + solver::to_string(res.status));
      break;
    }
    PowerAllocation cand = unpack_power(scn, res.x_opt);
    if (!power_feasible(scn, traj, cand)) {
      out.report.status = solver::Status::numerical_failure;
      out.report.notes.push_back("power subproblem returned an infeasible point");
      break;
    }
    double fc = secrecy_sum(scn, traj, cand);
    if (fc < f - 1e-10 * std::max(1.0, std::abs(f))) {
      out.report.notes.push_back("non-improving power step rejected");
      if (it == 1) out.report.final_kkt = certify(exact, pack_power(scn, pw), res.duals, opts.kkt_tol);
      break;
    }
    double kkt = certify(exact, pack_power(scn, cand), res.duals, opts.kkt_tol);
    if (opts.boost && fc > f) {
      const double fb = boost(scn, traj, pw, cand, fc, beta);
      if (fb > fc) {
        fc = fb;
        kkt = certify(exact, pack_power(scn, cand), res.duals, opts.kkt_tol);
      }
    }
    const double rel = std::abs(fc - f) / std::max(std::abs(f), 1e-12);
    const bool stalled_at_zero = f == 0.0 && fc == 0.0;
    pw = cand;
    f = fc;
    out.report.objectives.push_back(f);
    out.report.final_kkt = kkt;
    out.report.iterations = it;
    out.iterates.push_back({pw, f, -prog.objective.value(res.x_opt), it});
    if ((rel < opts.rel_tol && kkt <= opts.kkt_tol) || stalled_at_zero) break;
  }
  if (out.report.iterations >= opts.max_iter && out.report.status == solver::Status::optimal)
    out.report.status = solver::Status::max_iter;
  out.pw = pw;
  return finish();
}

}  // namespace secrelay
