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

#include "secrelay/trajectory_scp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace secrelay {
namespace {

using solver::SmoothConvexProgram;
using solver::SmoothFunction;

constexpr double kLn2 = std::numbers::ln2;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSlackMargin = 1e-3;  // in units of H^2
// Distance slacks only need to stay inside the log domain (> -1). A zero
// floor leaves no interior when the UAV sits exactly above a terminal,
// since the tangent bound of the squared distance is then identically 0.
constexpr double kSlackFloor = -0.5;

// log2(1 + g / (1 + t)) and its first two derivatives in t.
double lr(double g, double t) { return std::log1p(g / (1.0 + t)) / kLn2; }
double lr_d(double g, double t) {
  const double a = 1.0 + t;
  return -g / (a * (a + g) * kLn2);
}
double lr_dd(double g, double t) {
  const double a = 1.0 + t;
  return g * (2.0 * a + g) / (a * a * (a + g) * (a + g) * kLn2);
}

// Everything the subproblem callbacks need, in scaled units.
struct SubData {
  std::size_t n = 0;
  std::vector<std::size_t> off, width;
  std::vector<bool> slack;
  double v2 = 0.0;                   // (V / H)^2
  std::vector<double> px, py;        // expansion point / H
  bool has_start = false, has_end = false;
  double sx = 0, sy = 0, ex = 0, ey = 0;
  // Relay reception bound: R_l - c * (dx^2 + dy^2 + 2 ax dx + 2 ay dy).
  std::vector<double> rr, cr, ax, ay;
  // Bob reception bound, same form.
  std::vector<double> rd, cd, bx, by;
  // Squared distances to Eve / Bob and their offsets.
  std::vector<double> zeta, eta, ex_, ey_;
  std::vector<double> g;  // gamma_r / H^2

  double relay_lb(std::size_t i, const double* x) const {
    const double dx = x[off[i]], dy = x[off[i] + 1];
    return rr[i] - cr[i] * (dx * dx + dy * dy + 2.0 * ax[i] * dx + 2.0 * ay[i] * dy);
  }
  double bob_lb(std::size_t i, const double* x) const {
    const double dx = x[off[i]], dy = x[off[i] + 1];
    return rd[i] - cd[i] * (dx * dx + dy * dy + 2.0 * bx[i] * dx + 2.0 * by[i] * dy);
  }
  std::size_t end_of(std::size_t i) const { return off[i] + width[i]; }
};

std::shared_ptr<SubData> make_subdata(const Scenario& scn, const TrajIterate& it) {
  auto d = std::make_shared<SubData>();
  const std::size_t n = scn.slots();
  const double h = scn.altitude, h2 = h * h;
  d->n = n;
  d->v2 = (scn.step_budget() / h) * (scn.step_budget() / h);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = it.traj.xy[i];
    d->off.push_back(pos);
    const bool s = i > 0 && it.gamma_r[i] > 0.0;
    d->slack.push_back(s);
    d->width.push_back(s ? 4 : 2);
    pos += d->width.back();
    d->px.push_back(p.x / h);
    d->py.push_back(p.y / h);

    const double ca = it.gamma_s[i] / (kLn2 * (it.d_ar2[i] + it.gamma_s[i]) * it.d_ar2[i]);
    d->rr.push_back(it.rate_relay[i]);
    d->cr.push_back(ca * h2);
    d->ax.push_back((p.x - scn.alice.x) / h);
    d->ay.push_back((p.y - scn.alice.y) / h);

    const double cb = it.gamma_r[i] / (kLn2 * (it.d_rd2[i] + it.gamma_r[i]) * it.d_rd2[i]);
    d->rd.push_back(it.rate_bob[i]);
    d->cd.push_back(cb * h2);
    d->bx.push_back((p.x - scn.bob.x) / h);
    d->by.push_back((p.y - scn.bob.y) / h);

    d->zeta.push_back(it.zeta[i] / h2);
    d->eta.push_back(it.eta[i] / h2);
    d->ex_.push_back((p.x - scn.eve.x) / h);
    d->ey_.push_back((p.y - scn.eve.y) / h);
    d->g.push_back(it.gamma_r[i] / h2);
  }
  if (scn.start) {
    d->has_start = true;
    d->sx = scn.start->x / h;
    d->sy = scn.start->y / h;
  }
  if (scn.end) {
    d->has_end = true;
    d->ex = scn.end->x / h;
    d->ey = scn.end->y / h;
  }
  return d;
}

// |(q + u) - c|^2 - v2 <= 0 for one slot displaced by u from q.
SmoothFunction anchor_ball(const std::shared_ptr<const SubData>& d, std::size_t i, double cx, double cy) {
  SmoothFunction f;
  f.support_begin = d->off[i];
  f.support_end = d->off[i] + 2;
  f.value = [d, i, cx, cy](std::span<const double> x) {
    const double rx = d->px[i] + x[d->off[i]] - cx, ry = d->py[i] + x[d->off[i] + 1] - cy;
    return rx * rx + ry * ry - d->v2;
  };
  f.gradient = [d, i, cx, cy](std::span<const double> x, std::span<double> g) {
    g[d->off[i]] = 2.0 * (d->px[i] + x[d->off[i]] - cx);
    g[d->off[i] + 1] = 2.0 * (d->py[i] + x[d->off[i] + 1] - cy);
  };
  f.add_hessian = [d, i](std::span<const double>, double w, SymMatrix& h) {
    h(d->off[i], d->off[i]) += 2.0 * w;
    h(d->off[i] + 1, d->off[i] + 1) += 2.0 * w;
  };
  return f;
}

// Consecutive-slot travel limit between slots i and i + 1.
SmoothFunction step_ball(const std::shared_ptr<const SubData>& d, std::size_t i) {
  SmoothFunction f;
  const std::size_t a = d->off[i], b = d->off[i + 1];
  f.support_begin = a;
  f.support_end = b + 2;
  f.value = [d, i, a, b](std::span<const double> x) {
    const double rx = d->px[i + 1] + x[b] - d->px[i] - x[a];
    const double ry = d->py[i + 1] + x[b + 1] - d->py[i] - x[a + 1];
    return rx * rx + ry * ry - d->v2;
  };
  f.gradient = [d, i, a, b](std::span<const double> x, std::span<double> g) {
    const double rx = d->px[i + 1] + x[b] - d->px[i] - x[a];
    const double ry = d->py[i + 1] + x[b + 1] - d->py[i] - x[a + 1];
    g[a] = -2.0 * rx;
    g[a + 1] = -2.0 * ry;
    g[b] = 2.0 * rx;
    g[b + 1] = 2.0 * ry;
  };
  f.add_hessian = [a, b](std::span<const double>, double w, SymMatrix& h) {
    for (std::size_t k = 0; k < 2; ++k) {
      h(a + k, a + k) += 2.0 * w;
      h(b + k, b + k) += 2.0 * w;
      h(b + k, a + k) -= 2.0 * w;
    }
  };
  return f;
}

// Information causality prefix ending at slot last (0-based, >= 1). The
// slack at position `slot_var` (2 for eps, 3 for tau) bounds the receiver
// distance.
SmoothFunction causality(const std::shared_ptr<const SubData>& d, std::size_t last, std::size_t slot_var) {
  SmoothFunction f;
  f.support_begin = 0;
  f.support_end = d->end_of(last);
  f.value = [d, last, slot_var](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 1; i <= last; ++i)
      if (d->slack[i]) s += lr(d->g[i], x[d->off[i] + slot_var]);
    for (std::size_t i = 0; i < last; ++i) s -= d->relay_lb(i, x.data());
    return s;
  };
  f.gradient = [d, last, slot_var](std::span<const double> x, std::span<double> g) {
    for (std::size_t i = 1; i <= last; ++i)
      if (d->slack[i]) g[d->off[i] + slot_var] = lr_d(d->g[i], x[d->off[i] + slot_var]);
    for (std::size_t i = 0; i < last; ++i) {
      const std::size_t o = d->off[i];
      g[o] = d->cr[i] * (2.0 * x[o] + 2.0 * d->ax[i]);
      g[o + 1] = d->cr[i] * (2.0 * x[o + 1] + 2.0 * d->ay[i]);
    }
  };
  f.add_hessian = [d, last, slot_var](std::span<const double> x, double w, SymMatrix& h) {
    for (std::size_t i = 1; i <= last; ++i) {
      if (!d->slack[i]) continue;
      const std::size_t k = d->off[i] + slot_var;
      h(k, k) += w * lr_dd(d->g[i], x[k]);
    }
    for (std::size_t i = 0; i < last; ++i) {
      const std::size_t o = d->off[i];
      h(o, o) += w * 2.0 * d->cr[i];
      h(o + 1, o + 1) += w * 2.0 * d->cr[i];
    }
  };
  return f;
}

// slack <= tangent-plane bound of the squared distance (scaled).
SmoothFunction slack_coupling(const std::shared_ptr<const SubData>& d, std::size_t i, bool eve) {
  SmoothFunction f;
  const std::size_t o = d->off[i];
  f.support_begin = o;
  f.support_end = o + 4;
  const double base = eve ? d->zeta[i] : d->eta[i];
  const double rx = eve ? d->ex_[i] : d->bx[i], ry = eve ? d->ey_[i] : d->by[i];
  const std::size_t k = o + (eve ? 3 : 2);
  f.value = [o, k, base, rx, ry](std::span<const double> x) {
    return x[k] - (base + 2.0 * rx * x[o] + 2.0 * ry * x[o + 1]);
  };
  f.gradient = [o, k, rx, ry](std::span<const double>, std::span<double> g) {
    g[o] = -2.0 * rx;
    g[o + 1] = -2.0 * ry;
    g[k] = 1.0;
  };
  return f;
}

}  // namespace

Trajectory initial_trajectory(const Scenario& scn) {
  scn.validate();
  const std::size_t n = scn.slots();
  if (scn.start && scn.end) {
    const Vec2 a = *scn.start, b = *scn.end;
    const double dist = std::sqrt(squared_distance(a, b));
    if (dist > (n + 1) * scn.step_budget() * (1.0 + 1e-12))
      throw std::invalid_argument("endpoints are farther apart than the horizon allows");
    Trajectory t;
    t.xy.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
      const double f = static_cast<double>(i) / static_cast<double>(n + 1);
      t.xy.push_back({a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)});
    }
    return t;
  }
  if (scn.start || scn.end) return constant_trajectory(n, scn.start ? *scn.start : *scn.end);
  return constant_trajectory(n, {0.5 * (scn.alice.x + scn.bob.x), 0.5 * (scn.alice.y + scn.bob.y)});
}

TrajIterate make_iterate(const Scenario& scn, const Trajectory& traj, const PowerAllocation& pw) {
  scn.validate();
  validate_trajectory(scn, traj);
  validate_power(scn, pw);
  const ChannelState ch = channel_state(scn, traj);
  const RateProfile r = rate_profile(scn, ch, pw);
  TrajIterate it;
  it.traj = traj;
  const std::size_t n = scn.slots();
  const double h2 = scn.altitude * scn.altitude;
  for (std::size_t i = 0; i < n; ++i) {
    it.gamma_s.push_back(scn.ref_snr * pw.p_s[i]);
    it.gamma_r.push_back(scn.ref_snr * pw.p_r[i]);
    it.d_ar2.push_back(ch.d_ar[i] * ch.d_ar[i]);
    it.d_rd2.push_back(ch.d_rd[i] * ch.d_rd[i]);
    it.zeta.push_back(squared_distance(traj.xy[i], scn.eve));
    it.eta.push_back(squared_distance(traj.xy[i], scn.bob));
    (void)h2;
  }
  it.rate_relay = r.r_relay;
  it.rate_bob = r.r_bob;
  it.objective = r.secrecy_sum;
  return it;
}

QuadraticBound rate_lower_bound(double gamma, double h2, Vec2 uav, Vec2 terminal, double dx, double dy) {
  const double rx = uav.x - terminal.x, ry = uav.y - terminal.y;
  const double d2 = h2 + rx * rx + ry * ry;
  const double c = gamma / (kLn2 * (d2 + gamma) * d2);
  QuadraticBound b;
  b.value = std::log1p(gamma / d2) / kLn2 - c * (dx * dx + dy * dy + 2.0 * rx * dx + 2.0 * ry * dy);
  b.grad_x = -c * (2.0 * dx + 2.0 * rx);
  b.grad_y = -c * (2.0 * dy + 2.0 * ry);
  b.hess = -2.0 * c;
  return b;
}

AffineBound distance_lower_bound(Vec2 uav, Vec2 terminal, double dx, double dy) {
  const double rx = uav.x - terminal.x, ry = uav.y - terminal.y;
  return {rx * rx + ry * ry + 2.0 * rx * dx + 2.0 * ry * dy, 2.0 * rx, 2.0 * ry};
}

RateBounds rate_lower_bounds(const Scenario& scn, const TrajIterate& it, const SubproblemVars& v) {
  const double h2 = scn.altitude * scn.altitude;
  RateBounds out;
  for (std::size_t i = 0; i < it.traj.size(); ++i) {
    out.relay.push_back(rate_lower_bound(it.gamma_s[i], h2, it.traj.xy[i], scn.alice, v.delta[i], v.xi[i]));
    out.bob.push_back(rate_lower_bound(it.gamma_r[i], h2, it.traj.xy[i], scn.bob, v.delta[i], v.xi[i]));
  }
  return out;
}

DistanceBounds distance_lower_bounds(const Scenario& scn, const TrajIterate& it, const SubproblemVars& v) {
  DistanceBounds out;
  for (std::size_t i = 0; i < it.traj.size(); ++i) {
    out.zeta.push_back(distance_lower_bound(it.traj.xy[i], scn.eve, v.delta[i], v.xi[i]));
    out.eta.push_back(distance_lower_bound(it.traj.xy[i], scn.bob, v.delta[i], v.xi[i]));
  }
  return out;
}

TrajSubproblem build_subproblem(const Scenario& scn, const PowerAllocation& pw, const TrajIterate& it) {
  scn.validate();
  validate_power(scn, pw);
  if (it.traj.size() != scn.slots()) throw std::invalid_argument("iterate has wrong length");
  auto d = make_subdata(scn, it);
  const std::size_t n = d->n;

  TrajSubproblem sp;
  sp.offset = d->off;
  sp.has_slack = d->slack;
  sp.scale = scn.altitude;
  SmoothConvexProgram& p = sp.program;
  p.dim = d->end_of(n - 1);

  // minimize sum_n log2(1 + g / (1 + tau)) - sum_n R_d^lb[n]
  p.objective.value = [d](std::span<const double> x) {
    double f = 0.0;
    for (std::size_t i = 1; i < d->n; ++i) {
      if (!d->slack[i]) continue;
      f += lr(d->g[i], x[d->off[i] + 3]) - d->bob_lb(i, x.data());
    }
    return f;
  };
  p.objective.gradient = [d](std::span<const double> x, std::span<double> g) {
    for (std::size_t i = 1; i < d->n; ++i) {
      if (!d->slack[i]) continue;
      const std::size_t o = d->off[i];
      g[o] = d->cd[i] * (2.0 * x[o] + 2.0 * d->bx[i]);
      g[o + 1] = d->cd[i] * (2.0 * x[o + 1] + 2.0 * d->by[i]);
      g[o + 3] = lr_d(d->g[i], x[o + 3]);
    }
  };
  p.objective.add_hessian = [d](std::span<const double> x, double w, SymMatrix& h) {
    for (std::size_t i = 1; i < d->n; ++i) {
      if (!d->slack[i]) continue;
      const std::size_t o = d->off[i];
      h(o, o) += w * 2.0 * d->cd[i];
      h(o + 1, o + 1) += w * 2.0 * d->cd[i];
      h(o + 3, o + 3) += w * lr_dd(d->g[i], x[o + 3]);
    }
  };

  if (d->has_start) p.ineqs.push_back(anchor_ball(d, 0, d->sx, d->sy));
  for (std::size_t i = 0; i + 1 < n; ++i) p.ineqs.push_back(step_ball(d, i));
  if (d->has_end) p.ineqs.push_back(anchor_ball(d, n - 1, d->ex, d->ey));

  // Causality prefixes whose left-hand side is not identically zero.
  bool any = false;
  for (std::size_t last = 1; last < n; ++last) {
    any = any || d->slack[last];
    if (!any) continue;
    p.ineqs.push_back(causality(d, last, 2));
    p.ineqs.push_back(causality(d, last, 3));
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!d->slack[i]) continue;
    p.ineqs.push_back(slack_coupling(d, i, true));
    p.ineqs.push_back(slack_coupling(d, i, false));
  }

  p.lower.assign(p.dim, -kInf);
  std::vector<double> x0(p.dim, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    if (!d->slack[i]) continue;
    p.lower[d->off[i] + 2] = kSlackFloor;
    p.lower[d->off[i] + 3] = kSlackFloor;
    x0[d->off[i] + 2] = d->eta[i] - kSlackMargin;
    x0[d->off[i] + 3] = d->zeta[i] - kSlackMargin;
  }
  p.start = std::move(x0);
  return sp;
}

std::vector<double> pack_vars(const TrajSubproblem& sp, const SubproblemVars& v) {
  const double h = sp.scale;
  std::vector<double> x(sp.program.dim, 0.0);
  for (std::size_t i = 0; i < sp.offset.size(); ++i) {
    const std::size_t o = sp.offset[i];
    x[o] = v.delta[i] / h;
    x[o + 1] = v.xi[i] / h;
    if (sp.has_slack[i]) {
      x[o + 2] = v.eps[i - 1] / (h * h);
      x[o + 3] = v.tau[i - 1] / (h * h);
    }
  }
  return x;
}

SubproblemVars unpack_vars(const Scenario& scn, const TrajIterate& it, const TrajSubproblem& sp,
                           const std::vector<double>& x) {
  const double h = sp.scale;
  const std::size_t n = sp.offset.size();
  SubproblemVars v;
  for (std::size_t i = 0; i < n; ++i) {
    v.delta.push_back(x[sp.offset[i]] * h);
    v.xi.push_back(x[sp.offset[i] + 1] * h);
  }
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t o = sp.offset[i];
    if (sp.has_slack[i]) {
      v.eps.push_back(x[o + 2] * h * h);
      v.tau.push_back(x[o + 3] * h * h);
    } else {
      v.eps.push_back(distance_lower_bound(it.traj.xy[i], scn.bob, v.delta[i], v.xi[i]).value);
      v.tau.push_back(distance_lower_bound(it.traj.xy[i], scn.eve, v.delta[i], v.xi[i]).value);
    }
  }
  return v;
}

SubproblemVars zero_step(const TrajIterate& it) {
  const std::size_t n = it.traj.size();
  SubproblemVars v;
  v.delta.assign(n, 0.0);
  v.xi.assign(n, 0.0);
  v.eps.assign(it.eta.begin() + 1, it.eta.end());
  v.tau.assign(it.zeta.begin() + 1, it.zeta.end());
  return v;
}

PowerAllocation restore_feasibility(const Scenario& scn, const Trajectory& traj, const PowerAllocation& pw,
                                    double* alpha_out) {
  auto scaled = [&](double a) {
    PowerAllocation q = pw;
    for (double& p : q.p_r) p *= a;
    return q;
  };
  double alpha = 1.0;
  if (!check_causality(scn, traj, pw).feasible) {
    // Bisect on the exact (zero tolerance) verdict so the result is not
    // left sitting on the tolerance band.
    double lo = 0.0, hi = 1.0;
    for (int k = 0; k < 40; ++k) {
      const double mid = 0.5 * (lo + hi);
      (check_causality(scn, traj, scaled(mid), 0.0).feasible ? lo : hi) = mid;
    }
    alpha = lo;
  }
  if (alpha_out) *alpha_out = alpha;
  return alpha == 1.0 ? pw : scaled(alpha);
}

ScpResult scp_optimize(const Scenario& scn, const PowerAllocation& pw, const Trajectory& traj_0,
                       const ScpOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  scn.validate();
  validate_trajectory(scn, traj_0);
  validate_power(scn, pw);
  if (!check_mobility(scn, traj_0).feasible) throw std::invalid_argument("initial trajectory violates mobility");
  if (!check_causality(scn, traj_0, pw).feasible)
    throw std::invalid_argument("initial trajectory violates information causality");

  ScpResult out;
  RunReport& rep = out.report;
  TrajIterate it = make_iterate(scn, traj_0, pw);
  rep.objectives.push_back(it.objective);
  if (opts.keep_snapshots) rep.snapshots.push_back(it.traj);

  bool base_solved = false;  // the subproblem at `it` has been solved
  double base_kkt = 0.0;

  // KKT residual of a solved subproblem at zero displacement.
  auto zero_step_kkt = [&](const TrajSubproblem& sp, const solver::SolverResult& res) {
    return solver::kkt_residual(sp.program, pack_vars(sp, zero_step(it)), res.duals);
  };

  for (int l = 1; l <= opts.max_iter; ++l) {
    const TrajSubproblem sp = build_subproblem(scn, pw, it);
    const solver::SolverResult res = solver::solve(sp.program, opts.solver);
    rep.kkt_residuals.push_back(res.kkt_residual);
    const bool usable = res.status == solver::Status::optimal || res.status == solver::Status::max_iter ||
                        (res.status == solver::Status::numerical_failure &&
                         res.kkt_residual <= solver::SolverOptions{}.tol);
    if (!usable) {
      rep.status = res.status;
      rep.notes.push_back(std::string("trajectory subproblem failed: ") + solver::to_string(res.status));
      break;
    }
    base_solved = true;
    base_kkt = zero_step_kkt(sp, res);

    const SubproblemVars v = unpack_vars(scn, it, sp, res.x_opt);
    const DistanceBounds db = distance_lower_bounds(scn, it, v);
    double tight = -kInf;
    for (std::size_t i = 1; i < scn.slots(); ++i)
      tight = std::max(tight, std::min(db.zeta[i].value - v.tau[i - 1], db.eta[i].value - v.eps[i - 1]));
    rep.slack_tightness.push_back(tight);

    Trajectory cand = it.traj;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      cand.xy[i].x += v.delta[i];
      cand.xy[i].y += v.xi[i];
    }
    if (!check_mobility(scn, cand).feasible || !check_causality(scn, cand, pw).feasible) {
      rep.status = solver::Status::numerical_failure;
      rep.notes.push_back("trajectory step left the feasible set");
      break;
    }
    const double fc = secrecy_sum(scn, cand, pw);
    if (!(fc > it.objective)) {
      rep.notes.push_back("no strict improvement: zero step accepted");
      break;
    }
    const double rel = std::abs(fc - it.objective) / std::max(std::abs(it.objective), 1e-12);
    it = make_iterate(scn, cand, pw);
    base_solved = false;
    rep.objectives.push_back(it.objective);
    rep.iterations = l;
    if (opts.keep_snapshots) rep.snapshots.push_back(it.traj);
    if (rel < opts.rel_tol) break;
  }
  if (rep.iterations >= opts.max_iter && rep.status == solver::Status::optimal)
    rep.status = solver::Status::max_iter;

  if (!base_solved && opts.final_certificate && rep.status != solver::Status::numerical_failure) {
    const TrajSubproblem sp = build_subproblem(scn, pw, it);
    const solver::SolverResult res = solver::solve(sp.program, opts.solver);
    if (res.status == solver::Status::optimal || res.status == solver::Status::max_iter) {
      base_solved = true;
      base_kkt = zero_step_kkt(sp, res);
    }
  }
  rep.final_kkt = base_solved ? base_kkt : std::numeric_limits<double>::quiet_NaN();
  out.traj = it.traj;
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace secrelay
