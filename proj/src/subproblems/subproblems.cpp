// Copyright 2026 The sr1pqn Authors. All Rights Reserved.
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

#include "sr1pqn/subproblems.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "sr1pqn/matrix_kernel.hpp"
#include "sr1pqn/simd.hpp"

namespace sr1pqn {
namespace {

constexpr double kBisectionRelTol = 1e-12;

// -(H + shift I)^{-1} g, throws NotPositiveDefinite.
Vector shifted_solve(const SymMatrix& h, double shift, std::span<const double> g) {
  Vector d = Cholesky(h, shift).solve(g);
  for (double& v : d) v = -v;
  return d;
}

// ||g + (H + s I) d||
double stationarity(const SymMatrix& h, double s, std::span<const double> g,
                    std::span<const double> d) {
  Vector r = h.multiply(d);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += g[i] + s * d[i];
  return norm2(r);
}

// q(d) = <g, d> + d^T H d / 2 + (M/3) ||d||^3. Its Hessian is bounded by
// (lambda_max(H) + 2 M ||d||) I, which sizes every step without value-based
// backtracking (those comparisons drown in rounding near the solution).
struct SmoothPart {
  std::function<double(std::span<const double>, std::span<double>)> eval;  // value, gradient
  double lip0;          // lambda_max(H)
  double cubic = 0.0;   // M
};

// Monotone FISTA with curvature-bound steps and momentum restart on
// g(x + d) + q(d). stop(d) returns the residual used for termination.
SubproblemReport accelerated_prox(const ProxTerm& g, std::span<const double> x,
                                  const SmoothPart& q,
                                  const std::function<double(std::span<const double>)>& residual,
                                  const InnerConfig& inner) {
  const std::size_t n = x.size();
  auto composite = [&](std::span<const double> d, double qval) {
    return qval + g.value(add_scaled(x, 1.0, d));
  };
  auto prox_step = [&](std::span<const double> z, std::span<const double> gz, double lip) {
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = x[i] + z[i] - gz[i] / lip;
    Vector p = g.prox(v, 1.0 / lip);
    for (std::size_t i = 0; i < n; ++i) p[i] -= x[i];
    return p;
  };

  SubproblemReport rep;
  rep.d.assign(n, 0.0);
  Vector grad_d(n);
  double obj = composite(rep.d, q.eval(rep.d, grad_d));
  rep.residual = residual(rep.d);
  if (rep.residual <= inner.tol) return rep;

  const double lip_floor = std::max(q.lip0, std::numeric_limits<double>::min());
  Vector z = rep.d;
  Vector prev = rep.d;
  Vector gz(n), gp(n);  // gp is scratch
  double t = 1.0;
  bool plain = true;  // z coincides with the best iterate
  for (std::size_t it = 1; it <= inner.max_iters; ++it) {
    q.eval(z, gz);
    double lip = lip_floor + 2.0 * q.cubic * norm2(z);
    Vector p = prox_step(z, gz, lip);
    for (int bt = 0; bt < 60 && q.cubic > 0.0; ++bt) {
      const double need = lip_floor + 2.0 * q.cubic * std::max(norm2(z), norm2(p));
      if (need <= lip) break;
      lip = std::max(need, 1.5 * lip);
      p = prox_step(z, gz, lip);
    }
    const double qp = q.eval(p, gp);
    const double pobj = composite(p, qp);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    rep.inner_iters = it;
    // A plain step from the best iterate descends in exact arithmetic; taking
    // it regardless keeps rounding noise in pobj from stalling the loop.
    if (pobj <= obj || plain) {
      prev = std::move(rep.d);
      rep.d = p;
      obj = pobj;
      for (std::size_t i = 0; i < n; ++i) z[i] = rep.d[i] + ((t - 1.0) / t_next) * (rep.d[i] - prev[i]);
      t = t_next;
      plain = false;
    } else {
      // Reject the candidate and restart momentum from the best iterate.
      z = rep.d;
      prev = rep.d;
      t = 1.0;
      plain = true;
    }
    rep.residual = residual(rep.d);
    if (rep.residual <= inner.tol) return rep;
  }
  rep.converged = false;
  return rep;
}

}  // namespace

double CubicModel::value(std::span<const double> d) const {
  const double nd = norm2(d);
  return dot(grad, d) + 0.5 * H.quadratic_form(d) + (M / 3.0) * nd * nd * nd;
}

SubproblemReport cubic_step_smooth(const CubicModel& model, double tol) {
  const std::size_t n = model.grad.size();
  if (model.H.dim() != n) throw std::invalid_argument("cubic_step_smooth: dimension mismatch");
  if (!(model.M >= 0.0)) throw std::invalid_argument("cubic_step_smooth: M must be nonnegative");
  SubproblemReport rep;
  const double gnorm = norm2(model.grad);
  if (gnorm == 0.0) {
    Cholesky check(model.H);
    rep.d.assign(n, 0.0);
    return rep;
  }

  // phi(0) > 0 and the factorization at r = 0 doubles as the PD check.
  Vector d0 = shifted_solve(model.H, 0.0, model.grad);
  if (model.M == 0.0) {
    rep.residual = stationarity(model.H, 0.0, model.grad, d0);
    rep.d = std::move(d0);
    rep.converged = rep.residual <= tol * std::max(1.0, gnorm);
    return rep;
  }

  auto phi = [&](double r) { return norm2(shifted_solve(model.H, model.M * r, model.grad)) - r; };

  double lo = 0.0;
  double phi_lo = norm2(d0);
  // ||(H + M r I)^{-1} g|| <= ||g|| / (M r), so phi <= 0 at sqrt(||g|| / M).
  double hi = std::min(std::sqrt(gnorm / model.M), phi_lo);
  double phi_hi = phi(hi);
  std::size_t evals = 2;
  for (int k = 0; phi_hi > 0.0; ++k) {
    if (k == 200) throw SubproblemFailure("cubic_step_smooth: no bracket found");
    lo = hi;
    phi_lo = phi_hi;
    hi *= 2.0;
    phi_hi = phi(hi);
    ++evals;
  }

  while (hi - lo > kBisectionRelTol * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double pm = phi(mid);
    ++evals;
    const double slack = 1e-10 * std::max(1.0, mid);
    if (pm > phi_lo + slack || pm < phi_hi - slack) {
      throw SubproblemFailure("cubic_step_smooth: phi is not monotone");
    }
    if (pm > 0.0) {
      lo = mid;
      phi_lo = pm;
    } else {
      hi = mid;
      phi_hi = pm;
    }
  }
  const double r = 0.5 * (lo + hi);
  rep.d = shifted_solve(model.H, model.M * r, model.grad);
  const double nd = norm2(rep.d);
  rep.lambda_star = model.M * nd;
  rep.residual = stationarity(model.H, rep.lambda_star, model.grad, rep.d);
  rep.inner_iters = evals;
  rep.converged = rep.residual <= tol * std::max(1.0, gnorm);
  return rep;
}

SubproblemReport metric_prox_step(const ProxTerm& g, std::span<const double> x,
                                  std::span<const double> grad, const SymMatrix& metric,
                                  const InnerConfig& inner, const SymMatrix* inverse) {
  const std::size_t n = grad.size();
  if (metric.dim() != n || x.size() != n) {
    throw std::invalid_argument("metric_prox_step: dimension mismatch");
  }
  if (g.is_zero()) {
    SubproblemReport rep;
    if (inverse != nullptr) {
      rep.d = inverse->multiply(grad);
      for (double& v : rep.d) v = -v;
    } else {
      rep.d = solve_metric(metric, grad);
      for (double& v : rep.d) v = -v;
    }
    rep.residual = stationarity(metric, 0.0, grad, rep.d);
    return rep;
  }

  SmoothPart q;
  q.eval = [&](std::span<const double> d, std::span<double> out) {
    const Vector gd = metric.multiply(d);
    for (std::size_t i = 0; i < n; ++i) out[i] = grad[i] + gd[i];
    return dot(grad, d) + 0.5 * dot(d, gd);
  };
  q.lip0 = max_eigenvalue(metric);
  auto residual = [&](std::span<const double> d) {
    Vector v = metric.multiply(d);
    for (std::size_t i = 0; i < n; ++i) v[i] = -(v[i] + grad[i]);
    return g.subdifferential_distance(add_scaled(x, 1.0, d), v);
  };
  return accelerated_prox(g, x, q, residual, inner);
}

SubproblemReport cubic_prox_step(const ProxTerm& g, std::span<const double> x,
                                 const CubicModel& model, const InnerConfig& inner) {
  if (g.is_zero()) return cubic_step_smooth(model, inner.tol);
  const std::size_t n = model.grad.size();
  if (model.H.dim() != n || x.size() != n) {
    throw std::invalid_argument("cubic_prox_step: dimension mismatch");
  }
  SmoothPart q;
  q.eval = [&](std::span<const double> d, std::span<double> out) {
    const Vector hd = model.H.multiply(d);
    const double nd = norm2(d);
    for (std::size_t i = 0; i < n; ++i) out[i] = model.grad[i] + hd[i] + model.M * nd * d[i];
    return dot(model.grad, d) + 0.5 * dot(d, hd) + (model.M / 3.0) * nd * nd * nd;
  };
  q.lip0 = max_eigenvalue(model.H);
  q.cubic = model.M;
  auto residual = [&](std::span<const double> d) {
    Vector v = model.H.multiply(d);
    const double s = model.M * norm2(d);
    for (std::size_t i = 0; i < n; ++i) v[i] = -(v[i] + s * d[i] + model.grad[i]);
    return g.subdifferential_distance(add_scaled(x, 1.0, d), v);
  };
  SubproblemReport rep = accelerated_prox(g, x, q, residual, inner);
  rep.lambda_star = model.M * norm2(rep.d);
  return rep;
}

}  // namespace sr1pqn
