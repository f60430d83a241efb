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

#include "sr1pqn/matrix_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sr1pqn/simd.hpp"

namespace sr1pqn {
namespace {

void require_finite(std::span<const double> x, const char* what) {
  if (!all_finite(x)) throw NonFiniteInput(std::string("sr1: non-finite ") + what);
}

struct Sr1Parts {
  Vector w;
  double denom = 0.0;
  bool fire = false;
};

Sr1Parts sr1_parts(const SymMatrix& g, std::span<const double> u, std::span<const double> y,
                   double skip_tol) {
  if (u.size() != g.dim() || y.size() != g.dim()) {
    throw std::invalid_argument("sr1: dimension mismatch");
  }
  require_finite({g.data(), g.dim() * g.dim()}, "metric");
  require_finite(u, "u");
  require_finite(y, "y");
  Sr1Parts p;
  p.w = g.multiply(u);
  for (std::size_t i = 0; i < p.w.size(); ++i) p.w[i] -= y[i];
  p.denom = dot(u, p.w);
  const double scale = norm2(u) * norm2(p.w);
  if (p.denom < -skip_tol * scale) throw OrderViolation(p.denom);
  p.fire = p.denom > skip_tol * scale;
  return p;
}

Vector probe_vector(std::size_t n) {
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = (i % 2 == 0 ? 1.0 : -0.5) + 0.25 * double(i % 3);
  return v;
}

}  // namespace

Sr1Result sr1_step(const SymMatrix& g, std::span<const double> u, std::span<const double> y,
                   const Sr1Options& opts) {
  Sr1Parts p = sr1_parts(g, u, y, opts.skip_tol);
  Sr1Result r{g, 0.0, false};
  if (!p.fire) return r;
  simd::kernels().rank1(-1.0 / p.denom, p.w.data(), r.metric.data(), g.dim());
  if (opts.resymmetrize) r.metric.symmetrize();
  r.nu = dot(p.w, p.w) / p.denom;
  r.applied = true;
  return r;
}

SymMatrix sr1_update(const SymMatrix& g, std::span<const double> u, std::span<const double> y,
                     double skip_tol) {
  return sr1_step(g, u, y, Sr1Options{skip_tol, true}).metric;
}

double nu_measure(const SymMatrix& g, std::span<const double> u, std::span<const double> y,
                  double skip_tol) {
  const Sr1Parts p = sr1_parts(g, u, y, skip_tol);
  return p.fire ? dot(p.w, p.w) / p.denom : 0.0;
}

double trace_potential(const SymMatrix& g) { return g.trace(); }

bool loewner_leq(const SymMatrix& a, const SymMatrix& b, double tol) {
  return min_eigenvalue(b - a) >= -tol;
}

Vector solve_metric(const SymMatrix& g, std::span<const double> rhs) {
  return Cholesky(g).solve(rhs);
}

MetricState MetricState::initial(std::size_t n, double lip, Correction correction,
                                 bool with_inverse) {
  MetricState s;
  s.correction = correction;
  s.G = SymMatrix(n);
  if (with_inverse) s.inv_cache.emplace(n);
  s.restart(lip);
  return s;
}

SymMatrix MetricState::corrected() const {
  SymMatrix c(G);
  if (correction == Correction::kScaled) {
    c.scale(1.0 + lambda);
  } else {
    c.add_identity(lambda);
  }
  return c;
}

void MetricState::restart(double lip) {
  const std::size_t n = G.dim();
  G = SymMatrix::identity(n, lip);
  lambda = 0.0;
  trace_cache = double(n) * lip;
  if (inv_cache) *inv_cache = SymMatrix::identity(n, 1.0 / lip);
}

void MetricState::refresh() {
  const SymMatrix c = corrected();
  trace_cache = c.trace();
  if (inv_cache) *inv_cache = Cholesky(c).inverse();
}

InverseUpdateInfo sm_inverse_update(MetricState& state, std::span<const double> u,
                                    std::span<const double> y, double lambda_next,
                                    double skip_tol) {
  const std::size_t n = state.dim();
  const SymMatrix gt = state.corrected();
  Sr1Result r = sr1_step(gt, u, y, Sr1Options{skip_tol, true});

  InverseUpdateInfo info{r.nu, r.applied, false};
  const double rescale = 1.0 / (1.0 + lambda_next);
  std::optional<SymMatrix> inv;
  if (state.inv_cache && state.correction == Correction::kScaled) {
    inv = *state.inv_cache;
    if (r.applied) {
      const Vector hy = inv->multiply(y);
      const double uy = dot(u, y);
      const double yhy = dot(y, hy);
      const double denom = uy - yhy;
      if (std::abs(denom) <= skip_tol * std::max(std::abs(uy), std::abs(yhy)) ||
          !std::isfinite(denom)) {
        inv.reset();
      } else {
        const Vector s = subtract(u, hy);
        inv->rank1_update(1.0 / denom, s);
      }
    }
    if (inv) inv->scale(rescale);
  }

  if (state.correction == Correction::kScaled) {
    state.trace_cache = (1.0 + lambda_next) * (state.trace_cache - r.nu);
  } else {
    state.trace_cache = state.trace_cache - r.nu + double(n) * lambda_next;
  }
  state.G = std::move(r.metric);
  state.lambda = lambda_next;

  if (state.inv_cache) {
    if (inv) {
      const Vector v = probe_vector(n);
      const Vector z = inv->multiply(v);
      Vector gz = state.G.multiply(z);
      double worst = 0.0;
      double vmax = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        worst = std::max(worst, std::abs(gz[i] / rescale - v[i]));
        vmax = std::max(vmax, std::abs(v[i]));
      }
      if (!(worst <= 1e-10 * vmax)) inv.reset();
    }
    if (inv) {
      *state.inv_cache = std::move(*inv);
    } else {
      *state.inv_cache = Cholesky(state.corrected()).inverse();
      ++state.fallbacks;
      info.fallback = true;
    }
  }
  return info;
}

void skip_update(MetricState& state, double lambda_next) {
  const std::size_t n = state.dim();
  const double old_trace = state.trace_cache;
  state.G = state.corrected();
  state.lambda = lambda_next;
  if (state.correction == Correction::kScaled) {
    state.trace_cache = (1.0 + lambda_next) * old_trace;
    if (state.inv_cache) state.inv_cache->scale(1.0 / (1.0 + lambda_next));
  } else {
    state.trace_cache = old_trace + double(n) * lambda_next;
    if (state.inv_cache) *state.inv_cache = Cholesky(state.corrected()).inverse();
  }
}

double inverse_residual(const SymMatrix& a, const SymMatrix& b) {
  const std::size_t n = a.dim();
  double worst = 0.0;
  Vector col(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = b(i, j);
    const Vector ac = a.multiply(col);
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(ac[i] - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

}  // namespace sr1pqn
