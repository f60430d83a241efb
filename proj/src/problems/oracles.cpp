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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "sr1pqn/problems.hpp"
#include "sr1pqn/random.hpp"
#include "sr1pqn/simd.hpp"

namespace sr1pqn {
namespace {

double sum_squared_row_norms(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) s += dot(a.row(i), a.row(i));
  return s;
}

void check_point(std::span<const double> x, std::size_t n) {
  if (x.size() != n) throw std::invalid_argument("oracle: dimension mismatch");
}

class LogSumExp final : public SmoothOracle {
 public:
  LogSumExp(Dataset data, double mu)
      : SmoothOracle({mu, mu + 2.0 * sum_squared_row_norms(data.features), 2.0}),
        data_(std::move(data)) {}

  std::size_t dim() const override { return data_.dim(); }

  double value(std::span<const double> x) const override {
    check_point(x, dim());
    Vector pi;
    return softmax(x, pi) + 0.5 * mu() * dot(x, x);
  }

  double value_and_gradient(std::span<const double> x, std::span<double> grad) const override {
    check_point(x, dim());
    Vector pi;
    const double lse = softmax(x, pi);
    simd::kernels().gemv_t(data_.features.data(), data_.samples(), dim(), pi.data(), grad.data());
    simd::axpy(mu(), x, grad);
    return lse + 0.5 * mu() * dot(x, x);
  }

  SymMatrix hessian(std::span<const double> x) const override {
    check_point(x, dim());
    Vector pi;
    softmax(x, pi);
    const std::size_t n = dim();
    SymMatrix h = SymMatrix::identity(n, mu());
    const auto& k = simd::kernels();
    for (std::size_t i = 0; i < data_.samples(); ++i) {
      if (pi[i] != 0.0) k.rank1(pi[i], data_.features.row(i).data(), h.data(), n);
    }
    const Vector p = data_.features.multiply_transposed(pi);
    k.rank1(-1.0, p.data(), h.data(), n);
    h.symmetrize();
    return h;
  }

  Vector gradient_difference(std::span<const double> x, std::span<const double> u) const override {
    check_point(x, dim());
    Vector pi;
    softmax(x, pi);
    // pi_i(x + u) = pi_i e^{dz_i - c} with c = log sum_j pi_j e^{dz_j}.
    Vector dz = data_.features.multiply(u);
    double s = 0.0;
    for (std::size_t i = 0; i < dz.size(); ++i) s += pi[i] * std::expm1(dz[i]);
    const double c = std::log1p(s);
    for (std::size_t i = 0; i < dz.size(); ++i) dz[i] = pi[i] * std::expm1(dz[i] - c);
    Vector y(dim());
    simd::kernels().gemv_t(data_.features.data(), data_.samples(), dim(), dz.data(), y.data());
    simd::axpy(mu(), u, y);
    return y;
  }

 private:
  // log sum_i exp(z_i) with z = A x - b; pi receives the softmax weights.
  double softmax(std::span<const double> x, Vector& pi) const {
    pi = data_.features.multiply(x);
    for (std::size_t i = 0; i < pi.size(); ++i) pi[i] -= data_.labels[i];
    const double zmax = *std::max_element(pi.begin(), pi.end());
    double s = 0.0;
    for (double& v : pi) {
      v = std::exp(v - zmax);
      s += v;
    }
    double t = 0.0;
    for (double& v : pi) {
      v /= s;
      t += v;
    }
    for (double& v : pi) v /= t;
    return zmax + std::log(s);
  }

  Dataset data_;
};

// log(1 + exp(t))
double softplus(double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

// 1 / (1 + exp(-t))
double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

class Logistic final : public SmoothOracle {
 public:
  Logistic(Dataset data, double mu)
      : SmoothOracle({mu, mu + 2.0 * sum_squared_row_norms(data.features), 2.0}),
        data_(std::move(data)) {}

  std::size_t dim() const override { return data_.dim(); }

  double value(std::span<const double> x) const override {
    check_point(x, dim());
    const Vector z = data_.features.multiply(x);
    double s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) s += softplus(-data_.labels[i] * z[i]);
    return s / double(z.size()) + 0.5 * mu() * dot(x, x);
  }

  double value_and_gradient(std::span<const double> x, std::span<double> grad) const override {
    check_point(x, dim());
    Vector c = data_.features.multiply(x);
    const double inv_m = 1.0 / double(c.size());
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double margin = data_.labels[i] * c[i];
      s += softplus(-margin);
      c[i] = -data_.labels[i] * sigmoid(-margin) * inv_m;
    }
    simd::kernels().gemv_t(data_.features.data(), data_.samples(), dim(), c.data(), grad.data());
    simd::axpy(mu(), x, grad);
    return s * inv_m + 0.5 * mu() * dot(x, x);
  }

  SymMatrix hessian(std::span<const double> x) const override {
    check_point(x, dim());
    const Vector z = data_.features.multiply(x);
    const std::size_t n = dim();
    const double inv_m = 1.0 / double(z.size());
    SymMatrix h = SymMatrix::identity(n, mu());
    const auto& k = simd::kernels();
    for (std::size_t i = 0; i < z.size(); ++i) {
      const double w = sigmoid(z[i]) * sigmoid(-z[i]) * inv_m;
      if (w != 0.0) k.rank1(w, data_.features.row(i).data(), h.data(), n);
    }
    h.symmetrize();
    return h;
  }

  Vector gradient_difference(std::span<const double> x, std::span<const double> u) const override {
    check_point(x, dim());
    const Vector z = data_.features.multiply(x);
    Vector dz = data_.features.multiply(u);
    const double inv_m = 1.0 / double(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      // sigma(-m - dm) - sigma(-m) = -sigma(-m - dm) sigma(m) expm1(dm), m = b a^T x
      const double b = data_.labels[i];
      const double m = b * z[i];
      const double dm = b * dz[i];
      dz[i] = b * sigmoid(-m - dm) * sigmoid(m) * std::expm1(dm) * inv_m;
    }
    Vector y(dim());
    simd::kernels().gemv_t(data_.features.data(), data_.samples(), dim(), dz.data(), y.data());
    simd::axpy(mu(), u, y);
    return y;
  }

 private:
  Dataset data_;
};

class Quadratic final : public SmoothOracle {
 public:
  Quadratic(SymMatrix a, Vector b, OracleConstants c)
      : SmoothOracle(c), a_(std::move(a)), b_(std::move(b)) {}

  std::size_t dim() const override { return a_.dim(); }

  double value(std::span<const double> x) const override {
    check_point(x, dim());
    return 0.5 * a_.quadratic_form(x) - dot(b_, x);
  }

  double value_and_gradient(std::span<const double> x, std::span<double> grad) const override {
    check_point(x, dim());
    const Vector ax = a_.multiply(x);
    for (std::size_t i = 0; i < ax.size(); ++i) grad[i] = ax[i] - b_[i];
    return 0.5 * dot(x, ax) - dot(b_, x);
  }

  SymMatrix hessian(std::span<const double>) const override { return a_; }

  Vector gradient_difference(std::span<const double>, std::span<const double> u) const override {
    return a_.multiply(u);
  }

 private:
  SymMatrix a_;
  Vector b_;
};

}  // namespace

Vector SmoothOracle::gradient(std::span<const double> x) const {
  Vector g(dim());
  value_and_gradient(x, g);
  return g;
}

Vector SmoothOracle::gradient_difference(std::span<const double> x,
                                         std::span<const double> u) const {
  return subtract(gradient(add_scaled(x, 1.0, u)), gradient(x));
}

OraclePtr make_logsumexp(Dataset data, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("make_logsumexp: mu must be positive");
  validate(data);
  if (data.samples() == 0 || data.dim() == 0) throw std::invalid_argument("make_logsumexp: empty dataset");
  return std::make_shared<LogSumExp>(std::move(data), mu);
}

OraclePtr make_logistic(Dataset data, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("make_logistic: mu must be positive");
  validate(data);
  if (data.samples() == 0 || data.dim() == 0) throw std::invalid_argument("make_logistic: empty dataset");
  for (double b : data.labels) {
    if (b != 1.0 && b != -1.0) throw std::invalid_argument("make_logistic: labels must be -1 or +1");
  }
  return std::make_shared<Logistic>(std::move(data), mu);
}

OraclePtr make_quadratic(SymMatrix a, Vector b, double lip_hess) {
  if (a.dim() != b.size()) throw std::invalid_argument("make_quadratic: dimension mismatch");
  const Vector ev = eigenvalues(a);
  const double mu = *std::min_element(ev.begin(), ev.end());
  const double lip = *std::max_element(ev.begin(), ev.end());
  if (!(mu > 0.0)) throw std::invalid_argument("make_quadratic: matrix is not positive definite");
  return std::make_shared<Quadratic>(std::move(a), std::move(b), OracleConstants{mu, lip, lip_hess});
}

double estimate_hessian_lipschitz(const SmoothOracle& f, std::span<const double> center,
                                  double radius, std::size_t pairs, std::uint64_t seed) {
  NormalSampler rng(seed);
  const std::size_t n = f.dim();
  double best = 0.0;
  for (std::size_t p = 0; p < pairs; ++p) {
    const Vector dx = rng.on_sphere(n, radius * rng.uniform());
    const Vector dy = rng.on_sphere(n, radius * rng.uniform());
    const Vector x = add_scaled(center, 1.0, dx);
    const Vector y = add_scaled(center, 1.0, dy);
    const double dist = norm2(subtract(x, y));
    if (dist == 0.0) continue;
    const SymMatrix d = f.hessian(x) - f.hessian(y);
    const double spec = std::max(std::abs(min_eigenvalue(d)), std::abs(max_eigenvalue(d)));
    best = std::max(best, spec / dist);
  }
  return best;
}

}  // namespace sr1pqn
