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

#include "sr1pqn/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "sr1pqn/simd.hpp"

namespace sr1pqn {

Vector Matrix::multiply(std::span<const double> x) const {
  Vector y(rows_);
  simd::kernels().gemv(data_.data(), rows_, cols_, x.data(), y.data());
  return y;
}

Vector Matrix::multiply_transposed(std::span<const double> x) const {
  Vector y(cols_);
  simd::kernels().gemv_t(data_.data(), rows_, cols_, x.data(), y.data());
  return y;
}

SymMatrix SymMatrix::identity(std::size_t n, double scale) {
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = scale;
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  SymMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.data_[i * m.n_ + i] = diag[i];
  return m;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += data_[i * n_ + i];
  return t;
}

void SymMatrix::add_identity(double s) {
  for (std::size_t i = 0; i < n_; ++i) data_[i * n_ + i] += s;
}

void SymMatrix::scale(double s) { simd::kernels().scale(s, data_.data(), data_.size()); }

void SymMatrix::rank1_update(double alpha, std::span<const double> w) {
  simd::kernels().rank1(alpha, w.data(), data_.data(), n_);
  symmetrize();
}

void SymMatrix::symmetrize() {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double v = 0.5 * (data_[i * n_ + j] + data_[j * n_ + i]);
      data_[i * n_ + j] = v;
      data_[j * n_ + i] = v;
    }
  }
}

bool SymMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (data_[i * n_ + j] != data_[j * n_ + i]) return false;
    }
  }
  return true;
}

Vector SymMatrix::multiply(std::span<const double> x) const {
  Vector y(n_);
  simd::kernels().gemv(data_.data(), n_, n_, x.data(), y.data());
  return y;
}

double SymMatrix::quadratic_form(std::span<const double> x) const {
  const Vector ax = multiply(x);
  return simd::dot(x, ax);
}

SymMatrix SymMatrix::operator+(const SymMatrix& other) const {
  SymMatrix r(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += other.data_[i];
  return r;
}

SymMatrix SymMatrix::operator-(const SymMatrix& other) const {
  SymMatrix r(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= other.data_[i];
  return r;
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Cholesky::Cholesky(const SymMatrix& a, double shift) {
  if (!factor(a, shift)) throw NotPositiveDefinite("Cholesky: matrix is not positive definite");
}

std::optional<Cholesky> Cholesky::try_factor(const SymMatrix& a, double shift) {
  Cholesky c;
  if (!c.factor(a, shift)) return std::nullopt;
  return c;
}

bool Cholesky::factor(const SymMatrix& a, double shift) {
  n_ = a.dim();
  l_.assign(n_ * n_, 0.0);
  const auto& k = simd::kernels();
  for (std::size_t j = 0; j < n_; ++j) {
    const double* lj = l_.data() + j * n_;
    double d = a(j, j) + shift - k.dot(lj, lj, j);
    if (!(d > 0.0) || !std::isfinite(d)) return false;
    d = std::sqrt(d);
    l_[j * n_ + j] = d;
    for (std::size_t i = j + 1; i < n_; ++i) {
      const double* li = l_.data() + i * n_;
      l_[i * n_ + j] = (a(i, j) - k.dot(li, lj, j)) / d;
    }
  }
  return true;
}

void Cholesky::solve_in_place(std::span<double> x) const {
  const auto& k = simd::kernels();
  for (std::size_t i = 0; i < n_; ++i) {
    const double* li = l_.data() + i * n_;
    x[i] = (x[i] - k.dot(li, x.data(), i)) / li[i];
  }
  for (std::size_t i = n_; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n_; ++j) s -= l_[j * n_ + i] * x[j];
    x[i] = s / l_[i * n_ + i];
  }
}

Vector Cholesky::solve(std::span<const double> rhs) const {
  Vector x(rhs.begin(), rhs.end());
  solve_in_place(x);
  return x;
}

SymMatrix Cholesky::inverse() const {
  SymMatrix inv(n_);
  Vector e(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    solve_in_place(e);
    for (std::size_t i = 0; i < n_; ++i) inv.data()[i * n_ + j] = e[i];
  }
  inv.symmetrize();
  return inv;
}

double norm2(std::span<const double> x) { return std::sqrt(simd::dot(x, x)); }

double dot(std::span<const double> a, std::span<const double> b) { return simd::dot(a, b); }

Vector subtract(std::span<const double> a, std::span<const double> b) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector add_scaled(std::span<const double> a, double alpha, std::span<const double> b) {
  Vector r(a.begin(), a.end());
  simd::axpy(alpha, b, r);
  return r;
}

bool all_finite(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

namespace {

Eigen::VectorXd spectrum(const SymMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.dim());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = 0.5 * (a(i, j) + a(j, i));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace

double min_eigenvalue(const SymMatrix& a) {
  if (a.dim() == 0) return 0.0;
  return spectrum(a).minCoeff();
}

double max_eigenvalue(const SymMatrix& a) {
  if (a.dim() == 0) return 0.0;
  return spectrum(a).maxCoeff();
}

Vector eigenvalues(const SymMatrix& a) {
  const Eigen::VectorXd ev = spectrum(a);
  return Vector(ev.data(), ev.data() + ev.size());
}

}  // namespace sr1pqn
