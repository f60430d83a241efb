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

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace sr1pqn {

using Vector = std::vector<double>;

class NotPositiveDefinite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense row-major rows x cols matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  // A x
  Vector multiply(std::span<const double> x) const;
  // A^T x
  Vector multiply_transposed(std::span<const double> x) const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Dense symmetric n x n matrix with full row-major storage. Mutators that go
// through set() keep both triangles equal; raw writes through data() must be
// followed by symmetrize().
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  static SymMatrix identity(std::size_t n, double scale = 1.0);
  static SymMatrix diagonal(std::span<const double> diag);

  std::size_t dim() const { return n_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }

  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  double trace() const;
  void add_identity(double s);
  void scale(double s);
  // this += alpha * w w^T, then symmetrize.
  void rank1_update(double alpha, std::span<const double> w);
  // (R + R^T) / 2
  void symmetrize();
  bool is_symmetric() const;

  Vector multiply(std::span<const double> x) const;
  // x^T A x
  double quadratic_form(std::span<const double> x) const;

  SymMatrix operator+(const SymMatrix& other) const;
  SymMatrix operator-(const SymMatrix& other) const;
  bool operator==(const SymMatrix&) const = default;

  double max_abs() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// Lower Cholesky factor of A + shift * I.
class Cholesky {
 public:
  // Throws NotPositiveDefinite when a pivot is not strictly positive.
  explicit Cholesky(const SymMatrix& a, double shift = 0.0);

  static std::optional<Cholesky> try_factor(const SymMatrix& a, double shift = 0.0);

  std::size_t dim() const { return n_; }
  Vector solve(std::span<const double> rhs) const;
  void solve_in_place(std::span<double> x) const;
  SymMatrix inverse() const;

 private:
  Cholesky() = default;
  bool factor(const SymMatrix& a, double shift);

  std::size_t n_ = 0;
  std::vector<double> l_;
};

double norm2(std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);
// a - b
Vector subtract(std::span<const double> a, std::span<const double> b);
// a + alpha * b
Vector add_scaled(std::span<const double> a, double alpha, std::span<const double> b);
bool all_finite(std::span<const double> x);

// Eigen-backed spectral helpers on the symmetric part of the argument.
double min_eigenvalue(const SymMatrix& a);
double max_eigenvalue(const SymMatrix& a);
Vector eigenvalues(const SymMatrix& a);

}  // namespace sr1pqn
