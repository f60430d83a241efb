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

// Independent oracles for the tests. Everything here goes through Eigen
// rather than the library's own kernels.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>

#include "sr1pqn/linalg.hpp"

namespace testutil {

inline Eigen::MatrixXd to_eigen(const sr1pqn::SymMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.dim());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(std::size_t(i), std::size_t(j));
  }
  return m;
}

inline Eigen::VectorXd to_eigen(const sr1pqn::Vector& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), Eigen::Index(v.size()));
}

inline sr1pqn::SymMatrix from_eigen(const Eigen::MatrixXd& m) {
  sr1pqn::SymMatrix a(std::size_t(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      a.data()[std::size_t(i * m.cols() + j)] = 0.5 * (m(i, j) + m(j, i));
    }
  }
  return a;
}

inline sr1pqn::Vector from_eigen_vec(const Eigen::VectorXd& v) {
  return sr1pqn::Vector(v.data(), v.data() + v.size());
}

inline double eig_min(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(0.5 * (m + m.transpose()),
                                                        Eigen::EigenvaluesOnly)
      .eigenvalues()
      .minCoeff();
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double normal() { return dist_(gen_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  Eigen::VectorXd vec(Eigen::Index n) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = normal();
    return v;
  }
  Eigen::MatrixXd mat(Eigen::Index r, Eigen::Index c) {
    Eigen::MatrixXd m(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = normal();
    }
    return m;
  }
  // Q diag(ev) Q^T with eigenvalues uniform in [lo, hi].
  Eigen::MatrixXd spd(Eigen::Index n, double lo, double hi) {
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(mat(n, n));
    const Eigen::MatrixXd q = qr.householderQ();
    Eigen::VectorXd ev(n);
    for (Eigen::Index i = 0; i < n; ++i) ev(i) = uniform(lo, hi);
    return q * ev.asDiagonal() * q.transpose();
  }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> dist_;
};

// argmin <g, d> + 1/2 d^T H d + (M/3)||d||^3 via the eigenbasis secular
// equation sum_i gt_i^2 / (l_i + M r)^2 = r^2, solved by bisection in
// long double.
inline Eigen::VectorXd cubic_oracle(const Eigen::MatrixXd& h, const Eigen::VectorXd& g, double M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  const Eigen::VectorXd l = es.eigenvalues();
  const Eigen::VectorXd gt = es.eigenvectors().transpose() * g;
  auto psi = [&](long double r) {
    long double s = 0;
    for (Eigen::Index i = 0; i < l.size(); ++i) {
      const long double t = gt(i) / (l(i) + M * r);
      s += t * t;
    }
    return std::sqrt(s) - r;
  };
  long double lo = 0, hi = 1;
  if (M > 0) {
    while (psi(hi) > 0) hi *= 2;
    for (int it = 0; it < 200; ++it) {
      const long double mid = (lo + hi) / 2;
      (psi(mid) > 0 ? lo : hi) = mid;
    }
  } else {
    hi = 0;
  }
  const double r = double((lo + hi) / 2);
  Eigen::VectorXd dt(l.size());
  for (Eigen::Index i = 0; i < l.size(); ++i) dt(i) = -gt(i) / (l(i) + M * r);
  return es.eigenvectors() * dt;
}

}  // namespace testutil
