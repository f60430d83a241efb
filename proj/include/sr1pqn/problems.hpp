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
#include <cstdint>
#include <memory>
#include <span>

#include "sr1pqn/dataset.hpp"
#include "sr1pqn/linalg.hpp"

namespace sr1pqn {

struct OracleConstants {
  double mu = 0.0;        // strong convexity
  double lip_grad = 0.0;  // L
  double lip_hess = 0.0;  // L_H
};

class SmoothOracle {
 public:
  explicit SmoothOracle(OracleConstants c) : constants_(c) {}
  virtual ~SmoothOracle() = default;

  virtual std::size_t dim() const = 0;
  virtual double value(std::span<const double> x) const = 0;
  // Writes the gradient and returns the value.
  virtual double value_and_gradient(std::span<const double> x, std::span<double> grad) const = 0;
  virtual SymMatrix hessian(std::span<const double> x) const = 0;

  Vector gradient(std::span<const double> x) const;

  // grad f(x + u) - grad f(x). Overrides evaluate it without cancellation so
  // that tiny steps keep full relative accuracy.
  virtual Vector gradient_difference(std::span<const double> x, std::span<const double> u) const;

  const OracleConstants& constants() const { return constants_; }
  double mu() const { return constants_.mu; }
  double lip_grad() const { return constants_.lip_grad; }
  double lip_hess() const { return constants_.lip_hess; }

 private:
  OracleConstants constants_;
};

using OraclePtr = std::shared_ptr<const SmoothOracle>;

// log sum_i exp(a_i^T x - b_i) + mu/2 ||x||^2, L = mu + 2 sum ||a_i||^2, L_H = 2.
OraclePtr make_logsumexp(Dataset data, double mu);

// (1/m) sum_i log(1 + exp(-b_i a_i^T x)) + mu/2 ||x||^2 with b_i in {-1, +1},
// L = mu + 2 sum ||a_i||^2, L_H = 2.
OraclePtr make_logistic(Dataset data, double mu);

// 1/2 x^T A x - b^T x. mu and L default to the extreme eigenvalues of A.
OraclePtr make_quadratic(SymMatrix a, Vector b, double lip_hess = 0.0);

class ProxTerm {
 public:
  virtual ~ProxTerm() = default;
  virtual double value(std::span<const double> x) const = 0;
  // argmin_z g(z) + ||z - v||^2 / (2 t)
  virtual Vector prox(std::span<const double> v, double t) const = 0;
  // Euclidean distance from v to the subdifferential of g at x.
  virtual double subdifferential_distance(std::span<const double> x,
                                          std::span<const double> v) const = 0;
  virtual bool is_zero() const { return false; }
};

using ProxPtr = std::shared_ptr<const ProxTerm>;

ProxPtr make_zero_prox();

// weight * ||x||_1. Throws std::invalid_argument for a negative weight.
ProxPtr make_l1_prox(double weight);

// max over random pairs around center of ||H(x) - H(y)||_2 / ||x - y||.
double estimate_hessian_lipschitz(const SmoothOracle& f, std::span<const double> center,
                                  double radius, std::size_t pairs, std::uint64_t seed);

}  // namespace sr1pqn
