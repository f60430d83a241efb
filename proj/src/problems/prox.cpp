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
#include <memory>
#include <stdexcept>

#include "sr1pqn/problems.hpp"

namespace sr1pqn {
namespace {

class ZeroProx final : public ProxTerm {
 public:
  double value(std::span<const double>) const override { return 0.0; }
  Vector prox(std::span<const double> v, double) const override { return Vector(v.begin(), v.end()); }
  double subdifferential_distance(std::span<const double>, std::span<const double> v) const override {
    return norm2(v);
  }
  bool is_zero() const override { return true; }
};

class L1Prox final : public ProxTerm {
 public:
  explicit L1Prox(double weight) : weight_(weight) {}

  double value(std::span<const double> x) const override {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return weight_ * s;
  }

  Vector prox(std::span<const double> v, double t) const override {
    const double thr = weight_ * t;
    Vector z(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double a = std::abs(v[i]) - thr;
      z[i] = a > 0.0 ? std::copysign(a, v[i]) : 0.0;
    }
    return z;
  }

  double subdifferential_distance(std::span<const double> x,
                                  std::span<const double> v) const override {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double e;
      if (x[i] > 0.0) {
        e = v[i] - weight_;
      } else if (x[i] < 0.0) {
        e = v[i] + weight_;
      } else {
        e = std::max(std::abs(v[i]) - weight_, 0.0);
      }
      s += e * e;
    }
    return std::sqrt(s);
  }

  bool is_zero() const override { return weight_ == 0.0; }

 private:
  double weight_;
};

}  // namespace

ProxPtr make_zero_prox() { return std::make_shared<ZeroProx>(); }

ProxPtr make_l1_prox(double weight) {
  if (!(weight >= 0.0) || !std::isfinite(weight)) {
    throw std::invalid_argument("make_l1_prox: weight must be a finite nonnegative number");
  }
  return std::make_shared<L1Prox>(weight);
}

}  // namespace sr1pqn
