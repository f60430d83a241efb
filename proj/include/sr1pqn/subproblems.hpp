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
#include <span>
#include <stdexcept>

#include "sr1pqn/linalg.hpp"
#include "sr1pqn/problems.hpp"

namespace sr1pqn {

// <grad, d> + 1/2 d^T H d + (M/3) ||d||^3
struct CubicModel {
  Vector grad;
  SymMatrix H;
  double M = 0.0;

  double value(std::span<const double> d) const;
};

struct SubproblemReport {
  Vector d;
  double residual = 0.0;  // first-order or inclusion residual at d
  std::size_t inner_iters = 0;
  double lambda_star = 0.0;  // M ||d|| for cubic steps
  bool converged = true;
};

struct InnerConfig {
  double tol = 1e-10;
  std::size_t max_iters = 20000;
};

class SubproblemFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Minimizes the cubic model by bisection on phi(r) = ||(H + M r I)^{-1} grad|| - r.
// converged is false when the residual ||grad + (H + M||d|| I) d|| exceeds
// tol * max(1, ||grad||). Throws NotPositiveDefinite for a non-PD H and
// SubproblemFailure if no bracket is found.
SubproblemReport cubic_step_smooth(const CubicModel& model, double tol = 1e-10);

// argmin_d g(x + d) + <grad, d> + 1/2 d^T G d. With the zero term the step is
// -G^{-1} grad, using inverse when given. Otherwise an accelerated proximal
// loop runs until the inclusion residual dist(-(grad + G d), dg(x + d)) is at
// most inner.tol.
SubproblemReport metric_prox_step(const ProxTerm& g, std::span<const double> x,
                                  std::span<const double> grad, const SymMatrix& metric,
                                  const InnerConfig& inner, const SymMatrix* inverse = nullptr);

// Composite cubic step: argmin_d g(x + d) + model(d). Delegates to
// cubic_step_smooth for the zero term; the residual is
// dist(-(grad + (H + M||d|| I) d), dg(x + d)).
SubproblemReport cubic_prox_step(const ProxTerm& g, std::span<const double> x,
                                 const CubicModel& model, const InnerConfig& inner);

}  // namespace sr1pqn
