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

#include "sr1pqn/linalg.hpp"

namespace sr1pqn {

inline constexpr double kDefaultSkipTol = 1e-12;

// u^T (G u - y) is negative beyond tolerance, so y is not the action of some
// A with A <= G.
class OrderViolation : public std::runtime_error {
 public:
  explicit OrderViolation(double denominator)
      : std::runtime_error("SR1 denominator is negative"), denominator_(denominator) {}
  double denominator() const { return denominator_; }

 private:
  double denominator_;
};

class NonFiniteInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Sr1Options {
  double skip_tol = kDefaultSkipTol;
  // Diagnostic switch for fault-injection tests. Leave on.
  bool resymmetrize = true;
};

struct Sr1Result {
  SymMatrix metric;
  double nu = 0.0;       // trace(G) - trace(metric)
  bool applied = false;  // false when the update was skipped
};

Sr1Result sr1_step(const SymMatrix& g, std::span<const double> u, std::span<const double> y,
                   const Sr1Options& opts = {});

// G - w w^T / (u^T w) with w = G u - y, or G when u^T w is negligible.
SymMatrix sr1_update(const SymMatrix& g, std::span<const double> u, std::span<const double> y,
                     double skip_tol = kDefaultSkipTol);

// ||w||^2 / (u^T w), 0 on the skip branch.
double nu_measure(const SymMatrix& g, std::span<const double> u, std::span<const double> y,
                  double skip_tol = kDefaultSkipTol);

double trace_potential(const SymMatrix& g);

// lambda_min(B - A) >= -tol
bool loewner_leq(const SymMatrix& a, const SymMatrix& b, double tol);

// Solves G d = rhs through a Cholesky factorization. Throws NotPositiveDefinite.
Vector solve_metric(const SymMatrix& g, std::span<const double> rhs);

enum class Correction {
  kAdditive,  // G + lambda I
  kScaled,    // (1 + lambda) G
};

struct MetricState {
  SymMatrix G;
  double lambda = 0.0;
  double r_prev = 0.0;
  double trace_cache = 0.0;            // trace of corrected()
  std::optional<SymMatrix> inv_cache;  // inverse of corrected()
  Correction correction = Correction::kScaled;
  std::size_t fallbacks = 0;

  static MetricState initial(std::size_t n, double lip, Correction correction,
                             bool with_inverse);

  std::size_t dim() const { return G.dim(); }
  SymMatrix corrected() const;
  // G = lip * I, lambda = 0; caches rebuilt.
  void restart(double lip);
  // Recomputes trace_cache and, when present, inv_cache from scratch.
  void refresh();
};

struct InverseUpdateInfo {
  double nu = 0.0;
  bool applied = false;
  bool fallback = false;
};

// Replaces the state's metric by sr1_update(G~, u, y) with correction
// lambda_next and keeps trace_cache and inv_cache in step. The inverse is
// carried by a Sherman-Morrison update followed by a 1/(1+lambda_next)
// rescale; a fresh factorization is used when the rank-1 denominator is tiny
// or a probe detects drift. Propagates OrderViolation with the state intact.
InverseUpdateInfo sm_inverse_update(MetricState& state, std::span<const double> u,
                                    std::span<const double> y, double lambda_next,
                                    double skip_tol = kDefaultSkipTol);

// Keeps G~ as the new SR1 metric and applies lambda_next on top of it.
void skip_update(MetricState& state, double lambda_next);

// max_ij |(A B - I)_ij|
double inverse_residual(const SymMatrix& a, const SymMatrix& b);

}  // namespace sr1pqn
