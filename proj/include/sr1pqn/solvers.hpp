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
#include <span>
#include <string>
#include <vector>

#include "sr1pqn/linalg.hpp"
#include "sr1pqn/matrix_kernel.hpp"
#include "sr1pqn/problems.hpp"
#include "sr1pqn/subproblems.hpp"

namespace sr1pqn {

// Row k describes x_k: F(x_k), ||F'(x_k)||, the step length r_k = ||x_{k+1} - x_k||
// (0 on the last row), the correction lambda_k and trace of the metric used
// at iteration k, and whether that metric came from a restart.
struct IterationRecord {
  std::size_t iter = 0;
  double fval = 0.0;
  double grad_norm = 0.0;
  double r_k = 0.0;
  double lambda_k = 0.0;
  double trace_G = 0.0;
  bool restart = false;
  double time_s = 0.0;
};

enum class Termination { kStationarityReached, kMaxIters, kSubproblemFailure };

const char* termination_name(Termination t);

// Per-step data for post-hoc lemma audits (SolverConfig::record_matrices).
struct StepAudit {
  Vector x;                 // x_k
  Vector u;                 // x_{k+1} - x_k
  Vector y;                 // grad f(x_{k+1}) - grad f(x_k)
  Vector stationarity;      // F'(x_{k+1})
  SymMatrix metric_used;    // G~_k
  SymMatrix metric_next;    // G_{k+1}, the SR1 output before correction/restart
  double inclusion_residual = 0.0;
  bool sr1_applied = false;
};

struct Trajectory {
  std::string algorithm;
  std::vector<IterationRecord> records;
  Vector final_x;
  Termination termination = Termination::kMaxIters;
  std::string failure;  // message when termination is kSubproblemFailure

  std::size_t restarts = 0;
  std::size_t order_violations = 0;  // SR1 steps skipped on a negative denominator
  std::size_t inverse_fallbacks = 0;
  std::size_t inexact_subproblems = 0;
  double max_inverse_residual = 0.0;  // only tracked with record_matrices

  std::vector<StepAudit> audit;

  std::size_t iterations() const { return records.empty() ? 0 : records.size() - 1; }
};

struct SolverConfig {
  std::size_t max_iters = 1000;
  // Stop once ||F'(x_{k+1})|| <= tol * max(1, ||F'(x_1)||), or at k = 0 when
  // ||F'(x_0)|| <= tol.
  double stationarity_tol = 1e-10;
  // Also stop once ||F'(x_k)|| <= target_ratio * ||F'(x_0)|| (off when 0).
  double target_ratio = 0.0;
  // kappa_bar >= L for the gradient-regularized methods; 0 means L.
  double kappa_bar = 0.0;
  double skip_tol = kDefaultSkipTol;
  InnerConfig inner;
  bool record_matrices = false;
  // Fault injection for the audit tests (honoured by the cubic and additive
  // variants).
  bool resymmetrize = true;
  std::uint64_t seed = 1;
};

// Algorithm 1.
Trajectory cubic_sr1_pqn(const SmoothOracle& f, const ProxTerm& g, std::span<const double> x0,
                         const SolverConfig& cfg);

// Algorithm 2: scaled correction (1 + lambda) G with trace restart.
Trajectory grad_sr1_pqn(const SmoothOracle& f, const ProxTerm& g, std::span<const double> x0,
                        const SolverConfig& cfg);

// Algorithm 3: additive correction G + lambda I with trace restart.
Trajectory grad_reg_sr1_pqn(const SmoothOracle& f, const ProxTerm& g,
                            std::span<const double> x0, const SolverConfig& cfg);

Trajectory gradient_descent(const SmoothOracle& f, std::span<const double> x0,
                            const SolverConfig& cfg);

// beta = (sqrt L - sqrt mu) / (sqrt L + sqrt mu), tau = 4 / (sqrt L + sqrt mu)^2, x_{-1} = x_0.
Trajectory heavy_ball(const SmoothOracle& f, std::span<const double> x0, const SolverConfig& cfg);

// Cubic model with the exact Hessian and weight L_H / 3.
Trajectory cubic_newton(const SmoothOracle& f, std::span<const double> x0,
                        const SolverConfig& cfg);

}  // namespace sr1pqn
