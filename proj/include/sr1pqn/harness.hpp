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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sr1pqn/linalg.hpp"
#include "sr1pqn/problems.hpp"
#include "sr1pqn/solvers.hpp"
#include "sr1pqn/subproblems.hpp"

namespace sr1pqn {

enum class Method { kCubicSr1, kGradSr1, kGradRegSr1, kGd, kHeavyBall, kCubicNewton };

const char* method_name(Method m);
// Throws std::invalid_argument for an unknown name.
Method parse_method(const std::string& name);
bool is_sr1_method(Method m);

Trajectory run_method(Method m, const SmoothOracle& f, const ProxTerm& g,
                      std::span<const double> x0, const SolverConfig& cfg);

// ---------------------------------------------------------------------------
// Experiment specs

struct ExperimentSpec {
  std::string name = "experiment";
  std::string problem = "logsumexp";  // logsumexp | logistic
  std::size_t m = 100;
  std::size_t n = 50;
  std::size_t full_m = 500;
  std::size_t full_n = 200;
  std::uint64_t seed = 1;
  double mu = 1.0;
  double kappa_bar_factor = 1.0;
  std::vector<Method> algorithms;
  std::size_t max_iters = 1000;
  double tol = 1e-10;
  double target_ratio = 0.0;
  double x0_radius = 0.0;  // 0: zeros; else uniform in the ball of that radius
  std::filesystem::path dataset;  // resolved against the spec file's directory
  double l1_weight = 0.0;
  double inner_tol = 1e-10;
  std::size_t inner_max_iters = 20000;
  double skip_tol = kDefaultSkipTol;
  bool audit = true;
  // Matrix-based audits store two n x n matrices per iteration and 64
  // Hessians for each J_k; turn off for large problems.
  bool audit_matrices = true;
};

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat `key = value` lines, `#` starts a comment. Unknown keys are errors.
ExperimentSpec parse_experiment_spec(const std::string& text,
                                     const std::filesystem::path& base_dir = {});
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

struct Problem {
  OraclePtr f;
  ProxPtr g;
  Vector x0;
};

Problem build_problem(const ExperimentSpec& spec);

// ---------------------------------------------------------------------------
// Reference solutions and oracles

struct ReferenceSolution {
  Vector x;
  double fval = 0.0;
  double certificate = 0.0;  // norm of the min-norm subgradient of F at x
  double f_star_lower = 0.0; // fval - certificate^2 / (2 mu), a lower bound on inf F
  std::size_t iterations = 0;
};

// High-accuracy solve at tolerance 1e-13: cubic Newton for smooth problems,
// Algorithm 1 otherwise.
ReferenceSolution reference_solve(const SmoothOracle& f, const ProxTerm& g,
                                  std::span<const double> x0);

// int_0^1 hess f(x + t u) dt by composite Gauss-Legendre, `panels` x 8 nodes.
SymMatrix average_hessian(const SmoothOracle& f, std::span<const double> x,
                          std::span<const double> u, std::size_t panels = 8);

// Cubic model minimizer via the secular equation in the eigenbasis of H.
Vector cubic_secular_oracle(const CubicModel& model);

// ---------------------------------------------------------------------------
// Rate envelopes

enum class RateForm { kCubic, kGrad, kGradReg };

std::optional<RateForm> rate_form(Method m);

struct EnvelopePoint {
  std::size_t N = 0;
  double log_ratio = 0.0;  // log(g_N / g_0)
  double log_bound = 0.0;  // (N/2)(log C - p log N)
  bool passed = true;
  bool pre_superlinear = false;  // log_bound >= 0
};

struct EnvelopeReport {
  RateForm form = RateForm::kCubic;
  double C0 = 0.0;
  double theta = 0.0;  // unused for the cubic form
  double C = 0.0;      // C or C_grad
  double f_star = 0.0;
  std::vector<EnvelopePoint> points;
  std::optional<std::size_t> first_failure;
  bool passed = true;
};

// Throws std::invalid_argument when f_star is not finite.
EnvelopeReport check_rate_envelope(const Trajectory& traj, const SmoothOracle& f, RateForm form,
                                   double f_star, double kappa_bar);

// ---------------------------------------------------------------------------
// Lemma audits

struct AuditCheck {
  std::string name;
  bool passed = true;
  bool skipped = false;
  std::optional<std::size_t> first_violation;  // iteration index k
  double worst_margin = 0.0;  // smallest slack observed, negative on failure
};

struct AuditReport {
  std::vector<AuditCheck> checks;
  bool passed() const;
  const AuditCheck* find(const std::string& name) const;
};

struct AuditOptions {
  Method method = Method::kCubicSr1;
  double kappa_bar = 0.0;  // 0 means L
  double f_star = 0.0;     // lower bound on inf F
  double eig_tol = 1e-6;
  double inclusion_tol = 1e-6;
  std::size_t quadrature_panels = 8;
  // Matrix-free audit: only the checks that need no recorded matrices.
  bool records_only = false;
};

// Throws std::invalid_argument if matrices are needed but were not recorded.
AuditReport audit_lemmas(const Trajectory& traj, const SmoothOracle& f, const ProxTerm& g,
                         const AuditOptions& opts);

// ---------------------------------------------------------------------------
// Running experiments

// Header: iter,fval,grad_norm,r_k,lambda_k,trace_G,restart,time_s
void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);

struct RunOptions {
  std::filesystem::path out_dir;
  bool audits = true;  // false in bench mode
  bool quiet = false;
};

struct AlgorithmResult {
  Method method;
  Trajectory trajectory;
  std::optional<EnvelopeReport> envelope;
  std::optional<AuditReport> audit;
  std::string error;  // solver exception text, if any
};

struct ExperimentResult {
  std::vector<AlgorithmResult> runs;
  std::optional<ReferenceSolution> reference;
  double empirical_lip_hess = 0.0;
  bool passed = true;
};

// Throws SpecError for an invalid spec (including an empty algorithm list)
// before any file is written.
ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& opts,
                                std::ostream& log);

// ---------------------------------------------------------------------------
// Property checks (the `check` subcommand)

bool run_property_checks(std::uint64_t seed, std::ostream& out);

}  // namespace sr1pqn
