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

#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "sr1pqn/harness.hpp"

namespace sr1pqn {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};

const char* form_name(RateForm f) {
  switch (f) {
    case RateForm::kCubic: return "cubic";
    case RateForm::kGrad: return "grad";
    case RateForm::kGradReg: return "grad_reg";
  }
  return "unknown";
}

}  // namespace

void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
  std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "w"));
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  std::fputs("iter,fval,grad_norm,r_k,lambda_k,trace_G,restart,time_s\n", f.get());
  for (const IterationRecord& r : traj.records) {
    std::fprintf(f.get(), "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%.17g\n", r.iter, r.fval,
                 r.grad_norm, r.r_k, r.lambda_k, r.trace_G, r.restart ? 1 : 0, r.time_s);
  }
  if (std::ferror(f.get())) throw std::runtime_error("write failed for " + path.string());
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& opts,
                                std::ostream& log) {
  if (spec.algorithms.empty()) throw SpecError("spec: algorithm list is empty");
  if (!(spec.tol > 0.0) || !(spec.inner_tol > 0.0)) throw SpecError("spec: tolerances must be positive");
  const Problem prob = build_problem(spec);
  const SmoothOracle& f = *prob.f;
  const ProxTerm& g = *prob.g;
  for (Method m : spec.algorithms) {
    if (!is_sr1_method(m) && !g.is_zero()) {
      throw SpecError(std::string("spec: ") + method_name(m) + " cannot handle l1_weight > 0");
    }
  }
  const double kappa = spec.kappa_bar_factor * f.lip_grad();

  std::filesystem::create_directories(opts.out_dir);
  ExperimentResult result;
  std::ostringstream summary;
  summary.precision(17);
  summary << "experiment " << spec.name << "\n";
  summary << "problem " << spec.problem << " n=" << f.dim() << " mu=" << f.mu()
          << " L=" << f.lip_grad() << " L_H=" << f.lip_hess() << " kappa_bar=" << kappa << "\n";

  if (opts.audits) {
    result.reference = reference_solve(f, g, prob.x0);
    result.empirical_lip_hess =
        estimate_hessian_lipschitz(f, result.reference->x, 1.0, 8, spec.seed);
    summary << "reference F*>=" << result.reference->f_star_lower
            << " certificate=" << result.reference->certificate
            << " iterations=" << result.reference->iterations << "\n";
    summary << "empirical L_H=" << result.empirical_lip_hess << " (paper constant "
            << f.lip_hess() << ")\n";
  }

  for (Method m : spec.algorithms) {
    AlgorithmResult ar{m, {}, std::nullopt, std::nullopt, {}};
    SolverConfig cfg;
    cfg.max_iters = spec.max_iters;
    cfg.stationarity_tol = spec.tol;
    cfg.target_ratio = spec.target_ratio;
    cfg.kappa_bar = kappa;
    cfg.skip_tol = spec.skip_tol;
    cfg.inner.tol = spec.inner_tol;
    cfg.inner.max_iters = spec.inner_max_iters;
    cfg.seed = spec.seed;
    cfg.record_matrices = opts.audits && spec.audit_matrices && is_sr1_method(m);
    if (!opts.quiet) log << "running " << method_name(m) << " ..." << std::endl;
    try {
      ar.trajectory = run_method(m, f, g, prob.x0, cfg);
    } catch (const std::exception& e) {
      ar.error = e.what();
      result.passed = false;
      summary << "algorithm " << method_name(m) << " error: " << ar.error << "\n";
      if (!opts.quiet) log << "  failed: " << ar.error << std::endl;
      result.runs.push_back(std::move(ar));
      continue;
    }
    const Trajectory& t = ar.trajectory;
    write_trajectory_csv(t, opts.out_dir / (std::string(method_name(m)) + ".csv"));
    const auto& last = t.records.back();
    summary << "algorithm " << method_name(m) << " iterations=" << t.iterations()
            << " termination=" << termination_name(t.termination)
            << " final_grad_norm=" << last.grad_norm << " final_f=" << last.fval
            << " time_s=" << last.time_s << " restarts=" << t.restarts
            << " order_violations=" << t.order_violations
            << " inverse_fallbacks=" << t.inverse_fallbacks
            << " inexact_subproblems=" << t.inexact_subproblems << "\n";
    if (t.termination == Termination::kSubproblemFailure) {
      summary << "  failure: " << t.failure << "\n";
      result.passed = false;
    }
    if (opts.audits && is_sr1_method(m)) {
      const double f_star = result.reference->f_star_lower;
      ar.envelope = check_rate_envelope(t, f, *rate_form(m), f_star, kappa);
      const EnvelopeReport& env = *ar.envelope;
      std::size_t pre = 0;
      for (const auto& p : env.points) pre += p.pre_superlinear ? 1 : 0;
      summary << "  envelope form=" << form_name(env.form) << " C0=" << env.C0
              << " Theta=" << env.theta << " C=" << env.C
              << " pre_superlinear_points=" << pre << "/" << env.points.size()
              << (env.passed ? " PASS" : " FAIL");
      if (env.first_failure) summary << " first_failure=" << *env.first_failure;
      summary << "\n";
      result.passed = result.passed && env.passed;

      AuditOptions ao;
      ao.method = m;
      ao.kappa_bar = kappa;
      ao.f_star = f_star;
      ao.records_only = !spec.audit_matrices;
      ar.audit = audit_lemmas(t, f, g, ao);
      for (const AuditCheck& c : ar.audit->checks) {
        summary << "  audit " << c.name << " "
                << (c.skipped ? "skipped" : c.passed ? "pass" : "FAIL");
        if (c.first_violation) summary << " first_violation=" << *c.first_violation;
        if (!c.skipped) summary << " worst_margin=" << c.worst_margin;
        summary << "\n";
      }
      result.passed = result.passed && ar.audit->passed();
    }
    if (!opts.quiet) {
      log << "  " << t.iterations() << " iterations, " << termination_name(t.termination)
          << ", |F'| = " << last.grad_norm << std::endl;
    }
    result.runs.push_back(std::move(ar));
  }
  summary << "status " << (result.passed ? "PASS" : "FAIL") << "\n";
  std::ofstream(opts.out_dir / "summary.txt") << summary.str();
  return result;
}

}  // namespace sr1pqn
