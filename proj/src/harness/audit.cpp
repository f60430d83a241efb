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
#include <stdexcept>

#include "sr1pqn/harness.hpp"
#include "sr1pqn/matrix_kernel.hpp"

namespace sr1pqn {
namespace {

// Records slack values; a negative slack is a violation at iteration k.
class Tally {
 public:
  explicit Tally(std::string name) { check_.name = std::move(name); }
  void observe(std::size_t k, double slack) {
    if (!seen_ || slack < check_.worst_margin) check_.worst_margin = slack;
    seen_ = true;
    if (slack < 0.0 || std::isnan(slack)) {
      if (check_.passed) check_.first_violation = k;
      check_.passed = false;
    }
  }
  AuditCheck done() { return check_; }
  AuditCheck skipped() {
    check_.skipped = true;
    return check_;
  }

 private:
  AuditCheck check_;
  bool seen_ = false;
};

}  // namespace

bool AuditReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const AuditCheck& c) { return c.passed; });
}

const AuditCheck* AuditReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

AuditReport audit_lemmas(const Trajectory& traj, const SmoothOracle& f, const ProxTerm& g,
                         const AuditOptions& opts) {
  AuditReport rep;
  const std::size_t steps = traj.iterations();
  const bool have_matrices = traj.audit.size() == steps;
  if (!opts.records_only && steps > 0 && !have_matrices) {
    throw std::invalid_argument("audit_lemmas: matrices absent (enable record_matrices)");
  }
  const bool use_matrices = !opts.records_only && have_matrices;
  const auto& rec = traj.records;
  const double n = double(f.dim());
  const double mu = f.mu();
  const double lip = f.lip_grad();
  const double lh = f.lip_hess();
  const double kappa = opts.kappa_bar == 0.0 ? lip : opts.kappa_bar;
  const bool cubic = opts.method == Method::kCubicSr1;
  const bool grad_scaled = opts.method == Method::kGradSr1;

  // Lemmas 6/10: F(x_{k+1}) - F(x_k) <= -(mu/2) r_k^2 + 1e-8 (1 + |F(x_k)|)
  {
    Tally t("descent");
    for (std::size_t k = 0; k < steps; ++k) {
      const double lhs = rec[k + 1].fval - rec[k].fval;
      const double rhs = -0.5 * mu * rec[k].r_k * rec[k].r_k + 1e-8 * (1.0 + std::abs(rec[k].fval));
      t.observe(k, rhs - lhs);
    }
    rep.checks.push_back(t.done());
  }

  // Lemma 9: trace G~_k <= n kappa_bar for k >= 1.
  {
    Tally t("trace_cap");
    if (cubic) {
      rep.checks.push_back(t.skipped());
    } else {
      for (std::size_t k = 1; k < rec.size(); ++k) {
        t.observe(k, n * kappa + 1e-10 - rec[k].trace_G);
        if (use_matrices && k < steps) {
          t.observe(k, n * kappa + 1e-10 - traj.audit[k].metric_used.trace());
        }
      }
      rep.checks.push_back(t.done());
    }
  }

  // sum_k r_k^2 <= 2 (F(x_0) - inf F) / mu
  const double gap = std::max(0.0, rec.front().fval - opts.f_star);
  const double c0 = std::sqrt(2.0 * gap / mu);
  {
    Tally t("sum_r_squared");
    const double bound = 2.0 * gap / mu;
    double s = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
      s += rec[k].r_k * rec[k].r_k;
      t.observe(k, bound * (1.0 + 1e-8) - s);
    }
    rep.checks.push_back(t.done());
  }

  // sum_{k=1}^N lambda_k <= 2 L_H C_0 sqrt(N) (Alg. 1) or Theta N^{3/4}.
  {
    Tally t("sum_lambda");
    double theta = lh * c0 + std::sqrt(lh * (lip + n * kappa) * c0);
    if (grad_scaled) theta /= mu;
    // lambda_N of Algorithm 1 needs r_N, so its last row carries no value.
    const std::size_t last = cubic ? (steps == 0 ? 0 : steps - 1) : steps;
    double s = 0.0;
    for (std::size_t N = 1; N <= last; ++N) {
      s += rec[N].lambda_k;
      const double dn = double(N);
      const double bound = cubic ? 2.0 * lh * c0 * std::sqrt(dn) : theta * std::pow(dn, 0.75);
      t.observe(N, bound * (1.0 + 1e-8) + 1e-12 - s);
    }
    rep.checks.push_back(t.done());
  }

  // Lemmas 8/12: V(G~_k) - V(G~_{k+1}) >= mu g_{k+1}^2 / g_k^2 - n lambda_{k+1} (x kappa_bar for Alg. 2)
  {
    Tally t("potential_descent");
    const std::size_t last = cubic ? (steps == 0 ? 0 : steps - 1) : steps;
    for (std::size_t k = 0; k < last; ++k) {
      const double lhs = rec[k].trace_G - rec[k + 1].trace_G;
      const double ratio = rec[k + 1].grad_norm / rec[k].grad_norm;
      const double pen = n * rec[k + 1].lambda_k * (grad_scaled ? kappa : 1.0);
      const double rhs = mu * ratio * ratio - pen;
      t.observe(k, lhs - rhs + 1e-8 * std::max(1.0, std::abs(rec[k].trace_G)));
    }
    rep.checks.push_back(t.done());
  }

  const std::vector<std::string> matrix_checks = {"order_chain", "hessian_bounds", "hessian_drift",
                                                  "stationarity_identity", "curvature",
                                                  "inclusion"};
  if (!use_matrices) {
    for (const auto& name : matrix_checks) rep.checks.push_back(Tally(name).skipped());
    return rep;
  }

  Tally chain("order_chain");
  Tally bounds("hessian_bounds");
  Tally drift("hessian_drift");
  Tally ident("stationarity_identity");
  Tally curv("curvature");
  Tally incl("inclusion");
  SymMatrix j_prev;
  for (std::size_t k = 0; k < steps; ++k) {
    const StepAudit& a = traj.audit[k];
    const SymMatrix jk = average_hessian(f, a.x, a.u, opts.quadrature_panels);

    // Lemma 5 / 9: J_k <= G_{k+1} <= G~_k, all exactly symmetric.
    const bool sym = a.metric_next.is_symmetric() && a.metric_used.is_symmetric();
    chain.observe(k, sym ? 0.0 : -1.0);
    chain.observe(k, min_eigenvalue(a.metric_next - jk) + opts.eig_tol);
    chain.observe(k, min_eigenvalue(a.metric_used - a.metric_next) + opts.eig_tol);

    // Lemma 1: mu I <= J_k <= L I.
    const Vector ev = eigenvalues(jk);
    bounds.observe(k, ev.front() - mu + opts.eig_tol);
    bounds.observe(k, lip - ev.back() + opts.eig_tol);

    // Lemma 2: J_k <= J_{k-1} + L_H (r_k + r_{k-1}) I.
    if (k > 0) {
      SymMatrix rhs = j_prev;
      rhs.add_identity(lh * (rec[k].r_k + rec[k - 1].r_k));
      drift.observe(k, min_eigenvalue(rhs - jk) + opts.eig_tol);
    }

    // ||F'(x_{k+1})|| == ||G~_k u_k - y_k||
    const Vector gu = a.metric_used.multiply(a.u);
    const double wn = norm2(subtract(gu, a.y));
    const double gn = rec[k + 1].grad_norm;
    ident.observe(k, 1e-12 * std::max(1.0, gn) - std::abs(gn - wn));

    // Lemmas 7/11: u^T G~ u <= ||F'(x_k)||^2 / mu
    const double bound = rec[k].grad_norm * rec[k].grad_norm / mu;
    curv.observe(k, bound * (1.0 + 1e-8) - dot(a.u, gu));

    if (!g.is_zero()) incl.observe(k, opts.inclusion_tol - a.inclusion_residual);
    j_prev = jk;
  }
  rep.checks.push_back(chain.done());
  rep.checks.push_back(bounds.done());
  rep.checks.push_back(drift.done());
  rep.checks.push_back(ident.done());
  rep.checks.push_back(curv.done());
  rep.checks.push_back(g.is_zero() ? incl.skipped() : incl.done());
  return rep;
}

}  // namespace sr1pqn
