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
#include <cstdio>
#include <ostream>
#include <string>

#include "sr1pqn/harness.hpp"
#include "sr1pqn/matrix_kernel.hpp"
#include "sr1pqn/random.hpp"

namespace sr1pqn {
namespace {

// Random SPD matrix with smallest eigenvalue at least lo.
SymMatrix random_spd(NormalSampler& rng, std::size_t n, double lo, double hi) {
  SymMatrix a(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vector v = rng.on_sphere(n, 1.0);
    a.rank1_update(lo + (hi - lo) * rng.uniform(), v);
  }
  a.add_identity(lo);
  return a;
}

// Random PSD perturbation of rank at most r.
SymMatrix random_psd(NormalSampler& rng, std::size_t n, std::size_t r) {
  SymMatrix d(n);
  for (std::size_t k = 0; k < r; ++k) d.rank1_update(rng.uniform(), rng.normal_vector(n));
  return d;
}

struct Line {
  std::ostream& out;
  bool ok = true;
  void report(const std::string& name, bool pass, const std::string& detail) {
    out << (pass ? "PASS " : "FAIL ") << name << "  " << detail << "\n";
    ok = ok && pass;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

bool run_property_checks(std::uint64_t seed, std::ostream& out) {
  Line line{out};
  NormalSampler rng(seed);

  // SR1 order preservation and the potential identity.
  {
    double worst_order = 0.0;
    double worst_identity = 0.0;
    double worst_lower = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t n = 2 + std::size_t(rng.uniform() * 19.0);
      const SymMatrix a = random_spd(rng, n, 0.1, 2.0);
      const SymMatrix gm = a + random_psd(rng, n, 1 + std::size_t(rng.uniform() * double(n)));
      const Vector u = rng.normal_vector(n);
      const Vector y = a.multiply(u);
      const Sr1Result r = sr1_step(gm, u, y);
      worst_order = std::min({worst_order, min_eigenvalue(r.metric - a), min_eigenvalue(gm - r.metric)});
      worst_identity = std::max(worst_identity, std::abs(gm.trace() - r.metric.trace() - r.nu));
      if (r.applied) {
        const Vector w = subtract(gm.multiply(u), y);
        worst_lower = std::min(worst_lower, r.nu - dot(w, w) / gm.quadratic_form(u));
      }
    }
    line.report("sr1_order_preservation", worst_order >= -1e-10,
                "1000 trials, min eigen slack " + fmt(worst_order));
    line.report("sr1_potential_identity", worst_identity <= 1e-10,
                "max |dV - nu| " + fmt(worst_identity));
    line.report("sr1_nu_lower_bound", worst_lower >= -1e-10, "min slack " + fmt(worst_lower));
  }

  // Cubic subproblem against the eigenbasis secular oracle.
  {
    double worst_d = 0.0;
    double worst_val = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      CubicModel model{rng.normal_vector(5), random_spd(rng, 5, 0.1, 10.0), 0.1 + 3.0 * rng.uniform()};
      const SubproblemReport rep = cubic_step_smooth(model);
      const Vector d = cubic_secular_oracle(model);
      worst_d = std::max(worst_d, norm2(subtract(rep.d, d)));
      worst_val = std::max(worst_val, std::abs(model.value(rep.d) - model.value(d)));
    }
    line.report("cubic_subproblem_oracle", worst_d <= 1e-8 && worst_val <= 1e-8,
                "200 instances, max |d - d*| " + fmt(worst_d) + ", max |m - m*| " + fmt(worst_val));
  }

  // Finite-difference checks on both problem oracles.
  {
    Dataset lse = gen_random_logsumexp(30, 8, seed);
    Dataset logi = gen_random_logsumexp(40, 8, seed + 1);
    for (double& b : logi.labels) b = b >= 0.0 ? 1.0 : -1.0;
    const OraclePtr oracles[] = {make_logsumexp(lse, 0.5), make_logistic(logi, 0.1)};
    const char* names[] = {"logsumexp", "logistic"};
    for (int o = 0; o < 2; ++o) {
      const SmoothOracle& f = *oracles[o];
      double worst_g = 0.0;
      double worst_h = 0.0;
      for (int p = 0; p < 10; ++p) {
        const Vector x = rng.normal_vector(f.dim());
        const Vector gx = f.gradient(x);
        const SymMatrix hx = f.hessian(x);
        const double h = 1e-5;
        Vector fd(f.dim());
        SymMatrix hfd(f.dim());
        for (std::size_t i = 0; i < f.dim(); ++i) {
          Vector xp = x, xm = x;
          xp[i] += h;
          xm[i] -= h;
          fd[i] = (f.value(xp) - f.value(xm)) / (2.0 * h);
          const Vector gp = f.gradient(xp), gm = f.gradient(xm);
          for (std::size_t j = 0; j < f.dim(); ++j) hfd.data()[j * f.dim() + i] = (gp[j] - gm[j]) / (2.0 * h);
        }
        hfd.symmetrize();
        worst_g = std::max(worst_g, norm2(subtract(fd, gx)) / std::max(1.0, norm2(gx)));
        worst_h = std::max(worst_h, (hfd - hx).max_abs() / std::max(1.0, hx.max_abs()));
      }
      line.report(std::string("finite_difference_") + names[o], worst_g <= 1e-6 && worst_h <= 1e-5,
                  "gradient rel " + fmt(worst_g) + ", hessian rel " + fmt(worst_h));
    }
  }

  // Prox nonexpansiveness.
  {
    const ProxPtr l1 = make_l1_prox(0.3);
    double worst = 0.0;
    for (int p = 0; p < 200; ++p) {
      const Vector a = rng.normal_vector(6), b = rng.normal_vector(6);
      const double t = 0.1 + rng.uniform();
      worst = std::max(worst, norm2(subtract(l1->prox(a, t), l1->prox(b, t))) - norm2(subtract(a, b)));
    }
    line.report("l1_prox_nonexpansive", worst <= 1e-15, "max excess " + fmt(worst));
  }

  // Short audited runs of the three SR1 methods.
  {
    const OraclePtr f = make_logsumexp(gen_random_logsumexp(40, 10, seed), 1.0);
    const ProxPtr g = make_zero_prox();
    const Vector x0(f->dim(), 0.0);
    const ReferenceSolution ref = reference_solve(*f, *g, x0);
    for (Method m : {Method::kCubicSr1, Method::kGradSr1, Method::kGradRegSr1}) {
      SolverConfig cfg;
      cfg.max_iters = 60;
      cfg.kappa_bar = 3.0 * f->lip_grad();
      cfg.record_matrices = true;
      const Trajectory t = run_method(m, *f, *g, x0, cfg);
      AuditOptions ao;
      ao.method = m;
      ao.kappa_bar = cfg.kappa_bar;
      ao.f_star = ref.f_star_lower;
      const AuditReport rep = audit_lemmas(t, *f, *g, ao);
      const EnvelopeReport env = check_rate_envelope(t, *f, *rate_form(m), ref.f_star_lower, cfg.kappa_bar);
      std::string failed;
      for (const auto& c : rep.checks) {
        if (!c.passed) failed += " " + c.name;
      }
      const bool ok = rep.passed() && env.passed && t.termination == Termination::kStationarityReached;
      line.report(std::string("audited_run_") + method_name(m), ok,
                  std::to_string(t.iterations()) + " iterations" +
                      (failed.empty() ? "" : ", failed:" + failed) +
                      (env.passed ? "" : ", envelope violated"));
    }
  }

  out << (line.ok ? "all checks passed" : "some checks FAILED") << "\n";
  return line.ok;
}

}  // namespace sr1pqn
