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

#include <cmath>
#include <stdexcept>
#include <string>

#include "recorder.hpp"
#include "sr1pqn/solvers.hpp"

namespace sr1pqn {
namespace {

using detail::Recorder;

InnerConfig step_inner(const SolverConfig& cfg, double grad_norm) {
  InnerConfig in = cfg.inner;
  in.tol = std::min(in.tol, 1e-2 * grad_norm);
  return in;
}

// y - G~ u
Vector stationarity_vector(const SymMatrix& metric, std::span<const double> u,
                           std::span<const double> y) {
  Vector s = metric.multiply(u);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = y[i] - s[i];
  return s;
}

void check_start(const SmoothOracle& f, std::span<const double> x0) {
  if (x0.size() != f.dim()) throw std::invalid_argument("solver: x0 has the wrong dimension");
  if (!all_finite(x0)) throw std::invalid_argument("solver: x0 is not finite");
}

Trajectory gradient_regularized(const SmoothOracle& f, const ProxTerm& g,
                                std::span<const double> x0, const SolverConfig& cfg,
                                Correction correction) {
  check_start(f, x0);
  const std::size_t n = f.dim();
  const double mu = f.mu();
  const double lip = f.lip_grad();
  const double lh = f.lip_hess();
  const double kappa = cfg.kappa_bar == 0.0 ? lip : cfg.kappa_bar;
  if (kappa < lip) throw std::invalid_argument("solver: kappa_bar must be >= L");
  const double trace_cap = double(n) * kappa;
  const bool scaled = correction == Correction::kScaled;
  const bool use_inverse = scaled && g.is_zero();

  Recorder rec(scaled ? "grad_sr1_pqn" : "grad_reg_sr1_pqn", cfg);
  Trajectory& traj = rec.trajectory();
  MetricState state = MetricState::initial(n, lip, correction, use_inverse);

  Vector x(x0.begin(), x0.end());
  Vector grad(n);
  double fx = f.value_and_gradient(x, grad) + g.value(x);
  double gk = detail::initial_stationarity(g, x, grad);
  if (rec.start(fx, gk, state.lambda, state.trace_cache)) return rec.finish(std::move(x));

  Vector grad_next(n);
  for (;;) {
    const SymMatrix metric = state.corrected();
    SubproblemReport step;
    try {
      step = metric_prox_step(g, x, grad, metric, step_inner(cfg, gk),
                              use_inverse ? &*state.inv_cache : nullptr);
    } catch (const std::exception& e) {
      rec.fail(e.what());
      break;
    }
    if (!step.converged) ++traj.inexact_subproblems;

    Vector x_next = add_scaled(x, 1.0, step.d);
    const double f_next = f.value_and_gradient(x_next, grad_next) + g.value(x_next);
    const Vector u = subtract(x_next, x);
    const Vector y = f.gradient_difference(x, u);
    const double r = norm2(u);
    const Vector fprime = stationarity_vector(metric, u, y);
    const double g_next = norm2(fprime);

    const double root = std::sqrt(lh * g_next) + lh * r;
    const double lambda_next = scaled ? root / mu : root;
    bool applied = false;
    try {
      const InverseUpdateInfo info = sm_inverse_update(state, u, y, lambda_next, cfg.skip_tol);
      applied = info.applied;
    } catch (const OrderViolation&) {
      ++traj.order_violations;
      skip_update(state, lambda_next);
    }
    if (!cfg.resymmetrize && applied) {
      // Redo the rank-1 step without the symmetrization pass.
      const Sr1Result raw = sr1_step(metric, u, y, Sr1Options{cfg.skip_tol, false});
      state.G = raw.metric;
    }

    if (cfg.record_matrices) {
      rec.clock().pause();
      traj.audit.push_back(StepAudit{x, u, y, fprime, metric, state.G, step.residual, applied});
      rec.clock().resume();
    }

    bool restart = false;
    if (state.trace_cache > trace_cap) {
      state.restart(lip);
      ++traj.restarts;
      restart = true;
    }
    traj.inverse_fallbacks = state.fallbacks;
    if (use_inverse && cfg.record_matrices) {
      rec.clock().pause();
      traj.max_inverse_residual = std::max(traj.max_inverse_residual,
                                           inverse_residual(state.corrected(), *state.inv_cache));
      rec.clock().resume();
    }

    x = std::move(x_next);
    grad.swap(grad_next);
    fx = f_next;
    gk = g_next;
    if (rec.advance(r, fx, gk, lambda_next, state.trace_cache, restart)) break;
  }
  return rec.finish(std::move(x));
}

}  // namespace

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::kStationarityReached: return "stationarity_reached";
    case Termination::kMaxIters: return "max_iters";
    case Termination::kSubproblemFailure: return "subproblem_failure";
  }
  return "unknown";
}

Trajectory cubic_sr1_pqn(const SmoothOracle& f, const ProxTerm& g, std::span<const double> x0,
                         const SolverConfig& cfg) {
  check_start(f, x0);
  const std::size_t n = f.dim();
  const double lh = f.lip_hess();

  Recorder rec("cubic_sr1_pqn", cfg);
  Trajectory& traj = rec.trajectory();
  SymMatrix G = SymMatrix::identity(n, f.lip_grad());
  double r_prev = 0.0;

  Vector x(x0.begin(), x0.end());
  Vector grad(n);
  double fx = f.value_and_gradient(x, grad) + g.value(x);
  double gk = detail::initial_stationarity(g, x, grad);
  if (rec.start(fx, gk, 0.0, G.trace())) return rec.finish(std::move(x));

  Vector grad_next(n);
  for (;;) {
    CubicModel model{grad, G, lh};
    model.H.add_identity(lh * r_prev);
    SubproblemReport step;
    try {
      step = cubic_prox_step(g, x, model, step_inner(cfg, gk));
    } catch (const std::exception& e) {
      rec.fail(e.what());
      break;
    }
    if (!step.converged) ++traj.inexact_subproblems;

    Vector x_next = add_scaled(x, 1.0, step.d);
    const Vector u = subtract(x_next, x);
    const double r = norm2(u);
    const double lambda = lh * (r_prev + r);
    SymMatrix metric = G;
    metric.add_identity(lambda);
    rec.current().lambda_k = lambda;
    rec.current().trace_G = metric.trace();

    const double f_next = f.value_and_gradient(x_next, grad_next) + g.value(x_next);
    const Vector y = f.gradient_difference(x, u);
    const Vector fprime = stationarity_vector(metric, u, y);
    const double g_next = norm2(fprime);

    bool applied = false;
    try {
      Sr1Result upd = sr1_step(metric, u, y, Sr1Options{cfg.skip_tol, cfg.resymmetrize});
      applied = upd.applied;
      G = std::move(upd.metric);
    } catch (const OrderViolation&) {
      ++traj.order_violations;
      G = metric;
    }

    if (cfg.record_matrices) {
      rec.clock().pause();
      traj.audit.push_back(StepAudit{x, u, y, fprime, metric, G, step.residual, applied});
      rec.clock().resume();
    }

    r_prev = r;
    x = std::move(x_next);
    grad.swap(grad_next);
    fx = f_next;
    gk = g_next;
    if (rec.advance(r, fx, gk, 0.0, G.trace(), false)) break;
  }
  return rec.finish(std::move(x));
}

Trajectory grad_sr1_pqn(const SmoothOracle& f, const ProxTerm& g, std::span<const double> x0,
                        const SolverConfig& cfg) {
  return gradient_regularized(f, g, x0, cfg, Correction::kScaled);
}

Trajectory grad_reg_sr1_pqn(const SmoothOracle& f, const ProxTerm& g,
                            std::span<const double> x0, const SolverConfig& cfg) {
  return gradient_regularized(f, g, x0, cfg, Correction::kAdditive);
}

Trajectory gradient_descent(const SmoothOracle& f, std::span<const double> x0,
                            const SolverConfig& cfg) {
  check_start(f, x0);
  const double step = 1.0 / f.lip_grad();
  Recorder rec("gd", cfg);
  Vector x(x0.begin(), x0.end());
  Vector grad(f.dim());
  double fx = f.value_and_gradient(x, grad);
  if (rec.start(fx, norm2(grad), 0.0, 0.0)) return rec.finish(std::move(x));
  for (;;) {
    const double r = step * norm2(grad);
    x = add_scaled(x, -step, grad);
    fx = f.value_and_gradient(x, grad);
    if (rec.advance(r, fx, norm2(grad), 0.0, 0.0, false)) break;
  }
  return rec.finish(std::move(x));
}

Trajectory heavy_ball(const SmoothOracle& f, std::span<const double> x0, const SolverConfig& cfg) {
  check_start(f, x0);
  const double sl = std::sqrt(f.lip_grad());
  const double sm = std::sqrt(f.mu());
  const double beta = (sl - sm) / (sl + sm);
  const double tau = 4.0 / ((sl + sm) * (sl + sm));
  Recorder rec("heavy_ball", cfg);
  Vector x(x0.begin(), x0.end());
  Vector x_prev = x;
  Vector grad(f.dim());
  double fx = f.value_and_gradient(x, grad);
  if (rec.start(fx, norm2(grad), 0.0, 0.0)) return rec.finish(std::move(x));
  Vector x_next(f.dim());
  for (;;) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      x_next[i] = x[i] - tau * grad[i] + beta * (x[i] - x_prev[i]);
    }
    const double r = norm2(subtract(x_next, x));
    x_prev.swap(x);
    x.swap(x_next);
    fx = f.value_and_gradient(x, grad);
    if (rec.advance(r, fx, norm2(grad), 0.0, 0.0, false)) break;
  }
  return rec.finish(std::move(x));
}

Trajectory cubic_newton(const SmoothOracle& f, std::span<const double> x0,
                        const SolverConfig& cfg) {
  check_start(f, x0);
  Recorder rec("cubic_newton", cfg);
  Trajectory& traj = rec.trajectory();
  Vector x(x0.begin(), x0.end());
  Vector grad(f.dim());
  double fx = f.value_and_gradient(x, grad);
  SymMatrix hess = f.hessian(x);
  if (rec.start(fx, norm2(grad), 0.0, hess.trace())) return rec.finish(std::move(x));
  for (;;) {
    SubproblemReport step;
    try {
      step = cubic_step_smooth(CubicModel{grad, hess, f.lip_hess()}, cfg.inner.tol);
    } catch (const std::exception& e) {
      rec.fail(e.what());
      break;
    }
    if (!step.converged) ++traj.inexact_subproblems;
    rec.current().lambda_k = step.lambda_star;
    x = add_scaled(x, 1.0, step.d);
    fx = f.value_and_gradient(x, grad);
    hess = f.hessian(x);
    if (rec.advance(norm2(step.d), fx, norm2(grad), 0.0, hess.trace(), false)) break;
  }
  return rec.finish(std::move(x));
}

}  // namespace sr1pqn
