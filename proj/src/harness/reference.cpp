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

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sr1pqn/harness.hpp"
#include "sr1pqn/simd.hpp"

namespace sr1pqn {
namespace {

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 4> kGlNodes = {0.1834346424956498, 0.5255324099163290,
                                            0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> kGlWeights = {0.3626837833783620, 0.3137066458778873,
                                              0.2223810344533745, 0.1012285362903763};

}  // namespace

ReferenceSolution reference_solve(const SmoothOracle& f, const ProxTerm& g,
                                  std::span<const double> x0) {
  SolverConfig cfg;
  cfg.stationarity_tol = 1e-13;
  cfg.max_iters = 2000;
  cfg.inner.tol = 1e-13;
  cfg.inner.max_iters = 100000;
  const Trajectory t = g.is_zero() ? cubic_newton(f, x0, cfg) : cubic_sr1_pqn(f, g, x0, cfg);
  ReferenceSolution ref;
  ref.x = t.final_x;
  ref.iterations = t.iterations();
  Vector grad(f.dim());
  ref.fval = f.value_and_gradient(ref.x, grad) + g.value(ref.x);
  for (double& v : grad) v = -v;
  ref.certificate = g.subdifferential_distance(ref.x, grad);
  ref.f_star_lower = ref.fval - ref.certificate * ref.certificate / (2.0 * f.mu());
  return ref;
}

SymMatrix average_hessian(const SmoothOracle& f, std::span<const double> x,
                          std::span<const double> u, std::size_t panels) {
  if (panels == 0) throw std::invalid_argument("average_hessian: panels must be >= 1");
  const std::size_t n = x.size();
  SymMatrix acc(n);
  const double h = 1.0 / double(panels);
  Vector pt(n);
  auto add_node = [&](double t, double w) {
    for (std::size_t i = 0; i < n; ++i) pt[i] = x[i] + t * u[i];
    const SymMatrix hess = f.hessian(pt);
    simd::kernels().axpy(w, hess.data(), acc.data(), n * n);
  };
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = (double(p) + 0.5) * h;
    for (std::size_t j = 0; j < kGlNodes.size(); ++j) {
      const double off = 0.5 * h * kGlNodes[j];
      const double w = 0.5 * h * kGlWeights[j];
      add_node(mid - off, w);
      add_node(mid + off, w);
    }
  }
  acc.symmetrize();
  return acc;
}

Vector cubic_secular_oracle(const CubicModel& model) {
  const std::size_t n = model.grad.size();
  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd h(ni, ni);
  for (Eigen::Index i = 0; i < ni; ++i) {
    for (Eigen::Index j = 0; j < ni; ++j) h(i, j) = model.H(std::size_t(i), std::size_t(j));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  const Eigen::VectorXd lam = es.eigenvalues();
  const Eigen::VectorXd gt = es.eigenvectors().transpose() *
                             Eigen::Map<const Eigen::VectorXd>(model.grad.data(), ni);
  auto step_norm = [&](double r) {
    return (gt.array() / (lam.array() + model.M * r)).matrix().norm();
  };
  double r = 0.0;
  if (model.M > 0.0 && gt.norm() > 0.0) {
    double lo = 0.0;
    double hi = step_norm(0.0);
    for (int it = 0; it < 2000; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (step_norm(mid) > mid ? lo : hi) = mid;
    }
    r = 0.5 * (lo + hi);
  }
  const Eigen::VectorXd dt = -(gt.array() / (lam.array() + model.M * r)).matrix();
  const Eigen::VectorXd d = es.eigenvectors() * dt;
  return Vector(d.data(), d.data() + d.size());
}

EnvelopeReport check_rate_envelope(const Trajectory& traj, const SmoothOracle& f, RateForm form,
                                   double f_star, double kappa_bar) {
  if (!std::isfinite(f_star)) throw std::invalid_argument("check_rate_envelope: missing F* reference");
  if (traj.records.empty()) throw std::invalid_argument("check_rate_envelope: empty trajectory");
  EnvelopeReport rep;
  rep.form = form;
  rep.f_star = f_star;
  const double n = double(f.dim());
  const double mu = f.mu();
  const double lip = f.lip_grad();
  const double lh = f.lip_hess();
  const double kappa = kappa_bar == 0.0 ? lip : kappa_bar;
  const double gap = std::max(0.0, traj.records.front().fval - f_star);
  rep.C0 = std::sqrt(2.0 * gap / mu);
  double power = 0.5;
  switch (form) {
    case RateForm::kCubic:
      rep.C = (2.0 * n * lh * rep.C0 + n * lip) / mu;
      break;
    case RateForm::kGrad:
      rep.theta = (lh * rep.C0 + std::sqrt(lh * (lip + n * kappa) * rep.C0)) / mu;
      rep.C = (n * kappa * rep.theta + n * lip) / mu;
      power = 0.25;
      break;
    case RateForm::kGradReg:
      rep.theta = lh * rep.C0 + std::sqrt(lh * (lip + n * kappa) * rep.C0);
      rep.C = (rep.theta + n * lip) / mu;
      power = 0.25;
      break;
  }
  const double log_c = std::log(rep.C);
  const double g0 = traj.records.front().grad_norm;
  for (std::size_t N = 1; N < traj.records.size(); ++N) {
    EnvelopePoint p;
    p.N = N;
    const double gn = traj.records[N].grad_norm;
    p.log_ratio = gn == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(gn / g0);
    p.log_bound = 0.5 * double(N) * (log_c - power * std::log(double(N)));
    p.pre_superlinear = p.log_bound >= 0.0;
    p.passed = p.log_ratio <= p.log_bound + 1e-12 * std::max(1.0, std::abs(p.log_bound));
    if (!p.passed && !rep.first_failure) rep.first_failure = N;
    rep.passed = rep.passed && p.passed;
    rep.points.push_back(p);
  }
  return rep;
}

}  // namespace sr1pqn
