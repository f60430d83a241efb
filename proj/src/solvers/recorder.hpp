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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <utility>

#include "sr1pqn/solvers.hpp"

namespace sr1pqn::detail {

class Stopwatch {
 public:
  Stopwatch() : start_(Clock::now()) {}
  void pause() {
    if (!paused_) {
      paused_at_ = Clock::now();
      paused_ = true;
    }
  }
  void resume() {
    if (paused_) {
      excluded_ += Clock::now() - paused_at_;
      paused_ = false;
    }
  }
  double seconds() const {
    const auto now = paused_ ? paused_at_ : Clock::now();
    return std::chrono::duration<double>(now - start_ - excluded_).count();
  }

 private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point start_;
  Clock::time_point paused_at_{};
  Clock::duration excluded_{};
  bool paused_ = false;
};

// Owns the trajectory under construction and the termination rule.
class Recorder {
 public:
  Recorder(std::string algorithm, const SolverConfig& cfg) : cfg_(cfg) {
    traj_.algorithm = std::move(algorithm);
  }

  // Pushes row 0. Returns true if x_0 is already stationary.
  bool start(double fval, double grad_norm, double lambda, double trace) {
    g0_ = grad_norm;
    push(fval, grad_norm, lambda, trace, false);
    if (grad_norm <= cfg_.stationarity_tol) {
      traj_.termination = Termination::kStationarityReached;
      return true;
    }
    if (cfg_.max_iters == 0) {
      traj_.termination = Termination::kMaxIters;
      return true;
    }
    return false;
  }

  IterationRecord& current() { return traj_.records.back(); }

  // Closes row k with its step length and pushes row k + 1. Returns true when
  // the run should stop.
  bool advance(double r_k, double fval, double grad_norm, double lambda, double trace,
               bool restart) {
    current().r_k = r_k;
    push(fval, grad_norm, lambda, trace, restart);
    if (g1_ < 0.0) g1_ = grad_norm;
    if (grad_norm <= cfg_.stationarity_tol * std::max(1.0, g1_) ||
        (cfg_.target_ratio > 0.0 && grad_norm <= cfg_.target_ratio * g0_)) {
      traj_.termination = Termination::kStationarityReached;
      return true;
    }
    if (traj_.iterations() >= cfg_.max_iters) {
      traj_.termination = Termination::kMaxIters;
      return true;
    }
    return false;
  }

  void fail(const std::string& why) {
    traj_.termination = Termination::kSubproblemFailure;
    traj_.failure = why;
  }

  Stopwatch& clock() { return clock_; }
  Trajectory& trajectory() { return traj_; }

  Trajectory finish(Vector x) {
    traj_.final_x = std::move(x);
    return std::move(traj_);
  }

 private:
  void push(double fval, double grad_norm, double lambda, double trace, bool restart) {
    IterationRecord rec;
    rec.iter = traj_.records.size();
    rec.fval = fval;
    rec.grad_norm = grad_norm;
    rec.lambda_k = lambda;
    rec.trace_G = trace;
    rec.restart = restart;
    rec.time_s = clock_.seconds();
    traj_.records.push_back(rec);
  }

  const SolverConfig& cfg_;
  Trajectory traj_;
  Stopwatch clock_;
  double g0_ = 0.0;
  double g1_ = -1.0;
};

// ||F'(x)|| at a point where only grad f is known: the distance from -grad f
// to dg(x).
inline double initial_stationarity(const ProxTerm& g, std::span<const double> x,
                                   std::span<const double> grad) {
  Vector v(grad.begin(), grad.end());
  for (double& e : v) e = -e;
  return g.subdifferential_distance(x, v);
}

}  // namespace sr1pqn::detail
