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

#include <stdexcept>
#include <string>

#include "sr1pqn/harness.hpp"

namespace sr1pqn {

const char* method_name(Method m) {
  switch (m) {
    case Method::kCubicSr1: return "cubic_sr1_pqn";
    case Method::kGradSr1: return "grad_sr1_pqn";
    case Method::kGradRegSr1: return "grad_reg_sr1_pqn";
    case Method::kGd: return "gd";
    case Method::kHeavyBall: return "heavy_ball";
    case Method::kCubicNewton: return "cubic_newton";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::kCubicSr1, Method::kGradSr1, Method::kGradRegSr1, Method::kGd,
                   Method::kHeavyBall, Method::kCubicNewton}) {
    if (name == method_name(m)) return m;
  }
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

bool is_sr1_method(Method m) {
  return m == Method::kCubicSr1 || m == Method::kGradSr1 || m == Method::kGradRegSr1;
}

std::optional<RateForm> rate_form(Method m) {
  switch (m) {
    case Method::kCubicSr1: return RateForm::kCubic;
    case Method::kGradSr1: return RateForm::kGrad;
    case Method::kGradRegSr1: return RateForm::kGradReg;
    default: return std::nullopt;
  }
}

Trajectory run_method(Method m, const SmoothOracle& f, const ProxTerm& g,
                      std::span<const double> x0, const SolverConfig& cfg) {
  if (!is_sr1_method(m) && !g.is_zero()) {
    throw std::invalid_argument(std::string(method_name(m)) + " supports smooth problems only");
  }
  switch (m) {
    case Method::kCubicSr1: return cubic_sr1_pqn(f, g, x0, cfg);
    case Method::kGradSr1: return grad_sr1_pqn(f, g, x0, cfg);
    case Method::kGradRegSr1: return grad_reg_sr1_pqn(f, g, x0, cfg);
    case Method::kGd: return gradient_descent(f, x0, cfg);
    case Method::kHeavyBall: return heavy_ball(f, x0, cfg);
    case Method::kCubicNewton: return cubic_newton(f, x0, cfg);
  }
  throw std::logic_error("run_method: unhandled method");
}

}  // namespace sr1pqn
