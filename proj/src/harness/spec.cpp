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
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "sr1pqn/harness.hpp"
#include "sr1pqn/random.hpp"

namespace sr1pqn {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(out)) {
    throw SpecError("spec: '" + key + "' expects a number, got '" + v + "'");
  }
  return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw SpecError("spec: '" + key + "' expects a nonnegative integer, got '" + v + "'");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw SpecError("spec: '" + key + "' expects true or false, got '" + v + "'");
}

}  // namespace

ExperimentSpec parse_experiment_spec(const std::string& text,
                                     const std::filesystem::path& base_dir) {
  ExperimentSpec s;
  bool algorithms_seen = false;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw SpecError("spec line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string val = trim(std::string_view(t).substr(eq + 1));
    if (key == "name") s.name = val;
    else if (key == "problem") s.problem = val;
    else if (key == "m") s.m = to_uint(key, val);
    else if (key == "n") s.n = to_uint(key, val);
    else if (key == "full_m") s.full_m = to_uint(key, val);
    else if (key == "full_n") s.full_n = to_uint(key, val);
    else if (key == "seed") s.seed = to_uint(key, val);
    else if (key == "mu") s.mu = to_double(key, val);
    else if (key == "kappa_bar_factor") s.kappa_bar_factor = to_double(key, val);
    else if (key == "max_iters") s.max_iters = to_uint(key, val);
    else if (key == "tol") s.tol = to_double(key, val);
    else if (key == "target_ratio") s.target_ratio = to_double(key, val);
    else if (key == "x0_radius") s.x0_radius = to_double(key, val);
    else if (key == "l1_weight") s.l1_weight = to_double(key, val);
    else if (key == "inner_tol") s.inner_tol = to_double(key, val);
    else if (key == "inner_max_iters") s.inner_max_iters = to_uint(key, val);
    else if (key == "skip_tol") s.skip_tol = to_double(key, val);
    else if (key == "audit") s.audit = to_bool(key, val);
    else if (key == "audit_matrices") s.audit_matrices = to_bool(key, val);
    else if (key == "dataset") s.dataset = val.empty() ? std::filesystem::path() : base_dir / val;
    else if (key == "algorithms") {
      algorithms_seen = true;
      s.algorithms.clear();
      std::istringstream list(val);
      std::string item;
      while (std::getline(list, item, ',')) {
        const std::string name = trim(item);
        if (name.empty()) continue;
        try {
          s.algorithms.push_back(parse_method(name));
        } catch (const std::invalid_argument& e) {
          throw SpecError(std::string("spec: ") + e.what());
        }
      }
    } else {
      throw SpecError("spec line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!algorithms_seen) {
    s.algorithms = {Method::kCubicSr1, Method::kGradSr1, Method::kGradRegSr1,
                    Method::kGd,       Method::kHeavyBall, Method::kCubicNewton};
  }
  return s;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open spec file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  ExperimentSpec s = parse_experiment_spec(ss.str(), path.parent_path());
  if (s.name == "experiment") s.name = path.stem().string();
  return s;
}

Problem build_problem(const ExperimentSpec& spec) {
  if (!(spec.mu > 0.0)) throw SpecError("spec: mu must be positive");
  if (spec.kappa_bar_factor < 1.0) throw SpecError("spec: kappa_bar_factor must be >= 1");
  if (spec.l1_weight < 0.0) throw SpecError("spec: l1_weight must be >= 0");
  Problem p;
  Dataset data;
  if (!spec.dataset.empty()) {
    if (!std::filesystem::exists(spec.dataset)) {
      throw SpecError("spec: dataset " + spec.dataset.string() + " does not exist");
    }
    data = load_sparse_text(spec.dataset);
  } else if (spec.problem == "logsumexp") {
    data = gen_random_logsumexp(spec.m, spec.n, spec.seed);
  } else {
    throw SpecError("spec: problem '" + spec.problem + "' needs a dataset");
  }
  if (spec.problem == "logsumexp") {
    p.f = make_logsumexp(std::move(data), spec.mu);
  } else if (spec.problem == "logistic") {
    p.f = make_logistic(std::move(data), spec.mu);
  } else {
    throw SpecError("spec: unknown problem '" + spec.problem + "'");
  }
  p.g = spec.l1_weight > 0.0 ? make_l1_prox(spec.l1_weight) : make_zero_prox();
  p.x0.assign(p.f->dim(), 0.0);
  if (spec.x0_radius > 0.0) {
    NormalSampler rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
    const double n = double(p.f->dim());
    p.x0 = rng.on_sphere(p.f->dim(), spec.x0_radius * std::pow(rng.uniform(), 1.0 / n));
  }
  return p;
}

}  // namespace sr1pqn
