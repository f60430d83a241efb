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

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "sr1pqn/harness.hpp"
#include "sr1pqn/simd.hpp"

namespace {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string out_dir;
  bool full_size = false;
};

int run_spec(const std::string& spec_path, const Overrides& ov, bool audits) {
  try {
    sr1pqn::ExperimentSpec spec = sr1pqn::load_experiment_spec(spec_path);
    if (ov.seed) spec.seed = *ov.seed;
    if (ov.tol) spec.tol = *ov.tol;
    if (ov.full_size) {
      spec.m = spec.full_m;
      spec.n = spec.full_n;
    }
    sr1pqn::RunOptions opts;
    opts.audits = audits;
    opts.out_dir = ov.out_dir.empty() ? std::filesystem::path("out") / spec.name
                                      : std::filesystem::path(ov.out_dir);
    const sr1pqn::ExperimentResult res = sr1pqn::run_experiment(spec, opts, std::cout);
    std::cout << "wrote " << opts.out_dir.string() << "/summary.txt\n";
    if (!audits) return 0;
    std::cout << (res.passed ? "all audits passed" : "audit failures, see summary.txt") << "\n";
    return res.passed ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SR1 proximal quasi-Newton solvers and benchmark harness"};
  app.require_subcommand(1);

  Overrides ov;
  std::uint64_t seed = 0;
  double tol = 0.0;
  auto* seed_opt = app.add_option("--seed", seed, "Override the spec seed");
  auto* tol_opt = app.add_option("--tol", tol, "Override the stationarity tolerance");
  app.add_option("--out-dir", ov.out_dir, "Output directory (default out/<spec name>)");
  app.add_flag("--full-size", ov.full_size, "Use full_m x full_n instead of the desk size");

  std::string spec_path;
  auto* run = app.add_subcommand("run", "Run an experiment spec with audits");
  run->add_option("spec", spec_path, "Experiment spec file")->required();
  auto* bench = app.add_subcommand("bench", "Run an experiment spec for timing, audits off");
  bench->add_option("spec", spec_path, "Experiment spec file")->required();
  auto* check = app.add_subcommand("check", "Run the property suite on random instances");
  for (auto* sub : {run, bench, check}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code != 0) std::cerr << app.help();
    return code;
  }
  if (*seed_opt) ov.seed = seed;
  if (*tol_opt) ov.tol = tol;

  if (*run) return run_spec(spec_path, ov, true);
  if (*bench) return run_spec(spec_path, ov, false);
  std::cout << "simd backend: " << sr1pqn::simd::backend_name(sr1pqn::simd::active_backend()) << "\n";
  return sr1pqn::run_property_checks(ov.seed.value_or(1), std::cout) ? 0 : 1;
}
