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

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "sr1pqn/harness.hpp"
#include "test_util.hpp"

using namespace sr1pqn;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sr1pqn_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SR1PQN_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kTinySpec =
    "problem = logsumexp\n"
    "m = 20\nn = 5\nseed = 4\nmu = 1\nkappa_bar_factor = 3\n"
    "algorithms = cubic_sr1_pqn, grad_sr1_pqn, gd\n"
    "max_iters = 500\n";

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("method names round trip") {
  for (Method m : {Method::kCubicSr1, Method::kGradSr1, Method::kGradRegSr1, Method::kGd,
                   Method::kHeavyBall, Method::kCubicNewton}) {
    CHECK(parse_method(method_name(m)) == m);
  }
  CHECK_THROWS(parse_method("newton"));
  CHECK(is_sr1_method(Method::kGradSr1));
  CHECK_FALSE(is_sr1_method(Method::kGd));
}

TEST_CASE("spec parsing") {
  const ExperimentSpec s = parse_experiment_spec(
      "# comment\nproblem = logistic\nmu = 0.1 # trailing\nkappa_bar_factor=4\n"
      "algorithms = gd, heavy_ball\ndataset = d.svm\nseed = 9\n",
      "/base");
  CHECK(s.problem == "logistic");
  CHECK(s.mu == 0.1);
  CHECK(s.kappa_bar_factor == 4.0);
  CHECK(s.algorithms == std::vector<Method>{Method::kGd, Method::kHeavyBall});
  CHECK(s.dataset == fs::path("/base/d.svm"));
  CHECK(s.seed == 9);
  CHECK(parse_experiment_spec("").algorithms.size() == 6);
  CHECK(parse_experiment_spec("algorithms =").algorithms.empty());

  CHECK_THROWS_AS(parse_experiment_spec("bogus = 1"), SpecError);
  CHECK_THROWS_AS(parse_experiment_spec("mu"), SpecError);
  CHECK_THROWS_AS(parse_experiment_spec("mu = fast"), SpecError);
  CHECK_THROWS_AS(parse_experiment_spec("m = -3"), SpecError);
  CHECK_THROWS_AS(parse_experiment_spec("algorithms = gd, lbfgs"), SpecError);
  CHECK_THROWS_AS(parse_experiment_spec("audit = maybe"), SpecError);
  CHECK_THROWS_AS(load_experiment_spec("/nonexistent/x.spec"), SpecError);
  CHECK_THROWS_AS(build_problem(parse_experiment_spec("mu = 0")), SpecError);
  CHECK_THROWS_AS(build_problem(parse_experiment_spec("kappa_bar_factor = 0.5")), SpecError);
  CHECK_THROWS_AS(build_problem(parse_experiment_spec("problem = logistic")), SpecError);
}

TEST_CASE("build_problem starting point") {
  ExperimentSpec s = parse_experiment_spec("m = 10\nn = 4\nx0_radius = 0.5\nseed = 2");
  const Problem p = build_problem(s);
  CHECK(norm2(p.x0) <= 0.5);
  CHECK(norm2(p.x0) > 0.0);
  CHECK(build_problem(s).x0 == p.x0);
  s.x0_radius = 0.0;
  CHECK(build_problem(s).x0 == Vector(4, 0.0));
}

TEST_CASE("empty algorithm list writes nothing") {
  const fs::path out = scratch_dir("empty") / "out";
  ExperimentSpec s = parse_experiment_spec("algorithms =\nm = 5\nn = 2");
  std::ostringstream log;
  CHECK_THROWS(run_experiment(s, RunOptions{out, true, true}, log));
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("experiment output files") {
  const fs::path out = scratch_dir("csv");
  ExperimentSpec s = parse_experiment_spec(kTinySpec);
  std::ostringstream log;
  const ExperimentResult r = run_experiment(s, RunOptions{out, true, true}, log);
  CHECK(r.passed);
  REQUIRE(r.runs.size() == 3);
  for (const AlgorithmResult& a : r.runs) {
    const fs::path csv = out / (std::string(method_name(a.method)) + ".csv");
    REQUIRE(fs::exists(csv));
    std::istringstream in(slurp(csv));
    std::string line;
    std::getline(in, line);
    CHECK(line == "iter,fval,grad_norm,r_k,lambda_k,trace_G,restart,time_s");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
      CHECK(std::count(line.begin(), line.end(), ',') == 7);
      ++rows;
    }
    CHECK(rows == a.trajectory.records.size());
  }
  const std::string summary = slurp(out / "summary.txt");
  CHECK(summary.find("status PASS") != std::string::npos);
  CHECK(summary.find("audit order_chain pass") != std::string::npos);
}

TEST_CASE("envelope constants") {
  // f = ||x||^2 / 2, x0 with F(x0) - F* = 2 and mu = 1 gives C0 = 2.
  const OraclePtr f = make_quadratic(SymMatrix::identity(2), Vector{0.0, 0.0}, 0.5);
  Trajectory t;
  t.records.push_back(IterationRecord{0, 2.0, 2.0});
  t.records.push_back(IterationRecord{1, 0.0, 1e-3});
  const EnvelopeReport cub = check_rate_envelope(t, *f, RateForm::kCubic, 0.0, 0.0);
  CHECK(cub.C0 == doctest::Approx(2.0));
  CHECK(cub.C == doctest::Approx((2 * 2 * 0.5 * 2.0 + 2 * 1.0) / 1.0));
  const double theta = 0.5 * 2.0 + std::sqrt(0.5 * (1.0 + 2 * 3.0) * 2.0);
  const EnvelopeReport grad = check_rate_envelope(t, *f, RateForm::kGrad, 0.0, 3.0);
  CHECK(grad.theta == doctest::Approx(theta));
  CHECK(grad.C == doctest::Approx(2 * 3.0 * theta + 2 * 1.0));
  const EnvelopeReport reg = check_rate_envelope(t, *f, RateForm::kGradReg, 0.0, 3.0);
  CHECK(reg.theta == doctest::Approx(theta));
  CHECK(reg.C == doctest::Approx(theta + 2.0));
  CHECK_THROWS(check_rate_envelope(t, *f, RateForm::kCubic, NAN, 0.0));
}

TEST_CASE("envelope in the log domain") {
  const OraclePtr f = make_quadratic(SymMatrix::identity(2), Vector{0.0, 0.0}, 0.5);
  Trajectory t;
  const std::size_t big = 1000000;
  t.records.resize(big + 1);
  t.records[0].fval = 2.0;
  t.records[0].grad_norm = 1.0;
  for (std::size_t k = 1; k <= big; ++k) t.records[k].grad_norm = 1e-300;
  const EnvelopeReport r = check_rate_envelope(t, *f, RateForm::kCubic, 0.0, 0.0);
  REQUIRE(r.points.size() == big);
  for (const EnvelopePoint& p : r.points) CHECK_MESSAGE(std::isfinite(p.log_bound), p.N);
  // C = 6: N <= 36 is pre-superlinear.
  CHECK(r.points[35].pre_superlinear);
  CHECK_FALSE(r.points[36].pre_superlinear);
  // Superlinear bound eventually beats 1e-300.
  CHECK_FALSE(r.passed);
  CHECK(r.first_failure.has_value());
}

TEST_CASE("audits pass on a healthy run and catch the symmetry fault") {
  const Problem p = build_problem(parse_experiment_spec("m = 40\nn = 10\nseed = 5"));
  const ReferenceSolution ref = reference_solve(*p.f, *p.g, p.x0);
  SolverConfig cfg;
  cfg.max_iters = 50;
  cfg.record_matrices = true;
  cfg.kappa_bar = 3 * p.f->lip_grad();
  AuditOptions opts;
  opts.kappa_bar = cfg.kappa_bar;
  opts.f_star = ref.f_star_lower;

  for (Method m : {Method::kCubicSr1, Method::kGradSr1, Method::kGradRegSr1}) {
    opts.method = m;
    const Trajectory good = run_method(m, *p.f, *p.g, p.x0, cfg);
    const AuditReport rep = audit_lemmas(good, *p.f, *p.g, opts);
    for (const AuditCheck& c : rep.checks) CHECK_MESSAGE(c.passed, method_name(m), " ", c.name);
  }

  cfg.resymmetrize = false;
  opts.method = Method::kCubicSr1;
  const Trajectory bad = cubic_sr1_pqn(*p.f, *p.g, p.x0, cfg);
  const AuditReport rep = audit_lemmas(bad, *p.f, *p.g, opts);
  const AuditCheck* chain = rep.find("order_chain");
  REQUIRE(chain != nullptr);
  CHECK_FALSE(chain->passed);
  CHECK(chain->first_violation.has_value());
  CHECK_FALSE(rep.passed());
}

TEST_CASE("zero-iteration trajectory passes vacuously") {
  const OraclePtr f = make_quadratic(SymMatrix::identity(3), Vector(3, 0.0), 1.0);
  SolverConfig cfg;
  cfg.record_matrices = true;
  const Trajectory t = cubic_sr1_pqn(*f, *make_zero_prox(), Vector(3, 0.0), cfg);
  REQUIRE(t.iterations() == 0);
  const AuditReport rep = audit_lemmas(t, *f, *make_zero_prox(), AuditOptions{});
  CHECK(rep.passed());
}

TEST_CASE("average hessian is exact on a quadratic and bracketed otherwise") {
  testutil::Rng rng(3);
  const Eigen::MatrixXd a = rng.spd(4, 0.5, 2.0);
  const OraclePtr q = make_quadratic(testutil::from_eigen(a), Vector(4, 0.0));
  const Vector x = testutil::from_eigen_vec(rng.vec(4));
  const Vector u = testutil::from_eigen_vec(rng.vec(4));
  CHECK((testutil::to_eigen(average_hessian(*q, x, u)) - a).cwiseAbs().maxCoeff() <= 1e-13);

  // J u reproduces the gradient difference.
  const Problem p = build_problem(parse_experiment_spec("m = 30\nn = 6\nseed = 8"));
  const Vector x0 = testutil::from_eigen_vec(rng.vec(6));
  const Vector u0 = testutil::from_eigen_vec(rng.vec(6));
  const Vector ju = average_hessian(*p.f, x0, u0).multiply(u0);
  const Vector y = p.f->gradient_difference(x0, u0);
  CHECK(norm2(subtract(ju, y)) <= 1e-10 * norm2(y));
}

TEST_CASE("reference solve certifies a lower bound") {
  const Problem p = build_problem(parse_experiment_spec("m = 30\nn = 6\nseed = 8"));
  const ReferenceSolution ref = reference_solve(*p.f, *p.g, p.x0);
  CHECK(ref.certificate <= 1e-12);
  CHECK(ref.f_star_lower <= ref.fval);
  CHECK(ref.fval - ref.f_star_lower <= 1e-20);
}

TEST_CASE("csv is deterministic apart from timing") {
  const fs::path a = scratch_dir("det_a"), b = scratch_dir("det_b");
  const ExperimentSpec s = parse_experiment_spec(kTinySpec);
  std::ostringstream log;
  run_experiment(s, RunOptions{a, false, true}, log);
  run_experiment(s, RunOptions{b, false, true}, log);
  auto strip = [](const std::string& text) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
    return out;
  };
  for (const char* name : {"cubic_sr1_pqn.csv", "grad_sr1_pqn.csv", "gd.csv"}) {
    CHECK(strip(slurp(a / name)) == strip(slurp(b / name)));
  }
}

TEST_CASE("cli exit codes") {
  const fs::path dir = scratch_dir("cli");
  std::ofstream(dir / "tiny.spec") << kTinySpec;
  CHECK(run_cli("check") == 0);
  CHECK(run_cli("run " + (dir / "tiny.spec").string() + " --out-dir " + (dir / "out").string()) == 0);
  CHECK(fs::exists(dir / "out" / "summary.txt"));
  CHECK(run_cli("bench " + (dir / "tiny.spec").string() + " --out-dir " + (dir / "bench").string()) == 0);
  CHECK(run_cli("run " + (dir / "missing.spec").string()) != 0);
  CHECK(run_cli("frobnicate") != 0);
  CHECK(run_cli("run --no-such-flag x") != 0);
  CHECK(run_cli("") != 0);
}

}
