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
#include <vector>

#include "sr1pqn/simd.hpp"
#include "test_util.hpp"

using namespace sr1pqn;

namespace {

std::vector<double> random_vec(testutil::Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.normal();
  return v;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("scalar kernels match naive loops") {
  const auto& k = simd::scalar_kernels();
  const std::vector<double> a = {1, 2, 3}, b = {4, -5, 6};
  CHECK(k.dot(a.data(), b.data(), 3) == doctest::Approx(12.0));
  std::vector<double> y = {1, 1, 1};
  k.axpy(2.0, a.data(), y.data(), 3);
  CHECK(y == std::vector<double>{3, 5, 7});
  const std::vector<double> m = {1, 2, 3, 4, 5, 6};  // 2 x 3
  std::vector<double> out(2);
  k.gemv(m.data(), 2, 3, a.data(), out.data());
  CHECK(out == std::vector<double>{14, 32});
  std::vector<double> outt(3);
  const std::vector<double> x2 = {1, -1};
  k.gemv_t(m.data(), 2, 3, x2.data(), outt.data());
  CHECK(outt == std::vector<double>{-3, -3, -3});
  std::vector<double> g(9, 0.0);
  k.rank1(2.0, a.data(), g.data(), 3);
  CHECK(g[1] == 4.0);
  CHECK(g[8] == 18.0);
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  const simd::KernelTable* v = simd::avx2_kernels();
  if (v == nullptr || !simd::cpu_supports_avx2()) {
    MESSAGE("AVX2 unavailable, equivalence test skipped");
    return;
  }
  const auto& s = simd::scalar_kernels();
  testutil::Rng rng(7);
  for (std::size_t n = 0; n <= 67; ++n) {
    const auto a = random_vec(rng, n), b = random_vec(rng, n);
    double mag = 0.0;
    for (std::size_t i = 0; i < n; ++i) mag += std::abs(a[i] * b[i]);
    CHECK(std::abs(s.dot(a.data(), b.data(), n) - v->dot(a.data(), b.data(), n)) <= 1e-14 * (1.0 + mag));

    auto y1 = b, y2 = b;
    s.axpy(0.37, a.data(), y1.data(), n);
    v->axpy(0.37, a.data(), y2.data(), n);
    CHECK(max_abs_diff(y1, y2) <= 1e-15 * 4);

    auto z1 = a, z2 = a;
    s.scale(-1.7, z1.data(), n);
    v->scale(-1.7, z2.data(), n);
    CHECK(z1 == z2);

    const std::size_t rows = 1 + n % 9;
    const auto m = random_vec(rng, rows * n);
    const auto xr = random_vec(rng, rows);
    std::vector<double> o1(rows), o2(rows), t1(n), t2(n);
    s.gemv(m.data(), rows, n, a.data(), o1.data());
    v->gemv(m.data(), rows, n, a.data(), o2.data());
    CHECK(max_abs_diff(o1, o2) <= 1e-13 * (1.0 + double(n)));
    s.gemv_t(m.data(), rows, n, xr.data(), t1.data());
    v->gemv_t(m.data(), rows, n, xr.data(), t2.data());
    CHECK(max_abs_diff(t1, t2) <= 1e-13 * (1.0 + double(rows)));

    std::vector<double> g1(n * n, 1.0), g2(n * n, 1.0);
    s.rank1(-0.5, a.data(), g1.data(), n);
    v->rank1(-0.5, a.data(), g2.data(), n);
    CHECK(max_abs_diff(g1, g2) <= 1e-13);
  }
}

TEST_CASE("backend switching") {
  const simd::Backend before = simd::active_backend();
  simd::set_backend(simd::Backend::kScalar);
  CHECK(simd::active_backend() == simd::Backend::kScalar);
  CHECK(simd::backend_name(simd::Backend::kScalar) == "scalar");
  if (simd::avx2_kernels() != nullptr && simd::cpu_supports_avx2()) {
    simd::set_backend(simd::Backend::kAvx2);
    CHECK(simd::active_backend() == simd::Backend::kAvx2);
  } else {
    CHECK_THROWS(simd::set_backend(simd::Backend::kAvx2));
  }
  simd::set_backend(before);
}

}
