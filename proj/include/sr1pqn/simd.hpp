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

// Dense double-precision inner-loop kernels with a scalar reference
// implementation and an AVX2/FMA variant chosen at runtime.
//
// Every kernel in the AVX2 table computes the same quantity as its scalar
// counterpart; only the floating-point summation order differs. The
// equivalence tests in tests/test_simd.cpp pin the allowed discrepancy.

#include <cstddef>
#include <span>
#include <string_view>

namespace sr1pqn::simd {

enum class Backend { kScalar, kAvx2 };

struct KernelTable {
  Backend backend;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // x *= alpha
  void (*scale)(double alpha, double* x, std::size_t n);
  // y = A x, A row-major rows x cols
  void (*gemv)(const double* a, std::size_t rows, std::size_t cols,
               const double* x, double* y);
  // y = A^T x, A row-major rows x cols
  void (*gemv_t)(const double* a, std::size_t rows, std::size_t cols,
                 const double* x, double* y);
  // G += alpha * w w^T on a full row-major n x n matrix, computed row by row
  // as G[i, :] += (alpha * w[i]) * w. The result is symmetric only up to
  // rounding; callers that need exact symmetry re-symmetrize.
  void (*rank1)(double alpha, const double* w, double* g, std::size_t n);
};

const KernelTable& scalar_kernels();

// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_kernels();

bool cpu_supports_avx2();

// The active table. Defaults to AVX2 when both compiled and supported by the
// CPU, unless SR1PQN_SIMD=scalar is set in the environment.
const KernelTable& kernels();

Backend active_backend();

// Throws std::runtime_error if the requested backend is unavailable.
void set_backend(Backend backend);

std::string_view backend_name(Backend backend);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return kernels().dot(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  kernels().axpy(alpha, x.data(), y.data(), x.size());
}

inline void scale(double alpha, std::span<double> x) {
  kernels().scale(alpha, x.data(), x.size());
}

}  // namespace sr1pqn::simd
