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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sr1pqn/simd.hpp"

namespace sr1pqn::simd {

#ifndef SR1PQN_HAVE_AVX2
const KernelTable* avx2_kernels() { return nullptr; }
#endif

bool cpu_supports_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const KernelTable* pick_default() {
  if (const char* env = std::getenv("SR1PQN_SIMD"); env != nullptr) {
    if (std::string_view(env) == "scalar") return &scalar_kernels();
  }
  if (avx2_kernels() != nullptr && cpu_supports_avx2()) return avx2_kernels();
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& active() {
  static std::atomic<const KernelTable*> table{pick_default()};
  return table;
}

}  // namespace

const KernelTable& kernels() { return *active().load(std::memory_order_acquire); }

Backend active_backend() { return kernels().backend; }

void set_backend(Backend backend) {
  if (backend == Backend::kScalar) {
    active().store(&scalar_kernels(), std::memory_order_release);
    return;
  }
  if (avx2_kernels() == nullptr || !cpu_supports_avx2()) {
    throw std::runtime_error("AVX2 kernels are not available on this build or CPU");
  }
  active().store(avx2_kernels(), std::memory_order_release);
}

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::kScalar: return "scalar";
    case Backend::kAvx2: return "avx2";
  }
  return "unknown";
}

}  // namespace sr1pqn::simd
