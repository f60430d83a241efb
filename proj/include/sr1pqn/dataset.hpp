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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "sr1pqn/linalg.hpp"

namespace sr1pqn {

struct Dataset {
  Matrix features;  // m x n, rows a_i
  Vector labels;    // length m

  std::size_t samples() const { return features.rows(); }
  std::size_t dim() const { return features.cols(); }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  // 1-based; 0 when the error is not tied to a line.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Throws std::invalid_argument on shape mismatch or non-finite entries.
void validate(const Dataset& data);

// Features N(0, 1) / sqrt(n), offsets N(0, 1). Deterministic per seed.
Dataset gen_random_logsumexp(std::size_t m, std::size_t n, std::uint64_t seed);

// svmlight / libsvm text: `label index:value ...` with 1-based indices.
// n is the largest index seen. If every label is 1 or 2 they are mapped
// 1 -> +1, 2 -> -1 (the UCI mushroom convention). Blank lines are ignored.
Dataset load_sparse_text(const std::filesystem::path& path);
Dataset parse_sparse_text(const std::string& text);

// Nonzeros only, %.17g. The first row always carries index n so the
// dimension survives a round trip.
void write_sparse_text(const Dataset& data, const std::filesystem::path& path);

// label,x1,...,xn with a header row.
void dump_csv(const Dataset& data, const std::filesystem::path& path);

}  // namespace sr1pqn
