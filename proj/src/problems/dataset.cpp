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

#include "sr1pqn/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>
#include <string_view>
#include <utility>
#include <vector>

#include "sr1pqn/random.hpp"

namespace sr1pqn {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open_for_write(const std::filesystem::path& path) {
  File f(std::fopen(path.c_str(), "w"));
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return f;
}

bool parse_double(std::string_view tok, double& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && p == tok.data() + tok.size() && std::isfinite(out);
}

bool parse_index(std::string_view tok, std::size_t& out) {
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && p == tok.data() + tok.size();
}

struct SparseRow {
  double label;
  std::vector<std::pair<std::size_t, double>> entries;
};

}  // namespace

void validate(const Dataset& data) {
  if (data.labels.size() != data.features.rows()) {
    throw std::invalid_argument("dataset: label count does not match feature rows");
  }
  const std::span<const double> all(data.features.data(),
                                    data.features.rows() * data.features.cols());
  if (!all_finite(all) || !all_finite(data.labels)) {
    throw std::invalid_argument("dataset: non-finite entry");
  }
}

Dataset gen_random_logsumexp(std::size_t m, std::size_t n, std::uint64_t seed) {
  if (m == 0 || n == 0) throw std::invalid_argument("gen_random_logsumexp: m and n must be >= 1");
  NormalSampler rng(seed);
  Dataset d{Matrix(m, n), Vector(m)};
  const double s = 1.0 / std::sqrt(double(n));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) d.features(i, j) = rng.normal() * s;
  }
  for (std::size_t i = 0; i < m; ++i) d.labels[i] = rng.normal();
  return d;
}

Dataset parse_sparse_text(const std::string& text) {
  std::vector<SparseRow> rows;
  std::size_t n = 0;
  std::size_t lineno = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    SparseRow row{};
    if (!parse_double(tok, row.label)) throw ParseError(lineno, "bad label '" + tok + "'");
    std::set<std::size_t> seen;
    while (ls >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos) throw ParseError(lineno, "expected index:value, got '" + tok + "'");
      const std::string_view sv(tok);
      std::size_t idx = 0;
      double val = 0.0;
      if (!parse_index(sv.substr(0, colon), idx) || idx == 0) {
        throw ParseError(lineno, "bad feature index in '" + tok + "'");
      }
      if (!parse_double(sv.substr(colon + 1), val)) {
        throw ParseError(lineno, "bad feature value in '" + tok + "'");
      }
      if (!seen.insert(idx).second) throw ParseError(lineno, "duplicate index " + std::to_string(idx));
      n = std::max(n, idx);
      row.entries.emplace_back(idx - 1, val);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(0, "sparse text: no samples");
  if (n == 0) throw ParseError(0, "sparse text: no features");

  Dataset d{Matrix(rows.size(), n), Vector(rows.size())};
  bool one_two = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    d.labels[i] = rows[i].label;
    one_two = one_two && (rows[i].label == 1.0 || rows[i].label == 2.0);
    for (const auto& [j, v] : rows[i].entries) d.features(i, j) = v;
  }
  if (one_two) {
    for (double& b : d.labels) b = b == 1.0 ? 1.0 : -1.0;
  }
  return d;
}

Dataset load_sparse_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dataset " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_sparse_text(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.what());
  }
}

void write_sparse_text(const Dataset& data, const std::filesystem::path& path) {
  validate(data);
  File f = open_for_write(path);
  const std::size_t n = data.dim();
  for (std::size_t i = 0; i < data.samples(); ++i) {
    std::fprintf(f.get(), "%.17g", data.labels[i]);
    for (std::size_t j = 0; j < n; ++j) {
      const double v = data.features(i, j);
      if (v != 0.0 || (i == 0 && j + 1 == n)) std::fprintf(f.get(), " %zu:%.17g", j + 1, v);
    }
    std::fputc('\n', f.get());
  }
}

void dump_csv(const Dataset& data, const std::filesystem::path& path) {
  validate(data);
  File f = open_for_write(path);
  std::fputs("label", f.get());
  for (std::size_t j = 0; j < data.dim(); ++j) std::fprintf(f.get(), ",x%zu", j + 1);
  std::fputc('\n', f.get());
  for (std::size_t i = 0; i < data.samples(); ++i) {
    std::fprintf(f.get(), "%.17g", data.labels[i]);
    for (std::size_t j = 0; j < data.dim(); ++j) std::fprintf(f.get(), ",%.17g", data.features(i, j));
    std::fputc('\n', f.get());
  }
}

}  // namespace sr1pqn
