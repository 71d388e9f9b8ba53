// Copyright 2026 The prodiso Authors
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

#ifndef PRODISO_TESTS_GEN_HPP_
#define PRODISO_TESTS_GEN_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "prodiso/metric_space.hpp"
#include "prodiso/rational.hpp"

namespace gen {

inline constexpr std::uint64_t kSeed = 20260417;

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Shortest-path metric of a random connected weighted graph: a random
// spanning tree plus extra edges, weights in [1, max_weight].
inline oracle::Matrix graph_metric(Rng& rng, int n, int max_weight,
                                   double extra_edge_p = 0.3) {
  constexpr long kInf = 1L << 40;
  oracle::Matrix d(n, std::vector<long>(n, kInf));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  auto link = [&](int a, int b) {
    const long w = uniform(rng, 1, max_weight);
    d[a][b] = d[b][a] = std::min(d[a][b], w);
  };
  for (int i = 1; i < n; ++i) link(i, uniform(rng, 0, i - 1));
  std::bernoulli_distribution extra(extra_edge_p);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (extra(rng)) link(i, j);
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return d;
}

inline std::vector<int> permutation(Rng& rng, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// d'(p[i], p[j]) = d(i, j).
inline oracle::Matrix relabel(const oracle::Matrix& d,
                              const std::vector<int>& p) {
  const int n = static_cast<int>(d.size());
  oracle::Matrix out(n, std::vector<long>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[p[i]][p[j]] = d[i][j];
  }
  return out;
}

inline std::vector<int> path_sizes(Rng& rng, int factors, int lo, int hi) {
  std::vector<int> s(factors);
  for (auto& x : s) x = uniform(rng, lo, hi);
  return s;
}

inline prodiso::MetricSpace to_space(const oracle::Matrix& d,
                                     std::string name = "g") {
  std::vector<std::string> labels;
  std::vector<std::vector<prodiso::Rat>> m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    labels.push_back("v" + std::to_string(i));
    for (long x : d[i]) m[i].emplace_back(x);
  }
  return prodiso::MetricSpace::validate(std::move(name), std::move(labels), m);
}

}  // namespace gen

#endif  // PRODISO_TESTS_GEN_HPP_
