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

#include "prodiso/metric_space.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "prodiso/error.hpp"

namespace prodiso {
namespace {

std::string describe(const std::vector<std::string>& labels,
                     std::initializer_list<std::size_t> idx) {
  std::string out = "(";
  bool first = true;
  for (std::size_t i : idx) {
    if (!first) out += ", ";
    out += labels[i];
    first = false;
  }
  return out + ")";
}

}  // namespace

MetricSpace MetricSpace::validate(std::string name,
                                  std::vector<std::string> labels,
                                  const std::vector<std::vector<Rat>>& matrix,
                                  std::size_t max_points) {
  const std::size_t n = labels.size();
  if (n == 0) throw InvalidInput("metric space needs at least one point");
  if (n > max_points) {
    throw InvalidInput("space has " + std::to_string(n) +
                       " points, cap is " + std::to_string(max_points));
  }
  if (matrix.size() != n) {
    throw InvalidInput("distance matrix has " + std::to_string(matrix.size()) +
                       " rows for " + std::to_string(n) + " labels");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) {
      throw InvalidInput("distance matrix row " + std::to_string(i) +
                         " has " + std::to_string(matrix[i].size()) +
                         " entries, expected " + std::to_string(n));
    }
  }
  {
    std::set<std::string_view> seen;
    for (const auto& l : labels) {
      if (!seen.insert(l).second) {
        throw InvalidInput("duplicate point label '" + l + "'");
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!matrix[i][i].is_zero()) {
      throw AxiomViolation(AxiomKind::kNonzeroDiagonal, {i},
                           "d" + describe(labels, {i, i}) + " = " +
                               matrix[i][i].str());
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (matrix[i][j].sign() < 0) {
        throw AxiomViolation(AxiomKind::kNegative, {i, j},
                             "d" + describe(labels, {i, j}) + " = " +
                                 matrix[i][j].str());
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (matrix[i][j] != matrix[j][i]) {
        throw AxiomViolation(AxiomKind::kAsymmetry, {i, j},
                             "d" + describe(labels, {i, j}) + " = " +
                                 matrix[i][j].str() + " but d" +
                                 describe(labels, {j, i}) + " = " +
                                 matrix[j][i].str());
      }
      if (matrix[i][j].is_zero()) {
        throw AxiomViolation(AxiomKind::kZeroOffDiagonal, {i, j},
                             "distinct points " + describe(labels, {i, j}) +
                                 " at distance 0");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (matrix[i][k] > matrix[i][j] + matrix[j][k]) {
          throw AxiomViolation(
              AxiomKind::kTriangle, {i, k, j},
              "d" + describe(labels, {i, k}) + " = " + matrix[i][k].str() +
                  " exceeds d" + describe(labels, {i, j}) + " + d" +
                  describe(labels, {j, k}) + " = " +
                  (matrix[i][j] + matrix[j][k]).str());
        }
      }
    }
  }

  auto data = std::make_shared<Data>();
  data->name = std::move(name);
  data->labels = std::move(labels);
  data->dist.reserve(n * n);
  for (const auto& row : matrix) {
    data->dist.insert(data->dist.end(), row.begin(), row.end());
  }
  return MetricSpace(std::move(data));
}

std::optional<std::size_t> MetricSpace::index_of(std::string_view label) const {
  const auto& ls = data_->labels;
  const auto it = std::find(ls.begin(), ls.end(), label);
  if (it == ls.end()) return std::nullopt;
  return static_cast<std::size_t>(it - ls.begin());
}

std::vector<std::vector<Rat>> MetricSpace::matrix() const {
  const std::size_t n = size();
  std::vector<std::vector<Rat>> out(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i][j] = distance(i, j);
  }
  return out;
}

Rat MetricSpace::diameter() const {
  return *std::max_element(data_->dist.begin(), data_->dist.end());
}

MetricSpace MetricSpace::subspace(std::span<const std::size_t> points,
                                  std::string name) const {
  auto data = std::make_shared<Data>();
  data->name = std::move(name);
  for (std::size_t p : points) {
    if (p >= size()) throw InvalidInput("subspace point out of range");
    data->labels.push_back(label(p));
  }
  {
    std::set<std::size_t> unique(points.begin(), points.end());
    if (unique.size() != points.size() || points.empty()) {
      throw InvalidInput("subspace points must be distinct and nonempty");
    }
  }
  for (std::size_t a : points) {
    for (std::size_t b : points) data->dist.push_back(distance(a, b));
  }
  return MetricSpace(std::move(data));
}

bool operator==(const MetricSpace& a, const MetricSpace& b) {
  if (a.data_ == b.data_) return true;
  return a.data_->labels == b.data_->labels && a.data_->dist == b.data_->dist;
}

MetricSpace path_graph(std::size_t n, const Rat& step) {
  if (n == 0) throw InvalidInput("path_graph needs n >= 1");
  if (step.sign() <= 0) throw InvalidInput("path_graph needs step > 0");
  std::vector<std::string> labels;
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      const auto gap = static_cast<std::int64_t>(i > j ? i - j : j - i);
      m[i][j] = Rat(gap) * step;
    }
  }
  std::string name = "P_" + std::to_string(n);
  if (step != Rat(1)) name += "(" + step.str() + ")";
  return MetricSpace::validate(std::move(name), std::move(labels), m,
                               std::max(n, kDefaultMaxPoints));
}

MetricSpace cycle_graph(std::size_t n) {
  if (n < 3) throw InvalidInput("cycle_graph needs n >= 3");
  std::vector<std::string> labels;
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      m[i][j] = Rat(static_cast<std::int64_t>(std::min(gap, n - gap)));
    }
  }
  return MetricSpace::validate("C_" + std::to_string(n), std::move(labels), m,
                               std::max(n, kDefaultMaxPoints));
}

MetricSpace complete_space(std::size_t n) {
  if (n == 0) throw InvalidInput("complete_space needs n >= 1");
  std::vector<std::string> labels;
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(1)));
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i));
    m[i][i] = 0;
  }
  return MetricSpace::validate("K_" + std::to_string(n), std::move(labels), m,
                               std::max(n, kDefaultMaxPoints));
}

std::vector<std::size_t> betweenness(const MetricSpace& space, std::size_t x,
                                     std::size_t y) {
  const Rat& dxy = space.distance(x, y);
  std::vector<std::size_t> out;
  for (std::size_t z = 0; z < space.size(); ++z) {
    if (space.distance(x, z) + space.distance(z, y) == dxy) out.push_back(z);
  }
  return out;
}

bool is_uniquely_geodesic_pair(const MetricSpace& space, std::size_t x,
                               std::size_t y, const Rat& resolution) {
  const Rat& dxy = space.distance(x, y);
  if (resolution.sign() <= 0 || !divides(resolution, dxy)) {
    throw ResolutionMismatch("resolution " + resolution.str() +
                             " does not divide d(" + space.label(x) + ", " +
                             space.label(y) + ") = " + dxy.str());
  }
  const auto between = betweenness(space, x, y);
  for (std::size_t a = 0; a < between.size(); ++a) {
    for (std::size_t b = a + 1; b < between.size(); ++b) {
      const std::size_t z = between[a];
      const std::size_t w = between[b];
      if (abs(space.distance(x, z) - space.distance(x, w)) !=
          space.distance(z, w)) {
        return false;
      }
    }
  }
  const std::int64_t steps = (dxy / resolution).num();
  for (std::int64_t s = 0; s <= steps; ++s) {
    const Rat t = Rat(s) * resolution;
    const auto hits = std::count_if(between.begin(), between.end(),
                                    [&](std::size_t z) {
                                      return space.distance(x, z) == t;
                                    });
    if (hits != 1) return false;
  }
  return true;
}

bool is_uniquely_geodesic(const MetricSpace& space, const Rat& resolution) {
  for (std::size_t x = 0; x < space.size(); ++x) {
    for (std::size_t y = x + 1; y < space.size(); ++y) {
      if (!divides(resolution, space.distance(x, y))) return false;
      if (!is_uniquely_geodesic_pair(space, x, y, resolution)) return false;
    }
  }
  return true;
}

GeodesicChain GeodesicChain::make(const MetricSpace& space,
                                  std::vector<std::size_t> points) {
  if (points.empty()) throw InvalidInput("geodesic chain needs a point");
  for (std::size_t p : points) {
    if (p >= space.size()) throw InvalidInput("chain point out of range");
  }
  const std::size_t x = points.front();
  const std::size_t y = points.back();
  std::vector<Rat> params;
  params.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::size_t z = points[i];
    params.push_back(space.distance(x, z));
    if (space.distance(x, z) + space.distance(z, y) != space.distance(x, y)) {
      throw InvalidInput("chain point " + space.label(z) +
                         " is not between the endpoints");
    }
    if (i > 0) {
      if (params[i] <= params[i - 1]) {
        throw InvalidInput("chain parameters must increase strictly");
      }
      if (space.distance(points[i - 1], z) != params[i] - params[i - 1]) {
        throw InvalidInput("consecutive chain points " +
                           space.label(points[i - 1]) + ", " + space.label(z) +
                           " are not at their parameter gap");
      }
    }
  }
  return GeodesicChain(std::move(points), std::move(params));
}

GeodesicChain GeodesicChain::between(const MetricSpace& space, std::size_t x,
                                     std::size_t y) {
  auto pts = betweenness(space, x, y);
  std::stable_sort(pts.begin(), pts.end(), [&](std::size_t a, std::size_t b) {
    return space.distance(x, a) < space.distance(x, b);
  });
  // Puts x first and y last even when x == y.
  std::erase(pts, x);
  pts.insert(pts.begin(), x);
  if (x != y) {
    std::erase(pts, y);
    pts.push_back(y);
  }
  return make(space, std::move(pts));
}

std::optional<std::size_t> GeodesicChain::at(const Rat& t) const {
  const auto it = std::lower_bound(parameters_.begin(), parameters_.end(), t);
  if (it == parameters_.end() || *it != t) return std::nullopt;
  return points_[static_cast<std::size_t>(it - parameters_.begin())];
}

}  // namespace prodiso
