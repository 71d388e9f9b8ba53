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

#ifndef PRODISO_METRIC_SPACE_HPP_
#define PRODISO_METRIC_SPACE_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prodiso/rational.hpp"

namespace prodiso {

// All algorithms are exhaustive, so spaces are capped. Callers that build
// larger spaces on purpose (flattened products) pass their own cap.
inline constexpr std::size_t kDefaultMaxPoints = 64;

// Labeled finite metric space with an exact dense distance matrix. Immutable;
// copies share storage. The only way to obtain one is through validate() or
// the generators below, so every instance satisfies the metric axioms.
class MetricSpace {
 public:
  // Checks shape, label uniqueness and the metric axioms, in that order.
  // Throws InvalidInput on shape/label/cap problems and AxiomViolation on the
  // first axiom failure found (diagonal, sign, symmetry, separation, then the
  // triangle inequality scanned as (i, k, j) with d(i,k) > d(i,j) + d(j,k)).
  static MetricSpace validate(std::string name, std::vector<std::string> labels,
                              const std::vector<std::vector<Rat>>& matrix,
                              std::size_t max_points = kDefaultMaxPoints);

  const std::string& name() const { return data_->name; }
  std::size_t size() const { return data_->labels.size(); }
  const std::vector<std::string>& labels() const { return data_->labels; }
  const std::string& label(std::size_t i) const { return data_->labels.at(i); }
  std::optional<std::size_t> index_of(std::string_view label) const;

  const Rat& distance(std::size_t i, std::size_t j) const {
    return data_->dist[i * size() + j];
  }
  std::vector<std::vector<Rat>> matrix() const;
  Rat diameter() const;

  // Subspace on `points` (in the given order) with the induced metric.
  MetricSpace subspace(std::span<const std::size_t> points,
                       std::string name) const;

  // Same labels and distances; names are not compared.
  friend bool operator==(const MetricSpace& a, const MetricSpace& b);

 private:
  struct Data {
    std::string name;
    std::vector<std::string> labels;
    std::vector<Rat> dist;
  };
  explicit MetricSpace(std::shared_ptr<const Data> data)
      : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

// Points 0..n-1 on a line, d(i,j) = |i-j| * step. n >= 1, step > 0.
MetricSpace path_graph(std::size_t n, const Rat& step = 1);

// Shortest-path metric of the n-cycle, n >= 3.
MetricSpace cycle_graph(std::size_t n);

// n points, all pairwise distances 1 (the discrete metric).
MetricSpace complete_space(std::size_t n);

// { z : d(x,z) + d(z,y) = d(x,y) }, ascending. Contains x and y.
std::vector<std::size_t> betweenness(const MetricSpace& space, std::size_t x,
                                     std::size_t y);

// Discrete unique-geodesity of the pair (x, y) at `resolution`: exactly one
// between-point at every multiple of the resolution up to d(x,y), and the
// whole betweenness set is a chain (|d(x,z) - d(x,z')| = d(z,z')).
// Throws ResolutionMismatch unless resolution > 0 divides d(x,y).
bool is_uniquely_geodesic_pair(const MetricSpace& space, std::size_t x,
                               std::size_t y, const Rat& resolution);

// Every pair is uniquely geodesic at `resolution`. Pairs whose distance is
// not a multiple of the resolution make the space fail.
bool is_uniquely_geodesic(const MetricSpace& space, const Rat& resolution);

// Ordered points along a discrete geodesic, with their distance from the
// first point. Invariants are checked at construction.
class GeodesicChain {
 public:
  // Throws InvalidInput unless parameters start at 0, increase strictly,
  // consecutive distances equal parameter gaps, and every point lies between
  // the endpoints.
  static GeodesicChain make(const MetricSpace& space,
                            std::vector<std::size_t> points);

  // The betweenness set of (x, y) ordered by distance from x; requires it to
  // be a chain (throws InvalidInput otherwise, e.g. on a cycle's antipodes).
  static GeodesicChain between(const MetricSpace& space, std::size_t x,
                               std::size_t y);

  std::size_t front() const { return points_.front(); }
  std::size_t back() const { return points_.back(); }
  const std::vector<std::size_t>& points() const { return points_; }
  const std::vector<Rat>& parameters() const { return parameters_; }
  const Rat& length() const { return parameters_.back(); }

  // Chain point at distance t from the front, if present.
  std::optional<std::size_t> at(const Rat& t) const;

 private:
  GeodesicChain(std::vector<std::size_t> points, std::vector<Rat> parameters)
      : points_(std::move(points)), parameters_(std::move(parameters)) {}

  std::vector<std::size_t> points_;
  std::vector<Rat> parameters_;
};

}  // namespace prodiso

#endif  // PRODISO_METRIC_SPACE_HPP_
