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

#ifndef PRODISO_PRODUCT_HPP_
#define PRODISO_PRODUCT_HPP_

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "prodiso/metric_space.hpp"
#include "prodiso/rational.hpp"

namespace prodiso {

inline constexpr std::size_t kMaxProductPoints = std::size_t{1} << 16;
inline constexpr std::size_t kMaxFlattenPoints = 512;

// Point of a product as a tuple of per-factor point indices.
struct ProductPoint {
  std::vector<std::size_t> coords;

  ProductPoint() = default;
  explicit ProductPoint(std::vector<std::size_t> c) : coords(std::move(c)) {}
  ProductPoint(std::initializer_list<std::size_t> c) : coords(c) {}

  std::size_t size() const { return coords.size(); }
  std::size_t operator[](std::size_t i) const { return coords[i]; }

  friend auto operator<=>(const ProductPoint&, const ProductPoint&) = default;
  friend bool operator==(const ProductPoint&, const ProductPoint&) = default;
};

std::string to_string(const ProductPoint& p);

// Ordered factor list with the sup metric. Factor order is significant.
// Points are addressed either as ProductPoint tuples or by rank, where rank
// order is lexicographic order of tuples (first factor most significant).
// A single MetricSpace is the one-factor product.
class ProductSpace {
 public:
  static ProductSpace make(std::vector<MetricSpace> factors,
                           std::size_t max_points = kMaxProductPoints);
  static ProductSpace of(MetricSpace space) { return make({std::move(space)}); }

  std::size_t factor_count() const { return data_->factors.size(); }
  const MetricSpace& factor(std::size_t i) const { return data_->factors.at(i); }
  const std::vector<MetricSpace>& factors() const { return data_->factors; }
  std::size_t size() const { return data_->size; }
  // Factor names joined with " x ".
  std::string name() const;

  bool contains(const ProductPoint& p) const;
  // Throws InvalidInput for a tuple of the wrong length or out-of-range index.
  std::size_t rank(const ProductPoint& p) const;
  ProductPoint point(std::size_t rank) const;
  std::size_t coord(std::size_t rank, std::size_t axis) const {
    return data_->coords[rank * factor_count() + axis];
  }
  // Rank of `rank` with coordinate `axis` replaced by `value`.
  std::size_t with_coord(std::size_t rank, std::size_t axis,
                         std::size_t value) const;

  Rat distance(std::size_t a, std::size_t b) const;
  // Distance between a and b in factor `axis` alone.
  const Rat& coord_distance(std::size_t a, std::size_t b,
                            std::size_t axis) const {
    return factor(axis).distance(coord(a, axis), coord(b, axis));
  }

  // Factor label for one-factor products, "(l1,l2,...)" otherwise.
  std::string label(std::size_t rank) const;
  std::vector<std::string> label_tuple(std::size_t rank) const;
  std::optional<std::size_t> find(std::span<const std::string> labels) const;

  // Induced metric space on all points, validated from scratch.
  MetricSpace flatten(std::size_t max_points = kMaxFlattenPoints) const;

  friend bool operator==(const ProductSpace& a, const ProductSpace& b);

 private:
  struct Data {
    std::vector<MetricSpace> factors;
    std::vector<std::size_t> strides;
    std::size_t size = 0;
    std::vector<std::uint32_t> coords;
  };
  explicit ProductSpace(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

  std::shared_ptr<const Data> data_;
};

Rat sup_distance(const ProductSpace& product, const ProductPoint& p,
                 const ProductPoint& q);

// Betweenness set of two ranks under the sup metric, ascending ranks.
std::vector<std::size_t> product_betweenness(const ProductSpace& product,
                                             std::size_t p, std::size_t q);

// A k-slice: points varying only in factor `axis`, over at least two values.
struct Slice {
  std::size_t axis = 0;
  // Off-axis coordinates in factor order (length m - 1).
  std::vector<std::size_t> fixed;
  // Sorted, distinct, at least two entries.
  std::vector<std::size_t> axis_set;

  // Throws InvalidInput if the fields do not describe a slice of `product`.
  static Slice make(const ProductSpace& product, std::size_t axis,
                    std::vector<std::size_t> fixed,
                    std::vector<std::size_t> axis_set);

  ProductPoint member(std::size_t axis_value) const;
  std::vector<ProductPoint> members() const;

  friend bool operator==(const Slice&, const Slice&) = default;
};

std::string to_string(const Slice& s);

// Two points of the set that differ in more than one factor, and those
// factors.
struct NotASlice {
  ProductPoint first;
  ProductPoint second;
  std::vector<std::size_t> differing_axes;
};

using SliceClass = std::variant<Slice, NotASlice>;

// Throws TooSmall if fewer than two distinct points are given.
SliceClass classify_slice(const ProductSpace& product,
                          std::span<const ProductPoint> points);
inline SliceClass classify_slice(const ProductSpace& product,
                                 std::initializer_list<ProductPoint> points) {
  return classify_slice(product,
                        std::span<const ProductPoint>(points.begin(), points.size()));
}

// Axis of a pair slice {a, b}, or nullopt when a and b differ in zero or
// several coordinates.
std::optional<std::size_t> pair_slice_axis(const ProductPoint& a,
                                           const ProductPoint& b);
std::optional<std::size_t> pair_slice_axis(const ProductSpace& product,
                                           std::size_t a, std::size_t b);

// Walk from a to b changing one coordinate at a time, in factor order,
// skipping axis k and coordinates already equal. Throws AxisMismatch if a and
// b differ in coordinate k.
std::vector<ProductPoint> interpolation_chain(const ProductSpace& product,
                                              const ProductPoint& a,
                                              const ProductPoint& b,
                                              std::size_t k);

// Every two-element k-slice exactly once, ordered by fixed coordinates and
// then by the axis pair. Empty when factor k is a point.
std::vector<Slice> enumerate_pair_slices(const ProductSpace& product,
                                         std::size_t k);

// Every slice whose axis set is the whole factor k.
std::vector<Slice> enumerate_full_slices(const ProductSpace& product,
                                         std::size_t k);

}  // namespace prodiso

#endif  // PRODISO_PRODUCT_HPP_
