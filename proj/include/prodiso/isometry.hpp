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

#ifndef PRODISO_ISOMETRY_HPP_
#define PRODISO_ISOMETRY_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "prodiso/product.hpp"
#include "prodiso/rational.hpp"

namespace prodiso {

inline constexpr std::uint64_t kDefaultNodeCap = 10'000'000;

struct SearchOptions {
  std::uint64_t node_cap = kDefaultNodeCap;
  // Workers for the first branching level; results are merged in the same
  // order a single worker would produce.
  unsigned workers = 1;
  // Stop after this many results; 0 means no limit.
  std::size_t limit = 0;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::size_t found = 0;
  // False when the visitor or the limit stopped the search early.
  bool exhausted = true;
};

// A verified distance-preserving bijection between two spaces, stored as
// rank arrays. Plain metric spaces appear as one-factor products.
class Isometry {
 public:
  const ProductSpace& domain() const { return domain_; }
  const ProductSpace& codomain() const { return codomain_; }
  const std::vector<std::size_t>& map() const { return map_; }
  const std::vector<std::size_t>& inverse() const { return inverse_; }

  std::size_t operator()(std::size_t rank) const { return map_[rank]; }
  ProductPoint operator()(const ProductPoint& p) const;
  bool is_identity() const;

  friend bool operator==(const Isometry& a, const Isometry& b);

 private:
  friend class IsometryBuilder;
  Isometry(ProductSpace domain, ProductSpace codomain,
           std::vector<std::size_t> map);

  ProductSpace domain_;
  ProductSpace codomain_;
  std::vector<std::size_t> map_;
  std::vector<std::size_t> inverse_;
};

struct NotDistancePreserving {
  std::size_t x = 0;
  std::size_t y = 0;
  Rat domain_distance;
  Rat image_distance;
};

struct NotBijective {
  // Two points with the same image, or (x, x) for an out-of-range image.
  std::size_t x = 0;
  std::size_t y = 0;
  std::string detail;
};

using IsometryCheck = std::variant<Isometry, NotDistancePreserving, NotBijective>;

// Throws SizeMismatch when the spaces differ in size or the map is not total.
IsometryCheck is_isometry(const ProductSpace& domain,
                          const ProductSpace& codomain,
                          std::vector<std::size_t> map);
inline IsometryCheck is_isometry(const MetricSpace& domain,
                                 const MetricSpace& codomain,
                                 std::vector<std::size_t> map) {
  return is_isometry(ProductSpace::of(domain), ProductSpace::of(codomain),
                     std::move(map));
}

// Unwraps is_isometry, throwing InvalidInput with the witness on failure.
Isometry verified_isometry(const ProductSpace& domain,
                           const ProductSpace& codomain,
                           std::vector<std::size_t> map);

Isometry identity(const ProductSpace& space);
// f after g. Throws DomainMismatch unless g's codomain is f's domain.
Isometry compose(const Isometry& f, const Isometry& g);
Isometry invert(const Isometry& f);

// Per point, the ascending multiset of distances to all other points.
using DistanceProfile = std::vector<std::vector<Rat>>;
DistanceProfile distance_profile(const ProductSpace& space);

// Receives each isometry as a rank map; return false to stop.
using IsometryVisitor = std::function<bool(std::span<const std::size_t>)>;

// Backtracking over domain points in rank order, trying codomain candidates
// in rank order, so isometries arrive in lexicographic order of their maps.
// Candidates must share the point's distance profile and agree with every
// earlier assignment. Spaces of different sizes yield nothing. Throws
// SearchBudgetExceeded when more than node_cap assignments are tried.
SearchStats for_each_isometry(const ProductSpace& domain,
                              const ProductSpace& codomain,
                              const IsometryVisitor& visit,
                              const SearchOptions& options = {});

std::vector<Isometry> enumerate_isometries(const ProductSpace& domain,
                                           const ProductSpace& codomain,
                                           const SearchOptions& options = {});
inline std::vector<Isometry> enumerate_isometries(
    const MetricSpace& domain, const MetricSpace& codomain,
    const SearchOptions& options = {}) {
  return enumerate_isometries(ProductSpace::of(domain),
                              ProductSpace::of(codomain), options);
}

bool are_isometric(const ProductSpace& a, const ProductSpace& b,
                   const SearchOptions& options = {});

// Flat storage for many permutations of {0..n-1}.
class PermutationSet {
 public:
  explicit PermutationSet(std::size_t degree) : degree_(degree) {}

  std::size_t degree() const { return degree_; }
  std::size_t size() const { return degree_ ? data_.size() / degree_ : 0; }
  std::span<const std::uint32_t> at(std::size_t i) const {
    return {data_.data() + i * degree_, degree_};
  }
  void push_back(std::span<const std::size_t> perm);
  void push_back(std::span<const std::uint32_t> perm);

 private:
  std::size_t degree_;
  std::vector<std::uint32_t> data_;
};

struct GroupCheck {
  std::size_t order = 0;
  bool distinct = true;
  bool has_identity = false;
  bool closed_under_inverse = false;
  bool closed_under_composition = false;
  // Indices (a, b) with a after b outside the set, when composition fails.
  std::optional<std::pair<std::size_t, std::size_t>> composition_witness;
  std::optional<std::size_t> inverse_witness;

  bool ok() const {
    return distinct && has_identity && closed_under_inverse &&
           closed_under_composition;
  }
};

// Group axioms for a set of permutations. Closure is decided by growing the
// subgroup generated by the set from greedily chosen generators and stopping
// at the first product that leaves the set, which needs O(|S| log |S|)
// compositions instead of |S|^2.
GroupCheck check_group(const PermutationSet& perms);
GroupCheck check_group(std::span<const Isometry> isometries);

}  // namespace prodiso

#endif  // PRODISO_ISOMETRY_HPP_
