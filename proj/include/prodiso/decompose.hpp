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

#ifndef PRODISO_DECOMPOSE_HPP_
#define PRODISO_DECOMPOSE_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "prodiso/isometry.hpp"
#include "prodiso/product.hpp"

namespace prodiso {

// A factor permutation plus per-factor isometries. Axis indices are 0-based:
// domain factor i is carried onto codomain factor perm[i] by factor_maps[i].
class Decomposition {
 public:
  // Throws InvalidDecomposition if perm is not a bijection of the factor
  // indices or some map is not an isometry M_i -> N_perm[i].
  static Decomposition make(const ProductSpace& domain,
                            const ProductSpace& codomain,
                            std::vector<std::size_t> perm,
                            std::vector<std::vector<std::size_t>> factor_maps);

  const ProductSpace& domain() const { return domain_; }
  const ProductSpace& codomain() const { return codomain_; }
  const std::vector<std::size_t>& perm() const { return perm_; }
  const std::vector<Isometry>& factor_maps() const { return factor_maps_; }

 private:
  Decomposition(ProductSpace domain, ProductSpace codomain,
                std::vector<std::size_t> perm, std::vector<Isometry> maps)
      : domain_(std::move(domain)),
        codomain_(std::move(codomain)),
        perm_(std::move(perm)),
        factor_maps_(std::move(maps)) {}

  ProductSpace domain_;
  ProductSpace codomain_;
  std::vector<std::size_t> perm_;
  std::vector<Isometry> factor_maps_;
};

// The product map f(x)_{perm[i]} = f_i(x_i), verified.
Isometry reconstruct(const Decomposition& d);
// Validates and reconstructs in one step; throws InvalidDecomposition.
Isometry reconstruct(const ProductSpace& domain, const ProductSpace& codomain,
                     std::vector<std::size_t> perm,
                     std::vector<std::vector<std::size_t>> factor_maps);

struct Reducible {
  Decomposition decomposition;
};

enum class IrreducibleReason {
  kNonSliceImage,
  kAxisCollision,
  kFactorMapInvalid,
  kReconstructMismatch,
};

const char* to_string(IrreducibleReason reason);

struct Irreducible {
  IrreducibleReason reason = IrreducibleReason::kNonSliceImage;
  // A domain slice whose image is not a slice, when one is known.
  std::optional<Slice> witness_slice;
  std::vector<ProductPoint> witness_image;
  std::optional<NotASlice> image_class;
  // Two domain axes sent to the same codomain axis.
  std::optional<std::pair<std::size_t, std::size_t>> colliding_axes;
  std::optional<std::size_t> mismatch_point;
  std::string detail;
};

enum class HypothesisKind { kFactorCount, kPointFactor };

const char* to_string(HypothesisKind kind);

struct HypothesisViolation {
  HypothesisKind kind = HypothesisKind::kFactorCount;
  std::string detail;
};

using ReducibilityCertificate =
    std::variant<Reducible, Irreducible, HypothesisViolation>;

// Reads the factor permutation off the first pair slice of every axis and the
// factor maps off the all-zeros basepoint, then checks the reconstruction
// against f on every point. A Reducible verdict is therefore verified.
ReducibilityCertificate decompose(const Isometry& f);

// First domain pair slice (over all axes, in enumeration order) whose image
// under f is not a slice.
std::optional<Irreducible> find_non_slice_image(const Isometry& f);

// Every reconstruct(d) over factor permutations and factor isometries,
// sorted by map. Empty when the factor counts differ.
std::vector<Isometry> enumerate_reducible(const ProductSpace& domain,
                                          const ProductSpace& codomain,
                                          const SearchOptions& options = {});

struct MainLemmaReport {
  bool passed = false;
  // axis_map[k] is the axis of the images of k-slices.
  std::vector<std::size_t> axis_map;
  bool axis_map_injective = false;
  // First slice with a non-slice image.
  std::optional<Slice> slice;
  std::vector<ProductPoint> image;
  std::optional<NotASlice> image_class;
  // Two k-slices whose images lie on different axes.
  std::optional<std::pair<Slice, Slice>> inconsistent;
  std::string detail;
};

// All pair slices and all full slices of every axis must map to slices, and
// all k-slices to the same axis.
MainLemmaReport check_main_lemma(const Isometry& f);

struct SliceTriple {
  // Axes of {a,b}, {b,c}, {a,c}.
  std::array<std::size_t, 3> axes{};
  bool consistent() const { return axes[0] == axes[1] && axes[1] == axes[2]; }
};

// Throws NotPairwiseSlices unless a, b, c are distinct and every pair is a
// slice.
SliceTriple slice_triple_check(const ProductSpace& product,
                               const ProductPoint& a, const ProductPoint& b,
                               const ProductPoint& c);

enum class QuadBranch { kAllEqual, kOppositePairs, kViolated };

const char* to_string(QuadBranch branch);

struct SliceQuad {
  // Axes of {a,b}, {b,c}, {c,d}, {d,a}.
  std::array<std::size_t, 4> axes{};
  QuadBranch branch = QuadBranch::kViolated;
};

// Throws NotCycleOfSlices unless a, b, c, d are distinct and consecutive
// pairs (cyclically) are slices.
SliceQuad slice_quad_check(const ProductSpace& product, const ProductPoint& a,
                           const ProductPoint& b, const ProductPoint& c,
                           const ProductPoint& d);

struct ChainCheck {
  bool ok = false;
  // Codomain axis j assigned to domain axis k.
  std::size_t axis = 0;
  // Consecutive chain points whose images form a j-slice, or (a, b) when
  // f(a) and f(b) differ in coordinate j.
  std::optional<std::pair<ProductPoint, ProductPoint>> witness;
  std::string detail;
};

// Walks interpolation_chain(a, b, k) under f. The axis j is the one decompose
// assigns: the axis of the image of the first pair k-slice (not ok when that
// image is not a slice). Throws AxisMismatch if a and b differ in coordinate k.
ChainCheck chain_consistency(const Isometry& f, const ProductPoint& a,
                             const ProductPoint& b, std::size_t k);
ChainCheck chain_consistency(const Isometry& f, const ProductPoint& a,
                             const ProductPoint& b, std::size_t k,
                             std::size_t j);

struct Factorization {
  ProductSpace product;
  // From the product onto the input space.
  Isometry isometry;
};

// Sup-product structures with at least two factors of at least two points,
// up to factor reindexing and factor isometry. Factor i is the induced
// subspace on a point set through point 0; sizes are nondecreasing. Throws
// SearchBudgetExceeded when a single isometry search exceeds the node cap.
std::vector<Factorization> factorize(const MetricSpace& space,
                                     std::size_t max_points_per_factor,
                                     const SearchOptions& options = {});

}  // namespace prodiso

#endif  // PRODISO_DECOMPOSE_HPP_
