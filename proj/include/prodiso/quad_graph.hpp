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

#ifndef PRODISO_QUAD_GRAPH_HPP_
#define PRODISO_QUAD_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prodiso/isometry.hpp"
#include "prodiso/metric_space.hpp"
#include "prodiso/product.hpp"
#include "prodiso/rational.hpp"

namespace prodiso {

inline constexpr std::size_t kMaxQuadDim = 12;

enum class QuadVertexKind { kPositiveAxis, kNegativeAxis, kSign };

struct QuadVertex {
  QuadVertexKind kind = QuadVertexKind::kSign;
  // Axis index for the +-e_j vertices.
  std::size_t axis = 0;
  // Sign vertices: bit i set means +r in coordinate i.
  std::uint64_t signs = 0;
  // Coordinates in units of r, each in {-2, -1, 0, 1, 2}.
  std::vector<int> units;
  std::string label;
};

using QuadEdge = std::pair<std::size_t, std::size_t>;

// Vertices of the m-dimensional quadrilateral graph in canonical order:
// +e_1, -e_1, ..., +e_m, -e_m (value +-2r on one axis), then the 2^m sign
// vectors (+-r, ..., +-r) by increasing bit mask.
std::vector<QuadVertex> quad_vertices(std::size_t m);

// All vertex pairs at sup distance exactly one unit (r), by brute force.
std::vector<QuadEdge> quad_edges(std::span<const QuadVertex> vertices);

class QuadGraph {
 public:
  // Throws InvalidInput unless 1 <= dim <= kMaxQuadDim and scale > 0.
  QuadGraph(std::size_t dim, Rat scale);

  std::size_t dim() const { return dim_; }
  const Rat& scale() const { return scale_; }
  const std::vector<QuadVertex>& vertices() const { return vertices_; }
  const std::vector<QuadEdge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }

  std::size_t axis_vertex(std::size_t j, bool positive) const {
    return 2 * j + (positive ? 0 : 1);
  }
  std::size_t sign_vertex(std::uint64_t mask) const { return 2 * dim_ + mask; }

  std::vector<Rat> coordinates(std::size_t v) const;
  // Ambient sup distance, in units of r and as a rational.
  int unit_distance(std::size_t u, std::size_t v) const;
  Rat distance(std::size_t u, std::size_t v) const {
    return Rat(unit_distance(u, v)) * scale_;
  }
  bool adjacent(std::size_t u, std::size_t v) const {
    return unit_distance(u, v) == 1;
  }

  // All 4-edge vertex paths from +e_j to -e_j passing through `through`.
  std::vector<std::vector<std::size_t>> axis_geodesics(
      std::size_t j, std::size_t through) const;

 private:
  std::size_t dim_;
  Rat scale_;
  std::vector<QuadVertex> vertices_;
  std::vector<QuadEdge> edges_;
};

// A map from the vertices of a quadrilateral graph into a product that is
// injective and sends every edge to a pair at distance r. Vertex images are
// product ranks.
class QuadEmbedding {
 public:
  // Throws InvalidEmbedding if the map is not injective, an edge image is
  // not at distance r, or the resolution does not divide r.
  static QuadEmbedding make(QuadGraph quad, ProductSpace target,
                            std::vector<std::size_t> vertex_map,
                            Rat resolution);

  const QuadGraph& quad() const { return quad_; }
  const ProductSpace& target() const { return target_; }
  const std::vector<std::size_t>& vertex_map() const { return vertex_map_; }
  const Rat& resolution() const { return resolution_; }
  std::size_t image(std::size_t v) const { return vertex_map_[v]; }
  ProductPoint image_point(std::size_t v) const {
    return target_.point(vertex_map_[v]);
  }

 private:
  QuadEmbedding(QuadGraph quad, ProductSpace target,
                std::vector<std::size_t> map, Rat resolution)
      : quad_(std::move(quad)),
        target_(std::move(target)),
        vertex_map_(std::move(map)),
        resolution_(std::move(resolution)) {}

  QuadGraph quad_;
  ProductSpace target_;
  std::vector<std::size_t> vertex_map_;
  Rat resolution_;
};

// The standard construction: per factor a chain with points at parameters
// 0, r, 2r, 3r, 4r (alpha, theta, beta, phi, omega). +e_k goes to beta with
// omega in slot k, -e_k to beta with alpha in slot k, a sign vector to phi
// where the sign is + and theta where it is -. The quad dimension equals the
// number of factors. `resolution` defaults to r.
// Throws InvalidInput for a chain count mismatch, ChainTooShort when a chain
// is shorter than 4r and MissingParameter when a parameter has no point.
QuadEmbedding embed_quad(const ProductSpace& product,
                         std::span<const GeodesicChain> chains, const Rat& r,
                         std::optional<Rat> resolution = std::nullopt);

struct VertexDistanceMismatch {
  std::size_t u = 0;
  std::size_t v = 0;
  Rat expected;
  Rat actual;
};

// First vertex pair whose image distance differs from the graph distance.
std::optional<VertexDistanceMismatch> vertex_distance_mismatch(
    const QuadEmbedding& embedding);
inline bool is_isometric_on_vertices(const QuadEmbedding& embedding) {
  return !vertex_distance_mismatch(embedding).has_value();
}

// Whether the sup-product pair (p, q) is a uniquely geodesic segment at the
// given resolution: every factor realizing d(p,q) is a uniquely geodesic pair
// and the product betweenness has exactly one point per resolution step.
// `why` receives a reason on failure.
bool is_uniquely_geodesic_product_pair(const ProductSpace& product,
                                       std::size_t p, std::size_t q,
                                       const Rat& resolution,
                                       std::string* why = nullptr);

struct EdgeReport {
  QuadEdge edge;
  bool uniquely_geodesic = false;
  std::string detail;
};

struct AdmissibilityReport {
  std::optional<VertexDistanceMismatch> distance_mismatch;
  std::vector<EdgeReport> edges;

  bool isometric_on_vertices() const { return !distance_mismatch.has_value(); }
  bool admissible() const;
  std::vector<EdgeReport> failing_edges() const;
};

AdmissibilityReport is_admissible(const QuadEmbedding& embedding);

struct StandardReport {
  bool standard = false;
  // For each quad axis j, the product axis l of the slice {i(+e_j), i(-e_j)}.
  std::vector<std::optional<std::size_t>> axis_of;
};

StandardReport is_standard(const QuadEmbedding& embedding);

// Number of product coordinates where d(i(+e_j), i(-e_j)) is attained.
std::size_t q_statistic(const QuadEmbedding& embedding, std::size_t j);
std::vector<std::size_t> q_statistics(const QuadEmbedding& embedding);

struct QuadSearchOptions {
  std::uint64_t node_cap = kDefaultNodeCap;
  unsigned workers = 1;
  // Canonical labeling under the quad's own symmetries: +e_j precedes -e_j
  // and the +e_j are increasing, all by product rank.
  bool symmetry_reduction = true;
  // Stop after this many embeddings; 0 means all.
  std::size_t limit = 1;
};

struct QuadSearchResult {
  std::vector<QuadEmbedding> embeddings;
  std::uint64_t nodes = 0;
  bool exhausted = true;
};

// Admissible (vertex-isometric, edges uniquely geodesic) embeddings of
// Q^k_r into the product. Assigns the +-e pairs first, then sign vectors,
// pruning on every pairwise distance. Throws SearchBudgetExceeded past the
// node cap and ResolutionMismatch if the resolution does not divide r.
QuadSearchResult find_admissible_embeddings(const ProductSpace& product,
                                            std::size_t k, const Rat& r,
                                            const Rat& resolution,
                                            const QuadSearchOptions& options = {});

struct QuadDimension {
  std::size_t dimension = 0;
  // An embedding of Q^dimension_r, when dimension > 0.
  std::optional<QuadEmbedding> witness;
  std::uint64_t nodes = 0;
};

// Largest k with an admissible embedding of Q^k_r. Admissible embeddings of
// Q^(k+1) restrict to Q^k, so the search stops at the first k without one.
// Throws SearchBudgetExceeded carrying the largest k established so far.
QuadDimension max_quad_dimension(const ProductSpace& product, const Rat& r,
                                 const Rat& resolution,
                                 const QuadSearchOptions& options = {});

}  // namespace prodiso

#endif  // PRODISO_QUAD_GRAPH_HPP_
