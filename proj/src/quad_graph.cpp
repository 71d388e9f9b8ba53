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

#include "prodiso/quad_graph.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <set>
#include <thread>

#include "prodiso/error.hpp"

namespace prodiso {

std::vector<QuadVertex> quad_vertices(std::size_t m) {
  if (m < 1 || m > kMaxQuadDim) {
    throw InvalidInput("quad dimension must be in [1, " +
                       std::to_string(kMaxQuadDim) + "]");
  }
  std::vector<QuadVertex> out;
  for (std::size_t j = 0; j < m; ++j) {
    for (int sign : {+1, -1}) {
      QuadVertex v;
      v.kind = sign > 0 ? QuadVertexKind::kPositiveAxis
                        : QuadVertexKind::kNegativeAxis;
      v.axis = j;
      v.units.assign(m, 0);
      v.units[j] = 2 * sign;
      v.label = (sign > 0 ? "+e" : "-e") + std::to_string(j + 1);
      out.push_back(std::move(v));
    }
  }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    QuadVertex v;
    v.kind = QuadVertexKind::kSign;
    v.signs = mask;
    v.label = "(";
    for (std::size_t i = 0; i < m; ++i) {
      const bool plus = (mask >> i) & 1;
      v.units.push_back(plus ? 1 : -1);
      if (i) v.label += ",";
      v.label += plus ? "+" : "-";
    }
    v.label += ")";
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

int sup_units(const QuadVertex& a, const QuadVertex& b) {
  int best = 0;
  for (std::size_t i = 0; i < a.units.size(); ++i) {
    best = std::max(best, std::abs(a.units[i] - b.units[i]));
  }
  return best;
}

}  // namespace

std::vector<QuadEdge> quad_edges(std::span<const QuadVertex> vertices) {
  std::vector<QuadEdge> out;
  for (std::size_t u = 0; u < vertices.size(); ++u) {
    for (std::size_t v = u + 1; v < vertices.size(); ++v) {
      if (sup_units(vertices[u], vertices[v]) == 1) out.emplace_back(u, v);
    }
  }
  return out;
}

QuadGraph::QuadGraph(std::size_t dim, Rat scale)
    : dim_(dim), scale_(std::move(scale)) {
  if (scale_.sign() <= 0) throw InvalidInput("quad scale must be positive");
  vertices_ = quad_vertices(dim_);
  edges_ = quad_edges(vertices_);
}

std::vector<Rat> QuadGraph::coordinates(std::size_t v) const {
  std::vector<Rat> out;
  for (int u : vertices_.at(v).units) out.push_back(Rat(u) * scale_);
  return out;
}

int QuadGraph::unit_distance(std::size_t u, std::size_t v) const {
  return sup_units(vertices_.at(u), vertices_.at(v));
}

std::vector<std::vector<std::size_t>> QuadGraph::axis_geodesics(
    std::size_t j, std::size_t through) const {
  const std::size_t from = axis_vertex(j, true);
  const std::size_t to = axis_vertex(j, false);
  std::vector<std::vector<std::size_t>> adj(vertex_count());
  for (const auto& [u, v] : edges_) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> path{from};
  auto extend = [&](auto&& self) -> void {
    if (path.size() == 5) {
      if (path.back() == to &&
          std::find(path.begin(), path.end(), through) != path.end()) {
        out.push_back(path);
      }
      return;
    }
    for (std::size_t next : adj[path.back()]) {
      if (std::find(path.begin(), path.end(), next) != path.end()) continue;
      path.push_back(next);
      self(self);
      path.pop_back();
    }
  };
  extend(extend);
  std::sort(out.begin(), out.end());
  return out;
}

QuadEmbedding QuadEmbedding::make(QuadGraph quad, ProductSpace target,
                                  std::vector<std::size_t> vertex_map,
                                  Rat resolution) {
  if (vertex_map.size() != quad.vertex_count()) {
    throw InvalidEmbedding("vertex map has " +
                           std::to_string(vertex_map.size()) + " entries for " +
                           std::to_string(quad.vertex_count()) + " vertices");
  }
  if (resolution.sign() <= 0 || !divides(resolution, quad.scale())) {
    throw InvalidEmbedding("resolution " + resolution.str() +
                           " does not divide the scale " + quad.scale().str());
  }
  std::set<std::size_t> seen;
  for (std::size_t v = 0; v < vertex_map.size(); ++v) {
    if (vertex_map[v] >= target.size()) {
      throw InvalidEmbedding("image of " + quad.vertices()[v].label +
                             " is not a point of " + target.name());
    }
    if (!seen.insert(vertex_map[v]).second) {
      throw InvalidEmbedding("vertex map is not injective at " +
                             quad.vertices()[v].label);
    }
  }
  for (const auto& [u, v] : quad.edges()) {
    const Rat d = target.distance(vertex_map[u], vertex_map[v]);
    if (d != quad.scale()) {
      throw InvalidEmbedding("edge " + quad.vertices()[u].label + " - " +
                             quad.vertices()[v].label + " maps to distance " +
                             d.str() + ", expected " + quad.scale().str());
    }
  }
  return QuadEmbedding(std::move(quad), std::move(target),
                       std::move(vertex_map), std::move(resolution));
}

QuadEmbedding embed_quad(const ProductSpace& product,
                         std::span<const GeodesicChain> chains, const Rat& r,
                         std::optional<Rat> resolution) {
  const std::size_t m = product.factor_count();
  if (chains.size() != m) {
    throw InvalidInput("need one chain per factor: got " +
                       std::to_string(chains.size()) + " for " +
                       std::to_string(m) + " factors");
  }
  if (r.sign() <= 0) throw InvalidInput("scale r must be positive");
  // alpha, theta, beta, phi, omega per factor.
  std::vector<std::array<std::size_t, 5>> marks(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& chain = chains[i];
    if (chain.back() >= product.factor(i).size()) {
      throw InvalidInput("chain " + std::to_string(i) +
                         " does not lie in factor " + product.factor(i).name());
    }
    if (chain.length() < Rat(4) * r) {
      throw ChainTooShort("chain in factor " + product.factor(i).name() +
                          " has length " + chain.length().str() +
                          ", need " + (Rat(4) * r).str());
    }
    for (int s = 0; s < 5; ++s) {
      const Rat t = Rat(s) * r;
      const auto pt = chain.at(t);
      if (!pt) {
        throw MissingParameter("chain in factor " + product.factor(i).name() +
                                   " has no point at parameter " + t.str(),
                               t.str());
      }
      marks[i][static_cast<std::size_t>(s)] = *pt;
    }
  }
  QuadGraph quad(m, r);
  std::vector<std::size_t> map(quad.vertex_count());
  std::vector<std::size_t> base(m);
  for (std::size_t i = 0; i < m; ++i) base[i] = marks[i][2];
  for (std::size_t k = 0; k < m; ++k) {
    auto plus = base;
    plus[k] = marks[k][4];
    map[quad.axis_vertex(k, true)] = product.rank(ProductPoint(plus));
    auto minus = base;
    minus[k] = marks[k][0];
    map[quad.axis_vertex(k, false)] = product.rank(ProductPoint(minus));
  }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<std::size_t> c(m);
    for (std::size_t i = 0; i < m; ++i) {
      c[i] = ((mask >> i) & 1) ? marks[i][3] : marks[i][1];
    }
    map[quad.sign_vertex(mask)] = product.rank(ProductPoint(std::move(c)));
  }
  return QuadEmbedding::make(std::move(quad), product, std::move(map),
                             resolution.value_or(r));
}

std::optional<VertexDistanceMismatch> vertex_distance_mismatch(
    const QuadEmbedding& embedding) {
  const auto& quad = embedding.quad();
  for (std::size_t u = 0; u < quad.vertex_count(); ++u) {
    for (std::size_t v = u + 1; v < quad.vertex_count(); ++v) {
      const Rat expected = quad.distance(u, v);
      const Rat actual =
          embedding.target().distance(embedding.image(u), embedding.image(v));
      if (expected != actual) {
        return VertexDistanceMismatch{u, v, expected, actual};
      }
    }
  }
  return std::nullopt;
}

bool is_uniquely_geodesic_product_pair(const ProductSpace& product,
                                       std::size_t p, std::size_t q,
                                       const Rat& resolution,
                                       std::string* why) {
  const Rat d = product.distance(p, q);
  if (resolution.sign() <= 0 || !divides(resolution, d)) {
    throw ResolutionMismatch("resolution " + resolution.str() +
                             " does not divide " + d.str());
  }
  for (std::size_t l = 0; l < product.factor_count(); ++l) {
    if (product.coord_distance(p, q, l) != d) continue;
    const MetricSpace& f = product.factor(l);
    if (!is_uniquely_geodesic_pair(f, product.coord(p, l), product.coord(q, l),
                                   resolution)) {
      if (why) {
        *why = "factor " + std::to_string(l) + " pair (" +
               f.label(product.coord(p, l)) + ", " +
               f.label(product.coord(q, l)) + ") is not uniquely geodesic";
      }
      return false;
    }
  }
  const auto between = product_betweenness(product, p, q);
  const std::int64_t steps = (d / resolution).num();
  for (std::int64_t s = 0; s <= steps; ++s) {
    const Rat t = Rat(s) * resolution;
    const auto hits =
        std::count_if(between.begin(), between.end(),
                      [&](std::size_t z) { return product.distance(p, z) == t; });
    if (hits != 1) {
      if (why) {
        *why = std::to_string(hits) + " product points at parameter " + t.str();
      }
      return false;
    }
  }
  return true;
}

bool AdmissibilityReport::admissible() const {
  if (distance_mismatch) return false;
  return std::all_of(edges.begin(), edges.end(),
                     [](const EdgeReport& e) { return e.uniquely_geodesic; });
}

std::vector<EdgeReport> AdmissibilityReport::failing_edges() const {
  std::vector<EdgeReport> out;
  for (const auto& e : edges) {
    if (!e.uniquely_geodesic) out.push_back(e);
  }
  return out;
}

AdmissibilityReport is_admissible(const QuadEmbedding& embedding) {
  AdmissibilityReport report;
  report.distance_mismatch = vertex_distance_mismatch(embedding);
  for (const auto& e : embedding.quad().edges()) {
    EdgeReport er;
    er.edge = e;
    er.uniquely_geodesic = is_uniquely_geodesic_product_pair(
        embedding.target(), embedding.image(e.first), embedding.image(e.second),
        embedding.resolution(), &er.detail);
    report.edges.push_back(std::move(er));
  }
  return report;
}

StandardReport is_standard(const QuadEmbedding& embedding) {
  StandardReport report;
  report.standard = true;
  const auto& quad = embedding.quad();
  for (std::size_t j = 0; j < quad.dim(); ++j) {
    const auto axis = pair_slice_axis(
        embedding.target(), embedding.image(quad.axis_vertex(j, true)),
        embedding.image(quad.axis_vertex(j, false)));
    report.axis_of.push_back(axis);
    if (!axis) report.standard = false;
  }
  return report;
}

std::size_t q_statistic(const QuadEmbedding& embedding, std::size_t j) {
  const auto& quad = embedding.quad();
  if (j >= quad.dim()) throw InvalidInput("q_statistic axis out of range");
  const std::size_t a = embedding.image(quad.axis_vertex(j, true));
  const std::size_t b = embedding.image(quad.axis_vertex(j, false));
  const auto& target = embedding.target();
  const Rat d = target.distance(a, b);
  std::size_t count = 0;
  for (std::size_t l = 0; l < target.factor_count(); ++l) {
    if (target.coord_distance(a, b, l) == d) ++count;
  }
  return count;
}

std::vector<std::size_t> q_statistics(const QuadEmbedding& embedding) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < embedding.quad().dim(); ++j) {
    out.push_back(q_statistic(embedding, j));
  }
  return out;
}

namespace {

constexpr int kNoUnit = -1;

struct QuadTables {
  std::size_t n = 0;       // product points
  std::size_t dim = 0;     // quad dimension
  std::size_t verts = 0;   // quad vertices
  std::vector<int> units;  // n * n: d / r when in {0..4} and integral
  std::vector<int> dq;     // verts * verts
  std::vector<std::vector<std::uint32_t>> buckets;  // n * 5
  std::vector<std::vector<std::size_t>> earlier_neighbors;
};

QuadTables build_quad_tables(const ProductSpace& product, const QuadGraph& quad) {
  QuadTables t;
  t.n = product.size();
  t.dim = quad.dim();
  t.verts = quad.vertex_count();
  t.units.assign(t.n * t.n, kNoUnit);
  t.buckets.resize(t.n * 5);
  const Rat& r = quad.scale();
  for (std::size_t a = 0; a < t.n; ++a) {
    for (std::size_t b = 0; b < t.n; ++b) {
      const Rat q = product.distance(a, b) / r;
      if (q.is_integer() && q.num() >= 0 && q.num() <= 4) {
        t.units[a * t.n + b] = static_cast<int>(q.num());
        t.buckets[a * 5 + static_cast<std::size_t>(q.num())].push_back(
            static_cast<std::uint32_t>(b));
      }
    }
  }
  t.dq.resize(t.verts * t.verts);
  for (std::size_t u = 0; u < t.verts; ++u) {
    for (std::size_t v = 0; v < t.verts; ++v) {
      t.dq[u * t.verts + v] = quad.unit_distance(u, v);
    }
  }
  t.earlier_neighbors.resize(t.verts);
  for (const auto& [u, v] : quad.edges()) {
    t.earlier_neighbors[std::max(u, v)].push_back(std::min(u, v));
  }
  return t;
}

class QuadBacktracker {
 public:
  QuadBacktracker(const ProductSpace& product, const QuadTables& t,
                  const Rat& resolution, bool symmetry,
                  std::atomic<std::uint64_t>& nodes, std::uint64_t cap)
      : product_(product), t_(t), resolution_(resolution), symmetry_(symmetry),
        nodes_(nodes), cap_(cap), img_(t.verts, 0), next_(t.verts, 0),
        geodesic_(t.n * t.n, -1) {}

  // Calls emit(image) for each embedding rooted at `root`; emit returns
  // false to stop. Returns false if stopped.
  template <typename Emit>
  bool run(std::size_t root, Emit&& emit) {
    const std::size_t verts = t_.verts;
    count_node();
    img_[0] = root;
    std::size_t d = 1;
    next_[1] = 0;
    while (d >= 1) {
      const auto& cands = t_.buckets[img_[0] * 5 +
                                     static_cast<std::size_t>(t_.dq[d])];
      bool advanced = false;
      while (next_[d] < cands.size()) {
        const std::size_t y = cands[next_[d]++];
        if (!admissible_here(d, y)) continue;
        img_[d] = y;
        count_node();
        advanced = true;
        break;
      }
      if (!advanced) {
        --d;
        continue;
      }
      if (d + 1 == verts) {
        if (!emit(img_)) return false;
        continue;
      }
      ++d;
      next_[d] = 0;
    }
    return true;
  }

 private:
  bool admissible_here(std::size_t d, std::size_t y) {
    const std::size_t n = t_.n;
    if (symmetry_ && d < 2 * t_.dim) {
      if (d % 2 == 1 && y <= img_[d - 1]) return false;
      if (d % 2 == 0 && d >= 2 && y <= img_[d - 2]) return false;
    }
    for (std::size_t x = 1; x < d; ++x) {
      if (t_.units[img_[x] * n + y] != t_.dq[x * t_.verts + d]) return false;
    }
    for (std::size_t x : t_.earlier_neighbors[d]) {
      if (!edge_ok(img_[x], y)) return false;
    }
    return true;
  }

  bool edge_ok(std::size_t a, std::size_t b) {
    signed char& slot = geodesic_[std::min(a, b) * t_.n + std::max(a, b)];
    if (slot < 0) {
      slot = is_uniquely_geodesic_product_pair(product_, a, b, resolution_) ? 1
                                                                             : 0;
    }
    return slot == 1;
  }

  void count_node() {
    const auto seen = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (seen > cap_) {
      throw SearchBudgetExceeded(
          "quad embedding search exceeded " + std::to_string(cap_) + " nodes",
          seen);
    }
  }

  const ProductSpace& product_;
  const QuadTables& t_;
  Rat resolution_;
  bool symmetry_;
  std::atomic<std::uint64_t>& nodes_;
  std::uint64_t cap_;
  std::vector<std::size_t> img_;
  std::vector<std::size_t> next_;
  std::vector<signed char> geodesic_;
};

}  // namespace

QuadSearchResult find_admissible_embeddings(const ProductSpace& product,
                                            std::size_t k, const Rat& r,
                                            const Rat& resolution,
                                            const QuadSearchOptions& options) {
  if (r.sign() <= 0) throw InvalidInput("scale r must be positive");
  if (resolution.sign() <= 0 || !divides(resolution, r)) {
    throw ResolutionMismatch("resolution " + resolution.str() +
                             " does not divide r = " + r.str());
  }
  QuadGraph quad(k, r);
  QuadSearchResult result;
  if (quad.vertex_count() > product.size()) return result;
  const QuadTables tables = build_quad_tables(product, quad);
  std::atomic<std::uint64_t> nodes{0};
  const std::size_t n = product.size();

  auto finish = [&](const std::vector<std::size_t>& img) {
    return QuadEmbedding::make(quad, product, img, resolution);
  };

  const unsigned workers = std::max(1u, options.workers);
  if (workers == 1) {
    QuadBacktracker bt(product, tables, resolution, options.symmetry_reduction,
                       nodes, options.node_cap);
    for (std::size_t root = 0; root < n; ++root) {
      const bool go_on = bt.run(root, [&](const std::vector<std::size_t>& img) {
        result.embeddings.push_back(finish(img));
        return options.limit == 0 || result.embeddings.size() < options.limit;
      });
      if (!go_on) {
        result.exhausted = false;
        break;
      }
    }
    result.nodes = nodes.load();
    return result;
  }

  std::vector<std::vector<std::vector<std::size_t>>> per_root(n);
  std::atomic<std::size_t> next_root{0};
  // Lowest root that already supplied `limit` embeddings on its own.
  std::atomic<std::size_t> settled_root{n};
  std::exception_ptr failure;
  std::mutex failure_mu;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          QuadBacktracker bt(product, tables, resolution,
                             options.symmetry_reduction, nodes,
                             options.node_cap);
          for (std::size_t root = next_root++; root < n; root = next_root++) {
            if (root > settled_root.load()) continue;
            auto& bucket = per_root[root];
            bt.run(root, [&](const std::vector<std::size_t>& img) {
              bucket.push_back(img);
              if (options.limit != 0 && bucket.size() >= options.limit) {
                std::size_t cur = settled_root.load();
                while (root < cur &&
                       !settled_root.compare_exchange_weak(cur, root)) {
                }
                return false;
              }
              return true;
            });
          }
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
          next_root = n;
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  result.nodes = nodes.load();
  for (const auto& bucket : per_root) {
    for (const auto& img : bucket) {
      if (options.limit != 0 && result.embeddings.size() >= options.limit) {
        result.exhausted = false;
        return result;
      }
      result.embeddings.push_back(finish(img));
    }
  }
  return result;
}

QuadDimension max_quad_dimension(const ProductSpace& product, const Rat& r,
                                 const Rat& resolution,
                                 const QuadSearchOptions& options) {
  if (resolution.sign() <= 0 || !divides(resolution, r)) {
    throw ResolutionMismatch("resolution " + resolution.str() +
                             " does not divide r = " + r.str());
  }
  QuadDimension out;
  QuadSearchOptions opts = options;
  opts.limit = 1;
  for (std::size_t k = 1; k <= kMaxQuadDim; ++k) {
    if (2 * k + (std::size_t{1} << k) > product.size()) break;
    if (out.nodes >= options.node_cap) {
      throw SearchBudgetExceeded("quad dimension search exceeded " +
                                     std::to_string(options.node_cap) + " nodes",
                                 out.nodes, out.dimension);
    }
    opts.node_cap = options.node_cap - out.nodes;
    QuadSearchResult res;
    try {
      res = find_admissible_embeddings(product, k, r, resolution, opts);
    } catch (const SearchBudgetExceeded& e) {
      throw SearchBudgetExceeded("quad dimension search for k = " +
                                     std::to_string(k) + " exceeded " +
                                     std::to_string(options.node_cap) +
                                     " nodes",
                                 out.nodes + e.nodes(), out.dimension);
    }
    out.nodes += res.nodes;
    if (res.embeddings.empty()) break;
    out.dimension = k;
    out.witness = res.embeddings.front();
  }
  return out;
}

}  // namespace prodiso
