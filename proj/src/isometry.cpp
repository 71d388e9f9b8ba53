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

#include "prodiso/isometry.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_set>

#include "prodiso/error.hpp"

namespace prodiso {

class IsometryBuilder {
 public:
  // Caller guarantees `map` is a distance-preserving bijection.
  static Isometry trusted(const ProductSpace& domain,
                          const ProductSpace& codomain,
                          std::vector<std::size_t> map) {
    return Isometry(domain, codomain, std::move(map));
  }
};

Isometry::Isometry(ProductSpace domain, ProductSpace codomain,
                   std::vector<std::size_t> map)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      map_(std::move(map)),
      inverse_(map_.size()) {
  for (std::size_t x = 0; x < map_.size(); ++x) inverse_[map_[x]] = x;
}

ProductPoint Isometry::operator()(const ProductPoint& p) const {
  return codomain_.point(map_[domain_.rank(p)]);
}

bool Isometry::is_identity() const {
  if (!(domain_ == codomain_)) return false;
  for (std::size_t x = 0; x < map_.size(); ++x) {
    if (map_[x] != x) return false;
  }
  return true;
}

bool operator==(const Isometry& a, const Isometry& b) {
  return a.map_ == b.map_ && a.domain_ == b.domain_ && a.codomain_ == b.codomain_;
}

IsometryCheck is_isometry(const ProductSpace& domain,
                          const ProductSpace& codomain,
                          std::vector<std::size_t> map) {
  const std::size_t n = domain.size();
  if (codomain.size() != n) {
    throw SizeMismatch("domain has " + std::to_string(n) +
                       " points, codomain has " +
                       std::to_string(codomain.size()));
  }
  if (map.size() != n) {
    throw SizeMismatch("map has " + std::to_string(map.size()) +
                       " entries for " + std::to_string(n) + " points");
  }
  std::vector<std::size_t> preimage(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    if (map[x] >= n) {
      return NotBijective{x, x, "image of " + domain.label(x) + " out of range"};
    }
    if (preimage[map[x]] != n) {
      return NotBijective{preimage[map[x]], x,
                          domain.label(preimage[map[x]]) + " and " +
                              domain.label(x) + " share the image " +
                              codomain.label(map[x])};
    }
    preimage[map[x]] = x;
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      const Rat before = domain.distance(x, y);
      const Rat after = codomain.distance(map[x], map[y]);
      if (before != after) return NotDistancePreserving{x, y, before, after};
    }
  }
  return IsometryBuilder::trusted(domain, codomain, std::move(map));
}

Isometry verified_isometry(const ProductSpace& domain,
                           const ProductSpace& codomain,
                           std::vector<std::size_t> map) {
  auto check = is_isometry(domain, codomain, std::move(map));
  if (auto* iso = std::get_if<Isometry>(&check)) return std::move(*iso);
  if (const auto* nd = std::get_if<NotDistancePreserving>(&check)) {
    throw InvalidInput("map is not distance preserving: d(" +
                       domain.label(nd->x) + ", " + domain.label(nd->y) +
                       ") = " + nd->domain_distance.str() + " but images are " +
                       nd->image_distance.str() + " apart");
  }
  throw InvalidInput("map is not a bijection: " +
                     std::get<NotBijective>(check).detail);
}

Isometry identity(const ProductSpace& space) {
  std::vector<std::size_t> map(space.size());
  for (std::size_t x = 0; x < map.size(); ++x) map[x] = x;
  return IsometryBuilder::trusted(space, space, std::move(map));
}

Isometry compose(const Isometry& f, const Isometry& g) {
  if (!(g.codomain() == f.domain())) {
    throw DomainMismatch("cannot compose: codomain " + g.codomain().name() +
                         " differs from domain " + f.domain().name());
  }
  std::vector<std::size_t> map(g.map().size());
  for (std::size_t x = 0; x < map.size(); ++x) map[x] = f(g(x));
  return IsometryBuilder::trusted(g.domain(), f.codomain(), std::move(map));
}

Isometry invert(const Isometry& f) {
  return IsometryBuilder::trusted(f.codomain(), f.domain(), f.inverse());
}

DistanceProfile distance_profile(const ProductSpace& space) {
  DistanceProfile out(space.size());
  for (std::size_t x = 0; x < space.size(); ++x) {
    for (std::size_t y = 0; y < space.size(); ++y) {
      if (x != y) out[x].push_back(space.distance(x, y));
    }
    std::sort(out[x].begin(), out[x].end());
  }
  return out;
}

namespace {

// Distances of both spaces mapped to shared small integers, plus per-point
// profile classes and, per codomain point, its points bucketed by distance.
struct SearchTables {
  std::size_t n = 0;
  std::vector<std::uint32_t> dom;  // n * n distance classes
  std::vector<std::uint32_t> cod;
  std::vector<std::uint32_t> dom_profile;
  std::vector<std::uint32_t> cod_profile;
  std::size_t classes = 0;
  // buckets[y * classes + c] = codomain points at class c from y.
  std::vector<std::vector<std::uint32_t>> buckets;
  bool feasible = true;
};

SearchTables build_tables(const ProductSpace& domain,
                          const ProductSpace& codomain) {
  SearchTables t;
  const std::size_t n = domain.size();
  t.n = n;
  std::vector<Rat> dd(n * n), cd(n * n);
  std::vector<Rat> values;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      dd[x * n + y] = domain.distance(x, y);
      cd[x * n + y] = codomain.distance(x, y);
    }
  }
  values = dd;
  values.insert(values.end(), cd.begin(), cd.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  t.classes = values.size();
  auto cls = [&](const Rat& r) {
    return static_cast<std::uint32_t>(
        std::lower_bound(values.begin(), values.end(), r) - values.begin());
  };
  t.dom.resize(n * n);
  t.cod.resize(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    t.dom[i] = cls(dd[i]);
    t.cod[i] = cls(cd[i]);
  }
  std::map<std::vector<std::uint32_t>, std::uint32_t> profile_ids;
  auto profile_of = [&](const std::vector<std::uint32_t>& table,
                        std::size_t x) {
    std::vector<std::uint32_t> row(table.begin() + x * n,
                                   table.begin() + (x + 1) * n);
    std::sort(row.begin(), row.end());
    const auto [it, inserted] = profile_ids.try_emplace(
        std::move(row), static_cast<std::uint32_t>(profile_ids.size()));
    return it->second;
  };
  t.dom_profile.resize(n);
  t.cod_profile.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    t.dom_profile[x] = profile_of(t.dom, x);
    t.cod_profile[x] = profile_of(t.cod, x);
  }
  {
    auto a = t.dom_profile;
    auto b = t.cod_profile;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    t.feasible = a == b;
  }
  t.buckets.resize(n * t.classes);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t z = 0; z < n; ++z) {
      t.buckets[y * t.classes + t.cod[y * n + z]].push_back(
          static_cast<std::uint32_t>(z));
    }
  }
  return t;
}

constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

// Depth-first search below a fixed image for domain point 0.
class Backtracker {
 public:
  Backtracker(const SearchTables& t, std::atomic<std::uint64_t>& nodes,
              std::uint64_t cap)
      : t_(t), nodes_(nodes), cap_(cap), map_(t.n, kUnassigned),
        used_(t.n, false), next_(t.n, 0) {}

  // Returns false if the visitor asked to stop.
  template <typename Visit>
  bool run(std::size_t root_image, Visit&& visit) {
    const std::size_t n = t_.n;
    if (t_.dom_profile[0] != t_.cod_profile[root_image]) return true;
    count_node();
    map_[0] = root_image;
    used_[root_image] = true;
    if (n == 1) {
      const bool go_on = visit(std::span<const std::size_t>(map_));
      used_[root_image] = false;
      map_[0] = kUnassigned;
      return go_on;
    }
    std::size_t d = 1;
    next_[1] = 0;
    while (d >= 1) {
      if (map_[d] != kUnassigned) {
        used_[map_[d]] = false;
        map_[d] = kUnassigned;
      }
      const auto& cands =
          t_.buckets[map_[0] * t_.classes + t_.dom[0 * n + d]];
      bool advanced = false;
      while (next_[d] < cands.size()) {
        const std::size_t y = cands[next_[d]++];
        if (used_[y] || t_.cod_profile[y] != t_.dom_profile[d]) continue;
        if (!consistent(d, y)) continue;
        map_[d] = y;
        used_[y] = true;
        count_node();
        advanced = true;
        break;
      }
      if (!advanced) {
        --d;
        continue;
      }
      if (d + 1 == n) {
        if (!visit(std::span<const std::size_t>(map_))) {
          reset();
          return false;
        }
        continue;
      }
      ++d;
      next_[d] = 0;
    }
    reset();
    return true;
  }

 private:
  bool consistent(std::size_t d, std::size_t y) const {
    const std::size_t n = t_.n;
    for (std::size_t x = 1; x < d; ++x) {
      if (t_.dom[x * n + d] != t_.cod[map_[x] * n + y]) return false;
    }
    return true;
  }

  void count_node() {
    const auto seen = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (seen > cap_) {
      throw SearchBudgetExceeded("isometry search exceeded " +
                                     std::to_string(cap_) + " nodes",
                                 seen);
    }
  }

  void reset() {
    std::fill(map_.begin(), map_.end(), kUnassigned);
    std::fill(used_.begin(), used_.end(), false);
  }

  const SearchTables& t_;
  std::atomic<std::uint64_t>& nodes_;
  std::uint64_t cap_;
  std::vector<std::size_t> map_;
  std::vector<bool> used_;
  std::vector<std::size_t> next_;
};

}  // namespace

SearchStats for_each_isometry(const ProductSpace& domain,
                              const ProductSpace& codomain,
                              const IsometryVisitor& visit,
                              const SearchOptions& options) {
  SearchStats stats;
  if (domain.size() != codomain.size()) return stats;
  const SearchTables tables = build_tables(domain, codomain);
  if (!tables.feasible) return stats;
  const std::size_t n = tables.n;
  std::atomic<std::uint64_t> nodes{0};

  auto accept = [&](std::span<const std::size_t> map) {
    ++stats.found;
    if (!visit(map)) return false;
    return !(options.limit != 0 && stats.found >= options.limit);
  };

  const unsigned workers = std::max(1u, options.workers);
  if (workers == 1 || n < 2) {
    Backtracker bt(tables, nodes, options.node_cap);
    for (std::size_t root = 0; root < n; ++root) {
      if (!bt.run(root, accept)) {
        stats.exhausted = false;
        break;
      }
    }
    stats.nodes = nodes.load();
    return stats;
  }

  // Parallel: each worker owns whole root branches; results are replayed in
  // root order afterwards so the visitor sees the sequential order.
  std::vector<std::vector<std::vector<std::size_t>>> per_root(n);
  std::atomic<std::size_t> next_root{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          Backtracker bt(tables, nodes, options.node_cap);
          for (std::size_t root = next_root++; root < n; root = next_root++) {
            bt.run(root, [&](std::span<const std::size_t> m) {
              per_root[root].emplace_back(m.begin(), m.end());
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
  stats.nodes = nodes.load();
  for (const auto& bucket : per_root) {
    for (const auto& m : bucket) {
      if (!accept(m)) {
        stats.exhausted = false;
        return stats;
      }
    }
  }
  return stats;
}

std::vector<Isometry> enumerate_isometries(const ProductSpace& domain,
                                           const ProductSpace& codomain,
                                           const SearchOptions& options) {
  std::vector<Isometry> out;
  for_each_isometry(
      domain, codomain,
      [&](std::span<const std::size_t> m) {
        out.push_back(IsometryBuilder::trusted(
            domain, codomain, std::vector<std::size_t>(m.begin(), m.end())));
        return true;
      },
      options);
  return out;
}

bool are_isometric(const ProductSpace& a, const ProductSpace& b,
                   const SearchOptions& options) {
  SearchOptions one = options;
  one.limit = 1;
  return for_each_isometry(a, b, [](auto) { return true; }, one).found > 0;
}

void PermutationSet::push_back(std::span<const std::size_t> perm) {
  if (perm.size() != degree_) throw InvalidInput("permutation degree mismatch");
  for (std::size_t v : perm) data_.push_back(static_cast<std::uint32_t>(v));
}

void PermutationSet::push_back(std::span<const std::uint32_t> perm) {
  if (perm.size() != degree_) throw InvalidInput("permutation degree mismatch");
  data_.insert(data_.end(), perm.begin(), perm.end());
}

namespace {

// Hash set of indices into a PermutationSet, keyed by permutation content.
class PermIndex {
 public:
  explicit PermIndex(const PermutationSet& pool)
      : pool_(pool), set_(16, Hash{this}, Eq{this}) {}

  std::optional<std::size_t> find(std::span<const std::uint32_t> perm) {
    probe_ = perm;
    const auto it = set_.find(kProbe);
    if (it == set_.end()) return std::nullopt;
    return *it;
  }
  bool insert(std::size_t index) { return set_.insert(index).second; }

 private:
  static constexpr std::size_t kProbe = static_cast<std::size_t>(-1);

  struct Hash {
    const PermIndex* self;
    std::size_t operator()(std::size_t i) const {
      const auto p = self->view(i);
      std::size_t h = 1469598103934665603ULL;
      for (std::uint32_t v : p) h = (h ^ v) * 1099511628211ULL;
      return h;
    }
  };
  struct Eq {
    const PermIndex* self;
    bool operator()(std::size_t a, std::size_t b) const {
      const auto pa = self->view(a);
      const auto pb = self->view(b);
      return std::equal(pa.begin(), pa.end(), pb.begin(), pb.end());
    }
  };

  std::span<const std::uint32_t> view(std::size_t i) const {
    return i == kProbe ? probe_ : pool_.at(i);
  }

  const PermutationSet& pool_;
  std::span<const std::uint32_t> probe_;
  std::unordered_set<std::size_t, Hash, Eq> set_;
};

}  // namespace

GroupCheck check_group(const PermutationSet& perms) {
  GroupCheck out;
  out.order = perms.size();
  const std::size_t n = perms.degree();
  if (perms.size() == 0) return out;

  PermIndex index(perms);
  for (std::size_t i = 0; i < perms.size(); ++i) {
    if (!index.insert(i)) out.distinct = false;
  }

  std::vector<std::uint32_t> scratch(n);
  for (std::size_t v = 0; v < n; ++v) scratch[v] = static_cast<std::uint32_t>(v);
  out.has_identity = index.find(scratch).has_value();

  out.closed_under_inverse = true;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    const auto p = perms.at(i);
    for (std::size_t v = 0; v < n; ++v) scratch[p[v]] = static_cast<std::uint32_t>(v);
    if (!index.find(scratch)) {
      out.closed_under_inverse = false;
      out.inverse_witness = i;
      break;
    }
  }

  // Grow H = <generators> inside the set. Every element of H stays a member
  // of the set until the first product that escapes, which is the witness.
  std::vector<std::size_t> members;  // indices into perms, elements of H
  std::vector<char> in_h(perms.size(), 0);
  std::vector<std::size_t> gens;
  auto product_index = [&](std::size_t a, std::size_t b)
      -> std::optional<std::size_t> {
    // a after b
    const auto pa = perms.at(a);
    const auto pb = perms.at(b);
    for (std::size_t v = 0; v < n; ++v) scratch[v] = pa[pb[v]];
    return index.find(scratch);
  };
  std::size_t identity_index = 0;
  {
    for (std::size_t v = 0; v < n; ++v) scratch[v] = static_cast<std::uint32_t>(v);
    const auto id = index.find(scratch);
    if (!id) {
      out.closed_under_composition = false;
      return out;
    }
    identity_index = *id;
  }
  members.push_back(identity_index);
  in_h[identity_index] = 1;

  for (std::size_t s = 0; s < perms.size(); ++s) {
    if (in_h[s]) continue;
    gens.push_back(s);
    std::vector<std::size_t> queue;
    const std::size_t old_count = members.size();
    // Old elements times the new generator.
    for (std::size_t i = 0; i < old_count; ++i) {
      const auto prod = product_index(members[i], s);
      if (!prod) {
        out.composition_witness = std::make_pair(members[i], s);
        return out;
      }
      if (!in_h[*prod]) {
        in_h[*prod] = 1;
        members.push_back(*prod);
        queue.push_back(*prod);
      }
    }
    // New elements times every generator.
    for (std::size_t q = 0; q < queue.size(); ++q) {
      for (std::size_t g : gens) {
        const auto prod = product_index(queue[q], g);
        if (!prod) {
          out.composition_witness = std::make_pair(queue[q], g);
          return out;
        }
        if (!in_h[*prod]) {
          in_h[*prod] = 1;
          members.push_back(*prod);
          queue.push_back(*prod);
        }
      }
    }
  }
  out.closed_under_composition = true;
  return out;
}

GroupCheck check_group(std::span<const Isometry> isometries) {
  if (isometries.empty()) return GroupCheck{};
  PermutationSet perms(isometries.front().map().size());
  for (const auto& f : isometries) {
    if (!(f.domain() == f.codomain()) ||
        !(f.domain() == isometries.front().domain())) {
      throw DomainMismatch("group check needs self-maps of one space");
    }
    perms.push_back(std::span<const std::size_t>(f.map()));
  }
  return check_group(perms);
}

}  // namespace prodiso
