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

#include "prodiso/decompose.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "prodiso/error.hpp"

namespace prodiso {

namespace {

constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

std::string factor_label(std::size_t i) { return "factor " + std::to_string(i); }

}  // namespace

Decomposition Decomposition::make(
    const ProductSpace& domain, const ProductSpace& codomain,
    std::vector<std::size_t> perm,
    std::vector<std::vector<std::size_t>> factor_maps) {
  const std::size_t m = domain.factor_count();
  if (codomain.factor_count() != m) {
    throw InvalidDecomposition("factor counts differ: " + std::to_string(m) +
                               " vs " +
                               std::to_string(codomain.factor_count()));
  }
  if (perm.size() != m || factor_maps.size() != m) {
    throw InvalidDecomposition("need one permutation entry and one map per "
                               "factor");
  }
  std::vector<char> hit(m, 0);
  for (std::size_t j : perm) {
    if (j >= m || hit[j]) {
      throw InvalidDecomposition("perm is not a permutation of the factors");
    }
    hit[j] = 1;
  }
  std::vector<Isometry> maps;
  for (std::size_t i = 0; i < m; ++i) {
    const auto from = ProductSpace::of(domain.factor(i));
    const auto to = ProductSpace::of(codomain.factor(perm[i]));
    IsometryCheck check = [&]() -> IsometryCheck {
      try {
        return is_isometry(from, to, std::move(factor_maps[i]));
      } catch (const SizeMismatch& e) {
        throw InvalidDecomposition("map " + std::to_string(i) + " from " +
                                   domain.factor(i).name() + " to " +
                                   codomain.factor(perm[i]).name() + ": " +
                                   e.what());
      }
    }();
    auto* iso = std::get_if<Isometry>(&check);
    if (!iso) {
      throw InvalidDecomposition("map " + std::to_string(i) + " from " +
                                 domain.factor(i).name() + " to " +
                                 codomain.factor(perm[i]).name() +
                                 " is not an isometry");
    }
    maps.push_back(std::move(*iso));
  }
  return Decomposition(domain, codomain, std::move(perm), std::move(maps));
}

namespace {

std::vector<std::size_t> assemble(const Decomposition& d) {
  const auto& x = d.domain();
  const auto& y = d.codomain();
  const std::size_t m = x.factor_count();
  std::vector<std::size_t> map(x.size());
  std::vector<std::size_t> c(m);
  for (std::size_t r = 0; r < x.size(); ++r) {
    for (std::size_t i = 0; i < m; ++i) {
      c[d.perm()[i]] = d.factor_maps()[i](x.coord(r, i));
    }
    map[r] = y.rank(ProductPoint(c));
  }
  return map;
}

}  // namespace

Isometry reconstruct(const Decomposition& d) {
  try {
    return verified_isometry(d.domain(), d.codomain(), assemble(d));
  } catch (const InvalidInput& e) {
    throw InvalidDecomposition(std::string("reconstruction failed: ") +
                               e.what());
  }
}

Isometry reconstruct(const ProductSpace& domain, const ProductSpace& codomain,
                     std::vector<std::size_t> perm,
                     std::vector<std::vector<std::size_t>> factor_maps) {
  return reconstruct(Decomposition::make(domain, codomain, std::move(perm),
                                         std::move(factor_maps)));
}

const char* to_string(IrreducibleReason reason) {
  switch (reason) {
    case IrreducibleReason::kNonSliceImage:
      return "non-slice-image";
    case IrreducibleReason::kAxisCollision:
      return "axis-collision";
    case IrreducibleReason::kFactorMapInvalid:
      return "factor-map-invalid";
    case IrreducibleReason::kReconstructMismatch:
      return "reconstruct-mismatch";
  }
  return "unknown";
}

const char* to_string(HypothesisKind kind) {
  switch (kind) {
    case HypothesisKind::kFactorCount:
      return "factor-count";
    case HypothesisKind::kPointFactor:
      return "point-factor";
  }
  return "unknown";
}

const char* to_string(QuadBranch branch) {
  switch (branch) {
    case QuadBranch::kAllEqual:
      return "all-equal";
    case QuadBranch::kOppositePairs:
      return "opposite-pairs";
    case QuadBranch::kViolated:
      return "violated";
  }
  return "unknown";
}

namespace {

std::vector<ProductPoint> image_of(const Isometry& f, const Slice& s) {
  std::vector<ProductPoint> out;
  for (const auto& p : s.members()) out.push_back(f(p));
  return out;
}

Irreducible non_slice_witness(const Isometry& f, const Slice& s,
                              IrreducibleReason reason) {
  Irreducible out;
  out.reason = reason;
  out.witness_slice = s;
  out.witness_image = image_of(f, s);
  auto cls = classify_slice(f.codomain(), out.witness_image);
  if (auto* bad = std::get_if<NotASlice>(&cls)) out.image_class = *bad;
  return out;
}

void attach_witness(const Isometry& f, Irreducible& out) {
  if (auto w = find_non_slice_image(f)) {
    out.witness_slice = w->witness_slice;
    out.witness_image = w->witness_image;
    out.image_class = w->image_class;
  }
}

}  // namespace

std::optional<Irreducible> find_non_slice_image(const Isometry& f) {
  const auto& x = f.domain();
  const auto& y = f.codomain();
  for (std::size_t k = 0; k < x.factor_count(); ++k) {
    for (const auto& s : enumerate_pair_slices(x, k)) {
      const std::size_t a = f(x.rank(s.member(s.axis_set[0])));
      const std::size_t b = f(x.rank(s.member(s.axis_set[1])));
      if (!pair_slice_axis(y, a, b)) {
        return non_slice_witness(f, s, IrreducibleReason::kNonSliceImage);
      }
    }
  }
  return std::nullopt;
}

ReducibilityCertificate decompose(const Isometry& f) {
  const auto& x = f.domain();
  const auto& y = f.codomain();
  const std::size_t m = x.factor_count();
  if (y.factor_count() != m) {
    return HypothesisViolation{
        HypothesisKind::kFactorCount,
        "domain has " + std::to_string(m) + " factors, codomain has " +
            std::to_string(y.factor_count())};
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (x.factor(i).size() == 1) {
      return HypothesisViolation{HypothesisKind::kPointFactor,
                                 "domain " + factor_label(i) + " (" +
                                     x.factor(i).name() + ") is a point"};
    }
    if (y.factor(i).size() == 1) {
      return HypothesisViolation{HypothesisKind::kPointFactor,
                                 "codomain " + factor_label(i) + " (" +
                                     y.factor(i).name() + ") is a point"};
    }
  }

  std::vector<std::size_t> perm(m);
  std::vector<std::size_t> owner(m, kUnassigned);
  for (std::size_t k = 0; k < m; ++k) {
    const Slice s{k, std::vector<std::size_t>(m - 1, 0), {0, 1}};
    const std::size_t a = f(x.rank(s.member(0)));
    const std::size_t b = f(x.rank(s.member(1)));
    const auto j = pair_slice_axis(y, a, b);
    if (!j) return non_slice_witness(f, s, IrreducibleReason::kNonSliceImage);
    if (owner[*j] != kUnassigned) {
      Irreducible out;
      out.reason = IrreducibleReason::kAxisCollision;
      out.colliding_axes = std::make_pair(owner[*j], k);
      out.detail = "axes " + std::to_string(owner[*j]) + " and " +
                   std::to_string(k) + " both map to axis " +
                   std::to_string(*j);
      attach_witness(f, out);
      return out;
    }
    owner[*j] = k;
    perm[k] = *j;
  }

  std::vector<std::vector<std::size_t>> raw(m);
  for (std::size_t k = 0; k < m; ++k) {
    if (x.factor(k).size() != y.factor(perm[k]).size()) {
      Irreducible out;
      out.reason = IrreducibleReason::kFactorMapInvalid;
      out.detail = factor_label(k) + " has " +
                   std::to_string(x.factor(k).size()) + " points but its " +
                   "image factor " + std::to_string(perm[k]) + " has " +
                   std::to_string(y.factor(perm[k]).size());
      attach_witness(f, out);
      return out;
    }
    for (std::size_t v = 0; v < x.factor(k).size(); ++v) {
      raw[k].push_back(y.coord(f(x.with_coord(0, k, v)), perm[k]));
    }
  }
  std::optional<Decomposition> d;
  try {
    d = Decomposition::make(x, y, perm, std::move(raw));
  } catch (const InvalidDecomposition& e) {
    Irreducible out;
    out.reason = IrreducibleReason::kFactorMapInvalid;
    out.detail = e.what();
    attach_witness(f, out);
    return out;
  }

  const auto candidate = assemble(*d);
  for (std::size_t r = 0; r < x.size(); ++r) {
    if (candidate[r] != f(r)) {
      Irreducible out;
      out.reason = IrreducibleReason::kReconstructMismatch;
      out.mismatch_point = r;
      out.detail = "reconstruction sends " + x.label(r) + " to " +
                   y.label(candidate[r]) + ", f sends it to " +
                   y.label(f(r));
      attach_witness(f, out);
      return out;
    }
  }
  return Reducible{std::move(*d)};
}

std::vector<Isometry> enumerate_reducible(const ProductSpace& domain,
                                          const ProductSpace& codomain,
                                          const SearchOptions& options) {
  std::vector<Isometry> out;
  const std::size_t m = domain.factor_count();
  if (codomain.factor_count() != m) return out;
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<std::vector<Isometry>> choices(m);
    bool viable = true;
    for (std::size_t i = 0; i < m && viable; ++i) {
      choices[i] = enumerate_isometries(domain.factor(i),
                                        codomain.factor(perm[i]), options);
      viable = !choices[i].empty();
    }
    if (!viable) continue;
    std::vector<std::size_t> pick(m, 0);
    while (true) {
      std::vector<std::vector<std::size_t>> maps;
      for (std::size_t i = 0; i < m; ++i) maps.push_back(choices[i][pick[i]].map());
      out.push_back(reconstruct(domain, codomain, perm, std::move(maps)));
      std::size_t i = m;
      while (i > 0 && ++pick[i - 1] == choices[i - 1].size()) pick[--i] = 0;
      if (i == 0) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end(), [](const Isometry& a, const Isometry& b) {
    return a.map() < b.map();
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MainLemmaReport check_main_lemma(const Isometry& f) {
  MainLemmaReport report;
  const auto& x = f.domain();
  const auto& y = f.codomain();
  const std::size_t m = x.factor_count();
  for (std::size_t k = 0; k < m; ++k) {
    auto slices = enumerate_pair_slices(x, k);
    auto full = enumerate_full_slices(x, k);
    slices.insert(slices.end(), full.begin(), full.end());
    if (slices.empty()) {
      report.detail = factor_label(k) + " is a point and has no slices";
      return report;
    }
    std::optional<std::size_t> axis;
    const Slice* first = nullptr;
    for (const auto& s : slices) {
      auto image = image_of(f, s);
      auto cls = classify_slice(y, image);
      if (auto* bad = std::get_if<NotASlice>(&cls)) {
        report.slice = s;
        report.image = std::move(image);
        report.image_class = *bad;
        report.detail = "image of " + to_string(s) + " is not a slice";
        return report;
      }
      const std::size_t j = std::get<Slice>(cls).axis;
      if (!axis) {
        axis = j;
        first = &s;
      } else if (*axis != j) {
        report.inconsistent = std::make_pair(*first, s);
        report.detail = "slices on axis " + std::to_string(k) +
                        " map to axes " + std::to_string(*axis) + " and " +
                        std::to_string(j);
        return report;
      }
    }
    report.axis_map.push_back(*axis);
  }
  auto sorted = report.axis_map;
  std::sort(sorted.begin(), sorted.end());
  report.axis_map_injective =
      std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  report.passed = true;
  return report;
}

namespace {

void require_points(const ProductSpace& product,
                    std::initializer_list<const ProductPoint*> points) {
  for (const auto* p : points) {
    if (!product.contains(*p)) {
      throw InvalidInput("point " + to_string(*p) + " is not in " +
                         product.name());
    }
  }
}

}  // namespace

SliceTriple slice_triple_check(const ProductSpace& product,
                               const ProductPoint& a, const ProductPoint& b,
                               const ProductPoint& c) {
  require_points(product, {&a, &b, &c});
  if (a == b || b == c || a == c) {
    throw NotPairwiseSlices("points must be distinct");
  }
  const std::array<std::pair<const ProductPoint*, const ProductPoint*>, 3>
      pairs{{{&a, &b}, {&b, &c}, {&a, &c}}};
  SliceTriple out;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto axis = pair_slice_axis(*pairs[i].first, *pairs[i].second);
    if (!axis) {
      throw NotPairwiseSlices("{" + to_string(*pairs[i].first) + ", " +
                              to_string(*pairs[i].second) +
                              "} is not a slice");
    }
    out.axes[i] = *axis;
  }
  return out;
}

SliceQuad slice_quad_check(const ProductSpace& product, const ProductPoint& a,
                           const ProductPoint& b, const ProductPoint& c,
                           const ProductPoint& d) {
  require_points(product, {&a, &b, &c, &d});
  const std::array<const ProductPoint*, 4> pts{&a, &b, &c, &d};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (*pts[i] == *pts[j]) throw NotCycleOfSlices("points must be distinct");
    }
  }
  SliceQuad out;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& p = *pts[i];
    const auto& q = *pts[(i + 1) % 4];
    const auto axis = pair_slice_axis(p, q);
    if (!axis) {
      throw NotCycleOfSlices("{" + to_string(p) + ", " + to_string(q) +
                             "} is not a slice");
    }
    out.axes[i] = *axis;
  }
  const auto& ax = out.axes;
  if (ax[0] == ax[1] && ax[1] == ax[2] && ax[2] == ax[3]) {
    out.branch = QuadBranch::kAllEqual;
  } else if (ax[0] == ax[2] && ax[1] == ax[3]) {
    out.branch = QuadBranch::kOppositePairs;
  } else {
    out.branch = QuadBranch::kViolated;
  }
  return out;
}

ChainCheck chain_consistency(const Isometry& f, const ProductPoint& a,
                             const ProductPoint& b, std::size_t k,
                             std::size_t j) {
  const auto& x = f.domain();
  const auto& y = f.codomain();
  const auto chain = interpolation_chain(x, a, b, k);
  if (j >= y.factor_count()) throw InvalidInput("axis j out of range");
  ChainCheck out;
  out.axis = j;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const auto axis =
        pair_slice_axis(y, f(x.rank(chain[i])), f(x.rank(chain[i + 1])));
    if (axis == j) {
      out.witness = std::make_pair(chain[i], chain[i + 1]);
      out.detail = "images of " + to_string(chain[i]) + " and " +
                   to_string(chain[i + 1]) + " form a slice on axis " +
                   std::to_string(j);
      return out;
    }
  }
  const auto fa = f(x.rank(a));
  const auto fb = f(x.rank(b));
  if (y.coord(fa, j) != y.coord(fb, j)) {
    out.witness = std::make_pair(a, b);
    out.detail = "f(a) and f(b) differ in coordinate " + std::to_string(j);
    return out;
  }
  out.ok = true;
  return out;
}

ChainCheck chain_consistency(const Isometry& f, const ProductPoint& a,
                             const ProductPoint& b, std::size_t k) {
  const auto& x = f.domain();
  if (k >= x.factor_count()) throw InvalidInput("axis out of range");
  // Validates the endpoints before the axis is derived.
  interpolation_chain(x, a, b, k);
  ChainCheck out;
  if (x.factor(k).size() < 2) {
    out.detail = factor_label(k) + " is a point";
    return out;
  }
  const Slice s{k, std::vector<std::size_t>(x.factor_count() - 1, 0), {0, 1}};
  const auto j = pair_slice_axis(f.codomain(), f(x.rank(s.member(0))),
                                 f(x.rank(s.member(1))));
  if (!j) {
    out.detail = "image of " + to_string(s) + " is not a slice";
    return out;
  }
  return chain_consistency(f, a, b, k, *j);
}

namespace {

bool same_factor_classes(const std::vector<MetricSpace>& a,
                         const std::vector<MetricSpace>& b,
                         const SearchOptions& options) {
  if (a.size() != b.size()) return false;
  std::vector<std::size_t> order(b.size());
  std::iota(order.begin(), order.end(), 0);
  do {
    bool all = true;
    for (std::size_t i = 0; i < a.size() && all; ++i) {
      all = are_isometric(ProductSpace::of(a[i]), ProductSpace::of(b[order[i]]),
                          options);
    }
    if (all) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

void size_splittings(std::size_t rest, std::size_t min_size,
                     std::size_t max_size, std::vector<std::size_t>& cur,
                     std::vector<std::vector<std::size_t>>& out) {
  if (rest == 1) {
    if (cur.size() >= 2) out.push_back(cur);
    return;
  }
  for (std::size_t s = min_size; s <= std::min(rest, max_size); ++s) {
    if (rest % s != 0) continue;
    cur.push_back(s);
    size_splittings(rest / s, s, max_size, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Factorization> factorize(const MetricSpace& space,
                                     std::size_t max_points_per_factor,
                                     const SearchOptions& options) {
  std::vector<Factorization> out;
  const std::size_t n = space.size();
  std::vector<std::vector<std::size_t>> splittings;
  std::vector<std::size_t> cur;
  size_splittings(n, 2, max_points_per_factor, cur, splittings);
  const auto target = ProductSpace::of(space);

  for (const auto& sizes : splittings) {
    const std::size_t m = sizes.size();
    std::vector<std::vector<std::size_t>> sets(m);
    std::vector<char> used(n, 0);
    used[0] = 1;

    // In a sup-product through basepoint 0, points p, q on different factor
    // slices satisfy d(p,q) = max(d(0,p), d(0,q)).
    auto compatible = [&](std::size_t factor, std::size_t p) {
      for (std::size_t i = 0; i < factor; ++i) {
        for (std::size_t q : sets[i]) {
          if (q == 0) continue;
          if (space.distance(p, q) !=
              std::max(space.distance(0, p), space.distance(0, q))) {
            return false;
          }
        }
      }
      return true;
    };

    auto try_candidate = [&] {
      std::vector<MetricSpace> factors;
      for (std::size_t i = 0; i < m; ++i) {
        factors.push_back(space.subspace(sets[i], "F" + std::to_string(i + 1)));
      }
      for (const auto& seen : out) {
        if (same_factor_classes(seen.product.factors(), factors, options)) {
          return;
        }
      }
      const auto product = ProductSpace::make(factors);
      SearchOptions one = options;
      one.limit = 1;
      std::optional<Isometry> witness;
      for_each_isometry(
          product, target,
          [&](std::span<const std::size_t> map) {
            witness = verified_isometry(
                product, target, std::vector<std::size_t>(map.begin(), map.end()));
            return false;
          },
          one);
      if (witness) out.push_back(Factorization{product, std::move(*witness)});
    };

    // Choose the non-basepoint members of each factor set in increasing
    // order; equal-size factors are ordered by their smallest member.
    std::function<void(std::size_t, std::size_t)> fill =
        [&](std::size_t factor, std::size_t from) {
          if (factor == m) {
            try_candidate();
            return;
          }
          auto& set = sets[factor];
          if (set.size() == sizes[factor]) {
            std::size_t first = 1;
            if (factor + 1 < m && sizes[factor + 1] == sizes[factor]) {
              first = set[1] + 1;
            }
            fill(factor + 1, first);
            return;
          }
          for (std::size_t p = from; p < n; ++p) {
            if (used[p] || !compatible(factor, p)) continue;
            used[p] = 1;
            set.push_back(p);
            fill(factor, p + 1);
            set.pop_back();
            used[p] = 0;
          }
        };
    for (auto& s : sets) s = {0};
    fill(0, 1);
  }
  return out;
}

}  // namespace prodiso
