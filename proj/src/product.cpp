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

#include "prodiso/product.hpp"

#include <algorithm>
#include <set>

#include "prodiso/error.hpp"

namespace prodiso {

std::string to_string(const ProductPoint& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(p[i]);
  }
  return out + ")";
}

ProductSpace ProductSpace::make(std::vector<MetricSpace> factors,
                                std::size_t max_points) {
  if (factors.empty()) throw InvalidInput("product needs at least one factor");
  auto d = std::make_shared<Data>();
  const std::size_t m = factors.size();
  d->strides.assign(m, 1);
  std::size_t size = 1;
  for (std::size_t i = m; i-- > 0;) {
    d->strides[i] = size;
    size *= factors[i].size();
    if (size > max_points) {
      throw InvalidInput("product exceeds " + std::to_string(max_points) +
                         " points");
    }
  }
  d->size = size;
  d->coords.resize(size * m);
  for (std::size_t r = 0; r < size; ++r) {
    for (std::size_t i = 0; i < m; ++i) {
      d->coords[r * m + i] =
          static_cast<std::uint32_t>((r / d->strides[i]) % factors[i].size());
    }
  }
  d->factors = std::move(factors);
  return ProductSpace(std::move(d));
}

std::string ProductSpace::name() const {
  std::string out;
  for (std::size_t i = 0; i < factor_count(); ++i) {
    if (i) out += " x ";
    out += factor(i).name();
  }
  return out;
}

bool ProductSpace::contains(const ProductPoint& p) const {
  if (p.size() != factor_count()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] >= factor(i).size()) return false;
  }
  return true;
}

std::size_t ProductSpace::rank(const ProductPoint& p) const {
  if (!contains(p)) {
    throw InvalidInput("point " + to_string(p) + " is not in " + name());
  }
  std::size_t r = 0;
  for (std::size_t i = 0; i < p.size(); ++i) r += p[i] * data_->strides[i];
  return r;
}

ProductPoint ProductSpace::point(std::size_t rank) const {
  if (rank >= size()) throw InvalidInput("rank out of range");
  const std::size_t m = factor_count();
  std::vector<std::size_t> c(m);
  for (std::size_t i = 0; i < m; ++i) c[i] = data_->coords[rank * m + i];
  return ProductPoint(std::move(c));
}

std::size_t ProductSpace::with_coord(std::size_t rank, std::size_t axis,
                                     std::size_t value) const {
  const std::size_t old = coord(rank, axis);
  return rank - old * data_->strides[axis] + value * data_->strides[axis];
}

Rat ProductSpace::distance(std::size_t a, std::size_t b) const {
  Rat best = 0;
  for (std::size_t i = 0; i < factor_count(); ++i) {
    const Rat& d = coord_distance(a, b, i);
    if (d > best) best = d;
  }
  return best;
}

std::string ProductSpace::label(std::size_t rank) const {
  if (factor_count() == 1) return factor(0).label(rank);
  std::string out = "(";
  for (std::size_t i = 0; i < factor_count(); ++i) {
    if (i) out += ",";
    out += factor(i).label(coord(rank, i));
  }
  return out + ")";
}

std::vector<std::string> ProductSpace::label_tuple(std::size_t rank) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < factor_count(); ++i) {
    out.push_back(factor(i).label(coord(rank, i)));
  }
  return out;
}

std::optional<std::size_t> ProductSpace::find(
    std::span<const std::string> labels) const {
  if (labels.size() != factor_count()) return std::nullopt;
  std::vector<std::size_t> c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto idx = factor(i).index_of(labels[i]);
    if (!idx) return std::nullopt;
    c.push_back(*idx);
  }
  return rank(ProductPoint(std::move(c)));
}

MetricSpace ProductSpace::flatten(std::size_t max_points) const {
  std::vector<std::string> labels;
  std::vector<std::vector<Rat>> m(size(), std::vector<Rat>(size()));
  for (std::size_t a = 0; a < size(); ++a) {
    labels.push_back(label(a));
    for (std::size_t b = 0; b < size(); ++b) m[a][b] = distance(a, b);
  }
  return MetricSpace::validate(name(), std::move(labels), m, max_points);
}

bool operator==(const ProductSpace& a, const ProductSpace& b) {
  return a.data_ == b.data_ || a.data_->factors == b.data_->factors;
}

Rat sup_distance(const ProductSpace& product, const ProductPoint& p,
                 const ProductPoint& q) {
  return product.distance(product.rank(p), product.rank(q));
}

std::vector<std::size_t> product_betweenness(const ProductSpace& product,
                                             std::size_t p, std::size_t q) {
  const Rat dpq = product.distance(p, q);
  std::vector<std::size_t> out;
  for (std::size_t z = 0; z < product.size(); ++z) {
    if (product.distance(p, z) + product.distance(z, q) == dpq) out.push_back(z);
  }
  return out;
}

Slice Slice::make(const ProductSpace& product, std::size_t axis,
                  std::vector<std::size_t> fixed,
                  std::vector<std::size_t> axis_set) {
  const std::size_t m = product.factor_count();
  if (axis >= m) throw InvalidInput("slice axis out of range");
  if (fixed.size() + 1 != m) {
    throw InvalidInput("slice needs " + std::to_string(m - 1) +
                       " fixed coordinates");
  }
  for (std::size_t i = 0, f = 0; i < m; ++i) {
    if (i == axis) continue;
    if (fixed[f++] >= product.factor(i).size()) {
      throw InvalidInput("fixed coordinate out of range");
    }
  }
  std::sort(axis_set.begin(), axis_set.end());
  axis_set.erase(std::unique(axis_set.begin(), axis_set.end()), axis_set.end());
  if (axis_set.size() < 2) throw InvalidInput("slice needs >= 2 axis values");
  if (axis_set.back() >= product.factor(axis).size()) {
    throw InvalidInput("axis value out of range");
  }
  return Slice{axis, std::move(fixed), std::move(axis_set)};
}

ProductPoint Slice::member(std::size_t axis_value) const {
  std::vector<std::size_t> c;
  c.reserve(fixed.size() + 1);
  for (std::size_t i = 0, f = 0; i <= fixed.size(); ++i) {
    c.push_back(i == axis ? axis_value : fixed[f++]);
  }
  return ProductPoint(std::move(c));
}

std::vector<ProductPoint> Slice::members() const {
  std::vector<ProductPoint> out;
  for (std::size_t v : axis_set) out.push_back(member(v));
  return out;
}

std::string to_string(const Slice& s) {
  std::string out = "slice(axis=" + std::to_string(s.axis) + ", fixed=(";
  for (std::size_t i = 0; i < s.fixed.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.fixed[i]);
  }
  out += "), values={";
  for (std::size_t i = 0; i < s.axis_set.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.axis_set[i]);
  }
  return out + "})";
}

namespace {

std::vector<std::size_t> differing_axes(const ProductPoint& a,
                                        const ProductPoint& b) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) out.push_back(i);
  }
  return out;
}

}  // namespace

SliceClass classify_slice(const ProductSpace& product,
                          std::span<const ProductPoint> points) {
  std::set<ProductPoint> unique;
  for (const auto& p : points) {
    if (!product.contains(p)) {
      throw InvalidInput("point " + to_string(p) + " is not in " +
                         product.name());
    }
    unique.insert(p);
  }
  if (unique.size() < 2) {
    throw TooSmall("a slice needs at least two distinct points");
  }
  const ProductPoint& base = *unique.begin();
  std::optional<std::size_t> axis;
  const ProductPoint* along_axis = nullptr;
  for (const auto& p : unique) {
    const auto diff = differing_axes(base, p);
    if (diff.empty()) continue;
    if (diff.size() > 1) return NotASlice{base, p, diff};
    if (!axis) {
      axis = diff.front();
      along_axis = &p;
    } else if (*axis != diff.front()) {
      // Both differ from base on one axis each, so they differ on two.
      return NotASlice{*along_axis, p, differing_axes(*along_axis, p)};
    }
  }
  Slice s;
  s.axis = *axis;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (i != s.axis) s.fixed.push_back(base[i]);
  }
  for (const auto& p : unique) s.axis_set.push_back(p[s.axis]);
  std::sort(s.axis_set.begin(), s.axis_set.end());
  return s;
}

std::optional<std::size_t> pair_slice_axis(const ProductPoint& a,
                                           const ProductPoint& b) {
  std::optional<std::size_t> axis;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    if (axis) return std::nullopt;
    axis = i;
  }
  return axis;
}

std::optional<std::size_t> pair_slice_axis(const ProductSpace& product,
                                           std::size_t a, std::size_t b) {
  std::optional<std::size_t> axis;
  for (std::size_t i = 0; i < product.factor_count(); ++i) {
    if (product.coord(a, i) == product.coord(b, i)) continue;
    if (axis) return std::nullopt;
    axis = i;
  }
  return axis;
}

std::vector<ProductPoint> interpolation_chain(const ProductSpace& product,
                                              const ProductPoint& a,
                                              const ProductPoint& b,
                                              std::size_t k) {
  if (!product.contains(a) || !product.contains(b)) {
    throw InvalidInput("chain endpoints must be points of " + product.name());
  }
  if (k >= product.factor_count()) throw InvalidInput("axis out of range");
  if (a[k] != b[k]) {
    throw AxisMismatch("endpoints " + to_string(a) + " and " + to_string(b) +
                       " differ in coordinate " + std::to_string(k));
  }
  std::vector<ProductPoint> chain{a};
  ProductPoint cur = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i == k || a[i] == b[i]) continue;
    cur.coords[i] = b[i];
    chain.push_back(cur);
  }
  return chain;
}

std::vector<Slice> enumerate_pair_slices(const ProductSpace& product,
                                         std::size_t k) {
  if (k >= product.factor_count()) throw InvalidInput("axis out of range");
  std::vector<Slice> out;
  const std::size_t nk = product.factor(k).size();
  for (std::size_t r = 0; r < product.size(); ++r) {
    if (product.coord(r, k) != 0) continue;
    std::vector<std::size_t> fixed;
    for (std::size_t i = 0; i < product.factor_count(); ++i) {
      if (i != k) fixed.push_back(product.coord(r, i));
    }
    for (std::size_t u = 0; u < nk; ++u) {
      for (std::size_t v = u + 1; v < nk; ++v) {
        out.push_back(Slice{k, fixed, {u, v}});
      }
    }
  }
  return out;
}

std::vector<Slice> enumerate_full_slices(const ProductSpace& product,
                                         std::size_t k) {
  if (k >= product.factor_count()) throw InvalidInput("axis out of range");
  std::vector<Slice> out;
  const std::size_t nk = product.factor(k).size();
  if (nk < 2) return out;
  std::vector<std::size_t> all(nk);
  for (std::size_t v = 0; v < nk; ++v) all[v] = v;
  for (std::size_t r = 0; r < product.size(); ++r) {
    if (product.coord(r, k) != 0) continue;
    std::vector<std::size_t> fixed;
    for (std::size_t i = 0; i < product.factor_count(); ++i) {
      if (i != k) fixed.push_back(product.coord(r, i));
    }
    out.push_back(Slice{k, std::move(fixed), all});
  }
  return out;
}

}  // namespace prodiso
