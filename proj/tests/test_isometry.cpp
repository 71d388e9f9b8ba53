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

#include <gtest/gtest.h>

#include <variant>

#include "gen.hpp"
#include "oracle.hpp"
#include "prodiso/error.hpp"
#include "prodiso/isometry.hpp"

using prodiso::Isometry;
using prodiso::ProductSpace;
using prodiso::SearchOptions;

namespace {

ProductSpace paths(std::initializer_list<std::size_t> sizes) {
  std::vector<prodiso::MetricSpace> f;
  for (auto n : sizes) f.push_back(prodiso::path_graph(n));
  return ProductSpace::make(std::move(f));
}

std::vector<std::vector<int>> as_int(const std::vector<Isometry>& isos) {
  std::vector<std::vector<int>> out;
  for (const auto& f : isos) out.emplace_back(f.map().begin(), f.map().end());
  return out;
}

}  // namespace

TEST(Isometry, CheckRejectsWithWitness) {
  const auto p = prodiso::path_graph(3);
  const auto ok = prodiso::is_isometry(p, p, {2, 1, 0});
  ASSERT_TRUE(std::holds_alternative<Isometry>(ok));
  const auto bad = prodiso::is_isometry(p, p, {1, 0, 2});
  ASSERT_TRUE(std::holds_alternative<prodiso::NotDistancePreserving>(bad));
  const auto& w = std::get<prodiso::NotDistancePreserving>(bad);
  EXPECT_NE(w.domain_distance, w.image_distance);
  const auto dup = prodiso::is_isometry(p, p, {0, 0, 2});
  EXPECT_TRUE(std::holds_alternative<prodiso::NotBijective>(dup));
  EXPECT_THROW(prodiso::verified_isometry(ProductSpace::of(p),
                                          ProductSpace::of(p), {0, 1}),
               prodiso::SizeMismatch);
}

TEST(Isometry, ComposeInvertIdentity) {
  const auto p = paths({3, 3});
  const auto all = prodiso::enumerate_isometries(p, p);
  ASSERT_EQ(all.size(), 8u);
  const auto id = prodiso::identity(p);
  EXPECT_TRUE(id.is_identity());
  for (const auto& f : all) {
    EXPECT_EQ(prodiso::compose(f, prodiso::invert(f)), id);
    EXPECT_EQ(f(f.domain().point(4)), f.codomain().point(f(4)));
  }
}

TEST(Isometry, CountsOnSmallPathProducts) {
  EXPECT_EQ(prodiso::enumerate_isometries(paths({3, 3}), paths({3, 3})).size(),
            8u);
  EXPECT_EQ(prodiso::enumerate_isometries(paths({5, 3}), paths({5, 3})).size(),
            4u);
  EXPECT_EQ(prodiso::enumerate_isometries(paths({5, 3}), paths({3, 5})).size(),
            4u);
  EXPECT_EQ(prodiso::enumerate_isometries(paths({2, 3}), paths({2, 3})).size(),
            16u);
  EXPECT_TRUE(
      prodiso::enumerate_isometries(paths({4, 3}), paths({5, 3})).empty());
  EXPECT_TRUE(prodiso::are_isometric(paths({4, 5}), paths({5, 4})));
  EXPECT_FALSE(prodiso::are_isometric(paths({4, 4}), paths({2, 8})));
}

TEST(Isometry, LimitAndBudget) {
  const auto p = paths({3, 3});
  SearchOptions lim;
  lim.limit = 3;
  EXPECT_EQ(prodiso::enumerate_isometries(p, p, lim).size(), 3u);
  SearchOptions tiny;
  tiny.node_cap = 5;
  EXPECT_THROW(prodiso::enumerate_isometries(p, p, tiny),
               prodiso::SearchBudgetExceeded);
  std::size_t seen = 0;
  const auto stats = prodiso::for_each_isometry(
      p, p, [&](std::span<const std::size_t>) { return ++seen < 2; });
  EXPECT_EQ(seen, 2u);
  EXPECT_FALSE(stats.exhausted);
}

TEST(Isometry, WorkersAgreeWithSerial) {
  const auto p = paths({2, 2, 3});
  SearchOptions par;
  par.workers = 4;
  EXPECT_EQ(as_int(prodiso::enumerate_isometries(p, p)),
            as_int(prodiso::enumerate_isometries(p, p, par)));
}

TEST(Group, IsometryGroupsAreGroups) {
  for (const auto& p : {paths({3, 3}), paths({2, 2}), paths({3, 4, 3})}) {
    const auto all = prodiso::enumerate_isometries(p, p);
    const auto g = prodiso::check_group(all);
    EXPECT_TRUE(g.ok()) << p.name();
    EXPECT_EQ(g.order, all.size());
  }
}

TEST(Group, DetectsMissingElements) {
  prodiso::PermutationSet s(3);
  const std::vector<std::size_t> id{0, 1, 2}, cyc{1, 2, 0};
  s.push_back(id);
  s.push_back(cyc);
  const auto g = prodiso::check_group(s);
  EXPECT_TRUE(g.has_identity);
  EXPECT_FALSE(g.closed_under_inverse);
  EXPECT_FALSE(g.closed_under_composition);
  EXPECT_TRUE(g.composition_witness.has_value());

  prodiso::PermutationSet t(2);
  const std::vector<std::size_t> sw{1, 0};
  t.push_back(sw);
  EXPECT_FALSE(prodiso::check_group(t).has_identity);
}

TEST(IsometryProperty, MatchesBruteForceOnRandomMetrics) {
  gen::Rng rng(gen::kSeed + 4);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = gen::uniform(rng, 1, 7);
    const auto d = gen::graph_metric(rng, n, 2, 0.5);
    const auto e = gen::relabel(d, gen::permutation(rng, n));
    const auto a = gen::to_space(d);
    const auto b = gen::to_space(e);
    const auto want = oracle::isometries(d, e);
    ASSERT_FALSE(want.empty());
    EXPECT_EQ(as_int(prodiso::enumerate_isometries(a, b)), want);
  }
}

TEST(IsometryProperty, PathProductsMatchBruteForce) {
  gen::Rng rng(gen::kSeed + 5);
  for (int trial = 0; trial < 12; ++trial) {
    const auto sizes = gen::path_sizes(rng, 2, 2, 4);
    std::vector<oracle::Matrix> mats;
    std::vector<prodiso::MetricSpace> spaces;
    for (int s : sizes) {
      mats.push_back(oracle::path(s));
      spaces.push_back(prodiso::path_graph(s));
    }
    const auto p = ProductSpace::make(spaces);
    const auto d = oracle::sup_product(mats);
    EXPECT_EQ(as_int(prodiso::enumerate_isometries(p, p)),
              oracle::isometries(d, d));
  }
}
