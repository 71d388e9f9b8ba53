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

#include "gen.hpp"
#include "oracle.hpp"
#include "prodiso/error.hpp"
#include "prodiso/metric_space.hpp"

using prodiso::AxiomKind;
using prodiso::AxiomViolation;
using prodiso::MetricSpace;
using prodiso::Rat;

namespace {

std::vector<std::vector<Rat>> rows(std::initializer_list<std::vector<long>> r) {
  std::vector<std::vector<Rat>> out;
  for (const auto& row : r) {
    out.emplace_back();
    for (long x : row) out.back().emplace_back(x);
  }
  return out;
}

AxiomKind violation_of(const std::vector<std::vector<Rat>>& m) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m.size(); ++i) labels.push_back(std::to_string(i));
  try {
    MetricSpace::validate("t", labels, m);
  } catch (const AxiomViolation& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no violation";
  return AxiomKind::kTriangle;
}

}  // namespace

TEST(MetricSpace, PathGraph) {
  const auto p = prodiso::path_graph(4);
  EXPECT_EQ(p.size(), 4u);
  EXPECT_EQ(p.name(), "P_4");
  EXPECT_EQ(p.distance(0, 3), Rat(3));
  EXPECT_EQ(p.diameter(), Rat(3));
  EXPECT_EQ(p.index_of("2"), 2u);
  EXPECT_FALSE(p.index_of("9").has_value());
  const auto half = prodiso::path_graph(3, Rat(1, 2));
  EXPECT_EQ(half.distance(0, 2), Rat(1));
}

TEST(MetricSpace, NamedFamilies) {
  const auto c = prodiso::cycle_graph(6);
  EXPECT_EQ(c.distance(0, 3), Rat(3));
  EXPECT_EQ(c.distance(1, 5), Rat(2));
  const auto k = prodiso::complete_space(3);
  EXPECT_EQ(k.distance(0, 2), Rat(1));
  EXPECT_THROW(prodiso::cycle_graph(2), prodiso::InvalidInput);
  EXPECT_THROW(prodiso::path_graph(0), prodiso::InvalidInput);
}

TEST(MetricSpace, AxiomViolationsCarryKind) {
  EXPECT_EQ(violation_of(rows({{1, 1}, {1, 0}})), AxiomKind::kNonzeroDiagonal);
  EXPECT_EQ(violation_of(rows({{0, -1}, {-1, 0}})), AxiomKind::kNegative);
  EXPECT_EQ(violation_of(rows({{0, 1}, {2, 0}})), AxiomKind::kAsymmetry);
  EXPECT_EQ(violation_of(rows({{0, 0}, {0, 0}})), AxiomKind::kZeroOffDiagonal);
  EXPECT_EQ(violation_of(rows({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}})),
            AxiomKind::kTriangle);
}

TEST(MetricSpace, TriangleWitnessNamesTheTriple) {
  try {
    MetricSpace::validate("t", {"a", "b", "c"},
                          rows({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}));
    FAIL();
  } catch (const AxiomViolation& e) {
    EXPECT_EQ(e.witness(), (std::vector<std::size_t>{0, 2, 1}));
  }
}

TEST(MetricSpace, StructuralErrors) {
  EXPECT_THROW(MetricSpace::validate("t", {}, {}), prodiso::InvalidInput);
  EXPECT_THROW(MetricSpace::validate("t", {"a", "a"}, rows({{0, 1}, {1, 0}})),
               prodiso::InvalidInput);
  EXPECT_THROW(MetricSpace::validate("t", {"a", "b"}, rows({{0, 1}})),
               prodiso::InvalidInput);
  EXPECT_THROW(MetricSpace::validate("t", {"a", "b"}, rows({{0, 1}, {1}})),
               prodiso::InvalidInput);
  EXPECT_THROW(MetricSpace::validate("t", {"a", "b", "c"},
                                     rows({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}),
                                     2),
               prodiso::InvalidInput);
  EXPECT_EQ(prodiso::path_graph(65).size(), 65u);
}

TEST(MetricSpace, Subspace) {
  const auto p = prodiso::path_graph(5);
  const std::vector<std::size_t> pts{0, 2, 4};
  const auto s = p.subspace(pts, "even");
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s.label(1), "2");
  EXPECT_EQ(s.distance(0, 2), Rat(4));
}

TEST(Geodesic, BetweennessOnPath) {
  const auto p = prodiso::path_graph(5);
  EXPECT_EQ(prodiso::betweenness(p, 1, 3), (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_TRUE(prodiso::is_uniquely_geodesic(p, 1));
  EXPECT_THROW(prodiso::is_uniquely_geodesic_pair(p, 0, 3, Rat(2)),
               prodiso::ResolutionMismatch);
}

TEST(Geodesic, CycleHasTwoGeodesicsAcross) {
  const auto c = prodiso::cycle_graph(4);
  EXPECT_FALSE(prodiso::is_uniquely_geodesic_pair(c, 0, 2, 1));
  EXPECT_TRUE(prodiso::is_uniquely_geodesic_pair(c, 0, 1, 1));
}

TEST(Geodesic, ChainParameters) {
  const auto p = prodiso::path_graph(5);
  const auto chain = prodiso::GeodesicChain::between(p, 4, 0);
  EXPECT_EQ(chain.points(), (std::vector<std::size_t>{4, 3, 2, 1, 0}));
  EXPECT_EQ(chain.length(), Rat(4));
  EXPECT_EQ(chain.at(Rat(1)), 3u);
  EXPECT_FALSE(chain.at(Rat(1, 2)).has_value());
  EXPECT_THROW(prodiso::GeodesicChain::make(p, {0, 3, 2}),
               prodiso::InvalidInput);
  EXPECT_THROW(prodiso::GeodesicChain::make(p, {0, 2, 4, 1}),
               prodiso::InvalidInput);
}

TEST(MetricSpaceProperty, RandomGraphMetricsValidateAndAgree) {
  gen::Rng rng(gen::kSeed);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = gen::uniform(rng, 2, 9);
    const auto d = gen::graph_metric(rng, n, 4);
    const auto space = gen::to_space(d);
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        ASSERT_EQ(space.distance(x, y), Rat(d[x][y]));
        EXPECT_EQ(prodiso::is_uniquely_geodesic_pair(space, x, y, 1),
                  oracle::uniquely_geodesic_pair(d, x, y));
      }
    }
  }
}

TEST(MetricSpaceProperty, PerturbedTriangleIsRejected) {
  gen::Rng rng(gen::kSeed + 1);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = gen::uniform(rng, 3, 7);
    auto d = gen::graph_metric(rng, n, 3, 0.0);
    // Stretch one distance past the path through a third point.
    const long via = d[0][1] + d[1][2];
    d[0][2] = d[2][0] = via + 1;
    std::vector<std::vector<Rat>> m(n);
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
      labels.push_back(std::to_string(i));
      for (long x : d[i]) m[i].emplace_back(x);
    }
    EXPECT_THROW(MetricSpace::validate("t", labels, m), AxiomViolation);
  }
}
