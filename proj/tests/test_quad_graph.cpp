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

#include <numeric>

#include "gen.hpp"
#include "oracle.hpp"
#include "prodiso/error.hpp"
#include "prodiso/isometry.hpp"
#include "prodiso/quad_graph.hpp"

using prodiso::GeodesicChain;
using prodiso::ProductSpace;
using prodiso::QuadEmbedding;
using prodiso::QuadGraph;
using prodiso::QuadSearchOptions;
using prodiso::Rat;

namespace {

ProductSpace paths(std::initializer_list<std::size_t> sizes) {
  std::vector<prodiso::MetricSpace> f;
  for (auto n : sizes) f.push_back(prodiso::path_graph(n));
  return ProductSpace::make(std::move(f));
}

std::vector<GeodesicChain> end_to_end(const ProductSpace& p) {
  std::vector<GeodesicChain> out;
  for (const auto& f : p.factors()) {
    out.push_back(GeodesicChain::between(f, 0, f.size() - 1));
  }
  return out;
}

std::size_t factorial(std::size_t k) { return k <= 1 ? 1 : k * factorial(k - 1); }

}  // namespace

TEST(QuadGraph, SizesMatchOracle) {
  for (std::size_t m = 1; m <= 5; ++m) {
    const QuadGraph q(m, 1);
    EXPECT_EQ(q.vertex_count(), oracle::quad_coords(int(m)).size());
    EXPECT_EQ(q.edges().size(), oracle::quad_edges(int(m)).size());
  }
  const QuadGraph q3(3, 1);
  EXPECT_EQ(q3.vertex_count(), 14u);
  EXPECT_EQ(q3.edges().size(), 24u);
}

TEST(QuadGraph, VertexLayoutAndCoordinates) {
  const QuadGraph q(2, Rat(1, 2));
  EXPECT_EQ(q.vertices()[0].label, "+e1");
  EXPECT_EQ(q.vertices()[3].label, "-e2");
  EXPECT_EQ(q.coordinates(q.axis_vertex(1, false)),
            (std::vector<Rat>{Rat(0), Rat(-1)}));
  EXPECT_EQ(q.coordinates(q.sign_vertex(0b01)),
            (std::vector<Rat>{Rat(1, 2), Rat(-1, 2)}));
  EXPECT_EQ(q.distance(q.axis_vertex(0, true), q.axis_vertex(0, false)),
            Rat(2));
  const auto want = oracle::quad_coords(2);
  for (std::size_t u = 0; u < q.vertex_count(); ++u) {
    EXPECT_EQ(q.vertices()[u].units, want[u]);
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      EXPECT_EQ(q.unit_distance(u, v), oracle::sup_units(want[u], want[v]));
    }
  }
  EXPECT_THROW(QuadGraph(0, 1), prodiso::InvalidInput);
  EXPECT_THROW(QuadGraph(2, 0), prodiso::InvalidInput);
}

TEST(QuadGraph, AxisGeodesicsMatchOracle) {
  for (int m = 1; m <= 4; ++m) {
    const QuadGraph q(m, 1);
    for (int j = 0; j < m; ++j) {
      for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        EXPECT_EQ(q.axis_geodesics(j, v).size(),
                  std::size_t(oracle::axis_geodesic_count(m, j, int(v))))
            << "m=" << m << " j=" << j << " v=" << v;
      }
    }
  }
}

TEST(EmbedQuad, StandardConstructionIsAdmissible) {
  for (std::size_t m = 1; m <= 3; ++m) {
    std::vector<prodiso::MetricSpace> f(m, prodiso::path_graph(5));
    const auto p = ProductSpace::make(f);
    const auto e = prodiso::embed_quad(p, end_to_end(p), 1);
    const auto adm = prodiso::is_admissible(e);
    EXPECT_TRUE(adm.admissible()) << m;
    EXPECT_TRUE(adm.failing_edges().empty());
    const auto std_report = prodiso::is_standard(e);
    EXPECT_TRUE(std_report.standard);
    for (std::size_t j = 0; j < m; ++j) EXPECT_EQ(std_report.axis_of[j], j);
    EXPECT_EQ(prodiso::q_statistics(e), std::vector<std::size_t>(m, 1));
  }
}

TEST(EmbedQuad, LongerFactorsAndReversedChains) {
  const auto p = paths({7, 6, 5});
  std::vector<GeodesicChain> chains{
      GeodesicChain::between(p.factor(0), 6, 1),
      GeodesicChain::between(p.factor(1), 0, 5),
      GeodesicChain::between(p.factor(2), 4, 0)};
  const auto e = prodiso::embed_quad(p, chains, 1);
  EXPECT_TRUE(prodiso::is_admissible(e).admissible());
  EXPECT_TRUE(prodiso::is_standard(e).standard);
  EXPECT_EQ(e.image_point(e.quad().axis_vertex(0, true)),
            (prodiso::ProductPoint{2, 2, 2}));
}

TEST(EmbedQuad, Errors) {
  const auto p = paths({5, 3});
  EXPECT_THROW(prodiso::embed_quad(p, end_to_end(p), 1), prodiso::ChainTooShort);
  try {
    prodiso::embed_quad(p, end_to_end(p), Rat(1, 2));
    FAIL();
  } catch (const prodiso::MissingParameter& e) {
    EXPECT_EQ(e.parameter(), "1/2");
  }
  const auto q = paths({5, 5});
  const auto chains = end_to_end(q);
  EXPECT_THROW(prodiso::embed_quad(q, std::span(chains).first(1), 1),
               prodiso::InvalidInput);
}

TEST(EmbedQuad, MakeValidates) {
  const auto p = paths({5, 5});
  const QuadGraph q(1, 1);
  EXPECT_THROW(QuadEmbedding::make(q, p, {0, 1}, 1), prodiso::InvalidEmbedding);
  EXPECT_THROW(QuadEmbedding::make(q, p, {0, 0, 1, 2}, 1),
               prodiso::InvalidEmbedding);
  EXPECT_THROW(QuadEmbedding::make(q, p, {0, 1, 2, 99}, 1),
               prodiso::InvalidEmbedding);
  EXPECT_THROW(QuadEmbedding::make(q, p, {0, 4, 1, 3}, Rat(2)),
               prodiso::InvalidEmbedding);
  // +e1 - (+) edge at distance 2.
  EXPECT_THROW(QuadEmbedding::make(q, p, {4, 0, 1, 2}, 1),
               prodiso::InvalidEmbedding);
}

TEST(Admissibility, AntipodalCycleEdgeFails) {
  const auto p = ProductSpace::make(
      {prodiso::cycle_graph(8), prodiso::path_graph(5)});
  const QuadGraph q(1, 4);
  // Vertex order +e1, -e1, (-), (+); edges +e1-(+) and -e1-(-).
  const std::vector<std::size_t> map{p.rank({4, 0}), p.rank({4, 4}),
                                     p.rank({0, 4}), p.rank({0, 0})};
  const auto e = QuadEmbedding::make(q, p, map, 4);
  const auto adm = prodiso::is_admissible(e);
  EXPECT_FALSE(adm.admissible());
  ASSERT_FALSE(adm.failing_edges().empty());
  EXPECT_NE(adm.failing_edges().front().detail.find("factor 0"),
            std::string::npos);
}

TEST(Admissibility, SingleFactorPath) {
  const auto p = paths({5});
  const auto e = prodiso::embed_quad(p, end_to_end(p), 1);
  EXPECT_TRUE(prodiso::is_admissible(e).admissible());
  EXPECT_EQ(e.vertex_map(), (std::vector<std::size_t>{4, 0, 1, 3}));
}

TEST(Admissibility, ResolutionMustDivide) {
  const auto p = paths({5, 5});
  EXPECT_THROW(prodiso::is_uniquely_geodesic_product_pair(p, 0, 3, Rat(2)),
               prodiso::ResolutionMismatch);
  EXPECT_THROW(prodiso::find_admissible_embeddings(p, 1, 1, Rat(2)),
               prodiso::ResolutionMismatch);
}

TEST(QuadSearch, ReducedCountTimesSymmetryEqualsOracle) {
  struct Case {
    std::vector<int> sizes;
    int k;
  };
  for (const auto& c : std::vector<Case>{{{5}, 1},
                                         {{5, 5}, 1},
                                         {{5, 5}, 2},
                                         {{5, 3}, 1},
                                         {{6, 5}, 2},
                                         {{3, 3}, 1}}) {
    std::vector<oracle::Matrix> mats;
    std::vector<prodiso::MetricSpace> spaces;
    for (int s : c.sizes) {
      mats.push_back(oracle::path(s));
      spaces.push_back(prodiso::path_graph(s));
    }
    const auto p = ProductSpace::make(spaces);
    QuadSearchOptions all;
    all.limit = 0;
    const auto reduced = prodiso::find_admissible_embeddings(p, c.k, 1, 1, all);
    all.symmetry_reduction = false;
    const auto full = prodiso::find_admissible_embeddings(p, c.k, 1, 1, all);
    const long want = oracle::admissible_quad_maps(mats, c.k, 0);
    EXPECT_EQ(long(full.embeddings.size()), want) << p.name();
    EXPECT_EQ(reduced.embeddings.size() * (std::size_t{1} << c.k) *
                  factorial(c.k),
              full.embeddings.size())
        << p.name();
  }
}

TEST(QuadSearch, EveryFoundEmbeddingIsCertified) {
  const auto p = paths({5, 5});
  QuadSearchOptions all;
  all.limit = 0;
  const auto res = prodiso::find_admissible_embeddings(p, 2, 1, 1, all);
  ASSERT_FALSE(res.embeddings.empty());
  EXPECT_TRUE(res.exhausted);
  for (const auto& e : res.embeddings) {
    EXPECT_TRUE(prodiso::is_admissible(e).admissible());
    const auto q = prodiso::q_statistics(e);
    EXPECT_EQ(q, std::vector<std::size_t>(2, 1));
    const auto s = prodiso::is_standard(e);
    ASSERT_TRUE(s.standard);
    EXPECT_NE(s.axis_of[0], s.axis_of[1]);
  }
}

TEST(QuadSearch, QSumBoundedByFactorCount) {
  for (const auto& p : {paths({5, 5}), paths({6, 5}), paths({5, 5, 5})}) {
    for (std::size_t k = 1; k <= p.factor_count(); ++k) {
      QuadSearchOptions all;
      all.limit = 0;
      for (const auto& e :
           prodiso::find_admissible_embeddings(p, k, 1, 1, all).embeddings) {
        const auto q = prodiso::q_statistics(e);
        EXPECT_LE(std::accumulate(q.begin(), q.end(), std::size_t{0}),
                  p.factor_count());
      }
    }
  }
}

TEST(QuadSearch, ComposingWithTargetIsometryStaysAdmissible) {
  const auto p = paths({5, 5});
  const auto e = prodiso::embed_quad(p, end_to_end(p), 1);
  for (const auto& f : prodiso::enumerate_isometries(p, p)) {
    std::vector<std::size_t> map;
    for (std::size_t x : e.vertex_map()) map.push_back(f(x));
    const auto g = QuadEmbedding::make(e.quad(), p, map, 1);
    EXPECT_TRUE(prodiso::is_admissible(g).admissible());
  }
}

TEST(QuadSearch, WorkersAgreeWithSerial) {
  const auto p = paths({5, 5, 5});
  QuadSearchOptions serial;
  serial.limit = 3;
  QuadSearchOptions par = serial;
  par.workers = 4;
  const auto a = prodiso::find_admissible_embeddings(p, 2, 1, 1, serial);
  const auto b = prodiso::find_admissible_embeddings(p, 2, 1, 1, par);
  ASSERT_EQ(a.embeddings.size(), b.embeddings.size());
  for (std::size_t i = 0; i < a.embeddings.size(); ++i) {
    EXPECT_EQ(a.embeddings[i].vertex_map(), b.embeddings[i].vertex_map());
  }
}

TEST(MaxQuadDimension, PathPowers) {
  for (std::size_t m = 1; m <= 3; ++m) {
    std::vector<prodiso::MetricSpace> f(m, prodiso::path_graph(5));
    const auto d = prodiso::max_quad_dimension(ProductSpace::make(f), 1, 1);
    EXPECT_EQ(d.dimension, m);
    ASSERT_TRUE(d.witness.has_value());
    EXPECT_TRUE(prodiso::is_admissible(*d.witness).admissible());
  }
}

TEST(MaxQuadDimension, InvariantUnderFactorOrder) {
  EXPECT_EQ(prodiso::max_quad_dimension(paths({5, 3}), 1, 1).dimension,
            prodiso::max_quad_dimension(paths({3, 5}), 1, 1).dimension);
  EXPECT_EQ(prodiso::max_quad_dimension(paths({3, 3}), 1, 1).dimension, 0u);
}

TEST(MaxQuadDimension, BudgetCarriesLowerBound) {
  std::vector<prodiso::MetricSpace> f(3, prodiso::path_graph(5));
  QuadSearchOptions tiny;
  tiny.node_cap = 40;
  try {
    prodiso::max_quad_dimension(ProductSpace::make(f), 1, 1, tiny);
    FAIL();
  } catch (const prodiso::SearchBudgetExceeded& e) {
    ASSERT_TRUE(e.lower_bound().has_value());
    EXPECT_LT(*e.lower_bound(), 3u);
  }
}

TEST(QuadSearchProperty, RandomPathPairsMatchOracleExistence) {
  gen::Rng rng(gen::kSeed + 6);
  for (int trial = 0; trial < 10; ++trial) {
    const auto sizes = gen::path_sizes(rng, 2, 3, 6);
    std::vector<oracle::Matrix> mats;
    std::vector<prodiso::MetricSpace> spaces;
    for (int s : sizes) {
      mats.push_back(oracle::path(s));
      spaces.push_back(prodiso::path_graph(s));
    }
    const auto p = ProductSpace::make(spaces);
    for (int k = 1; k <= 2; ++k) {
      const bool want = oracle::admissible_quad_maps(mats, k, 1) > 0;
      EXPECT_EQ(!prodiso::find_admissible_embeddings(p, k, 1, 1)
                     .embeddings.empty(),
                want)
          << p.name() << " k=" << k;
    }
  }
}

TEST(QuadSearch, NoTwoDimensionalQuadInPathFiveByThree) {
  EXPECT_EQ(oracle::admissible_quad_maps({oracle::path(5), oracle::path(3)}, 2,
                                         0),
            0);
  EXPECT_EQ(oracle::admissible_quad_maps({oracle::path(3), oracle::path(5)}, 2,
                                         0),
            0);
  EXPECT_GT(oracle::admissible_quad_maps({oracle::path(5), oracle::path(3)}, 1,
                                         1),
            0);
  EXPECT_EQ(prodiso::max_quad_dimension(ProductSpace::make({prodiso::path_graph(5),
                                                            prodiso::path_graph(3)}),
                                        1, 1)
                .dimension,
            1u);
}
