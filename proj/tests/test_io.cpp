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

#include <filesystem>

#include "oracle.hpp"
#include "prodiso/error.hpp"
#include "prodiso/io.hpp"

namespace fs = std::filesystem;
namespace io = prodiso::io;
using prodiso::Rat;

namespace {

std::string data(const std::string& name) {
  return (fs::path(PRODISO_TEST_DATA_DIR) / name).string();
}

io::RunConfig quiet() {
  io::RunConfig c;
  c.omit_timing = true;
  return c;
}

}  // namespace

TEST(Io, RationalJson) {
  EXPECT_EQ(io::to_json(Rat(3)), io::Json(3));
  EXPECT_EQ(io::to_json(Rat(1, 2)), io::Json("1/2"));
  EXPECT_EQ(io::rat_from_json(io::Json("1/2"), ""), Rat(1, 2));
  EXPECT_THROW(io::rat_from_json(io::Json("3/6"), "/x"), prodiso::ParseError);
  EXPECT_EQ(io::rat_from_json(io::Json(-4), ""), Rat(-4));
  EXPECT_THROW(io::rat_from_json(io::Json(1.5), "/x"), prodiso::ParseError);
  EXPECT_THROW(io::rat_from_json(io::Json(true), "/x"), prodiso::ParseError);
}

TEST(Io, SpaceRoundTrip) {
  const auto s = io::load_space(data("half.json"));
  EXPECT_EQ(s.distance(0, 1), Rat(1, 2));
  EXPECT_EQ(io::parse_space(io::space_to_json(s).dump()), s);
  const auto p = prodiso::path_graph(6);
  EXPECT_EQ(io::parse_space(io::space_to_json(p).dump()), p);
}

TEST(Io, SyntaxErrorHasLineAndColumn) {
  try {
    io::load_space(data("bad_syntax.json"));
    FAIL();
  } catch (const prodiso::ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 0u);
  }
}

TEST(Io, ContentErrorHasPointer) {
  try {
    io::load_space(data("bad_entry.json"));
    FAIL();
  } catch (const prodiso::ParseError& e) {
    EXPECT_EQ(e.pointer(), "/distances/1/2");
  }
  try {
    io::parse_space(R"({"points": ["a"], "distances": [[0]], "name": 3})");
    FAIL();
  } catch (const prodiso::ParseError& e) {
    EXPECT_EQ(e.pointer(), "/name");
  }
  EXPECT_THROW(io::parse_space(R"({"points": ["a", "b"]})"),
               prodiso::ParseError);
}

TEST(Io, AxiomViolationPassesThrough) {
  EXPECT_THROW(io::load_space(data("bad_triangle.json")),
               prodiso::AxiomViolation);
}

TEST(Io, MissingFileIsIoError) {
  EXPECT_THROW(io::load_space(data("nope.json")), prodiso::IoError);
}

TEST(Io, ProductFromFileReferences) {
  const auto p = io::load_product(data("p5_p3.json"));
  EXPECT_EQ(p.factor_count(), 2u);
  EXPECT_EQ(p.size(), 15u);
  EXPECT_EQ(p.factor(0).name(), "P_5");
  const auto single = io::load_product(data("p3.json"));
  EXPECT_EQ(single.factor_count(), 1u);
}

TEST(Io, PointsAndMaps) {
  const auto p = io::load_product(data("p3_p3.json"));
  EXPECT_EQ(io::point_to_json(p, p.rank({1, 2})), io::Json::array({"1", "2"}));
  EXPECT_EQ(io::point_from_json(p, io::Json("(1,2)")), p.rank({1, 2}));
  const auto map = io::parse_map(io::read_file(data("map_swap.json")), p, p);
  const auto f = prodiso::verified_isometry(p, p, map);
  EXPECT_EQ(f(prodiso::ProductPoint{0, 1}), (prodiso::ProductPoint{1, 2}));
  EXPECT_EQ(io::parse_map(io::map_to_json(f).dump(), p, p), map);

  try {
    io::parse_map(R"([[["0","0"],["0","0"]],[["0","0"],["1","1"]]])", p, p);
    FAIL();
  } catch (const prodiso::ParseError& e) {
    EXPECT_EQ(e.pointer(), "/1");
  }
  EXPECT_THROW(io::parse_map(R"([[["0","0"],["9","9"]]])", p, p),
               prodiso::ParseError);
  EXPECT_THROW(io::parse_map(R"([[["0","0"],["0","0"]]])", p, p),
               prodiso::ParseError);
}

TEST(Io, DigestIsStableAndLengthPrefixed) {
  const auto a = io::digest({"ab", "c"});
  EXPECT_EQ(a, io::digest({"ab", "c"}));
  EXPECT_NE(a, io::digest({"a", "bc"}));
  EXPECT_EQ(a.rfind("sha256:", 0), 0u);
  EXPECT_EQ(a.size(), 7u + 64u);
}

TEST(Io, QuadGraphJson) {
  const auto j = io::quad_graph_to_json(prodiso::QuadGraph(3, 1));
  EXPECT_EQ(j["vertex_count"], 14);
  EXPECT_EQ(j["edge_count"], 24);
  EXPECT_EQ(j["vertices"][0]["label"], "+e1");
  EXPECT_EQ(j["edges"][0].size(), 2u);
}

TEST(Run, ValidateReportsAxiomViolation) {
  const auto ok = io::run_validate({data("p3.json"), data("p5_p3.json")}, quiet());
  EXPECT_EQ(ok.exit_code, io::kExitOk);
  const auto bad = io::run_validate({data("bad_triangle.json")}, quiet());
  EXPECT_EQ(bad.exit_code, io::kExitAxiom);
  EXPECT_EQ(bad.verdict, "axiom-violation");
}

TEST(Run, IsometriesCountAndGroup) {
  const auto r = io::run_isometries(data("p3_p3.json"), data("p3_p3.json"), 0,
                                    false, quiet());
  EXPECT_EQ(r.results["count"], 8);
  EXPECT_EQ(r.exit_code, io::kExitOk);
  const auto j = r.to_json(true);
  EXPECT_FALSE(j.contains("timing_ms"));
  EXPECT_TRUE(r.to_json(false).contains("timing_ms"));
}

TEST(Run, DecomposeSingleMap) {
  io::DecomposeRequest req;
  req.domain_file = data("p3_p3.json");
  req.map_file = data("map_swap.json");
  const auto r = io::run_decompose(req, quiet());
  EXPECT_EQ(r.exit_code, io::kExitOk);

  io::DecomposeRequest bad;
  bad.domain_file = data("k2_k2.json");
  bad.map_file = data("map_k2_cycle.json");
  const auto r2 = io::run_decompose(bad, quiet());
  EXPECT_EQ(r2.exit_code, io::kExitIrreducible);
  EXPECT_EQ(r2.verdict, "irreducible");
}

TEST(Run, DecomposeAll) {
  io::DecomposeRequest req;
  req.domain_file = data("k2_k2.json");
  req.all = true;
  const auto r = io::run_decompose(req, quiet());
  EXPECT_EQ(r.exit_code, io::kExitIrreducible);
  req.domain_file = data("p5_p3.json");
  req.codomain_file = data("p3_p5.json");
  EXPECT_EQ(io::run_decompose(req, quiet()).exit_code, io::kExitOk);
}

TEST(Run, QuadStandardAndMaxDim) {
  io::QuadRequest std_req;
  std_req.product_file = data("p5_p5.json");
  std_req.standard = true;
  std_req.chains_file = data("chains_p5_p5.json");
  const auto s = io::run_quad(std_req, quiet());
  EXPECT_EQ(s.verdict, "admissible");
  EXPECT_EQ(s.results["embedding"]["q"], io::Json::array({1, 1}));

  io::QuadRequest max_req;
  max_req.product_file = data("p5_p5.json");
  max_req.max_dim = true;
  EXPECT_EQ(io::run_quad(max_req, quiet()).results["max_dimension"], 2);

  io::QuadRequest graph;
  graph.dim = 2;
  graph.scale = "1/2";
  const auto g = io::run_quad(graph, quiet());
  EXPECT_EQ(g.results["vertex_count"], 8);
}

TEST(Run, VerifySuites) {
  EXPECT_EQ(io::run_verify("desk", quiet()).exit_code, io::kExitOk);
  const auto files = io::run_verify(data("suite.json"), quiet());
  EXPECT_EQ(files.exit_code, io::kExitOk);
  EXPECT_EQ(files.results["passed"], 2);
  const auto wrong = io::run_verify(data("suite_fail.json"), quiet());
  EXPECT_EQ(wrong.exit_code, io::kExitVerifyFailed);
}

TEST(Run, RenderIsDeterministicWithoutTiming) {
  const auto cfg = quiet();
  const auto a = io::render(io::run_verify("desk", cfg), cfg);
  const auto b = io::render(io::run_verify("desk", cfg), cfg);
  EXPECT_EQ(a, b);
  auto text = cfg;
  text.format = io::Format::kText;
  EXPECT_NE(io::render(io::run_verify("desk", text), text).find("P_3 x P_3"),
            std::string::npos);
}
