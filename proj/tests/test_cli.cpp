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
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dispatch.hpp"

namespace fs = std::filesystem;

namespace {

std::string data(const std::string& name) {
  return (fs::path(PRODISO_TEST_DATA_DIR) / name).string();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = prodiso::cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 64);
  EXPECT_EQ(run({"frobnicate"}).code, 64);
  EXPECT_EQ(run({"verify", "--bogus"}).code, 64);
  EXPECT_EQ(run({"--format", "xml", "verify"}).code, 64);
  EXPECT_EQ(run({"decompose", "--products", data("p3_p3.json")}).code, 64);
  EXPECT_EQ(run({"decompose", "--products", data("p3_p3.json"), "--all",
                 "--map", data("map_swap.json")})
                .code,
            64);
}

TEST(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("decompose"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"validate", data("p3.json")}).code, 0);
  EXPECT_EQ(run({"validate", data("bad_triangle.json")}).code, 6);
  EXPECT_EQ(run({"validate", data("bad_syntax.json")}).code, 1);
  EXPECT_EQ(run({"validate", data("missing.json")}).code, 1);
  EXPECT_EQ(run({"decompose", "--products", data("k2_k2.json"), "--all"}).code,
            2);
  EXPECT_EQ(run({"decompose", "--products", data("p3_p3.json"), "--map",
                 data("map_swap.json")})
                .code,
            0);
  EXPECT_EQ(run({"--node-cap", "3", "isometries", data("p3_p3.json"),
                 data("p3_p3.json")})
                .code,
            4);
  EXPECT_EQ(run({"verify", "--suite", data("suite_fail.json")}).code, 5);
  EXPECT_EQ(run({"quad", "--embed", data("p5_p3.json"), "--standard"}).code, 7);
  EXPECT_EQ(run({"quad", "--embed", data("p5_p5.json"), "--resolution", "2",
                 "--dim", "1"})
                .code,
            7);
}

TEST(Cli, HypothesisViolationExitCode) {
  const std::string flat = (fs::temp_directory_path() / "prodiso_flat9.json");
  {
    nlohmann::json d = nlohmann::json::array();
    for (int a = 0; a < 9; ++a) {
      nlohmann::json row = nlohmann::json::array();
      for (int b = 0; b < 9; ++b) {
        row.push_back(std::max(std::abs(a / 3 - b / 3), std::abs(a % 3 - b % 3)));
      }
      d.push_back(row);
    }
    nlohmann::json pts = nlohmann::json::array();
    for (int a = 0; a < 9; ++a) pts.push_back("q" + std::to_string(a));
    std::ofstream(flat) << nlohmann::json{{"points", pts}, {"distances", d}};
  }
  const auto r = run({"--no-timing", "decompose", "--products",
                      data("p3_p3.json"), flat, "--all"});
  EXPECT_EQ(r.code, 3) << r.err;
  fs::remove(flat);
}

TEST(Cli, QuadGraphReport) {
  const auto r = run({"quad", "--dim", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["results"]["vertex_count"], 14);
  EXPECT_EQ(j["results"]["edge_count"], 24);
  EXPECT_EQ(j["verdict"], "ok");
}

TEST(Cli, DecomposeAllOnPathSquare) {
  const auto r =
      run({"decompose", "--products", data("p3_p3.json"), "--all"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdict"], "all-reducible");
}

TEST(Cli, DeterministicWithoutTiming) {
  const std::vector<std::string> args{"--no-timing", "isometries",
                                      data("p5_p3.json"), data("p3_p5.json")};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(nlohmann::json::parse(a.out).count("timing_ms"), 0u);
  EXPECT_EQ(nlohmann::json::parse(run({"verify"}).out).count("timing_ms"), 1u);
}

TEST(Cli, WorkersDoNotChangeResults) {
  const auto a = run({"--no-timing", "isometries", data("p3_p3.json"),
                      data("p3_p3.json")});
  const auto b = run({"--no-timing", "--workers", "3", "isometries",
                      data("p3_p3.json"), data("p3_p3.json")});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, OutputFile) {
  const auto path = fs::temp_directory_path() / "prodiso_cli_out.json";
  fs::remove(path);
  const auto r = run({"--output", path.string(), "--no-timing", "verify"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["verdict"], "pass");
  fs::remove(path);
  EXPECT_EQ(run({"--output", "/nonexistent-dir/x.json", "verify"}).code, 1);
}

TEST(Cli, TextFormat) {
  const auto r = run({"--format", "text", "verify"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("K_2 x K_2"), std::string::npos);
  EXPECT_THROW(nlohmann::json::parse(r.out), nlohmann::json::parse_error);
}
