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

#ifndef PRODISO_IO_HPP_
#define PRODISO_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "prodiso/decompose.hpp"
#include "prodiso/isometry.hpp"
#include "prodiso/metric_space.hpp"
#include "prodiso/product.hpp"
#include "prodiso/quad_graph.hpp"

namespace prodiso::io {

using Json = nlohmann::ordered_json;

enum class Format { kJson, kText };

struct RunConfig {
  std::uint64_t node_cap = kDefaultNodeCap;
  unsigned workers = 1;
  std::string output_path;
  Format format = Format::kJson;
  // Omit timing_ms so reports compare byte for byte.
  bool omit_timing = false;

  // Throws InvalidInput for a zero cap or zero workers.
  void check() const;
  SearchOptions search() const { return {node_cap, workers, 0}; }
};

// Exit codes shared by the CLI and the C API verdicts.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitIrreducible = 2,
  kExitHypothesis = 3,
  kExitBudget = 4,
  kExitVerifyFailed = 5,
  kExitAxiom = 6,
  kExitEmbedding = 7,
  kExitUsage = 64,
  kExitInternal = 70,
};

// Rationals: integers as JSON numbers, the rest as "p/q" strings.
Json to_json(const Rat& r);
// Accepts a JSON integer or a "p/q" string; throws ParseError with `pointer`.
Rat rat_from_json(const Json& j, const std::string& pointer);

// {"name", "points", "distances"} with a full matrix. Throws ParseError for
// malformed documents (line/column for syntax, JSON pointer for content),
// AxiomViolation for non-metrics and InvalidInput for shape problems.
MetricSpace parse_space(std::string_view text,
                        std::size_t max_points = kDefaultMaxPoints);
MetricSpace space_from_json(const Json& doc, const std::string& pointer,
                            std::size_t max_points = kDefaultMaxPoints);
Json space_to_json(const MetricSpace& space);

// {"factors": [space object | {"file": path}, ...]}; relative paths resolve
// against `base_dir`. A bare space document is read as a one-factor product.
ProductSpace parse_product(std::string_view text,
                           const std::filesystem::path& base_dir);

std::string read_file(const std::filesystem::path& path);
// Throws InvalidInput when the file cannot be read; see parse_product.
ProductSpace load_product(const std::filesystem::path& path);
MetricSpace load_space(const std::filesystem::path& path);

// Product points: the factor label for one-factor products, otherwise an
// array of factor labels.
Json point_to_json(const ProductSpace& space, std::size_t rank);
std::optional<std::size_t> point_from_json(const ProductSpace& space,
                                           const Json& j);

// A map document is either an object from labels to labels (one-factor
// products, or "(a,b)" product labels) or an array of [from, to] pairs.
// Returns the rank map; throws ParseError on unknown or missing points.
std::vector<std::size_t> parse_map(std::string_view text,
                                   const ProductSpace& domain,
                                   const ProductSpace& codomain);
Json map_to_json(const Isometry& f);

// Witness points are labeled through f's domain and codomain.
Json certificate_to_json(const Isometry& f, const ReducibilityCertificate& cert);
Json slice_to_json(const ProductSpace& space, const Slice& slice);
Json embedding_to_json(const QuadEmbedding& embedding);
Json admissibility_to_json(const QuadEmbedding& embedding);
Json quad_graph_to_json(const QuadGraph& quad);

// SHA-256 over the given byte strings, each prefixed by its length.
std::string digest(const std::vector<std::string>& inputs);

struct Report {
  std::vector<std::string> command;
  std::string inputs_digest;
  Json results;
  std::int64_t timing_ms = 0;
  std::string verdict;
  int exit_code = kExitOk;

  Json to_json(bool omit_timing) const;
};

std::string render(const Report& report, const RunConfig& config);

Report run_validate(const std::vector<std::string>& files,
                    const RunConfig& config);
Report run_product(const std::vector<std::string>& files,
                   const RunConfig& config);
Report run_isometries(const std::string& domain_file,
                      const std::string& codomain_file, std::size_t limit,
                      bool count_only, const RunConfig& config);

struct DecomposeRequest {
  std::string domain_file;
  // Empty means the domain is also the codomain.
  std::string codomain_file;
  std::string map_file;
  bool all = false;
};
Report run_decompose(const DecomposeRequest& request, const RunConfig& config);

struct QuadRequest {
  std::size_t dim = 0;
  std::string scale = "1";
  std::string product_file;
  std::string resolution;
  // Embed via the per-factor chain construction instead of searching.
  bool standard = false;
  std::string chains_file;
  // Compute the largest admissible dimension instead.
  bool max_dim = false;
  std::size_t limit = 1;
};
Report run_quad(const QuadRequest& request, const RunConfig& config);

// `suite` is "desk" or a path to a suite document.
Report run_verify(const std::string& suite, const RunConfig& config);

}  // namespace prodiso::io

#endif  // PRODISO_IO_HPP_
