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

#include "dispatch.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <memory>

#include "prodiso/prodiso.h"

namespace prodiso::cli {

namespace {

constexpr int kExitInputError = 1;
constexpr int kExitBudget = 4;
constexpr int kExitAxiom = 6;
constexpr int kExitEmbedding = 7;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

int exit_code_for(prodiso_status status) {
  switch (status) {
    case PRODISO_OK:
      return 0;
    case PRODISO_ERR_AXIOM:
      return kExitAxiom;
    case PRODISO_ERR_BUDGET:
      return kExitBudget;
    case PRODISO_ERR_RESOLUTION:
    case PRODISO_ERR_EMBEDDING:
      return kExitEmbedding;
    case PRODISO_ERR_INTERNAL:
      return kExitInternal;
    default:
      return kExitInputError;
  }
}

struct ConfigDeleter {
  void operator()(prodiso_config* c) const { prodiso_config_destroy(c); }
};
using ConfigPtr = std::unique_ptr<prodiso_config, ConfigDeleter>;

struct Report {
  char* text = nullptr;
  ~Report() { prodiso_string_free(text); }
};

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

const char* or_null(const std::string& s) {
  return s.empty() ? nullptr : s.c_str();
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Exact finite metric spaces, sup-products and isometry "
               "decomposition",
               "prodiso"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t node_cap = 0;
  unsigned workers = 1;
  std::string format = "json";
  std::string output;
  bool no_timing = false;
  app.add_option("--node-cap", node_cap,
                 "Search node cap (default 10^7 or PRODISO_NODE_CAP)")
      ->check(CLI::PositiveNumber);
  app.add_option("--workers", workers, "Worker threads for searches")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--output", output, "Write the report to this file");
  app.add_flag("--no-timing", no_timing, "Leave timing_ms out of the report");

  std::vector<std::string> validate_files;
  auto* validate = app.add_subcommand("validate", "Check space/product files");
  validate->add_option("files", validate_files)->required();

  std::vector<std::string> product_files;
  auto* product = app.add_subcommand("product", "Build a sup-product");
  product->add_option("files", product_files)->required();

  std::string iso_domain, iso_codomain;
  std::size_t iso_limit = 0;
  bool iso_count_only = false;
  auto* isometries =
      app.add_subcommand("isometries", "Enumerate isometries between spaces");
  isometries->add_option("domain", iso_domain)->required();
  isometries->add_option("codomain", iso_codomain)->required();
  isometries->add_option("--limit", iso_limit, "Stop after this many maps");
  isometries->add_flag("--count-only", iso_count_only, "Omit the maps");

  std::vector<std::string> dec_products;
  std::string dec_map;
  bool dec_all = false;
  auto* decompose = app.add_subcommand("decompose", "Certify reducibility");
  decompose->add_option("--products", dec_products, "Domain [codomain] files")
      ->required()
      ->expected(1, 2);
  auto* map_opt = decompose->add_option("--map", dec_map, "Map file");
  auto* all_opt = decompose->add_flag("--all", dec_all, "Sweep all isometries");
  map_opt->excludes(all_opt);
  all_opt->excludes(map_opt);

  std::size_t quad_dim = 0;
  std::string quad_scale = "1";
  std::string quad_embed, quad_resolution, quad_chains;
  bool quad_standard = false, quad_max_dim = false;
  std::size_t quad_limit = 1;
  auto* quad = app.add_subcommand("quad", "Quadrilateral graphs and embeddings");
  quad->add_option("--dim", quad_dim, "Graph dimension");
  quad->add_option("--scale", quad_scale, "Edge length r");
  quad->add_option("--embed", quad_embed, "Target product file");
  quad->add_option("--resolution", quad_resolution, "Geodesic resolution");
  quad->add_flag("--standard", quad_standard, "Use the chain construction");
  quad->add_option("--chains", quad_chains, "Per-factor chain labels");
  quad->add_flag("--max-dim", quad_max_dim, "Largest admissible dimension");
  quad->add_option("--limit", quad_limit, "Embeddings to report (0 = all)");

  std::string suite = "desk";
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite, "\"desk\" or a suite file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "prodiso: " << e.what() << "\n";
    return kExitUsage;
  }
  if (decompose->parsed() && !dec_all && dec_map.empty()) {
    err << "prodiso: decompose needs --map or --all\n";
    return kExitUsage;
  }

  prodiso_config* raw = nullptr;
  if (prodiso_config_create(&raw) != PRODISO_OK) {
    err << "prodiso: " << prodiso_last_error() << "\n";
    return kExitInputError;
  }
  ConfigPtr config(raw);
  if (node_cap) prodiso_config_set_node_cap(config.get(), node_cap);
  prodiso_config_set_workers(config.get(), workers);
  prodiso_config_set_format(config.get(), format == "text"
                                              ? PRODISO_FORMAT_TEXT
                                              : PRODISO_FORMAT_JSON);
  prodiso_config_set_omit_timing(config.get(), no_timing ? 1 : 0);

  Report report;
  int code = 0;
  prodiso_status status = PRODISO_OK;
  if (validate->parsed()) {
    const auto files = c_strings(validate_files);
    status = prodiso_report_validate(config.get(), files.data(), files.size(),
                                     &report.text, &code);
  } else if (product->parsed()) {
    const auto files = c_strings(product_files);
    status = prodiso_report_product(config.get(), files.data(), files.size(),
                                    &report.text, &code);
  } else if (isometries->parsed()) {
    status = prodiso_report_isometries(config.get(), iso_domain.c_str(),
                                       iso_codomain.c_str(), iso_limit,
                                       iso_count_only ? 1 : 0, &report.text,
                                       &code);
  } else if (decompose->parsed()) {
    status = prodiso_report_decompose(
        config.get(), dec_products[0].c_str(),
        dec_products.size() > 1 ? dec_products[1].c_str() : nullptr,
        or_null(dec_map), dec_all ? 1 : 0, &report.text, &code);
  } else if (quad->parsed()) {
    prodiso_quad_request req{};
    req.dim = quad_dim;
    req.scale = quad_scale.c_str();
    req.product_file = or_null(quad_embed);
    req.resolution = or_null(quad_resolution);
    req.standard = quad_standard ? 1 : 0;
    req.chains_file = or_null(quad_chains);
    req.max_dim = quad_max_dim ? 1 : 0;
    req.limit = quad_limit;
    status = prodiso_report_quad(config.get(), &req, &report.text, &code);
  } else if (verify->parsed()) {
    status = prodiso_report_verify(config.get(), suite.c_str(), &report.text,
                                   &code);
  }

  if (status != PRODISO_OK) {
    err << "prodiso: " << prodiso_status_name(status) << ": "
        << prodiso_last_error() << "\n";
    return exit_code_for(status);
  }
  if (output.empty()) {
    out << report.text;
  } else {
    std::ofstream file(output, std::ios::binary);
    file << report.text;
    if (!file) {
      err << "prodiso: cannot write " << output << "\n";
      return kExitInputError;
    }
  }
  return code;
}

}  // namespace prodiso::cli
