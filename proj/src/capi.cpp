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

#include "prodiso/prodiso.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "prodiso/decompose.hpp"
#include "prodiso/error.hpp"
#include "prodiso/io.hpp"

struct prodiso_space {
  prodiso::ProductSpace product;
};

struct prodiso_config {
  prodiso::io::RunConfig run;
};

namespace {

thread_local std::string g_last_error;

prodiso_status fail(prodiso_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs `body`, translating library exceptions into status codes.
template <typename Body>
prodiso_status guarded(Body&& body) {
  using namespace prodiso;
  try {
    g_last_error.clear();
    body();
    return PRODISO_OK;
  } catch (const ParseError& e) {
    return fail(PRODISO_ERR_PARSE, e.what());
  } catch (const AxiomViolation& e) {
    return fail(PRODISO_ERR_AXIOM,
                std::string(to_string(e.kind())) + ": " + e.what());
  } catch (const IoError& e) {
    return fail(PRODISO_ERR_IO, e.what());
  } catch (const SearchBudgetExceeded& e) {
    return fail(PRODISO_ERR_BUDGET, e.what());
  } catch (const ResolutionMismatch& e) {
    return fail(PRODISO_ERR_RESOLUTION, e.what());
  } catch (const InvalidEmbedding& e) {
    return fail(PRODISO_ERR_EMBEDDING, e.what());
  } catch (const InvalidDecomposition& e) {
    return fail(PRODISO_ERR_DECOMPOSITION, e.what());
  } catch (const SizeMismatch& e) {
    return fail(PRODISO_ERR_MISMATCH, e.what());
  } catch (const DomainMismatch& e) {
    return fail(PRODISO_ERR_MISMATCH, e.what());
  } catch (const AxisMismatch& e) {
    return fail(PRODISO_ERR_MISMATCH, e.what());
  } catch (const Error& e) {
    return fail(PRODISO_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PRODISO_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PRODISO_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PRODISO_ERR_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw prodiso::InvalidInput(what);
}

prodiso::Rat parse_rat(const char* text) {
  try {
    return prodiso::Rat::parse(text);
  } catch (const std::exception& e) {
    throw prodiso::InvalidInput(std::string("bad rational \"") + text +
                                "\": " + e.what());
  }
}

prodiso::io::RunConfig run_config(const prodiso_config* config) {
  return config ? config->run : prodiso::io::RunConfig{};
}

prodiso_status emit(const prodiso::io::Report& report,
                    const prodiso::io::RunConfig& run, char** out,
                    int* exit_code) {
  *out = copy_string(prodiso::io::render(report, run));
  *exit_code = report.exit_code;
  return PRODISO_OK;
}

std::vector<std::string> string_list(const char* const* items, size_t count) {
  require(items || count == 0, "file list is NULL");
  std::vector<std::string> out;
  for (size_t i = 0; i < count; ++i) {
    require(items[i] != nullptr, "file name is NULL");
    out.emplace_back(items[i]);
  }
  return out;
}

}  // namespace

extern "C" {

const char* prodiso_version(void) { return "0.1.0"; }

const char* prodiso_status_name(prodiso_status status) {
  switch (status) {
    case PRODISO_OK:
      return "ok";
    case PRODISO_ERR_INVALID_ARGUMENT:
      return "invalid-argument";
    case PRODISO_ERR_IO:
      return "io";
    case PRODISO_ERR_PARSE:
      return "parse";
    case PRODISO_ERR_AXIOM:
      return "axiom-violation";
    case PRODISO_ERR_BUDGET:
      return "search-budget-exceeded";
    case PRODISO_ERR_RESOLUTION:
      return "resolution-mismatch";
    case PRODISO_ERR_EMBEDDING:
      return "invalid-embedding";
    case PRODISO_ERR_DECOMPOSITION:
      return "invalid-decomposition";
    case PRODISO_ERR_MISMATCH:
      return "mismatch";
    case PRODISO_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

const char* prodiso_last_error(void) { return g_last_error.c_str(); }

void prodiso_string_free(char* s) { std::free(s); }

prodiso_status prodiso_config_create(prodiso_config** out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    auto config = std::make_unique<prodiso_config>();
    if (const char* env = std::getenv("PRODISO_NODE_CAP"); env && *env) {
      char* end = nullptr;
      const unsigned long long cap = std::strtoull(env, &end, 10);
      require(end && *end == '\0' && cap > 0,
              "PRODISO_NODE_CAP must be a positive integer");
      config->run.node_cap = cap;
    }
    *out = config.release();
  });
}

void prodiso_config_destroy(prodiso_config* config) { delete config; }

prodiso_status prodiso_config_set_node_cap(prodiso_config* config,
                                           uint64_t cap) {
  return guarded([&] {
    require(config != nullptr, "config is NULL");
    require(cap > 0, "node cap must be positive");
    config->run.node_cap = cap;
  });
}

prodiso_status prodiso_config_set_workers(prodiso_config* config,
                                          unsigned workers) {
  return guarded([&] {
    require(config != nullptr, "config is NULL");
    require(workers > 0, "worker count must be positive");
    config->run.workers = workers;
  });
}

prodiso_status prodiso_config_set_format(prodiso_config* config,
                                         prodiso_format format) {
  return guarded([&] {
    require(config != nullptr, "config is NULL");
    require(format == PRODISO_FORMAT_JSON || format == PRODISO_FORMAT_TEXT,
            "unknown format");
    config->run.format = format == PRODISO_FORMAT_JSON
                             ? prodiso::io::Format::kJson
                             : prodiso::io::Format::kText;
  });
}

prodiso_status prodiso_config_set_omit_timing(prodiso_config* config,
                                              int omit) {
  return guarded([&] {
    require(config != nullptr, "config is NULL");
    config->run.omit_timing = omit != 0;
  });
}

prodiso_status prodiso_space_load(const char* path, prodiso_space** out) {
  return guarded([&] {
    require(path && out, "NULL argument");
    *out = new prodiso_space{prodiso::io::load_product(path)};
  });
}

prodiso_status prodiso_space_parse(const char* json, const char* base_dir,
                                   prodiso_space** out) {
  return guarded([&] {
    require(json && out, "NULL argument");
    *out = new prodiso_space{
        prodiso::io::parse_product(json, base_dir ? base_dir : ".")};
  });
}

prodiso_status prodiso_space_path_graph(size_t n, prodiso_space** out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    *out = new prodiso_space{
        prodiso::ProductSpace::of(prodiso::path_graph(n))};
  });
}

prodiso_status prodiso_space_product(const prodiso_space* const* factors,
                                     size_t count, prodiso_space** out) {
  return guarded([&] {
    require(factors && out && count > 0, "need at least one factor");
    std::vector<prodiso::MetricSpace> spaces;
    for (size_t i = 0; i < count; ++i) {
      require(factors[i] != nullptr, "factor is NULL");
      const auto& fs = factors[i]->product.factors();
      spaces.insert(spaces.end(), fs.begin(), fs.end());
    }
    *out = new prodiso_space{prodiso::ProductSpace::make(std::move(spaces))};
  });
}

void prodiso_space_destroy(prodiso_space* space) { delete space; }

size_t prodiso_space_size(const prodiso_space* space) {
  return space ? space->product.size() : 0;
}

size_t prodiso_space_factor_count(const prodiso_space* space) {
  return space ? space->product.factor_count() : 0;
}

prodiso_status prodiso_space_distance(const prodiso_space* space, size_t a,
                                      size_t b, char** out) {
  return guarded([&] {
    require(space && out, "NULL argument");
    require(a < space->product.size() && b < space->product.size(),
            "rank out of range");
    *out = copy_string(space->product.distance(a, b).str());
  });
}

prodiso_status prodiso_count_isometries(const prodiso_config* config,
                                        const prodiso_space* domain,
                                        const prodiso_space* codomain,
                                        uint64_t* count) {
  return guarded([&] {
    require(domain && codomain && count, "NULL argument");
    const auto stats = prodiso::for_each_isometry(
        domain->product, codomain->product, [](auto) { return true; },
        run_config(config).search());
    *count = stats.found;
  });
}

prodiso_status prodiso_count_reducible(const prodiso_config* config,
                                       const prodiso_space* domain,
                                       const prodiso_space* codomain,
                                       uint64_t* total, uint64_t* reducible,
                                       uint64_t* irreducible,
                                       uint64_t* hypothesis_violations) {
  return guarded([&] {
    require(domain && codomain && total && reducible && irreducible &&
                hypothesis_violations,
            "NULL argument");
    const auto maps = prodiso::enumerate_isometries(
        domain->product, codomain->product, run_config(config).search());
    uint64_t r = 0, i = 0, h = 0;
    for (const auto& f : maps) {
      const auto cert = prodiso::decompose(f);
      if (std::holds_alternative<prodiso::Reducible>(cert)) {
        ++r;
      } else if (std::holds_alternative<prodiso::Irreducible>(cert)) {
        ++i;
      } else {
        ++h;
      }
    }
    *total = maps.size();
    *reducible = r;
    *irreducible = i;
    *hypothesis_violations = h;
  });
}

prodiso_status prodiso_decompose_map(const prodiso_space* domain,
                                     const prodiso_space* codomain,
                                     const size_t* map, size_t map_size,
                                     prodiso_verdict* verdict,
                                     char** certificate_json) {
  return guarded([&] {
    require(domain && codomain && map && verdict, "NULL argument");
    const auto f = prodiso::verified_isometry(
        domain->product, codomain->product,
        std::vector<std::size_t>(map, map + map_size));
    const auto cert = prodiso::decompose(f);
    *verdict = std::holds_alternative<prodiso::Reducible>(cert)
                   ? PRODISO_VERDICT_REDUCIBLE
               : std::holds_alternative<prodiso::Irreducible>(cert)
                   ? PRODISO_VERDICT_IRREDUCIBLE
                   : PRODISO_VERDICT_HYPOTHESIS_VIOLATION;
    if (certificate_json) {
      *certificate_json =
          copy_string(prodiso::io::certificate_to_json(f, cert).dump());
    }
  });
}

prodiso_status prodiso_max_quad_dimension(const prodiso_config* config,
                                          const prodiso_space* product,
                                          const char* scale,
                                          const char* resolution,
                                          size_t* dimension) {
  return guarded([&] {
    require(product && scale && dimension, "NULL argument");
    const auto r = parse_rat(scale);
    const auto res = resolution ? parse_rat(resolution) : r;
    const auto run = run_config(config);
    prodiso::QuadSearchOptions opts;
    opts.node_cap = run.node_cap;
    opts.workers = run.workers;
    *dimension =
        prodiso::max_quad_dimension(product->product, r, res, opts).dimension;
  });
}

prodiso_status prodiso_report_validate(const prodiso_config* config,
                                       const char* const* files, size_t count,
                                       char** report, int* exit_code) {
  return guarded([&] {
    require(report && exit_code, "NULL argument");
    const auto run = run_config(config);
    emit(prodiso::io::run_validate(string_list(files, count), run), run, report,
         exit_code);
  });
}

prodiso_status prodiso_report_product(const prodiso_config* config,
                                      const char* const* files, size_t count,
                                      char** report, int* exit_code) {
  return guarded([&] {
    require(report && exit_code, "NULL argument");
    const auto run = run_config(config);
    emit(prodiso::io::run_product(string_list(files, count), run), run, report,
         exit_code);
  });
}

prodiso_status prodiso_report_isometries(const prodiso_config* config,
                                         const char* domain_file,
                                         const char* codomain_file,
                                         size_t limit, int count_only,
                                         char** report, int* exit_code) {
  return guarded([&] {
    require(domain_file && codomain_file && report && exit_code,
            "NULL argument");
    const auto run = run_config(config);
    emit(prodiso::io::run_isometries(domain_file, codomain_file, limit,
                                     count_only != 0, run),
         run, report, exit_code);
  });
}

prodiso_status prodiso_report_decompose(const prodiso_config* config,
                                        const char* domain_file,
                                        const char* codomain_file,
                                        const char* map_file, int all,
                                        char** report, int* exit_code) {
  return guarded([&] {
    require(domain_file && report && exit_code, "NULL argument");
    prodiso::io::DecomposeRequest req;
    req.domain_file = domain_file;
    if (codomain_file) req.codomain_file = codomain_file;
    if (map_file) req.map_file = map_file;
    req.all = all != 0;
    const auto run = run_config(config);
    emit(prodiso::io::run_decompose(req, run), run, report, exit_code);
  });
}

prodiso_status prodiso_report_quad(const prodiso_config* config,
                                   const prodiso_quad_request* request,
                                   char** report, int* exit_code) {
  return guarded([&] {
    require(request && report && exit_code, "NULL argument");
    prodiso::io::QuadRequest req;
    req.dim = request->dim;
    if (request->scale) req.scale = request->scale;
    if (request->product_file) req.product_file = request->product_file;
    if (request->resolution) req.resolution = request->resolution;
    req.standard = request->standard != 0;
    if (request->chains_file) req.chains_file = request->chains_file;
    req.max_dim = request->max_dim != 0;
    req.limit = request->limit;
    const auto run = run_config(config);
    emit(prodiso::io::run_quad(req, run), run, report, exit_code);
  });
}

prodiso_status prodiso_report_verify(const prodiso_config* config,
                                     const char* suite, char** report,
                                     int* exit_code) {
  return guarded([&] {
    require(suite && report && exit_code, "NULL argument");
    const auto run = run_config(config);
    emit(prodiso::io::run_verify(suite, run), run, report, exit_code);
  });
}

}  // extern "C"
