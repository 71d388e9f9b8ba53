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

#ifndef PRODISO_PRODISO_H_
#define PRODISO_PRODISO_H_

#include <stddef.h>
#include <stdint.h>

#if defined(PRODISO_BUILDING_LIBRARY)
#define PRODISO_API __attribute__((visibility("default")))
#else
#define PRODISO_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum prodiso_status {
  PRODISO_OK = 0,
  PRODISO_ERR_INVALID_ARGUMENT = 1,
  PRODISO_ERR_IO = 2,
  PRODISO_ERR_PARSE = 3,
  PRODISO_ERR_AXIOM = 4,
  PRODISO_ERR_BUDGET = 5,
  PRODISO_ERR_RESOLUTION = 6,
  PRODISO_ERR_EMBEDDING = 7,
  PRODISO_ERR_DECOMPOSITION = 8,
  PRODISO_ERR_MISMATCH = 9,
  PRODISO_ERR_INTERNAL = 10
} prodiso_status;

typedef enum prodiso_format {
  PRODISO_FORMAT_JSON = 0,
  PRODISO_FORMAT_TEXT = 1
} prodiso_format;

typedef enum prodiso_verdict {
  PRODISO_VERDICT_REDUCIBLE = 0,
  PRODISO_VERDICT_IRREDUCIBLE = 1,
  PRODISO_VERDICT_HYPOTHESIS_VIOLATION = 2
} prodiso_verdict;

/* A metric space or sup-product of metric spaces. */
typedef struct prodiso_space prodiso_space;
/* Search cap, worker count and report format. */
typedef struct prodiso_config prodiso_config;

PRODISO_API const char* prodiso_version(void);
PRODISO_API const char* prodiso_status_name(prodiso_status status);

/* Message of the last failed call on this thread; never NULL. */
PRODISO_API const char* prodiso_last_error(void);

/* Releases strings returned through char** out-parameters. */
PRODISO_API void prodiso_string_free(char* s);

/* Defaults: node cap 10^7 (or PRODISO_NODE_CAP), one worker, JSON. */
PRODISO_API prodiso_status prodiso_config_create(prodiso_config** out);
PRODISO_API void prodiso_config_destroy(prodiso_config* config);
PRODISO_API prodiso_status prodiso_config_set_node_cap(prodiso_config* config,
                                                       uint64_t cap);
PRODISO_API prodiso_status prodiso_config_set_workers(prodiso_config* config,
                                                      unsigned workers);
PRODISO_API prodiso_status prodiso_config_set_format(prodiso_config* config,
                                                     prodiso_format format);
/* Leave timing out of reports so repeated runs compare byte for byte. */
PRODISO_API prodiso_status prodiso_config_set_omit_timing(
    prodiso_config* config, int omit);

/* Space or product document from a file, or from JSON text (relative factor
 * file paths resolve against base_dir, which may be NULL). */
PRODISO_API prodiso_status prodiso_space_load(const char* path,
                                              prodiso_space** out);
PRODISO_API prodiso_status prodiso_space_parse(const char* json,
                                               const char* base_dir,
                                               prodiso_space** out);
/* Unit-step path graph on n points. */
PRODISO_API prodiso_status prodiso_space_path_graph(size_t n,
                                                    prodiso_space** out);
/* Sup-product of the given spaces' factors, in order. */
PRODISO_API prodiso_status prodiso_space_product(
    const prodiso_space* const* factors, size_t count, prodiso_space** out);
PRODISO_API void prodiso_space_destroy(prodiso_space* space);
PRODISO_API size_t prodiso_space_size(const prodiso_space* space);
PRODISO_API size_t prodiso_space_factor_count(const prodiso_space* space);
/* Distance between two points by rank as "p/q" (or "p"). */
PRODISO_API prodiso_status prodiso_space_distance(const prodiso_space* space,
                                                  size_t a, size_t b,
                                                  char** out);

PRODISO_API prodiso_status prodiso_count_isometries(
    const prodiso_config* config, const prodiso_space* domain,
    const prodiso_space* codomain, uint64_t* count);
/* Decomposes every isometry domain -> codomain. */
PRODISO_API prodiso_status prodiso_count_reducible(
    const prodiso_config* config, const prodiso_space* domain,
    const prodiso_space* codomain, uint64_t* total, uint64_t* reducible,
    uint64_t* irreducible, uint64_t* hypothesis_violations);
/* Decomposes one map given as domain-rank -> codomain-rank. */
PRODISO_API prodiso_status prodiso_decompose_map(
    const prodiso_space* domain, const prodiso_space* codomain,
    const size_t* map, size_t map_size, prodiso_verdict* verdict,
    char** certificate_json);
/* Largest k with an admissible Q^k_r; scale and resolution are "p/q". */
PRODISO_API prodiso_status prodiso_max_quad_dimension(
    const prodiso_config* config, const prodiso_space* product,
    const char* scale, const char* resolution, size_t* dimension);

/* Command reports. Each returns the rendered report and the process exit
 * code the command line tool uses for it. */
PRODISO_API prodiso_status prodiso_report_validate(
    const prodiso_config* config, const char* const* files, size_t count,
    char** report, int* exit_code);
PRODISO_API prodiso_status prodiso_report_product(
    const prodiso_config* config, const char* const* files, size_t count,
    char** report, int* exit_code);
/* limit 0 means all; count_only omits the maps. */
PRODISO_API prodiso_status prodiso_report_isometries(
    const prodiso_config* config, const char* domain_file,
    const char* codomain_file, size_t limit, int count_only, char** report,
    int* exit_code);
/* codomain_file and map_file may be NULL; exactly one of map_file and all. */
PRODISO_API prodiso_status prodiso_report_decompose(
    const prodiso_config* config, const char* domain_file,
    const char* codomain_file, const char* map_file, int all, char** report,
    int* exit_code);

typedef struct prodiso_quad_request {
  size_t dim;
  const char* scale;        /* NULL means "1" */
  const char* product_file; /* NULL: emit the bare graph */
  const char* resolution;   /* NULL means the scale */
  int standard;
  const char* chains_file;  /* NULL: chain between first and last point */
  int max_dim;
  size_t limit;             /* embeddings to report; 0 means all */
} prodiso_quad_request;

PRODISO_API prodiso_status prodiso_report_quad(
    const prodiso_config* config, const prodiso_quad_request* request,
    char** report, int* exit_code);
/* suite is "desk" or a suite document path. */
PRODISO_API prodiso_status prodiso_report_verify(const prodiso_config* config,
                                                 const char* suite,
                                                 char** report,
                                                 int* exit_code);

#ifdef __cplusplus
}
#endif

#endif /* PRODISO_PRODISO_H_ */
