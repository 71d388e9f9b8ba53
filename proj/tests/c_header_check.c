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

/* Builds against the public header as plain C and runs a short session. */

#include <stdio.h>
#include <string.h>

#include "prodiso/prodiso.h"

int main(void) {
  prodiso_space* p3 = NULL;
  prodiso_space* sq = NULL;
  prodiso_space* empty = NULL;
  prodiso_config* cfg = NULL;
  uint64_t count = 0;
  int failures = 0;

  if (prodiso_config_create(&cfg) != PRODISO_OK) return 1;
  if (prodiso_space_path_graph(3, &p3) != PRODISO_OK) return 1;
  {
    const prodiso_space* factors[2];
    factors[0] = p3;
    factors[1] = p3;
    if (prodiso_space_product(factors, 2, &sq) != PRODISO_OK) return 1;
  }
  if (prodiso_count_isometries(cfg, sq, sq, &count) != PRODISO_OK ||
      count != 8) {
    fprintf(stderr, "expected 8 isometries, got %llu\n",
            (unsigned long long)count);
    ++failures;
  }
  if (prodiso_space_path_graph(0, &empty) == PRODISO_OK ||
      strlen(prodiso_last_error()) == 0) {
    fprintf(stderr, "empty path graph accepted\n");
    ++failures;
  }
  prodiso_space_destroy(sq);
  prodiso_space_destroy(p3);
  prodiso_config_destroy(cfg);
  return failures ? 1 : 0;
}
