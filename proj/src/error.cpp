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

#include "prodiso/error.hpp"

namespace prodiso {

const char* to_string(AxiomKind kind) {
  switch (kind) {
    case AxiomKind::kNonzeroDiagonal:
      return "nonzero-diagonal";
    case AxiomKind::kNegative:
      return "negative";
    case AxiomKind::kAsymmetry:
      return "asymmetry";
    case AxiomKind::kZeroOffDiagonal:
      return "zero-off-diagonal";
    case AxiomKind::kTriangle:
      return "triangle";
  }
  return "unknown";
}

AxiomViolation::AxiomViolation(AxiomKind kind, std::vector<std::size_t> witness,
                               const std::string& detail)
    : Error(std::string("metric axiom violated (") + to_string(kind) +
            "): " + detail),
      kind_(kind),
      witness_(std::move(witness)) {}

ParseError::ParseError(const std::string& message, std::size_t line,
                       std::size_t column, std::string pointer)
    : Error(message), line_(line), column_(column), pointer_(std::move(pointer)) {}

SearchBudgetExceeded::SearchBudgetExceeded(const std::string& what,
                                           std::uint64_t nodes,
                                           std::optional<std::size_t> lower_bound)
    : Error(what), nodes_(nodes), lower_bound_(lower_bound) {}

}  // namespace prodiso
