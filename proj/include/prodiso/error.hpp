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

#ifndef PRODISO_ERROR_HPP_
#define PRODISO_ERROR_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace prodiso {

// Base of every error raised by the library. The C API maps each subclass to
// a distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: shape mismatches, duplicate labels, out-of-range
// indices, capacity limits.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A file could not be opened or read.
class IoError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

enum class AxiomKind {
  kNonzeroDiagonal,
  kNegative,
  kAsymmetry,
  kZeroOffDiagonal,
  kTriangle,
};

const char* to_string(AxiomKind kind);

// A distance matrix that is not a metric. `witness` holds the offending point
// indices: (i) for a diagonal entry, (i, j) for pair violations and (i, k, j)
// for d(i,k) > d(i,j) + d(j,k).
class AxiomViolation : public Error {
 public:
  AxiomViolation(AxiomKind kind, std::vector<std::size_t> witness,
                 const std::string& detail);

  AxiomKind kind() const { return kind_; }
  const std::vector<std::size_t>& witness() const { return witness_; }

 private:
  AxiomKind kind_;
  std::vector<std::size_t> witness_;
};

// Input document could not be decoded. Syntax errors carry line/column;
// semantic errors carry a JSON pointer to the offending value.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column,
             std::string pointer = {});

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& pointer() const { return pointer_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string pointer_;
};

class ResolutionMismatch : public Error {
 public:
  using Error::Error;
};

class SearchBudgetExceeded : public Error {
 public:
  SearchBudgetExceeded(const std::string& what, std::uint64_t nodes,
                       std::optional<std::size_t> lower_bound = std::nullopt);

  std::uint64_t nodes() const { return nodes_; }
  // Best value established before the cap was hit, when the search has one.
  std::optional<std::size_t> lower_bound() const { return lower_bound_; }

 private:
  std::uint64_t nodes_;
  std::optional<std::size_t> lower_bound_;
};

class SizeMismatch : public Error {
 public:
  using Error::Error;
};

class DomainMismatch : public Error {
 public:
  using Error::Error;
};

class AxisMismatch : public Error {
 public:
  using Error::Error;
};

class TooSmall : public Error {
 public:
  using Error::Error;
};

class InvalidEmbedding : public Error {
 public:
  using Error::Error;
};

class ChainTooShort : public InvalidEmbedding {
 public:
  using InvalidEmbedding::InvalidEmbedding;
};

class MissingParameter : public InvalidEmbedding {
 public:
  MissingParameter(const std::string& what, std::string parameter)
      : InvalidEmbedding(what), parameter_(std::move(parameter)) {}
  // The chain parameter (as a "p/q" string) with no chain point.
  const std::string& parameter() const { return parameter_; }

 private:
  std::string parameter_;
};

class InvalidDecomposition : public Error {
 public:
  using Error::Error;
};

class NotPairwiseSlices : public Error {
 public:
  using Error::Error;
};

class NotCycleOfSlices : public Error {
 public:
  using Error::Error;
};

}  // namespace prodiso

#endif  // PRODISO_ERROR_HPP_
