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

#ifndef PRODISO_RATIONAL_HPP_
#define PRODISO_RATIONAL_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace prodiso {

// Exact rational number on 64-bit numerator/denominator. Always in lowest
// terms with a positive denominator, so equality is representational.
// Arithmetic runs in 128-bit intermediates and throws std::overflow_error if
// a reduced result does not fit.
class Rat {
 public:
  constexpr Rat() = default;
  constexpr Rat(std::int64_t value) : num_(value) {}  // NOLINT: implicit
  // Throws std::domain_error when den == 0.
  Rat(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  // "p" when integral, else "p/q".
  std::string str() const;

  // Accepts "p", "-p", "p/q". Rejects zero or negative denominators and
  // fractions not in lowest terms (throws std::invalid_argument).
  static Rat parse(std::string_view text);

  Rat operator-() const;
  friend Rat operator+(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a, const Rat& b);
  friend Rat operator*(const Rat& a, const Rat& b);
  // Throws std::domain_error on division by zero.
  friend Rat operator/(const Rat& a, const Rat& b);

  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) = default;
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b);

 private:
  static Rat from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

Rat abs(const Rat& r);

// True iff `whole / part` is a (possibly zero) integer; `part` must be > 0.
bool divides(const Rat& part, const Rat& whole);

std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace prodiso

template <>
struct std::hash<prodiso::Rat> {
  std::size_t operator()(const prodiso::Rat& r) const noexcept {
    const auto h = std::hash<std::int64_t>{}(r.num());
    return h ^ (std::hash<std::int64_t>{}(r.den()) + 0x9e3779b97f4a7c15ULL +
                (h << 6) + (h >> 2));
  }
};

#endif  // PRODISO_RATIONAL_HPP_
