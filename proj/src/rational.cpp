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

#include "prodiso/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace prodiso {
namespace {

__int128 wide_gcd(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(__int128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Rat::Rat(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  *this = from_wide(num, den);
}

Rat Rat::from_wide(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const __int128 g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits(num) || !fits(den)) throw std::overflow_error("rational overflow");
  Rat r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

std::string Rat::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rat Rat::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(text));
  const std::int64_t num = parse_int(text.substr(0, slash));
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den <= 0) {
    throw std::invalid_argument("denominator must be positive in '" +
                                std::string(text) + "'");
  }
  if (std::gcd(num, den) != 1) {
    throw std::invalid_argument("fraction not in lowest terms: '" +
                                std::string(text) + "'");
  }
  return Rat(num, den);
}

Rat Rat::operator-() const {
  return from_wide(-static_cast<__int128>(num_), den_);
}

Rat operator+(const Rat& a, const Rat& b) {
  if (a.den_ == b.den_) {
    return Rat::from_wide(static_cast<__int128>(a.num_) + b.num_, a.den_);
  }
  return Rat::from_wide(static_cast<__int128>(a.num_) * b.den_ +
                            static_cast<__int128>(b.num_) * a.den_,
                        static_cast<__int128>(a.den_) * b.den_);
}

Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }

Rat operator*(const Rat& a, const Rat& b) {
  return Rat::from_wide(static_cast<__int128>(a.num_) * b.num_,
                        static_cast<__int128>(a.den_) * b.den_);
}

Rat operator/(const Rat& a, const Rat& b) {
  if (b.num_ == 0) throw std::domain_error("division by zero");
  return Rat::from_wide(static_cast<__int128>(a.num_) * b.den_,
                        static_cast<__int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
  if (a.den_ == b.den_) return a.num_ <=> b.num_;
  const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  return lhs <=> rhs;
}

Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

bool divides(const Rat& part, const Rat& whole) {
  if (part.sign() <= 0) throw std::domain_error("divisor must be positive");
  return (whole / part).is_integer();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace prodiso
