// Copyright 2026 The jackmoment Authors
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

#ifndef JACKMOMENT_RATIONAL_HPP
#define JACKMOMENT_RATIONAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>

#include "jackmoment/errors.hpp"

namespace jackmoment {

/// Exact rational with arbitrary-precision numerator and denominator, always
/// in lowest terms with a positive denominator.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

template <class T>
inline constexpr bool is_rational_v = std::is_same_v<std::remove_cvref_t<T>, Rational>;

/// Tolerance used for lattice decisions on floating-point inputs.
inline constexpr double kLatticeTolerance = 1e-12;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline long double to_long_double(const Rational& r) { return r.convert_to<long double>(); }

inline std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace detail {

/// BigInt's string constructor reads a leading 0 as an octal prefix.
inline std::string strip_leading_zeros(std::string_view digits) {
  const auto first = digits.find_first_not_of('0');
  return first == std::string_view::npos ? std::string("0") : std::string(digits.substr(first));
}

} // namespace detail

/// Parses "p", "p/q" or a plain decimal ("-0.75", "1e-3") into an exact
/// rational.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { return InvalidArgument("cannot parse rational '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();
  auto parse_int = [&](std::string_view s) -> BigInt {
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (digits.empty()) throw fail();
    for (char c : digits)
      if (c < '0' || c > '9') throw fail();
    BigInt v{detail::strip_leading_zeros(digits)};
    return s.front() == '-' ? BigInt(-v) : v;
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const BigInt p = parse_int(text.substr(0, slash));
    const BigInt q = parse_int(text.substr(slash + 1));
    if (q == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    return Rational(p, q);
  }
  std::string_view mant = text;
  long exp10 = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mant = text.substr(0, e);
    try {
      exp10 = std::stol(std::string(text.substr(e + 1)));
    } catch (...) {
      throw fail();
    }
  }
  std::string digits;
  bool negative = false;
  std::size_t start = 0;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    negative = mant[0] == '-';
    start = 1;
  }
  bool seen_point = false;
  for (std::size_t i = start; i < mant.size(); ++i) {
    const char c = mant[i];
    if (c == '.') {
      if (seen_point) throw fail();
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits += c;
      if (seen_point) --exp10;
    } else {
      throw fail();
    }
  }
  if (digits.empty()) throw fail();
  Rational value{BigInt(detail::strip_leading_zeros(digits))};
  BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::labs(exp10)));
  value = exp10 >= 0 ? value * Rational(scale) : value / Rational(scale);
  return negative ? Rational(-value) : value;
}

/// Integer test: exact for rationals, within kLatticeTolerance otherwise.
template <class T>
bool is_integral_value(const T& x) {
  if constexpr (is_rational_v<T>) {
    return boost::multiprecision::denominator(x) == 1;
  } else {
    const auto v = static_cast<long double>(x);
    return std::fabs(v - std::round(v)) <= kLatticeTolerance * std::max<long double>(1, std::fabs(v));
  }
}

/// Nearest integer (floor for exact non-integers is not needed by callers).
template <class T>
long long nearest_integer(const T& x) {
  if constexpr (is_rational_v<T>) {
    return std::llround(to_double(x));
  } else {
    return std::llround(static_cast<long double>(x));
  }
}

/// Integer part (floor) of a non-negative value.
template <class T>
long long floor_value(const T& x) {
  if constexpr (is_rational_v<T>) {
    const BigInt num = boost::multiprecision::numerator(x);
    const BigInt den = boost::multiprecision::denominator(x);
    BigInt q = num / den;
    if (num < 0 && q * den != num) q -= 1;
    return q.convert_to<long long>();
  } else {
    return static_cast<long long>(std::floor(static_cast<long double>(x)));
  }
}

template <class T>
double as_double(const T& x) {
  if constexpr (is_rational_v<T>) return to_double(x);
  else return static_cast<double>(x);
}

} // namespace jackmoment

#endif // JACKMOMENT_RATIONAL_HPP
