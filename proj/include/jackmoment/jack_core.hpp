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

#ifndef JACKMOMENT_JACK_CORE_HPP
#define JACKMOMENT_JACK_CORE_HPP

// Hook products, generalized Pochhammer symbols and the principal
// specializations P_kappa(1^N), C_kappa(t,...,t) of Jack polynomials.
//
// Every function is templated on the scalar so that the same code runs in
// floating point and in exact rational arithmetic. For heavy partitions the
// log_* variants accumulate log-magnitudes with a separate sign, using
// row-segment Pochhammer factors so that the cost is O(l(kappa)^2) rather
// than O(|kappa|).

#include <cmath>
#include <limits>

#include "jackmoment/errors.hpp"
#include "jackmoment/partition.hpp"
#include "jackmoment/rational.hpp"

namespace jackmoment {

template <class T>
void require_positive_alpha(const T& alpha) {
  if (!(alpha > 0)) throw InvalidArgument("Jack parameter alpha must be positive");
  if constexpr (!is_rational_v<T>) {
    if (!std::isfinite(static_cast<long double>(alpha)))
      throw InvalidArgument("Jack parameter alpha must be finite");
  }
}

inline void require_fits(const Partition& kappa, int n) {
  if (n < 1) throw InvalidArgument("number of variables must be positive");
  if (kappa.length() > n)
    throw InvalidArgument("partition " + kappa.to_string() + " has more than N=" +
                          std::to_string(n) + " parts");
}

/// d'_kappa = prod over nodes of (alpha (arm + 1) + leg).
template <class T>
T dprime(const Partition& kappa, const T& alpha) {
  require_positive_alpha(alpha);
  T result(1);
  const Partition conj = kappa.conjugate();
  for (int i = 1; i <= kappa.length(); ++i)
    for (int j = 1; j <= kappa.row(i); ++j) {
      const int a = kappa.row(i) - j;
      const int l = conj.row(j) - i;
      result *= alpha * T(a + 1) + T(l);
    }
  return result;
}

/// Generalized Pochhammer symbol [u]_kappa as the node product
/// prod (u - (i-1)/alpha + j - 1). Vanishes when any node factor does.
template <class T>
T gen_pochhammer(const T& u, const Partition& kappa, const T& alpha) {
  require_positive_alpha(alpha);
  T result(1);
  for (int i = 1; i <= kappa.length(); ++i) {
    const T row_shift = u - T(i - 1) / alpha;
    for (int j = 1; j <= kappa.row(i); ++j) result *= row_shift + T(j - 1);
  }
  return result;
}

template <class T>
T gen_pochhammer(const T& u, const Partition& kappa, const T& alpha, int n) {
  require_fits(kappa, n);
  return gen_pochhammer(u, kappa, alpha);
}

/// P_kappa(1,...,1) with N ones, from the node product
///   prod (N - (i-1) + alpha (j-1)) / (alpha arm + leg + 1).
/// Partitions longer than N are rejected.
template <class T>
T p_principal(const Partition& kappa, const T& alpha, int n) {
  require_positive_alpha(alpha);
  require_fits(kappa, n);
  const Partition conj = kappa.conjugate();
  T result(1);
  for (int i = 1; i <= kappa.length(); ++i)
    for (int j = 1; j <= kappa.row(i); ++j) {
      const int a = kappa.row(i) - j;
      const int l = conj.row(j) - i;
      result *= (T(n - i + 1) + alpha * T(j - 1)) / (alpha * T(a) + T(l) + T(1));
    }
  return result;
}

/// C_kappa(t,...,t) = t^|kappa| alpha^|kappa| |kappa|! / d'_kappa P_kappa(1^N).
template <class T>
T c_principal_term(const Partition& kappa, const T& alpha, int n, const T& t) {
  T scale(1);
  for (int m = 1; m <= kappa.weight(); ++m) scale *= alpha * T(m) * t;
  return scale / dprime(kappa, alpha) * p_principal(kappa, alpha, n);
}

/// Signed magnitude kept as (log |x|, sign); sign 0 encodes an exact zero.
struct LogMagnitude {
  long double log_abs = 0.0L;
  int sign = 1;

  static LogMagnitude zero() { return {-std::numeric_limits<long double>::infinity(), 0}; }
  bool is_zero() const { return sign == 0; }

  LogMagnitude& operator*=(const LogMagnitude& o) {
    if (sign == 0 || o.sign == 0) return *this = zero();
    log_abs += o.log_abs;
    sign *= o.sign;
    return *this;
  }
  LogMagnitude& operator/=(const LogMagnitude& o) {
    if (o.sign == 0) throw NumericalError("division by an exact zero");
    if (sign == 0) return *this;
    log_abs -= o.log_abs;
    sign *= o.sign;
    return *this;
  }
  long double value() const { return sign == 0 ? 0.0L : sign * std::exp(log_abs); }

  static LogMagnitude of(long double x) {
    if (x == 0.0L) return zero();
    return {std::log(std::fabs(x)), x < 0 ? -1 : 1};
  }
};

/// (x)_n = x (x+1) ... (x+n-1) in log form. Factors within kLatticeTolerance
/// of zero are treated as exact zeros.
inline LogMagnitude log_pochhammer(long double x, long long n) {
  if (n <= 0) return {};
  auto is_zero_factor = [](long double f, long double ref) {
    return std::fabs(f) <= kLatticeTolerance * std::max<long double>(1, std::fabs(ref));
  };
  if (n <= 24) {
    LogMagnitude r;
    for (long long m = 0; m < n; ++m) {
      const long double f = x + static_cast<long double>(m);
      if (is_zero_factor(f, x)) return LogMagnitude::zero();
      r.log_abs += std::log(std::fabs(f));
      if (f < 0) r.sign = -r.sign;
    }
    return r;
  }
  if (x > 0) return {std::lgamma(x + static_cast<long double>(n)) - std::lgamma(x), 1};
  // Factors x, ..., x + neg - 1 are negative (or zero); the rest positive.
  const long double nearest = std::round(x);
  if (is_zero_factor(x - nearest, x) && -nearest <= static_cast<long double>(n - 1))
    return LogMagnitude::zero();
  const long long neg = std::min<long long>(n, static_cast<long long>(std::ceil(-x)));
  LogMagnitude r;
  if (neg > 0) {
    // prod_{m<neg} (x+m) = (-1)^neg prod_{m<neg} (-x-m) = (-1)^neg (y)_neg, y = -x-neg+1 > 0
    const long double y = -x - static_cast<long double>(neg - 1);
    r.log_abs = std::lgamma(y + static_cast<long double>(neg)) - std::lgamma(y);
    r.sign = (neg % 2 == 0) ? 1 : -1;
  }
  if (n > neg) {
    const long double z = x + static_cast<long double>(neg);
    r.log_abs += std::lgamma(z + static_cast<long double>(n - neg)) - std::lgamma(z);
  }
  return r;
}

/// log [u]_kappa, one Pochhammer factor per row.
inline LogMagnitude log_gen_pochhammer(long double u, const Partition& kappa, long double alpha) {
  require_positive_alpha(alpha);
  LogMagnitude r;
  for (int i = 1; i <= kappa.length(); ++i) {
    r *= log_pochhammer(u - static_cast<long double>(i - 1) / alpha, kappa.row(i));
    if (r.is_zero()) break;
  }
  return r;
}

namespace detail {

// log prod over nodes of (alpha arm + leg + shift), grouped by row i and by
// the run of columns whose leg equals k - i.
inline long double log_hook_product(const Partition& kappa, long double alpha, long double shift) {
  long double total = 0.0L;
  const int len = kappa.length();
  for (int i = 1; i <= len; ++i) {
    for (int k = i; k <= len; ++k) {
      const int cnt = kappa.row(k) - kappa.row(k + 1);
      if (cnt == 0) continue;
      const long double lo = kappa.row(i) - kappa.row(k);
      const long double q = (static_cast<long double>(k - i) + shift) / alpha;
      total += cnt * std::log(alpha) + log_pochhammer(lo + q, cnt).log_abs;
    }
  }
  return total;
}

} // namespace detail

inline LogMagnitude log_dprime(const Partition& kappa, long double alpha) {
  require_positive_alpha(alpha);
  return {detail::log_hook_product(kappa, alpha, alpha), 1};
}

inline LogMagnitude log_p_principal(const Partition& kappa, long double alpha, int n) {
  require_positive_alpha(alpha);
  require_fits(kappa, n);
  long double num = 0.0L;
  for (int i = 1; i <= kappa.length(); ++i)
    num += kappa.row(i) * std::log(alpha) +
           log_pochhammer(static_cast<long double>(n - i + 1) / alpha, kappa.row(i)).log_abs;
  return {num - detail::log_hook_product(kappa, alpha, 1.0L), 1};
}

} // namespace jackmoment

#endif // JACKMOMENT_JACK_CORE_HPP
