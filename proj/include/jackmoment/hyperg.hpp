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

#ifndef JACKMOMENT_HYPERG_HPP
#define JACKMOMENT_HYPERG_HPP

// Generalized hypergeometric series 2F1^{(alpha)} and 1F0^{(alpha)} at
// equal arguments t = x_1 = ... = x_N, summed weight layer by weight layer.
//
// Terms within a layer are added in reverse-lexicographic partition order and
// layers are added in increasing weight, so results are bit-reproducible.
// A numerator parameter p with a vanishing node factor at (i, j) kills every
// partition containing that node; such rows are capped during enumeration,
// which turns e.g. a = 1, alpha = 1 into a single-row sum.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "jackmoment/errors.hpp"
#include "jackmoment/jack_core.hpp"
#include "jackmoment/partition.hpp"
#include "jackmoment/rational.hpp"

namespace jackmoment {

struct SeriesResult {
  double value = 0.0;
  int trunc_weight = 0;         ///< largest |kappa| summed
  double tail_estimate = 0.0;   ///< geometric-model bound on the omitted tail
  bool converged = false;
  long long terms_summed = 0;
};

struct SeriesOptions {
  double rel_tol = 1e-12;
  int stop_layers = 3;          ///< consecutive negligible layers required to stop
  int guard_after_weight = 50;  ///< divergence guard is armed past this weight
  int guard_growth_run = 10;    ///< consecutive growing layers that trip the guard
  int max_weight = 200000;
  long long max_terms = 20'000'000;
};

/// Series stopped without meeting its tolerance; carries the partial sum.
class SeriesNonConvergence : public NumericalError {
public:
  SeriesNonConvergence(const std::string& what, SeriesResult partial)
      : NumericalError(what), partial_(partial) {}
  const SeriesResult& partial() const noexcept { return partial_; }

private:
  SeriesResult partial_;
};

/// A denominator parameter hits a lattice pole: node (row, col) of [c]_kappa
/// vanishes for a contributing partition.
class LatticePole : public InvalidArgument {
public:
  LatticePole(int row, int col)
      : InvalidArgument("denominator parameter vanishes at node (" + std::to_string(row) + "," +
                        std::to_string(col) + ")"),
        row_(row), col_(col) {}
  int row() const noexcept { return row_; }
  int col() const noexcept { return col_; }

private:
  int row_, col_;
};

template <class T>
struct Hyp2F1Params {
  T a, b, c;
  T alpha;
  int n = 1;
  T t;
};

template <class T>
struct TermValue {
  T value;
  Partition kappa;
};

namespace detail {

inline bool near_zero(long double f, long double ref) {
  return std::fabs(f) <= kLatticeTolerance * std::max<long double>(1, std::fabs(ref));
}

// Column of the first vanishing node in row i of [p]_kappa, or 0 if none.
inline int zero_column(long double p, long double alpha, int i) {
  const long double x = p - static_cast<long double>(i - 1) / alpha;
  const long double j = 1.0L - x;
  const long double r = std::round(j);
  if (r >= 1 && near_zero(j - r, j)) return static_cast<int>(r);
  return 0;
}

/// Term evaluator for sum_kappa prod[num]_kappa / prod[den]_kappa
///   * C_kappa(t 1^N) / |kappa|!.
class EqualArgumentSeries {
public:
  EqualArgumentSeries(std::vector<long double> numerators, std::vector<long double> denominators,
                      long double alpha, int n, long double t)
      : num_(std::move(numerators)), den_(std::move(denominators)), alpha_(alpha), n_(n), t_(t) {
    require_positive_alpha(alpha_);
    if (n_ < 1) throw InvalidArgument("number of variables must be positive");
    row_caps_.assign(static_cast<std::size_t>(n_), std::numeric_limits<int>::max());
    for (long double p : num_)
      for (int i = 1; i <= n_; ++i)
        if (int j = zero_column(p, alpha_, i); j > 0)
          row_caps_[static_cast<std::size_t>(i - 1)] =
              std::min(row_caps_[static_cast<std::size_t>(i - 1)], j - 1);
  }

  const std::vector<int>& row_caps() const noexcept { return row_caps_; }
  int n() const noexcept { return n_; }

  /// Throws LatticePole when a denominator node of kappa vanishes.
  void check_poles(const Partition& kappa) const {
    for (long double p : den_)
      for (int i = 1; i <= kappa.length(); ++i)
        if (int j = zero_column(p, alpha_, i); j > 0 && j <= kappa.row(i)) throw LatticePole(i, j);
  }

  long double term(const Partition& kappa) const {
    check_poles(kappa);
    if (kappa.empty()) return 1.0L;
    if (t_ == 0.0L) return 0.0L;
    return kappa.weight() <= kDirectWeight ? direct(kappa) : logarithmic(kappa).value();
  }

  static constexpr int kDirectWeight = 40;

private:
  long double direct(const Partition& kappa) const {
    const Partition conj = kappa.conjugate();
    long double v = 1.0L;
    for (int i = 1; i <= kappa.length(); ++i) {
      const long double shift = static_cast<long double>(i - 1) / alpha_;
      for (int j = 1; j <= kappa.row(i); ++j) {
        const long double cell = static_cast<long double>(j - 1) - shift;
        for (long double p : num_) v *= p + cell;
        for (long double p : den_) v /= p + cell;
        const int a = kappa.row(i) - j;
        const int l = conj.row(j) - i;
        v *= static_cast<long double>(n_ - i + 1) + alpha_ * (j - 1);
        v /= (alpha_ * a + l + 1) * (alpha_ * (a + 1) + l);
        v *= alpha_ * t_;
      }
    }
    return v;
  }

  LogMagnitude logarithmic(const Partition& kappa) const {
    LogMagnitude v;
    for (long double p : num_) v *= log_gen_pochhammer(p, kappa, alpha_);
    if (v.is_zero()) return v;
    for (long double p : den_) v /= log_gen_pochhammer(p, kappa, alpha_);
    v *= log_p_principal(kappa, alpha_, n_);
    v /= log_dprime(kappa, alpha_);
    const int w = kappa.weight();
    v *= LogMagnitude{w * std::log(alpha_ * std::fabs(t_)), (t_ < 0 && w % 2) ? -1 : 1};
    return v;
  }

  std::vector<long double> num_, den_;
  long double alpha_;
  int n_;
  long double t_;
  std::vector<int> row_caps_;
};

inline SeriesResult sum_layers(const EqualArgumentSeries& series, const SeriesOptions& opts) {
  if (!(opts.rel_tol > 0)) throw InvalidArgument("rel_tol must be positive");
  const int max_w = max_capped_weight(series.n(), series.row_caps());
  SeriesResult res;
  long double partial = 0.0L;
  long double prev_abs = 0.0L;
  int small_run = 0;
  int growth_run = 0;
  for (int w = 0;; ++w) {
    if (w > max_w) {
      // Every later layer is empty: the series is a polynomial.
      res.converged = true;
      res.tail_estimate = 0.0;
      break;
    }
    if (w > opts.max_weight || res.terms_summed > opts.max_terms) {
      res.value = static_cast<double>(partial);
      throw SeriesNonConvergence("series budget exhausted at weight " + std::to_string(w - 1), res);
    }
    long double layer = 0.0L;
    for_each_partition(w, series.n(), series.row_caps(), [&](const Partition& kappa) {
      layer += series.term(kappa);
      ++res.terms_summed;
    });
    partial += layer;
    res.trunc_weight = w;
    res.value = static_cast<double>(partial);
    const long double layer_abs = std::fabs(layer);
    if (w == 0) {
      prev_abs = layer_abs;
      continue;
    }
    const long double ratio =
        prev_abs > 0 ? std::clamp(layer_abs / prev_abs, 0.0L, 0.99L) : (layer_abs > 0 ? 0.99L : 0.0L);
    res.tail_estimate = static_cast<double>(layer_abs * ratio / (1.0L - ratio));
    if (w > opts.guard_after_weight && layer_abs > prev_abs) {
      if (++growth_run >= opts.guard_growth_run) {
        res.converged = false;
        throw SeriesNonConvergence("layer magnitudes grew for " + std::to_string(growth_run) +
                                       " consecutive weights past weight " +
                                       std::to_string(opts.guard_after_weight),
                                   res);
      }
    } else {
      growth_run = 0;
    }
    prev_abs = layer_abs;
    const long double scale = std::fabs(partial);
    small_run = layer_abs < opts.rel_tol * scale ? small_run + 1 : 0;
    if (small_run >= opts.stop_layers && res.tail_estimate <= opts.rel_tol * scale) {
      res.converged = true;
      break;
    }
  }
  return res;
}

inline void require_unit_disc(long double t) {
  if (!(std::fabs(t) < 1.0L)) throw InvalidArgument("series argument must satisfy |t| < 1");
}

} // namespace detail

/// One summand [a][b]/([c] |kappa|!) C_kappa(t 1^N). Exact for Rational.
template <class T>
TermValue<T> series_term(const Partition& kappa, const Hyp2F1Params<T>& p) {
  require_fits(kappa, p.n);
  if constexpr (is_rational_v<T>) {
    const Partition conj = kappa.conjugate();
    for (int i = 1; i <= kappa.length(); ++i)
      for (int j = 1; j <= kappa.row(i); ++j)
        if (p.c - T(i - 1) / p.alpha + T(j - 1) == 0) throw LatticePole(i, j);
    T factorial(1);
    for (int m = 2; m <= kappa.weight(); ++m) factorial *= m;
    const T value = gen_pochhammer(p.a, kappa, p.alpha) * gen_pochhammer(p.b, kappa, p.alpha) /
                    gen_pochhammer(p.c, kappa, p.alpha) / factorial *
                    c_principal_term(kappa, p.alpha, p.n, p.t);
    return {value, kappa};
  } else {
    const detail::EqualArgumentSeries s({static_cast<long double>(p.a), static_cast<long double>(p.b)},
                                        {static_cast<long double>(p.c)},
                                        static_cast<long double>(p.alpha), p.n,
                                        static_cast<long double>(p.t));
    return {static_cast<T>(s.term(kappa)), kappa};
  }
}

/// 2F1^{(alpha)}(a, b; c; t, ..., t) with N equal arguments, |t| < 1.
inline SeriesResult hyp2f1_equal(const Hyp2F1Params<double>& p, const SeriesOptions& opts = {}) {
  detail::require_unit_disc(p.t);
  if (p.t == 0.0) return {1.0, 0, 0.0, true, 1};
  const detail::EqualArgumentSeries s({p.a, p.b}, {p.c}, p.alpha, p.n, p.t);
  return detail::sum_layers(s, opts);
}

/// 1F0^{(alpha)}(a; t, ..., t) = (1 - t)^{-a N}.
inline SeriesResult hyp1f0_equal(double a, double alpha, int n, double t, const SeriesOptions& opts = {}) {
  detail::require_unit_disc(t);
  if (t == 0.0) return {1.0, 0, 0.0, true, 1};
  const detail::EqualArgumentSeries s({a}, {}, alpha, n, t);
  return detail::sum_layers(s, opts);
}

} // namespace jackmoment

#endif // JACKMOMENT_HYPERG_HPP
