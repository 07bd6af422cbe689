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

#ifndef JACKMOMENT_RMT_MOMENTS_HPP
#define JACKMOMENT_RMT_MOMENTS_HPP

// Characteristic-polynomial moments of beta-ensembles and classical groups as
// equal-argument hypergeometric series, plus an exact beta = 2 Toeplitz
// determinant route for circular ensembles.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "jackmoment/ensemble.hpp"
#include "jackmoment/errors.hpp"
#include "jackmoment/hyperg.hpp"

namespace jackmoment {

namespace detail {

template <class E>
const E& require_kind(const MomentQuery& q, const char* what) {
  validate(q.ensemble);
  const E* e = std::get_if<E>(&q.ensemble);
  if (!e) throw InvalidArgument(std::string(what) + ": wrong ensemble kind");
  return *e;
}

inline SeriesResult scaled(SeriesResult r, double factor) {
  r.value *= factor;
  r.tail_estimate *= std::fabs(factor);
  return r;
}

} // namespace detail

/// <prod |z - e^{i theta_l}|^{2 mu}> over the circular ensemble for |z| < 1.
inline SeriesResult circular_moment(const MomentQuery& q, const SeriesOptions& opts = {}) {
  const auto& e = detail::require_kind<CircularEnsemble>(q, "circular_moment");
  const double r = std::fabs(q.point);
  if (!(r < 1.0)) throw InvalidArgument("circular_moment needs |z| < 1; reflect first");
  Hyp2F1Params<double> p{-q.mu, -q.mu, 0.5 * e.beta * (e.n - 1) + 1.0, 2.0 / e.beta, e.n, r * r};
  return hyp2f1_equal(p, opts);
}

struct Reflection {
  double prefactor = 1.0;
  MomentQuery reflected;
};

/// Average at |z| > 1 equals |z|^{2 mu N} times the average at 1/|z|.
inline Reflection circular_reflect(const MomentQuery& q) {
  const auto& e = detail::require_kind<CircularEnsemble>(q, "circular_reflect");
  const double r = std::fabs(q.point);
  if (!(r > 1.0)) throw InvalidArgument("circular_reflect needs |z| > 1");
  Reflection out;
  out.prefactor = q.mu == 0.0 ? 1.0 : std::pow(r, 2.0 * q.mu * e.n);
  out.reflected = q;
  out.reflected.point = 1.0 / r;
  return out;
}

/// Exact beta = 2 circular moment as the N x N Toeplitz determinant of the
/// Fourier coefficients of |1 - r e^{i theta}|^{2 mu} (Heine's identity).
/// Coefficients and determinant are formed in extended precision.
inline SeriesResult circular_moment_toeplitz(const MomentQuery& q, const SeriesOptions& opts = {}) {
  const auto& e = detail::require_kind<CircularEnsemble>(q, "circular_moment_toeplitz");
  if (e.beta != 2.0) throw InvalidArgument("Toeplitz route requires beta = 2");
  const long double r = std::fabs(q.point);
  if (!(r < 1.0L)) throw InvalidArgument("circular_moment_toeplitz needs |z| < 1; reflect first");
  const int n = e.n;
  SeriesResult res;
  if (q.mu == 0.0 || r == 0.0L) {
    res.value = 1.0;
    res.converged = true;
    return res;
  }
  // |1 - r e^{i theta}|^{2 mu} = |sum_m g_m e^{i m theta}|^2, g_m = (-mu)_m r^m / m!.
  const long double a = -q.mu;
  std::vector<long double> g{1.0L};
  bool finite = false;
  long double gmax = 1.0L;
  const long long cap = std::max<long long>(1000, opts.max_terms);
  while (true) {
    const long double m = static_cast<long double>(g.size() - 1);
    const long double ratio = (a + m) / (m + 1) * r;
    const long double next = g.back() * ratio;
    if (next == 0.0L) {  // a is a non-negative integer: finite expansion
      finite = true;
      break;
    }
    g.push_back(next);
    gmax = std::max(gmax, std::fabs(next));
    if (std::fabs(ratio) < 1.0L && std::fabs(next) < 1e-24L * gmax) break;
    if (static_cast<long long>(g.size()) > cap) {
      res.value = std::numeric_limits<double>::quiet_NaN();
      res.trunc_weight = static_cast<int>(g.size());
      throw SeriesNonConvergence("Toeplitz symbol expansion exceeded the term budget", res);
    }
  }
  const std::size_t len = g.size();
  std::vector<long double> c(static_cast<std::size_t>(n), 0.0L);
  for (int k = 0; k < n; ++k)
    for (std::size_t m = 0; m + static_cast<std::size_t>(k) < len; ++m) c[k] += g[m + k] * g[m];
  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> t(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(i, j) = c[static_cast<std::size_t>(std::abs(i - j))];
  const long double det = Eigen::PartialPivLU<decltype(t)>(t).determinant();
  // Neglected coefficient mass relative to c_0, amplified by the matrix size.
  const long double last = std::fabs(g.back());
  const long double rel_tail = finite ? 0.0L : n * last / (1.0L - r) * gmax / c[0];
  res.value = static_cast<double>(det);
  res.trunc_weight = static_cast<int>(len - 1);
  res.tail_estimate = static_cast<double>(std::fabs(det) * rel_tail);
  res.terms_summed = static_cast<long long>(len) * n;
  res.converged = std::isfinite(res.value) && rel_tail <= opts.rel_tol;
  if (!res.converged) throw SeriesNonConvergence("Toeplitz determinant not converged", res);
  return res;
}

enum class CircularMethod { Series, Toeplitz };

/// Circular moment for any |z| != 1, reflecting when |z| > 1.
inline SeriesResult circular_moment_any(const MomentQuery& q, const SeriesOptions& opts = {},
                                        CircularMethod method = CircularMethod::Series) {
  const double r = std::fabs(q.point);
  if (std::fabs(r - 1.0) == 0.0) throw InvalidArgument("|z| = 1 lies on the support");
  auto eval = [&](const MomentQuery& qq) {
    return method == CircularMethod::Series ? circular_moment(qq, opts) : circular_moment_toeplitz(qq, opts);
  };
  if (r < 1.0) return eval(q);
  const auto refl = circular_reflect(q);
  return detail::scaled(eval(refl.reflected), refl.prefactor);
}

/// <prod |x - x_l|^{2 mu}> over the Jacobi ensemble for x > 1. The second
/// numerator parameter is (beta/2)(N-1) + a + 1; at N = 1 this is the
/// classical Euler integral for 2F1.
inline SeriesResult jacobi_moment(const MomentQuery& q, const SeriesOptions& opts = {}) {
  const auto& e = detail::require_kind<JacobiEnsemble>(q, "jacobi_moment");
  const double x = q.point;
  if (!(x > 1.0)) throw InvalidArgument("jacobi_moment needs x > 1");
  const double h = 0.5 * e.beta;
  Hyp2F1Params<double> p{-2.0 * q.mu, h * (e.n - 1) + e.a + 1.0, e.beta * (e.n - 1) + e.a + e.b + 2.0,
                         2.0 / e.beta, e.n, 1.0 / x};
  const double pref = q.mu == 0.0 ? 1.0 : std::pow(x, 2.0 * q.mu * e.n);
  return detail::scaled(hyp2f1_equal(p, opts), pref);
}

/// Jacobi point and deterministic prefactor of a group moment at z = 1 + eps.
struct GroupReduction {
  JacobiEnsemble ensemble;
  double x_tilde = 0.0;
  double prefactor = 1.0;
};

inline GroupReduction group_reduction(GroupFamily family, int n, double mu, double eps) {
  validate(ClassicalGroup{family, n});
  if (!(eps > 0)) throw InvalidArgument("epsilon must be positive");
  const auto form = group_jacobi_form(family, n);
  const double z = 1.0 + eps;
  const double xc = (z * z + 1) / (2 * z);
  GroupReduction out;
  out.ensemble = JacobiEnsemble{form.a, form.b, 2.0, form.dim};
  out.x_tilde = 0.5 * (1.0 + xc);
  // z^2 - 2 z cos theta + 1 = 4 z (x_tilde - (1 + cos theta)/2)
  double pref = std::pow(4.0 * z, 2.0 * mu * form.dim);
  if (family == GroupFamily::OMinusEven) pref *= std::pow(std::fabs(z * z - 1), 2.0 * mu);
  out.prefactor = mu == 0.0 ? 1.0 : pref;
  return out;
}

/// <|det((1 + eps) I - U)|^{2 mu}> over Sp(N), O+(2N) or O-(2N).
inline SeriesResult group_moment(GroupFamily family, int n, double mu, double eps,
                                 const SeriesOptions& opts = {}) {
  const auto red = group_reduction(family, n, mu, eps);
  return detail::scaled(jacobi_moment(MomentQuery{red.ensemble, mu, red.x_tilde}, opts), red.prefactor);
}

/// Dispatch on the ensemble kind.
inline SeriesResult moment(const MomentQuery& q, const SeriesOptions& opts = {},
                           CircularMethod method = CircularMethod::Series) {
  validate(q.ensemble);
  if (std::holds_alternative<CircularEnsemble>(q.ensemble)) return circular_moment_any(q, opts, method);
  if (std::holds_alternative<JacobiEnsemble>(q.ensemble)) return jacobi_moment(q, opts);
  const auto& g = std::get<ClassicalGroup>(q.ensemble);
  return group_moment(g.family, g.n, q.mu, q.point, opts);
}

} // namespace jackmoment

#endif // JACKMOMENT_RMT_MOMENTS_HPP
