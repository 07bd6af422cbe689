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

#ifndef JACKMOMENT_ASYMPTOTICS_HPP
#define JACKMOMENT_ASYMPTOTICS_HPP

// Divergence regimes of equal-argument 2F1 as t -> 1, the induced exponents
// for circular, Jacobi and classical-group moments, the macroscopic (Szego
// type) limit, and numerical exponent fits over epsilon sweeps.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/QR>

#include "jackmoment/ensemble.hpp"
#include "jackmoment/errors.hpp"
#include "jackmoment/hyperg.hpp"
#include "jackmoment/rational.hpp"
#include "jackmoment/rmt_moments.hpp"

namespace jackmoment {

enum class Regime { Bounded, Power, Log };

inline std::string to_string(Regime r) {
  switch (r) {
  case Regime::Bounded: return "bounded";
  case Regime::Power: return "power";
  case Regime::Log: return "log";
  }
  return "?";
}

/// Behaviour (1 - t)^{-delta} [log 1/(1 - t)]^{log_flag}. prop_case numbers
/// the four cases: 1 above the lattice, 2 below it (bounded), 3 on a lattice
/// point, 4 strictly between lattice points.
template <class T = double>
struct AsymptoticForm {
  Regime regime = Regime::Bounded;
  int prop_case = 2;
  T delta = T(0);
  bool log_flag = false;
  int j = 0;
  T gamma = T(0);
};

namespace detail {

template <class T>
T abs_value(const T& x) {
  return x < 0 ? T(-x) : x;
}

} // namespace detail

/// Regime of 2F1^(alpha)(a, b; c; t 1^N) as t -> 1^-, gamma = a + b - c,
/// beta = 2/alpha. Lattice points gamma = beta(-(N-1)/2 + j - 1), j = 1..N,
/// are detected exactly for rationals and within kLatticeTolerance otherwise.
template <class T>
AsymptoticForm<T> classify_2f1(const T& a, const T& b, const T& c, const T& alpha, int n) {
  require_positive_alpha(alpha);
  if (n < 1) throw InvalidArgument("N must be at least 1");
  const T beta = T(2) / alpha;
  AsymptoticForm<T> f;
  f.gamma = a + b - c;
  // Lattice coordinate: s = j exactly on the j-th lattice point.
  const T s = f.gamma / beta + T(n - 1) / T(2) + T(1);
  const bool lattice = is_integral_value(s);
  const long long sj = lattice ? nearest_integer(s) : floor_value(s);
  if (lattice && sj >= 1 && sj <= n) {
    f.regime = Regime::Log;
    f.prop_case = 3;
    f.j = static_cast<int>(sj);
    f.delta = T((f.j - 1) * f.j) * beta / T(2);
    f.log_flag = true;
  } else if (sj < 1) {
    f.regime = Regime::Bounded;
    f.prop_case = 2;
  } else if (sj >= n) {
    f.regime = Regime::Power;
    f.prop_case = 1;
    f.j = n;
    f.delta = T(n) * f.gamma;
  } else {
    f.regime = Regime::Power;
    f.prop_case = 4;
    f.j = static_cast<int>(sj);
    f.delta = T(f.j) * (f.gamma + T(n - f.j) * beta / T(2));
  }
  return f;
}

namespace detail {

// Shared shape of the circular and Jacobi corollaries: threshold k0 (2|mu| at
// the first lattice point), spacing beta, exponent j(k - k0 - (j-1) beta/2).
template <class T>
AsymptoticForm<T> corollary_form(const T& k, const T& k0, const T& beta, int n, const T& gamma) {
  AsymptoticForm<T> f;
  f.gamma = gamma;
  if (k < k0) return f;
  if (k > beta * T(n) + k0)
    throw RangeError("2|mu| = " + std::to_string(as_double(k)) + " lies beyond the last exponent window");
  const T s = (k - k0) / beta;
  if (is_integral_value(s) && nearest_integer(s) <= n - 1) {
    f.regime = Regime::Log;
    f.prop_case = 3;
    f.j = static_cast<int>(nearest_integer(s)) + 1;
    f.delta = T((f.j - 1) * f.j) * beta / T(2);
    f.log_flag = true;
    return f;
  }
  f.regime = Regime::Power;
  f.j = static_cast<int>(std::min<long long>(floor_value(s) + 1, n));
  f.prop_case = f.j == n ? 1 : 4;
  f.delta = T(f.j) * (k - k0 - T(f.j - 1) * beta / T(2));
  return f;
}

template <class T>
void require_negative_mu(const T& mu) {
  if (!(mu < 0)) throw InvalidArgument("exponent formulas need mu < 0");
}

} // namespace detail

/// Exponent of the circular moment in (1 - |z|) as |z| -> 1^-.
template <class T>
AsymptoticForm<T> circular_exponent(const T& mu, const T& beta, int n) {
  detail::require_negative_mu(mu);
  if (!(beta > 0)) throw InvalidArgument("beta must be positive");
  if (n < 1) throw InvalidArgument("N must be at least 1");
  const T k = T(-2) * mu;
  const T gamma = k - T(1) - T(n - 1) * beta / T(2);
  return detail::corollary_form(k, T(1), beta, n, gamma);
}

/// Exponent formula with integer part: j = int[(k-1)/beta + 1],
/// delta = j (k - 1 + beta/2 - (beta/2) j).
template <class T>
T bk_delta(const T& k, const T& beta) {
  if (k < 1) throw InvalidArgument("bk_delta needs k >= 1");
  if (!(beta > 0)) throw InvalidArgument("beta must be positive");
  const T j = T(floor_value((k - T(1)) / beta + T(1)));
  return j * (k - T(1) + beta / T(2) - beta / T(2) * j);
}

/// Exponent of x^{-2 mu N} <prod |x - x_l|^{2 mu}> in (1 - 1/x) as x -> 1^+.
/// Thresholds sit at 2|mu| = beta(j-1) + b + 1 (independent of a).
template <class T>
AsymptoticForm<T> jacobi_exponent(const T& mu, const T& b, const T& beta, int n) {
  detail::require_negative_mu(mu);
  if (!(beta > 0)) throw InvalidArgument("beta must be positive");
  if (!(b > -1)) throw InvalidArgument("Jacobi weight needs b > -1");
  if (n < 1) throw InvalidArgument("N must be at least 1");
  const T k = T(-2) * mu;
  const T gamma = k - T(n - 1) * beta / T(2) - b - T(1);
  return detail::corollary_form(k, b + T(1), beta, n, gamma);
}

/// Exponent of the group moment in epsilon, z = 1 + epsilon. Since
/// 1 - 1/x_tilde ~ epsilon^2 / 4, delta is twice the Jacobi value; for O-(2N)
/// the fixed eigenvalue factor |z^2 - 1|^{2 mu} adds 2|mu|.
template <class T>
AsymptoticForm<T> group_exponent(GroupFamily family, int n, const T& mu) {
  detail::require_negative_mu(mu);
  validate(ClassicalGroup{family, n});
  const auto form = group_jacobi_form(family, n);
  AsymptoticForm<T> f = jacobi_exponent(mu, T(form.b), T(2), form.dim);
  f.delta = T(2) * f.delta;
  if (family == GroupFamily::OMinusEven) {
    f.delta = f.delta - T(2) * mu;
    if (f.regime == Regime::Bounded) {
      f.regime = Regime::Power;
      f.prop_case = 2;
    }
  }
  return f;
}

/// Fourier coefficient rule p -> a_p of a log-symbol.
using CoefficientRule = std::function<std::complex<double>(int)>;

namespace detail {

inline double real_limit(std::complex<double> exponent) {
  const auto v = std::exp(exponent);
  if (std::fabs(v.imag()) > 1e-12 * std::abs(v)) throw InvalidArgument("Szego limit is not real for this symbol");
  return v.real();
}

inline void require_limit_args(double beta, int n) {
  if (!(beta > 0)) throw InvalidArgument("beta must be positive");
  if (n < 1) throw InvalidArgument("N must be at least 1");
}

} // namespace detail

/// exp(N a_0 + (2/beta) sum_{p >= 1} p a_p a_{-p}) from finitely many
/// coefficients; absent coefficients are zero.
inline double szego_limit(const std::map<int, std::complex<double>>& coeffs, double beta, int n) {
  detail::require_limit_args(beta, n);
  std::complex<double> expo = 0.0;
  for (const auto& [p, ap] : coeffs) {
    if (p == 0) expo += static_cast<double>(n) * ap;
    else if (p > 0) {
      const auto it = coeffs.find(-p);
      if (it != coeffs.end()) expo += (2.0 / beta) * static_cast<double>(p) * ap * it->second;
    }
  }
  return detail::real_limit(expo);
}

/// Same limit for a coefficient rule, summing p = 1, 2, ... until eight
/// consecutive terms are below rel_tol times the running sum of |p a_p a_{-p}|.
inline double szego_limit(const CoefficientRule& rule, double beta, int n, double rel_tol = 1e-15,
                          int max_terms = 10'000'000) {
  detail::require_limit_args(beta, n);
  std::complex<double> sum = 0.0;
  double scale = 0.0;
  int quiet = 0;
  for (int p = 1; p <= max_terms; ++p) {
    const auto term = static_cast<double>(p) * rule(p) * rule(-p);
    sum += term;
    scale += std::abs(term);
    quiet = std::abs(term) <= rel_tol * scale ? quiet + 1 : 0;
    if (quiet >= 8) return detail::real_limit(static_cast<double>(n) * rule(0) + (2.0 / beta) * sum);
  }
  throw InvalidArgument("coefficient rule: sum p a_p a_-p does not converge");
}

/// Coefficients of log |1 - r e^{i theta}|^{2 mu}: a_p = -mu r^|p| / |p|, a_0 = 0.
inline CoefficientRule log_modulus_coefficients(double mu, double r) {
  if (!(std::fabs(r) < 1.0)) throw InvalidArgument("log_modulus_coefficients needs |z| < 1");
  return [mu, r](int p) -> std::complex<double> {
    if (p == 0) return 0.0;
    const int q = std::abs(p);
    return -mu * std::pow(std::fabs(r), q) / q;
  };
}

/// Closed form of the limit for log-modulus coefficients: (1 - r^2)^{-2 mu^2 / beta}.
inline double szego_limit_log_modulus(double mu, double r, double beta) {
  return std::exp(-(2.0 * mu * mu / beta) * std::log1p(-r * r));
}

// ---------------------------------------------------------------------------
// Exponent fits

enum class MomentMethod { Series, Toeplitz };

struct FitPoint {
  double epsilon = 0.0;
  double value = 0.0;  ///< normalized moment entering the fit
  bool converged = false;
  int trunc_weight = 0;
  double tail_estimate = 0.0;
  std::string note;
};

struct FitReport {
  double fitted_delta = 0.0;
  double fitted_log_coeff = 0.0;  ///< coefficient of log log(1/eps); 0 for the power model
  AsymptoticForm<double> predicted;
  std::vector<double> epsilons;   ///< converged points, strictly decreasing
  double residual_rms = 0.0;
  bool all_converged = true;
  std::vector<FitPoint> points;   ///< every requested point, in grid order
};

/// Series settings for sweeps toward the support. Layer sums legitimately
/// grow for a long stretch when t is close to 1, so the growth guard is
/// disarmed; the weight and term budgets still bound the work.
inline SeriesOptions sweep_series_options() {
  SeriesOptions o;
  o.guard_growth_run = std::numeric_limits<int>::max();
  o.max_weight = 100'000'000;
  return o;
}

struct FitOptions {
  SeriesOptions series = sweep_series_options();
  MomentMethod method = MomentMethod::Series;
  int threads = 1;
};

class InsufficientData : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Moment at distance eps from the support: |z| = 1 - eps (circular),
/// x = 1/(1 - eps) with the x^{2 mu N} factor divided out (Jacobi), or
/// z = 1 + eps (groups).
inline FitPoint evaluate_fit_point(const MomentQuery& family, double eps, const FitOptions& opts) {
  FitPoint pt;
  pt.epsilon = eps;
  MomentQuery q = family;
  try {
    SeriesResult r;
    if (const auto* c = std::get_if<CircularEnsemble>(&q.ensemble)) {
      q.point = 1.0 - eps;
      if (opts.method == MomentMethod::Toeplitz) {
        if (c->beta != 2.0) throw InvalidArgument("Toeplitz method requires beta = 2");
        r = circular_moment_toeplitz(q, opts.series);
      } else {
        r = circular_moment(q, opts.series);
      }
    } else if (const auto* j = std::get_if<JacobiEnsemble>(&q.ensemble)) {
      if (opts.method == MomentMethod::Toeplitz) throw InvalidArgument("Toeplitz method is circular only");
      q.point = 1.0 / (1.0 - eps);
      r = jacobi_moment(q, opts.series);
      const double norm = std::pow(q.point, -2.0 * q.mu * j->n);
      r.value *= norm;
      r.tail_estimate *= norm;
    } else {
      if (opts.method == MomentMethod::Toeplitz) throw InvalidArgument("Toeplitz method is circular only");
      const auto& g = std::get<ClassicalGroup>(q.ensemble);
      r = group_moment(g.family, g.n, q.mu, eps, opts.series);
    }
    pt.value = r.value;
    pt.trunc_weight = r.trunc_weight;
    pt.tail_estimate = r.tail_estimate;
    pt.converged = r.converged && std::isfinite(r.value) && r.value > 0;
    if (!pt.converged) pt.note = "non-positive or non-finite value";
  } catch (const SeriesNonConvergence& e) {
    pt.value = e.partial().value;
    pt.trunc_weight = e.partial().trunc_weight;
    pt.tail_estimate = e.partial().tail_estimate;
    pt.note = e.what();
  }
  return pt;
}

/// Evaluates the moment on eps_grid (concurrently, assembled in grid order)
/// and least-squares fits log M = -delta log eps + c, adding a
/// log log(1/eps) regressor when predicted.log_flag is set.
inline FitReport fit_divergence(const MomentQuery& family, const std::vector<double>& eps_grid,
                                const AsymptoticForm<double>& predicted, const FitOptions& opts = {}) {
  validate(family.ensemble);
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] > 0 && eps_grid[i] <= 0.2)) throw InvalidArgument("epsilon values must lie in (0, 0.2]");
    if (i > 0 && !(eps_grid[i] < eps_grid[i - 1])) throw InvalidArgument("epsilon grid must be strictly decreasing");
  }
  FitReport rep;
  rep.predicted = predicted;
  rep.points.resize(eps_grid.size());
  const int workers = std::max(1, std::min<int>(opts.threads, static_cast<int>(eps_grid.size())));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(eps_grid.size());
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < eps_grid.size();) {
      try {
        rep.points[i] = evaluate_fit_point(family, eps_grid[i], opts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<const FitPoint*> used;
  for (const auto& p : rep.points) {
    if (p.converged) used.push_back(&p);
    else rep.all_converged = false;
  }
  const bool log_model = predicted.log_flag;
  const int cols = log_model ? 3 : 2;
  if (static_cast<int>(used.size()) < std::max(4, cols + 1))
    throw InsufficientData("only " + std::to_string(used.size()) + " converged points for the fit");
  Eigen::MatrixXd design(static_cast<Eigen::Index>(used.size()), cols);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(used.size()));
  for (std::size_t i = 0; i < used.size(); ++i) {
    const double le = -std::log(used[i]->epsilon);
    const auto row = static_cast<Eigen::Index>(i);
    design(row, 0) = le;
    if (log_model) design(row, 1) = std::log(le);
    design(row, cols - 1) = 1.0;
    rhs(row) = std::log(used[i]->value);
    rep.epsilons.push_back(used[i]->epsilon);
  }
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);
  rep.fitted_delta = coef(0);
  rep.fitted_log_coeff = log_model ? coef(1) : 0.0;
  const Eigen::VectorXd res = design * coef - rhs;
  rep.residual_rms = std::sqrt(res.squaredNorm() / static_cast<double>(used.size()));
  return rep;
}

/// n points log-spaced from hi down to lo.
inline std::vector<double> log_spaced_grid(double hi, double lo, int n) {
  if (!(hi > lo && lo > 0) || n < 2) throw InvalidArgument("log_spaced_grid needs hi > lo > 0 and n >= 2");
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(hi * std::pow(lo / hi, static_cast<double>(i) / (n - 1)));
  return g;
}

} // namespace jackmoment

#endif // JACKMOMENT_ASYMPTOTICS_HPP
