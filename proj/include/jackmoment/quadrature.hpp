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

#ifndef JACKMOMENT_QUADRATURE_HPP
#define JACKMOMENT_QUADRATURE_HPP

// Deterministic quadrature of ensemble averages for N <= 3.
//
// Circular ensembles: the common rotation angle uses the periodic trapezoid
// rule; the relative angles are parametrized by the arc fractions between
// consecutive eigenvalues, whose joint weight prod w_k^beta is absorbed into
// Gauss-Jacobi rules so that the |sin|^beta factors never meet a kink.
// Jacobi ensembles and the classical groups use tensor Gauss-Jacobi rules
// carrying the endpoint weight x^a (1-x)^b.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "jackmoment/ensemble.hpp"
#include "jackmoment/errors.hpp"

namespace jackmoment {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss rule on [0,1] for the weight t^a (1-t)^b (Golub-Welsch).
inline QuadratureRule gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw InvalidArgument("gauss_jacobi: need at least one node");
  if (!(a > -1) || !(b > -1)) throw InvalidArgument("gauss_jacobi: need a, b > -1");
  // Jacobi polynomials on [-1,1] with weight (1-x)^al (1+x)^be, x = 2t - 1.
  const long double al = b, be = a;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) {
    const long double s = 2.0L * k + al + be;
    if (k == 0) diag(k) = static_cast<double>((be - al) / (al + be + 2));
    else diag(k) = static_cast<double>((be * be - al * al) / (s * (s + 2)));
  }
  for (int k = 1; k < n; ++k) {
    const long double s = 2.0L * k + al + be;
    long double b2;
    if (k == 1) b2 = 4 * (1 + al) * (1 + be) / ((2 + al + be) * (2 + al + be) * (3 + al + be));
    else b2 = 4.0L * k * (k + al) * (k + be) * (k + al + be) / (s * s * (s + 1) * (s - 1));
    sub(k - 1) = static_cast<double>(std::sqrt(b2));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NumericalError("gauss_jacobi: eigensolver failed");
  // Total mass of t^a (1-t)^b on [0,1] is B(a+1, b+1).
  const double mass = std::exp(std::lgamma(a + 1) + std::lgamma(b + 1) - std::lgamma(a + b + 2));
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    rule.nodes[static_cast<std::size_t>(k)] = 0.5 * (solver.eigenvalues()(k) + 1.0);
    const double v = solver.eigenvectors()(0, k);
    rule.weights[static_cast<std::size_t>(k)] = mass * v * v;
  }
  return rule;
}

/// n equispaced nodes on [0, 2 pi) with equal weights 2 pi / n.
inline QuadratureRule periodic_rule(int n) {
  if (n < 1) throw InvalidArgument("periodic_rule: need at least one node");
  QuadratureRule rule;
  for (int k = 0; k < n; ++k) {
    rule.nodes.push_back(2 * std::numbers::pi * k / n);
    rule.weights.push_back(2 * std::numbers::pi / n);
  }
  return rule;
}

struct QuadratureSpec {
  int nodes_per_dim = 16;
  int max_nodes_per_dim = 0;  ///< 0 picks a cap from the dimension
  double rel_tol = 1e-10;
};

struct QuadratureResult {
  double value = 0.0;
  double previous = 0.0;  ///< estimate at half the nodes
  int nodes_per_dim = 0;
};

namespace detail {

// sin(pi w) / (pi w), continuous at w = 0.
inline double sinc_pi(double w) {
  if (std::fabs(w) < 1e-8) return 1.0 - (std::numbers::pi * w) * (std::numbers::pi * w) / 6.0;
  return std::sin(std::numbers::pi * w) / (std::numbers::pi * w);
}

inline double circular_factor(double r, double theta, double mu) {
  return std::pow(1.0 + r * r - 2.0 * r * std::cos(theta), mu);
}

inline double circular_ratio(const CircularEnsemble& e, double mu, double r, int n_nodes) {
  const double beta = e.beta;
  const auto phi = periodic_rule(n_nodes);
  long double num = 0.0L, den = 0.0L;
  if (e.n == 1) {
    for (std::size_t p = 0; p < phi.nodes.size(); ++p) num += circular_factor(r, phi.nodes[p], mu);
    return static_cast<double>(num / phi.nodes.size());
  }
  if (e.n == 2) {
    const auto gu = gauss_jacobi(n_nodes, beta, beta);
    for (std::size_t k = 0; k < gu.nodes.size(); ++k) {
      const double u = gu.nodes[k];
      // (2 sin pi u)^beta = (2 pi)^beta (u (1-u))^beta (sin(pi u) / (pi u (1-u)))^beta
      const double w = gu.weights[k] * std::pow(sinc_pi(u) / (1.0 - u), beta);
      long double inner = 0.0L;
      for (double ph : phi.nodes)
        inner += circular_factor(r, ph, mu) * circular_factor(r, ph + 2 * std::numbers::pi * u, mu);
      num += w * inner;
      den += w * static_cast<long double>(phi.nodes.size());
    }
    return static_cast<double>(num / den);
  }
  // N = 3: arc fractions w1 = u, w2 = (1-u) v, w3 = (1-u)(1-v); Jacobian (1-u).
  const auto gu = gauss_jacobi(n_nodes, beta, 2 * beta + 1);
  const auto gv = gauss_jacobi(n_nodes, beta, beta);
  for (std::size_t i = 0; i < gu.nodes.size(); ++i) {
    const double u = gu.nodes[i];
    for (std::size_t j = 0; j < gv.nodes.size(); ++j) {
      const double v = gv.nodes[j];
      const double w1 = u, w2 = (1 - u) * v, w3 = (1 - u) * (1 - v);
      const double w = gu.weights[i] * gv.weights[j] *
                       std::pow(sinc_pi(w1) * sinc_pi(w2) * sinc_pi(w3), beta);
      const double d2 = 2 * std::numbers::pi * w1;
      const double d3 = 2 * std::numbers::pi * (w1 + w2);
      long double inner = 0.0L;
      for (double ph : phi.nodes)
        inner += circular_factor(r, ph, mu) * circular_factor(r, ph + d2, mu) *
                 circular_factor(r, ph + d3, mu);
      num += w * inner;
      den += w * static_cast<long double>(phi.nodes.size());
    }
  }
  return static_cast<double>(num / den);
}

// <prod f(x_l)> over prod x^a (1-x)^b |Vandermonde|^beta on (0,1)^dim.
template <class F>
double jacobi_ratio(double a, double b, double beta, int dim, F&& f, int n_nodes) {
  const auto g = gauss_jacobi(n_nodes, a, b);
  const std::size_t m = g.nodes.size();
  long double num = 0.0L, den = 0.0L;
  std::vector<double> fv(m);
  for (std::size_t k = 0; k < m; ++k) fv[k] = f(g.nodes[k]);
  if (dim == 1) {
    for (std::size_t i = 0; i < m; ++i) {
      num += g.weights[i] * fv[i];
      den += g.weights[i];
    }
  } else if (dim == 2) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const double w = g.weights[i] * g.weights[j] * std::pow(std::fabs(g.nodes[i] - g.nodes[j]), beta);
        num += w * fv[i] * fv[j];
        den += w;
      }
  } else {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const double wij = g.weights[i] * g.weights[j] * std::pow(std::fabs(g.nodes[i] - g.nodes[j]), beta);
        for (std::size_t k = 0; k < m; ++k) {
          const double w = wij * g.weights[k] *
                           std::pow(std::fabs(g.nodes[i] - g.nodes[k]) * std::fabs(g.nodes[j] - g.nodes[k]), beta);
          num += w * fv[i] * fv[j] * fv[k];
          den += w;
        }
      }
  }
  return static_cast<double>(num / den);
}

template <class F>
QuadratureResult refine(F&& evaluate, int dim, const QuadratureSpec& spec) {
  if (spec.nodes_per_dim < 16) throw InvalidArgument("quadrature needs at least 16 nodes per dimension");
  const int cap = spec.max_nodes_per_dim > 0 ? spec.max_nodes_per_dim
                                             : (dim <= 1 ? 4096 : dim == 2 ? 1024 : 256);
  int n = spec.nodes_per_dim;
  double prev = evaluate(n);
  while (true) {
    n *= 2;
    if (n > cap)
      throw NumericalError("quadrature did not converge: last two estimates " + std::to_string(prev));
    const double cur = evaluate(n);
    if (std::fabs(cur - prev) <= spec.rel_tol * std::fabs(cur)) return {cur, prev, n};
    prev = cur;
  }
}

} // namespace detail

/// Ensemble average by quadrature, doubling the nodes per dimension until
/// two successive estimates agree to spec.rel_tol.
inline QuadratureResult quadrature_moment(const MomentQuery& q, const QuadratureSpec& spec = {}) {
  validate(q.ensemble);
  return std::visit(
      [&](const auto& e) -> QuadratureResult {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, CircularEnsemble>) {
          if (e.n > 3) throw InvalidArgument("quadrature supports N <= 3");
          const double r = std::fabs(q.point);
          if (std::fabs(r - 1.0) < 1e-15) throw InvalidArgument("|z| = 1 lies on the support");
          if (q.mu == 0.0) return {1.0, 1.0, spec.nodes_per_dim};
          return detail::refine([&](int n) { return detail::circular_ratio(e, q.mu, r, n); }, e.n, spec);
        } else if constexpr (std::is_same_v<E, JacobiEnsemble>) {
          if (e.n > 3) throw InvalidArgument("quadrature supports N <= 3");
          const double x = q.point;
          if (x >= 0.0 && x <= 1.0) throw InvalidArgument("x must lie outside [0,1]");
          if (q.mu == 0.0) return {1.0, 1.0, spec.nodes_per_dim};
          auto f = [&](double t) { return std::pow(std::fabs(x - t), 2 * q.mu); };
          return detail::refine([&](int n) { return detail::jacobi_ratio(e.a, e.b, e.beta, e.n, f, n); },
                                e.n, spec);
        } else {
          // Direct average over the cos(theta) density of the eigenangles.
          const auto form = group_jacobi_form(e.family, e.n);
          if (form.dim > 3) throw InvalidArgument("quadrature supports at most 3 free angles");
          const double eps = q.point;
          if (!(eps > 0)) throw InvalidArgument("epsilon must be positive");
          if (q.mu == 0.0) return {1.0, 1.0, spec.nodes_per_dim};
          const double z = 1.0 + eps;
          // |z - e^{i theta}|^2 |z - e^{-i theta}|^2 = (z^2 - 2 z cos theta + 1)^2, s = (1 + cos theta)/2
          auto f = [&](double s) { return std::pow(z * z - 2 * z * (2 * s - 1) + 1, 2 * q.mu); };
          double fixed = 1.0;
          if (e.family == GroupFamily::OMinusEven) fixed = std::pow(std::fabs(z * z - 1), 2 * q.mu);
          auto res = detail::refine(
              [&](int n) { return detail::jacobi_ratio(form.a, form.b, 2.0, form.dim, f, n); }, form.dim, spec);
          res.value *= fixed;
          res.previous *= fixed;
          return res;
        }
      },
      q.ensemble);
}

} // namespace jackmoment

#endif // JACKMOMENT_QUADRATURE_HPP
