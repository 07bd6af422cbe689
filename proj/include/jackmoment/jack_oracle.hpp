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

#ifndef JACKMOMENT_JACK_ORACLE_HPP
#define JACKMOMENT_JACK_ORACLE_HPP

// Exact monomial expansions of Jack polynomials P_kappa for small degree.
//
// Coefficients come from the triangular action of the Laplace-Beltrami
// eigenoperator on monomial symmetric functions:
//
//   c_{kappa,mu} = (2/alpha) / (rho_kappa - rho_mu)
//                  * sum_{lambda} (mu_i - mu_j + 2 s) c_{kappa,lambda}
//
// where lambda runs over the sorted results of raising mu_i by s and
// lowering mu_j by s (i < j, 1 <= s <= mu_j) that stay below kappa in
// dominance order, and rho_kappa = sum kappa_i (kappa_i - 1 - (2/alpha)(i-1)).
// Everything is exact rational arithmetic.

#include <algorithm>
#include <map>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "jackmoment/errors.hpp"
#include "jackmoment/jack_core.hpp"
#include "jackmoment/partition.hpp"
#include "jackmoment/rational.hpp"

namespace jackmoment {

inline constexpr int kDefaultDegreeCap = 8;

struct MonomialExpansion {
  Partition kappa;
  Rational alpha;
  std::map<Partition, Rational> coefficients;

  const Rational& coefficient(const Partition& mu) const {
    static const Rational zero(0);
    auto it = coefficients.find(mu);
    return it == coefficients.end() ? zero : it->second;
  }
};

namespace detail {

inline Rational rho(const Partition& p, const Rational& alpha) {
  Rational r(0);
  const Rational two_over_alpha = Rational(2) / alpha;
  for (int i = 1; i <= p.length(); ++i)
    r += Rational(p.row(i)) * (Rational(p.row(i) - 1) - two_over_alpha * Rational(i - 1));
  return r;
}

} // namespace detail

/// Builds P_kappa^{(alpha)} = m_kappa + sum_{mu < kappa} c_{kappa,mu} m_mu.
/// Throws when |kappa| exceeds `degree_cap` or when alpha makes two
/// eigenvalues of the recursion coincide.
inline MonomialExpansion jack_monomial_expansion(const Partition& kappa, const Rational& alpha,
                                                 int degree_cap = kDefaultDegreeCap) {
  require_positive_alpha(alpha);
  if (kappa.weight() > degree_cap)
    throw InvalidArgument("jack_monomial_expansion: |kappa| = " + std::to_string(kappa.weight()) +
                          " exceeds the degree cap " + std::to_string(degree_cap));
  MonomialExpansion out{kappa, alpha, {}};
  out.coefficients.emplace(kappa, Rational(1));
  const int n = kappa.weight();
  if (n == 0) return out;

  const Rational rho_kappa = detail::rho(kappa, alpha);
  const Rational two_over_alpha = Rational(2) / alpha;
  // Reverse-lexicographic order is a linear extension of dominance, so every
  // lambda above mu is settled before mu is visited.
  bool past_kappa = false;
  for_each_partition(n, n, [&](const Partition& mu) {
    if (mu == kappa) {
      past_kappa = true;
      return;
    }
    if (!past_kappa || !dominance_leq(mu, kappa)) return;
    Rational sum(0);
    std::vector<int> parts(mu.parts().begin(), mu.parts().end());
    for (std::size_t j = 1; j < parts.size(); ++j)
      for (std::size_t i = 0; i < j; ++i)
        for (int s = 1; s <= parts[j]; ++s) {
          std::vector<int> raised = parts;
          raised[i] += s;
          raised[j] -= s;
          std::sort(raised.begin(), raised.end(), std::greater<>());
          const Partition lambda(std::move(raised));
          auto it = out.coefficients.find(lambda);
          if (it == out.coefficients.end()) continue;
          sum += Rational(parts[i] - parts[j] + 2 * s) * it->second;
        }
    if (sum == 0) return;
    const Rational gap = rho_kappa - detail::rho(mu, alpha);
    if (gap == 0)
      throw InvalidArgument("jack_monomial_expansion: degenerate eigenvalues for " +
                            kappa.to_string() + " and " + mu.to_string() + " at alpha = " +
                            to_string(alpha));
    out.coefficients.emplace(mu, two_over_alpha / gap * sum);
  });
  return out;
}

/// m_mu(x_1, ..., x_N): sum over distinct rearrangements of mu padded by zeros.
inline Rational monomial_evaluate(const Partition& mu, std::span<const Rational> x) {
  const int n = static_cast<int>(x.size());
  if (mu.length() > n) return Rational(0);
  std::vector<int> exps(static_cast<std::size_t>(n), 0);
  std::copy(mu.parts().begin(), mu.parts().end(), exps.begin());
  std::sort(exps.begin(), exps.end());
  Rational total(0);
  do {
    Rational term(1);
    for (int k = 0; k < n; ++k)
      for (int e = 0; e < exps[static_cast<std::size_t>(k)]; ++e) term *= x[static_cast<std::size_t>(k)];
    total += term;
  } while (std::next_permutation(exps.begin(), exps.end()));
  return total;
}

inline Rational jack_evaluate(const MonomialExpansion& expansion, std::span<const Rational> x) {
  Rational total(0);
  for (const auto& [mu, c] : expansion.coefficients)
    if (mu.length() <= static_cast<int>(x.size())) total += c * monomial_evaluate(mu, x);
  return total;
}

/// Writes "kappa; mu; p/q" lines in reverse-lexicographic order of mu.
inline void dump_expansion(std::ostream& os, const MonomialExpansion& expansion) {
  for (auto it = expansion.coefficients.rbegin(); it != expansion.coefficients.rend(); ++it)
    os << expansion.kappa << "; " << it->first << "; " << to_string(it->second) << '\n';
}

/// Kostka number K_{lambda,mu}: semistandard tableaux of shape lambda and
/// content mu, counted by peeling horizontal strips of the largest letter.
inline long long kostka_number(const Partition& lambda, const Partition& mu) {
  if (lambda.weight() != mu.weight()) return 0;
  if (mu.empty()) return 1;
  const int strip = mu.row(mu.length());
  const Partition rest_mu(std::vector<int>(mu.parts().begin(), mu.parts().end() - 1));
  long long total = 0;
  // inner shape nu with lambda/nu a horizontal strip: lambda_{i+1} <= nu_i <= lambda_i.
  std::vector<int> nu(static_cast<std::size_t>(lambda.length()), 0);
  auto rec = [&](auto&& self, int i, int removed) -> void {
    if (i > lambda.length()) {
      if (removed == strip) total += kostka_number(Partition(nu), rest_mu);
      return;
    }
    const int hi = lambda.row(i);
    const int lo = lambda.row(i + 1);
    for (int v = hi; v >= lo; --v) {
      const int r = removed + (hi - v);
      if (r > strip) break;
      nu[static_cast<std::size_t>(i - 1)] = v;
      self(self, i + 1, r);
    }
  };
  rec(rec, 1, 0);
  return total;
}

struct BinomialCheck {
  double lhs = 0.0;  ///< series truncated at weight_cap
  double rhs = 0.0;  ///< prod (1 - x_j)^{-a}
  Rational lhs_exact;
};

/// Truncated 1F0 series sum_{|kappa| <= cap} [a]_kappa C_kappa(x) / |kappa|!
/// at arbitrary rational x, against the closed form prod (1 - x_j)^{-a}.
inline BinomialCheck binomial_identity_check(const Rational& a, std::span<const Rational> x,
                                             int weight_cap, const Rational& alpha,
                                             int degree_cap = kDefaultDegreeCap) {
  if (weight_cap > degree_cap)
    throw InvalidArgument("binomial_identity_check: weight cap exceeds the degree cap");
  for (const auto& xi : x)
    if (!(xi < 1 && xi > -1)) throw InvalidArgument("binomial_identity_check: need |x_i| < 1");
  const int n = static_cast<int>(x.size());
  Rational lhs(0);
  for (int w = 0; w <= weight_cap; ++w) {
    Rational factorial(1);
    for (int m = 2; m <= w; ++m) factorial *= m;
    for_each_partition(w, std::max(n, 1), [&](const Partition& kappa) {
      const Rational poch = gen_pochhammer(a, kappa, alpha);
      if (poch == 0) return;
      Rational c_scale(1);
      for (int m = 0; m < w; ++m) c_scale *= alpha;
      // C_kappa(x) / |kappa|! = alpha^|kappa| / d'_kappa P_kappa(x)
      const auto expansion = jack_monomial_expansion(kappa, alpha, degree_cap);
      lhs += poch * c_scale / dprime(kappa, alpha) * jack_evaluate(expansion, x);
    });
  }
  double rhs = 1.0;
  const double ad = to_double(a);
  for (const auto& xi : x) rhs *= std::pow(1.0 - to_double(xi), -ad);
  return {to_double(lhs), rhs, lhs};
}

} // namespace jackmoment

#endif // JACKMOMENT_JACK_ORACLE_HPP
