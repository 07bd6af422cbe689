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

#include <gtest/gtest.h>

#include <cmath>

#include "jackmoment/asymptotics.hpp"

namespace jm = jackmoment;
using jm::Rational;
using jm::Regime;

namespace {

Rational q(long long p, long long d = 1) { return Rational(p) / Rational(d); }

// Equal-argument parameters of the circular moment.
jm::AsymptoticForm<Rational> classify_circular(const Rational& mu, const Rational& beta, int n) {
  return jm::classify_2f1<Rational>(-mu, -mu, beta / 2 * (n - 1) + 1, Rational(2) / beta, n);
}

} // namespace

TEST(Classify, CircularSmallMomentIsBounded) {
  const auto f = classify_circular(q(-1, 4), q(2), 6);
  EXPECT_EQ(f.regime, Regime::Bounded);
  EXPECT_EQ(f.prop_case, 2);
  EXPECT_EQ(f.delta, 0);
}

TEST(Classify, FirstLatticePointIsPureLog) {
  // beta = 2, N = 4, gamma = -3: a + b - c = -3
  const auto f = jm::classify_2f1<Rational>(q(1), q(1), q(5), q(1), 4);
  EXPECT_EQ(f.gamma, -3);
  EXPECT_EQ(f.regime, Regime::Log);
  EXPECT_EQ(f.j, 1);
  EXPECT_EQ(f.delta, 0);
  EXPECT_TRUE(f.log_flag);
}

TEST(Classify, AboveLatticeIsCaseOne) {
  // beta = 2, N = 3: gamma = (N-1) beta/2 + 1 = 3
  const auto f = jm::classify_2f1<Rational>(q(4), q(2), q(3), q(1), 3);
  EXPECT_EQ(f.prop_case, 1);
  EXPECT_EQ(f.delta, 9);
}

TEST(Classify, BetweenLatticePoints) {
  // beta = 2, N = 3, gamma = 1/2: s = 1/4 + 1 + 1 -> j = 2, delta = 2 (1/2 + 1)
  const auto f = jm::classify_2f1<Rational>(q(1, 2), q(0), q(0), q(1), 3);
  EXPECT_EQ(f.prop_case, 4);
  EXPECT_EQ(f.j, 2);
  EXPECT_EQ(f.delta, 3);
}

TEST(Classify, DoubleToleranceMatchesExact) {
  const auto e = jm::classify_2f1<Rational>(q(3, 2), q(3, 2), q(31), q(1), 30);
  const auto d = jm::classify_2f1<double>(1.5, 1.5, 31.0, 1.0, 30);
  EXPECT_EQ(d.regime, e.regime);
  EXPECT_EQ(d.j, e.j);
  EXPECT_DOUBLE_EQ(d.delta, jm::to_double(e.delta));
}

TEST(CircularExponent, Examples) {
  auto f = jm::circular_exponent<double>(-1.0, 2.0, 5);
  EXPECT_EQ(f.regime, Regime::Power);
  EXPECT_EQ(f.j, 1);
  EXPECT_DOUBLE_EQ(f.delta, 1.0);
  f = jm::circular_exponent<double>(-1.5, 2.0, 5);
  EXPECT_EQ(f.regime, Regime::Log);
  EXPECT_EQ(f.j, 2);
  EXPECT_DOUBLE_EQ(f.delta, 2.0);
  f = jm::circular_exponent<double>(-0.5, 1.0, 5);
  EXPECT_EQ(f.regime, Regime::Log);
  EXPECT_EQ(f.j, 1);
  EXPECT_DOUBLE_EQ(f.delta, 0.0);
  EXPECT_EQ(jm::circular_exponent<double>(-0.3, 2.0, 5).regime, Regime::Bounded);
}

TEST(CircularExponent, RangeAndSign) {
  EXPECT_THROW(jm::circular_exponent<double>(-6.0, 2.0, 5), jm::RangeError);  // 2|mu| = 12 > 11
  EXPECT_NO_THROW(jm::circular_exponent<double>(-5.5, 2.0, 5));               // boundary allowed
  EXPECT_THROW(jm::circular_exponent<double>(0.5, 2.0, 5), jm::InvalidArgument);
}

TEST(BkDelta, Examples) {
  EXPECT_DOUBLE_EQ(jm::bk_delta(2.0, 2.0), 1.0);
  EXPECT_DOUBLE_EQ(jm::bk_delta(3.0, 2.0), 2.0);
  EXPECT_THROW(jm::bk_delta(0.5, 2.0), jm::InvalidArgument);
}

TEST(BkDelta, EqualsCorollaryOffLattice) {
  for (const Rational beta : {q(1, 2), q(1), q(2), q(3), q(4)})
    for (int m = 1; m <= 100; ++m) {
      const Rational k = 1 + q(7 * m, 100) - q(1, 997);
      const auto f = jm::circular_exponent<Rational>(-k / 2, beta, 30);
      ASSERT_NE(f.regime, Regime::Log);
      EXPECT_EQ(jm::bk_delta(k, beta), f.delta);
    }
}

TEST(CircularExponent, ClassifyReproducesCorollary) {
  for (const Rational beta : {q(1, 2), q(1), q(2), q(4)})
    for (int n : {5, 30})
      for (int m = 1; m <= 80; ++m) {
        const Rational mu = -q(m, 20);  // [-4, -0.05], includes lattice points
        jm::AsymptoticForm<Rational> c;
        try {
          c = jm::circular_exponent(mu, beta, n);
        } catch (const jm::RangeError&) {
          continue;
        }
        const auto p = classify_circular(mu, beta, n);
        EXPECT_EQ(c.regime, p.regime) << mu << " " << beta << " " << n;
        EXPECT_EQ(c.j, p.j);
        EXPECT_EQ(c.delta, p.delta);
        EXPECT_EQ(c.prop_case, p.prop_case);
      }
}

TEST(CircularExponent, ContinuousAcrossLattice) {
  for (double beta : {0.5, 1.0, 2.0, 4.0})
    for (int j = 1; j <= 3; ++j) {
      const double k = beta * (j - 1) + 1;
      const double at = jm::circular_exponent<double>(-k / 2, beta, 10).delta;
      EXPECT_DOUBLE_EQ(at, (j - 1) * j * beta / 2);
      for (double h : {1e-6, -1e-6})
        if (k + h > 1) EXPECT_NEAR(jm::circular_exponent<double>(-(k + h) / 2, beta, 10).delta, at, 1e-5);
    }
}

TEST(JacobiExponent, AgreesWithClassify) {
  for (const Rational b : {q(0), q(1, 2), q(-1, 2), q(3, 2)})
    for (const Rational beta : {q(1), q(2), q(4)})
      for (int m = 1; m <= 40; ++m) {
        const Rational mu = -q(m, 8);
        const int n = 4;
        jm::AsymptoticForm<Rational> e;
        try {
          e = jm::jacobi_exponent(mu, b, beta, n);
        } catch (const jm::RangeError&) {
          continue;
        }
        const Rational a(1);
        const auto p = jm::classify_2f1<Rational>(-2 * mu, beta / 2 * (n - 1) + a + 1,
                                                  beta * (n - 1) + a + b + 2, 2 / beta, n);
        EXPECT_EQ(e.regime, p.regime);
        EXPECT_EQ(e.j, p.j);
        EXPECT_EQ(e.delta, p.delta);
      }
}

TEST(JacobiExponent, Thresholds) {
  // b = 1/2, beta = 2: first log point at 2|mu| = b + 1 = 3/2
  auto f = jm::jacobi_exponent<double>(-0.75, 0.5, 2.0, 3);
  EXPECT_EQ(f.regime, Regime::Log);
  EXPECT_EQ(f.j, 1);
  f = jm::jacobi_exponent<double>(-2.0, 0.5, 2.0, 3);  // 2|mu| = 4: j = 2, delta = 2 (4 - 3/2 - 1)
  EXPECT_EQ(f.j, 2);
  EXPECT_DOUBLE_EQ(f.delta, 3.0);
  EXPECT_EQ(jm::jacobi_exponent<double>(-0.5, 0.5, 2.0, 3).regime, Regime::Bounded);
  EXPECT_THROW(jm::jacobi_exponent<double>(-5.0, 0.5, 2.0, 3), jm::RangeError);
}

TEST(GroupExponent, TwiceJacobiWithOMinusShift) {
  for (int m = 1; m <= 30; ++m) {
    const double mu = -0.13 * m;
    const int n = 6;
    const auto jsp = jm::jacobi_exponent(mu, 0.5, 2.0, n);
    EXPECT_DOUBLE_EQ(jm::group_exponent(jm::GroupFamily::Sp, n, mu).delta, 2 * jsp.delta);
    const auto jo = jm::jacobi_exponent(mu, -0.5, 2.0, n);
    EXPECT_DOUBLE_EQ(jm::group_exponent(jm::GroupFamily::OPlusEven, n, mu).delta, 2 * jo.delta);
    const auto jm1 = jm::jacobi_exponent(mu, -0.5, 2.0, n - 1);
    EXPECT_DOUBLE_EQ(jm::group_exponent(jm::GroupFamily::OMinusEven, n, mu).delta, 2 * jm1.delta - 2 * mu);
  }
}

TEST(GroupExponent, Examples) {
  // Sp: log points at 2|mu| = 2j - 1/2; power delta = 2j(2|mu| - 1/2 - j)
  auto f = jm::group_exponent<double>(jm::GroupFamily::Sp, 3, -0.75);
  EXPECT_EQ(f.regime, Regime::Log);
  EXPECT_DOUBLE_EQ(f.delta, 0.0);
  EXPECT_DOUBLE_EQ(jm::group_exponent<double>(jm::GroupFamily::Sp, 3, -2.0).delta, 3.0 * 2);
  // O+: log points at 2j - 3/2; 2|mu| = 3 -> j = 2, delta = 4 (3 + 1/2 - 2)
  EXPECT_DOUBLE_EQ(jm::group_exponent<double>(jm::GroupFamily::OPlusEven, 3, -1.5).delta, 6.0);
  EXPECT_DOUBLE_EQ(jm::group_exponent<double>(jm::GroupFamily::OMinusEven, 3, -1.5).delta, 9.0);
  EXPECT_THROW(jm::group_exponent<double>(jm::GroupFamily::Sp, 1, -3.0), jm::RangeError);
}

TEST(GroupExponent, MatchesEpsilonSweepAtOneAngle) {
  // One free angle keeps the series one-dimensional, so small epsilon is cheap.
  const auto grid = jm::log_spaced_grid(0.04, 0.01, 5);
  jm::FitOptions opts;
  struct Case { jm::GroupFamily f; int n; double mu; };
  // Sp at 2|mu| = 2.4 diverges (delta 1.8); a b + 2 threshold would call it bounded.
  for (const auto& c : {Case{jm::GroupFamily::Sp, 1, -1.2}, Case{jm::GroupFamily::OPlusEven, 1, -0.9},
                        Case{jm::GroupFamily::OMinusEven, 2, -0.6}}) {
    const auto pred = jm::group_exponent(c.f, c.n, c.mu);
    const auto rep = jm::fit_divergence({jm::ClassicalGroup{c.f, c.n}, c.mu, 0.0}, grid, pred, opts);
    EXPECT_TRUE(rep.all_converged);
    EXPECT_NEAR(rep.fitted_delta, pred.delta, 0.03 * pred.delta) << jm::to_string(c.f);
  }
}

TEST(JacobiExponent, MatchesEpsilonSweep) {
  const auto grid = jm::log_spaced_grid(0.01, 0.001, 6);
  jm::FitOptions opts;
  for (double b : {0.0, 0.5}) {
    const double mu = -1.1;
    const auto pred = jm::jacobi_exponent(mu, b, 2.0, 1);
    const auto rep = jm::fit_divergence({jm::JacobiEnsemble{0.3, b, 2.0, 1}, mu, 0.0}, grid, pred, opts);
    EXPECT_NEAR(rep.fitted_delta, pred.delta, 0.05 * pred.delta) << b;
  }
}

TEST(Szego, Examples) {
  EXPECT_DOUBLE_EQ(jm::szego_limit(std::map<int, std::complex<double>>{}, 2.0, 10), 1.0);
  EXPECT_DOUBLE_EQ(jm::szego_limit([](int) { return std::complex<double>(0.0); }, 2.0, 10), 1.0);
  EXPECT_NEAR(jm::szego_limit(jm::log_modulus_coefficients(1.0, 0.6), 2.0, 7), 1.5625, 1e-13);
  for (double beta : {1.0, 4.0})
    EXPECT_NEAR(jm::szego_limit(jm::log_modulus_coefficients(-0.7, 0.5), beta, 3),
                jm::szego_limit_log_modulus(-0.7, 0.5, beta), 1e-13);
  // a_0 enters as exp(N a_0)
  EXPECT_NEAR(jm::szego_limit({{0, 0.1}}, 2.0, 5), std::exp(0.5), 1e-15);
}

TEST(Szego, TruncationsConvergeGeometrically) {
  const auto rule = jm::log_modulus_coefficients(0.8, 0.7);
  const double limit = jm::szego_limit(rule, 2.0, 4);
  double prev_gap = 1.0;
  for (int p = 2; p <= 40; p += 2) {
    std::map<int, std::complex<double>> c;
    for (int k = -p; k <= p; ++k) c[k] = rule(k);
    const double gap = std::fabs(jm::szego_limit(c, 2.0, 4) - limit);
    EXPECT_LT(gap, prev_gap);
    prev_gap = gap;
  }
  EXPECT_LT(prev_gap, 1e-6);
}

TEST(Szego, RejectsDivergentRule) {
  EXPECT_THROW(jm::szego_limit([](int p) { return std::complex<double>(p == 0 ? 0.0 : 1.0); }, 2.0, 3, 1e-15, 10000),
               jm::InvalidArgument);
}

TEST(FitDivergence, PowerCaseSmallN) {
  const auto grid = jm::log_spaced_grid(0.01, 0.001, 8);
  const jm::MomentQuery fam{jm::CircularEnsemble{2.0, 3}, -1.0, 0.0};
  const auto rep = jm::fit_divergence(fam, grid, jm::circular_exponent(-1.0, 2.0, 3));
  EXPECT_TRUE(rep.all_converged);
  EXPECT_NEAR(rep.fitted_delta, 1.0, 0.01);
  EXPECT_EQ(rep.epsilons.size(), 8u);
  EXPECT_EQ(rep.fitted_log_coeff, 0.0);
}

TEST(FitDivergence, ThreadCountDoesNotChangeResult) {
  const auto grid = jm::log_spaced_grid(0.2, 0.05, 5);
  const jm::MomentQuery fam{jm::CircularEnsemble{2.0, 2}, -0.8, 0.0};
  jm::FitOptions one, three;
  three.threads = 3;
  const auto pred = jm::circular_exponent(-0.8, 2.0, 2);
  const auto a = jm::fit_divergence(fam, grid, pred, one);
  const auto b = jm::fit_divergence(fam, grid, pred, three);
  EXPECT_EQ(a.fitted_delta, b.fitted_delta);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_EQ(a.points[i].value, b.points[i].value);
}

TEST(FitDivergence, ToeplitzMatchesSeriesRoute) {
  const auto grid = jm::log_spaced_grid(0.2, 0.05, 4);
  const jm::MomentQuery fam{jm::CircularEnsemble{2.0, 3}, -0.7, 0.0};
  jm::FitOptions ser, toe;
  toe.method = jm::MomentMethod::Toeplitz;
  const auto pred = jm::circular_exponent(-0.7, 2.0, 3);
  const auto a = jm::fit_divergence(fam, grid, pred, ser);
  const auto b = jm::fit_divergence(fam, grid, pred, toe);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(a.points[i].value / b.points[i].value, 1.0, 1e-10);
}

TEST(FitDivergence, UnconvergedPointsAreExcluded) {
  const auto grid = jm::log_spaced_grid(0.2, 0.001, 6);
  const jm::MomentQuery fam{jm::CircularEnsemble{2.0, 6}, -0.7, 0.0};
  jm::FitOptions opts;
  opts.series.max_terms = 40'000;
  try {
    const auto rep = jm::fit_divergence(fam, grid, jm::circular_exponent(-0.7, 2.0, 6), opts);
    EXPECT_FALSE(rep.all_converged);
    EXPECT_LT(rep.epsilons.size(), grid.size());
  } catch (const jm::InsufficientData&) {
    SUCCEED();
  }
  bool seen_unconverged = false;
  for (double e : grid) {
    const auto p = jm::evaluate_fit_point(fam, e, opts);
    if (!p.converged) {
      seen_unconverged = true;
      EXPECT_FALSE(p.note.empty());
    }
  }
  EXPECT_TRUE(seen_unconverged);
}

TEST(FitDivergence, ValidatesGrid) {
  const jm::MomentQuery fam{jm::CircularEnsemble{2.0, 2}, -1.0, 0.0};
  const auto pred = jm::circular_exponent(-1.0, 2.0, 2);
  EXPECT_THROW(jm::fit_divergence(fam, {0.01, 0.02, 0.005, 0.001}, pred), jm::InvalidArgument);
  EXPECT_THROW(jm::fit_divergence(fam, {0.5, 0.1, 0.05, 0.01}, pred), jm::InvalidArgument);
  EXPECT_THROW(jm::fit_divergence(fam, {0.1, 0.05, 0.01}, pred), jm::InsufficientData);
}
