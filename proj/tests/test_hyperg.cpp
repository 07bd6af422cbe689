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
#include <random>

#include "jackmoment/hyperg.hpp"

namespace jm = jackmoment;
using jm::Partition;
using jm::Rational;

namespace {

jm::SeriesOptions tight() {
  jm::SeriesOptions o;
  o.rel_tol = 1e-13;
  return o;
}

} // namespace

TEST(Hyperg, ZeroArgumentIsOne) {
  const auto r = jm::hyp2f1_equal({0.3, -1.7, 2.2, 0.8, 4, 0.0});
  EXPECT_EQ(r.value, 1.0);
  EXPECT_EQ(r.trunc_weight, 0);
  EXPECT_TRUE(r.converged);
}

TEST(Hyperg, SingleVariableIsGaussSeries) {
  // 2F1(1,1;2;t) = -log(1-t)/t
  for (double alpha : {0.5, 1.0, 3.0}) {
    const auto r = jm::hyp2f1_equal({1.0, 1.0, 2.0, alpha, 1, 0.5}, tight());
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, 2.0 * std::log(2.0), 1e-12);
  }
}

TEST(Hyperg, BinomialSeriesExamples) {
  EXPECT_NEAR(jm::hyp1f0_equal(2.0, 1.0, 2, 0.5, tight()).value, 16.0, 1e-11);
  EXPECT_EQ(jm::hyp1f0_equal(0.0, 0.7, 3, 0.9).value, 1.0);
  EXPECT_NEAR(jm::hyp1f0_equal(1.0, 2.0, 3, 0.3, tight()).value, std::pow(0.7, -3.0), 1e-12);
}

TEST(Hyperg, BinomialSeriesGrid) {
  for (double a : {0.7, 2.0})
    for (double alpha : {0.5, 1.0, 2.0})
      for (int n = 1; n <= 4; ++n)
        for (double t : {0.1, 0.35, 0.6}) {
          jm::SeriesOptions o;
          o.rel_tol = 1e-11;
          const auto r = jm::hyp1f0_equal(a, alpha, n, t, o);
          const double exact = std::pow(1.0 - t, -a * n);
          EXPECT_TRUE(r.converged);
          EXPECT_LE(std::fabs(r.value - exact) / exact, 10 * o.rel_tol)
              << "a=" << a << " alpha=" << alpha << " n=" << n << " t=" << t;
        }
}

TEST(Hyperg, SeriesTermExamples) {
  const jm::Hyp2F1Params<double> p{0.4, 1.3, 2.1, 1.7, 3, 0.25};
  EXPECT_DOUBLE_EQ(jm::series_term(Partition{}, p).value, 1.0);
  EXPECT_NEAR(jm::series_term(Partition{1}, p).value, 0.4 * 1.3 / 2.1 * 3 * 0.25, 1e-15);
  EXPECT_THROW(jm::series_term(Partition{1, 1, 1, 1}, p), jm::InvalidArgument);
}

TEST(Hyperg, LatticePoleIsReported) {
  // c = 1 - 1/alpha with alpha = 1: node (2,1) of [0]_kappa vanishes.
  const jm::Hyp2F1Params<double> p{0.5, 0.5, 1.0, 1.0, 2, 0.3};
  try {
    jm::series_term(Partition{1, 1}, p);
    FAIL() << "expected a lattice pole";
  } catch (const jm::LatticePole& e) {
    EXPECT_EQ(e.row(), 2);
    EXPECT_EQ(e.col(), 1);
  }
  EXPECT_THROW(jm::hyp2f1_equal(p), jm::LatticePole);
  const jm::Hyp2F1Params<Rational> q{Rational(1, 2), Rational(1, 2), Rational(1), Rational(1), 2,
                                     Rational(3, 10)};
  EXPECT_THROW(jm::series_term(Partition{2, 1}, q), jm::LatticePole);
}

TEST(Hyperg, CircularParametersGiveNonNegativeTerms) {
  // a = b = -mu > 0, c = beta (N-1)/2 + 1: [a]^2 >= 0 and every node of [c]
  // is c - (i-1) beta/2 + j - 1 >= 1 for i <= N.
  for (double beta : {0.5, 1.0, 2.0, 4.0})
    for (double mu : {-0.3, -1.25, -2.5})
      for (int n : {2, 4}) {
        const jm::Hyp2F1Params<double> p{-mu, -mu, beta * (n - 1) / 2 + 1, 2 / beta, n, 0.6};
        for (int k = 0; k <= 8; ++k)
          for (const auto& kappa : jm::enumerate_partitions(k, n))
            EXPECT_GE(jm::series_term(kappa, p).value, 0.0) << kappa;
      }
}

TEST(Hyperg, FloatingTermsMatchExactTerms) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const Rational a(std::uniform_int_distribution<int>(-30, 30)(rng), 7);
    const Rational b(std::uniform_int_distribution<int>(-30, 30)(rng), 11);
    const Rational c(std::uniform_int_distribution<int>(1, 60)(rng), 13);
    const Rational alpha(std::uniform_int_distribution<int>(1, 9)(rng), 3);
    const Rational t(std::uniform_int_distribution<int>(-9, 9)(rng), 10);
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    const int w = std::uniform_int_distribution<int>(0, 60)(rng);
    const auto parts = jm::enumerate_partitions(w, n);
    const auto& kappa = parts[std::uniform_int_distribution<std::size_t>(0, parts.size() - 1)(rng)];
    const jm::Hyp2F1Params<Rational> pe{a, b, c, alpha, n, t};
    const jm::Hyp2F1Params<long double> pf{jm::to_long_double(a), jm::to_long_double(b),
                                           jm::to_long_double(c), jm::to_long_double(alpha), n,
                                           jm::to_long_double(t)};
    Rational exact;
    try {
      exact = jm::series_term(kappa, pe).value;
    } catch (const jm::LatticePole&) {
      EXPECT_THROW(jm::series_term(kappa, pf), jm::LatticePole);
      continue;
    }
    const long double approx = jm::series_term(kappa, pf).value;
    if (exact == 0) {
      EXPECT_EQ(approx, 0.0L);
    } else {
      EXPECT_NEAR(static_cast<double>(approx / jm::to_long_double(exact)), 1.0, 1e-12) << kappa;
    }
  }
}

TEST(Hyperg, SingleVariableTermsAreClassicalExactly) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Rational a(std::uniform_int_distribution<int>(-40, 40)(rng), 9);
    const Rational b(std::uniform_int_distribution<int>(-40, 40)(rng), 5);
    const Rational c(std::uniform_int_distribution<int>(1, 80)(rng), 17);
    const Rational alpha(std::uniform_int_distribution<int>(1, 12)(rng), 4);
    const Rational t(3, 7);
    Rational classical(1);
    for (int k = 0; k < 20; ++k) {
      if (k > 0) classical *= (a + k - 1) * (b + k - 1) / ((c + k - 1) * k) * t;
      const Partition kappa = k == 0 ? Partition{} : Partition{k};
      EXPECT_EQ(jm::series_term(kappa, jm::Hyp2F1Params<Rational>{a, b, c, alpha, 1, t}).value, classical);
    }
  }
}

TEST(Hyperg, PartialSumsMonotoneForNonNegativeTerms) {
  const double beta = 1.0, mu = -0.8;
  const int n = 3;
  const jm::Hyp2F1Params<double> p{-mu, -mu, beta * (n - 1) / 2 + 1, 2 / beta, n, 0.5};
  double prev = 0.0;
  for (int cap = 0; cap <= 25; ++cap) {
    double s = 0.0;
    for (int w = 0; w <= cap; ++w)
      for (const auto& kappa : jm::enumerate_partitions(w, n)) s += jm::series_term(kappa, p).value;
    EXPECT_GE(s, prev);
    prev = s;
  }
  EXPECT_NEAR(jm::hyp2f1_equal(p).value, prev, 1e-3 * prev);
}

TEST(Hyperg, PolynomialCaseTerminatesExactly) {
  // a = -2 caps the first row at 2 and the whole sum at weight 4.
  const auto r = jm::hyp2f1_equal({-2.0, 0.5, 1.5, 1.0, 2, 0.9});
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.tail_estimate, 0.0);
  EXPECT_LE(r.trunc_weight, 5);
  Rational exact(0);
  const jm::Hyp2F1Params<Rational> q{Rational(-2), Rational(1, 2), Rational(3, 2), Rational(1), 2,
                                     Rational(9, 10)};
  for (int w = 0; w <= 4; ++w)
    for (const auto& kappa : jm::enumerate_partitions(w, 2)) exact += jm::series_term(kappa, q).value;
  EXPECT_NEAR(r.value, jm::to_double(exact), 1e-14);
}

TEST(Hyperg, VanishingNodeCollapsesToSingleRow) {
  // beta = 2, mu = -1: only one-row partitions survive and every term is t^k.
  const double t = 0.998001;
  const auto r = jm::hyp2f1_equal({1.0, 1.0, 30.0, 1.0, 30, t});
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.terms_summed, r.trunc_weight + 1);
  EXPECT_NEAR(r.value * (1 - t), 1.0, 1e-9);
}

TEST(Hyperg, DivergenceGuardCarriesPartialSum) {
  try {
    jm::hyp2f1_equal({6.0, 6.0, 1.0, 1.0, 1, 0.97});
    FAIL() << "expected non-convergence";
  } catch (const jm::SeriesNonConvergence& e) {
    EXPECT_FALSE(e.partial().converged);
    EXPECT_GT(e.partial().trunc_weight, 50);
    EXPECT_GT(e.partial().value, 1.0);
  }
}

TEST(Hyperg, BudgetExhaustionThrows) {
  jm::SeriesOptions o;
  o.max_terms = 1000;
  EXPECT_THROW(jm::hyp1f0_equal(0.5, 1.0, 6, 0.9, o), jm::SeriesNonConvergence);
}

TEST(Hyperg, RejectsOutsideUnitDisc) {
  EXPECT_THROW(jm::hyp2f1_equal({1.0, 1.0, 2.0, 1.0, 1, 1.2}), jm::InvalidArgument);
  EXPECT_THROW(jm::hyp1f0_equal(1.0, 1.0, 1, -1.0), jm::InvalidArgument);
  jm::SeriesOptions bad;
  bad.rel_tol = 0;
  EXPECT_THROW(jm::hyp1f0_equal(1.0, 1.0, 1, 0.5, bad), jm::InvalidArgument);
}

TEST(Hyperg, ConvergedImpliesTailWithinTolerance) {
  for (double t : {-0.7, -0.2, 0.3, 0.8}) {
    const auto r = jm::hyp2f1_equal({0.7, -1.3, 2.4, 0.5, 3, t});
    ASSERT_TRUE(r.converged);
    EXPECT_GE(r.tail_estimate, 0.0);
    EXPECT_LE(r.tail_estimate, 1e-12 * std::fabs(r.value));
  }
}

TEST(Hyperg, BitReproducible) {
  const jm::Hyp2F1Params<double> p{0.75, 0.75, 3.3, 0.5, 3, 0.6};
  const auto r1 = jm::hyp2f1_equal(p);
  const auto r2 = jm::hyp2f1_equal(p);
  EXPECT_EQ(r1.value, r2.value);
  EXPECT_EQ(r1.tail_estimate, r2.tail_estimate);
  EXPECT_EQ(r1.terms_summed, r2.terms_summed);
}
