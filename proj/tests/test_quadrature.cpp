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

#include "jackmoment/quadrature.hpp"

namespace jm = jackmoment;

namespace {

double beta_fn(double a, double b) { return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)); }

} // namespace

TEST(GaussJacobi, MidpointRule) {
  const auto g = jm::gauss_jacobi(1, 0.0, 0.0);
  ASSERT_EQ(g.nodes.size(), 1u);
  EXPECT_NEAR(g.nodes[0], 0.5, 1e-15);
  EXPECT_NEAR(g.weights[0], 1.0, 1e-15);
}

TEST(GaussJacobi, ExactOnPolynomials) {
  for (double a : {0.0, 0.5, -0.5, 1.0, 2.0, 4.0})
    for (double b : {0.0, 0.5, -0.5, 1.0, 3.0, 9.0}) {
      const int n = 12;
      const auto g = jm::gauss_jacobi(n, a, b);
      for (int k = 0; k < 2 * n; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], k);
        EXPECT_NEAR(s / beta_fn(a + k + 1, b + 1), 1.0, 1e-12) << a << " " << b << " " << k;
      }
    }
}

TEST(GaussJacobi, NodesInsideUnitInterval) {
  const auto g = jm::gauss_jacobi(200, -0.5, 0.5);
  for (double x : g.nodes) {
    EXPECT_GT(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
}

TEST(GaussJacobi, RejectsBadInput) {
  EXPECT_THROW(jm::gauss_jacobi(0, 0, 0), jm::InvalidArgument);
  EXPECT_THROW(jm::gauss_jacobi(4, -1.0, 0), jm::InvalidArgument);
}

TEST(PeriodicRule, ExactOnTrigPolynomials) {
  const auto p = jm::periodic_rule(16);
  double s = 0.0, c = 0.0;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    s += p.weights[i];
    c += p.weights[i] * std::cos(5 * p.nodes[i]);
  }
  EXPECT_NEAR(s, 2 * M_PI, 1e-14);
  EXPECT_NEAR(c, 0.0, 1e-14);
}

TEST(QuadratureMoment, PoissonKernel) {
  // (1/2pi) int |z - e^{i theta}|^{-2} d theta = 1/(1 - |z|^2)
  const auto r = jm::quadrature_moment({jm::CircularEnsemble{2.0, 1}, -1.0, 0.5});
  EXPECT_NEAR(r.value, 4.0 / 3.0, 1e-12);
}

TEST(QuadratureMoment, UnitarySecondMoment) {
  // beta = 2: <|det(z - U)|^2> = sum_{m <= N} |z|^{2m}
  for (int n = 1; n <= 3; ++n) {
    const double t = 0.36;
    double expect = 0.0;
    for (int m = 0; m <= n; ++m) expect += std::pow(t, m);
    const auto r = jm::quadrature_moment({jm::CircularEnsemble{2.0, n}, 1.0, 0.6});
    EXPECT_NEAR(r.value / expect, 1.0, 1e-11) << n;
  }
}

TEST(QuadratureMoment, CircularBetaOneThreePoints) {
  // beta = 1 densities have |sin| kinks; the gap parametrization still converges.
  const auto r = jm::quadrature_moment({jm::CircularEnsemble{1.0, 3}, -0.75, 0.6});
  EXPECT_GT(r.value, 1.0);
  EXPECT_NEAR(r.value, r.previous, 1e-10 * r.value);
}

TEST(QuadratureMoment, JacobiHandIntegral) {
  // int_0^1 (2 - t)^{-2} dt = 1/2
  const auto r = jm::quadrature_moment({jm::JacobiEnsemble{0, 0, 2.0, 1}, -1.0, 2.0});
  EXPECT_NEAR(r.value, 0.5, 1e-12);
  // x < 0 is outside the support as well: int_0^1 (1 + t)^{-2} dt = 1/2
  const auto s = jm::quadrature_moment({jm::JacobiEnsemble{0, 0, 2.0, 1}, -1.0, -1.0});
  EXPECT_NEAR(s.value, 0.5, 1e-12);
}

TEST(QuadratureMoment, GroupClosedForms) {
  // mu = 1: average of (z^2 - 2 z cos theta + 1)^2 against each cos theta law.
  const double z = 1.5, q = z * z + 1;
  const auto sp = jm::quadrature_moment({jm::ClassicalGroup{jm::GroupFamily::Sp, 1}, 1.0, 0.5});
  EXPECT_NEAR(sp.value, q * q + z * z, 1e-11);  // sin^2 law: E cos = 0, E cos^2 = 1/4
  const auto op = jm::quadrature_moment({jm::ClassicalGroup{jm::GroupFamily::OPlusEven, 1}, 1.0, 0.5});
  EXPECT_NEAR(op.value, q * q + 2 * z * z, 1e-11);  // uniform: E cos^2 = 1/2
  const auto om = jm::quadrature_moment({jm::ClassicalGroup{jm::GroupFamily::OMinusEven, 2}, 1.0, 0.5});
  // (1 + cos theta) law: E cos = 1/2, E cos^2 = 1/2; times (z^2 - 1)^2
  EXPECT_NEAR(om.value, std::pow(z * z - 1, 2) * (q * q - 2 * z * q + 2 * z * z), 1e-11);
}

TEST(QuadratureMoment, ZeroMomentIsOne) {
  EXPECT_EQ(jm::quadrature_moment({jm::CircularEnsemble{4.0, 3}, 0.0, 0.4}).value, 1.0);
}

TEST(QuadratureMoment, RejectsSupportAndLargeN) {
  EXPECT_THROW(jm::quadrature_moment({jm::CircularEnsemble{2.0, 2}, -0.5, 1.0}), jm::InvalidArgument);
  EXPECT_THROW(jm::quadrature_moment({jm::JacobiEnsemble{0, 0, 2.0, 2}, -0.5, 0.5}), jm::InvalidArgument);
  EXPECT_THROW(jm::quadrature_moment({jm::CircularEnsemble{2.0, 4}, -0.5, 0.3}), jm::InvalidArgument);
  EXPECT_THROW(jm::quadrature_moment({jm::ClassicalGroup{jm::GroupFamily::Sp, 2}, -0.5, 0.0}),
               jm::InvalidArgument);
}
