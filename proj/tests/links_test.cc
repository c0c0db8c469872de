// Copyright 2026 The slodds Authors.
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


#include "slodds/links.h"

#include <cmath>
#include <random>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/distributions/poisson.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

namespace slodds {
namespace {

// P(Z = z) by convolving the two Poisson pmfs.
double SkellamByConvolution(int z, double mu1, double mu2) {
  boost::math::poisson_distribution<double> p1(mu1), p2(mu2);
  double total = 0;
  for (int k = std::max(0, -z); k < 400; ++k) {
    total += boost::math::pdf(p1, k + z) * boost::math::pdf(p2, k);
  }
  return total;
}

TEST(SigmoidTest, MatchesDefinitionAndSymmetry) {
  for (double x : {-30.0, -2.5, -0.1, 0.0, 0.3, 4.0, 25.0}) {
    EXPECT_NEAR(Sigmoid(x), 1.0 / (1.0 + std::exp(-x)), 1e-15);
    EXPECT_NEAR(Sigmoid(x) + Sigmoid(-x), 1.0, 1e-15);
  }
  EXPECT_EQ(Sigmoid(800.0), 1.0);
  EXPECT_EQ(Sigmoid(-800.0), 0.0);
}

TEST(SigmoidTest, LogSigmoidStaysFiniteInTails) {
  EXPECT_NEAR(LogSigmoid(-800.0), -800.0, 1e-12);
  EXPECT_NEAR(LogSigmoid(800.0), 0.0, 1e-300);
  EXPECT_NEAR(LogSigmoid(1.3), std::log(Sigmoid(1.3)), 1e-15);
}

TEST(SigmoidTest, LogitInvertsSigmoid) {
  for (double x : {-7.0, -0.5, 0.0, 2.0, 9.0}) {
    EXPECT_NEAR(Logit(Sigmoid(x)), x, 1e-9);
  }
  EXPECT_THROW(Logit(0.0), std::domain_error);
  EXPECT_THROW(Logit(1.0), std::domain_error);
}

TEST(TernaryProbsTest, PhiZeroHasNoDraws) {
  const OutcomeDistribution d = TernaryProbs(0.7, 0.0);
  EXPECT_DOUBLE_EQ(d.p_draw, 0.0);
  EXPECT_DOUBLE_EQ(d.p_win, Sigmoid(0.7));
}

TEST(TernaryProbsTest, KnownValues) {
  // l = 0, phi = log 3: win 1/2, lose 1/4, draw 1/4.
  const OutcomeDistribution d = TernaryProbs(0.0, std::log(3.0));
  EXPECT_NEAR(d.p_win, 0.5, 1e-15);
  EXPECT_NEAR(d.p_lose, 0.25, 1e-15);
  EXPECT_NEAR(d.p_draw, 0.25, 1e-15);
  EXPECT_THROW(TernaryProbs(0.0, -0.1), std::domain_error);
}

TEST(TernaryProbsTest, ValidOverRandomInputs) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> l(-20, 20), phi(0, 10);
  for (int k = 0; k < 1000; ++k) {
    const OutcomeDistribution d = TernaryProbs(l(rng), phi(rng));
    EXPECT_TRUE(d.IsValid(1e-12));
    EXPECT_GE(d.p_draw, 0.0);
  }
}

TEST(BesselTest, MatchesBoost) {
  for (int n : {0, 1, 2, 5, 12}) {
    for (double x : {0.01, 0.5, 1.0, 3.7, 10.0, 40.0}) {
      const double want = boost::math::cyl_bessel_i(n, x);
      EXPECT_NEAR(BesselI(n, x) / want, 1.0, 1e-13) << n << " " << x;
      EXPECT_NEAR(LogBesselI(n, x), std::log(want), 1e-12) << n << " " << x;
    }
  }
  EXPECT_EQ(BesselI(0, 0.0), 1.0);
  EXPECT_EQ(BesselI(3, 0.0), 0.0);
}

TEST(BesselTest, LogBesselBeyondDoubleRange) {
  using Big = boost::multiprecision::cpp_bin_float_50;
  for (double x : {800.0, 2000.0}) {
    const Big want = boost::math::cyl_bessel_i(3, Big(x));
    EXPECT_NEAR(LogBesselI(3, x), static_cast<double>(log(want)), 1e-9);
  }
  EXPECT_THROW(BesselI(0, 2000.0), std::overflow_error);
}

TEST(BesselTest, RejectsBadArguments) {
  EXPECT_THROW(BesselI(-1, 1.0), std::domain_error);
  EXPECT_THROW(LogBesselI(0, -1.0), std::domain_error);
}

TEST(SkellamTest, PmfMatchesPoissonConvolution) {
  const double pairs[][2] = {{1.5, 1.1}, {0.3, 2.8}, {4.0, 4.0}, {7.5, 0.2}};
  for (const auto& p : pairs) {
    for (int z = -6; z <= 6; ++z) {
      EXPECT_NEAR(SkellamPmf(z, {p[0], p[1]}),
                  SkellamByConvolution(z, p[0], p[1]), 1e-13);
    }
  }
}

TEST(SkellamTest, PmfSumsToOne) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> mu(0.05, 6.0);
  for (int k = 0; k < 20; ++k) {
    const SkellamParams p{mu(rng), mu(rng)};
    double total = 0;
    for (int z = -80; z <= 80; ++z) total += SkellamPmf(z, p);
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(SkellamTest, GradientMatchesFiniteDifferences) {
  const SkellamParams p{1.7, 0.9};
  const double h = 1e-6;
  for (int z : {-3, 0, 2, 5}) {
    const SkellamScore g = SkellamLogPmfGradient(z, p);
    const double d1 = (SkellamLogPmf(z, {p.mu1 + h, p.mu2}) -
                       SkellamLogPmf(z, {p.mu1 - h, p.mu2})) /
                      (2 * h);
    const double d2 = (SkellamLogPmf(z, {p.mu1, p.mu2 + h}) -
                       SkellamLogPmf(z, {p.mu1, p.mu2 - h})) /
                      (2 * h);
    EXPECT_NEAR(g.d_mu1, d1, 1e-7);
    EXPECT_NEAR(g.d_mu2, d2, 1e-7);
  }
}

TEST(SkellamTest, TernaryAggregatesThePmf) {
  const SkellamParams p{1.6, 1.2};
  double win = 0, lose = 0;
  for (int z = 1; z < 60; ++z) {
    win += SkellamByConvolution(z, p.mu1, p.mu2);
    lose += SkellamByConvolution(-z, p.mu1, p.mu2);
  }
  const OutcomeDistribution d = SkellamTernary(p);
  EXPECT_NEAR(d.p_win, win, 1e-10);
  EXPECT_NEAR(d.p_lose, lose, 1e-10);
  EXPECT_NEAR(d.p_draw, SkellamByConvolution(0, p.mu1, p.mu2), 1e-10);
  EXPECT_EQ(d.p_win + d.p_draw + d.p_lose, 1.0);
}

TEST(SkellamTest, EqualMeansAreSymmetric) {
  const OutcomeDistribution d = SkellamTernary({2.2, 2.2});
  EXPECT_NEAR(d.p_win, d.p_lose, 1e-12);
}

TEST(SkellamTest, RejectsNonPositiveMeans) {
  EXPECT_THROW(SkellamPmf(0, {0.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(SkellamTernary({1.0, -2.0}), std::invalid_argument);
}

TEST(OutcomeDistributionTest, MassAndValidity) {
  const OutcomeDistribution d{0.5, 0.3, 0.2};
  EXPECT_EQ(d.Mass(Outcome::kHomeWin), 0.5);
  EXPECT_EQ(d.Mass(Outcome::kDraw), 0.3);
  EXPECT_EQ(d.Mass(Outcome::kAwayWin), 0.2);
  EXPECT_TRUE(d.IsValid());
  EXPECT_FALSE((OutcomeDistribution{0.6, 0.3, 0.2}).IsValid());
  EXPECT_FALSE((OutcomeDistribution{1.1, 0.0, -0.1}).IsValid());
}

}  // namespace
}  // namespace slodds
