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


#include "slodds/stats.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <gtest/gtest.h>

namespace slodds {
namespace {

TEST(StreamSeedTest, XorsTheIndex) {
  EXPECT_EQ(StreamSeed(42, 0), 42u);
  EXPECT_EQ(StreamSeed(42, 3), 41u);
  EXPECT_EQ(StreamSeed(0, 7), 7u);
}

TEST(BootstrapTest, ReplaysTheDocumentedStreams) {
  const std::vector<double> x = {0.3, -1.2, 2.5, 0.0, 1.1, 0.7, -0.4};
  const int b = 400;
  std::vector<double> means;
  for (int r = 0; r < b; ++r) {
    std::mt19937_64 rng(17u ^ static_cast<std::uint64_t>(r));
    std::uniform_int_distribution<std::size_t> pick(0, x.size() - 1);
    double t = 0;
    for (std::size_t k = 0; k < x.size(); ++k) t += x[pick(rng)];
    means.push_back(t / x.size());
  }
  std::sort(means.begin(), means.end());
  const Interval ci = BootstrapCi(x, b, 0.9, 17);
  EXPECT_EQ(ci.lo, means[20]);   // floor(0.05 * 400)
  EXPECT_EQ(ci.hi, means[379]);  // ceil(0.95 * 400) - 1
  EXPECT_EQ(BootstrapCi(x, b, 0.9, 17).lo, ci.lo);
}

TEST(BootstrapTest, BracketsTheMean) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(2.0, 1.0);
  std::vector<double> x(200);
  for (double& v : x) v = n(rng);
  double mean = 0;
  for (double v : x) mean += v / x.size();
  const Interval ci = BootstrapCi(x);
  EXPECT_LT(ci.lo, mean);
  EXPECT_GT(ci.hi, mean);
  EXPECT_LT(ci.hi - ci.lo, 0.5);
  const std::vector<double> flat(10, 3.0);
  EXPECT_EQ(BootstrapCi(flat).lo, 3.0);
  EXPECT_THROW(BootstrapCi(std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(BootstrapCi(flat, 0), std::invalid_argument);
}

TEST(IncompleteBetaTest, MatchesBoost) {
  for (double a : {0.5, 1.0, 2.5, 10.0, 40.0}) {
    for (double b : {0.5, 1.0, 3.0, 17.0}) {
      for (double x : {0.0, 1e-6, 0.05, 0.3, 0.5, 0.77, 0.999, 1.0}) {
        EXPECT_NEAR(RegularizedIncompleteBeta(a, b, x),
                    boost::math::ibeta(a, b, x), 1e-13)
            << a << ' ' << b << ' ' << x;
      }
    }
  }
  EXPECT_THROW(RegularizedIncompleteBeta(0, 1, 0.5), std::domain_error);
  EXPECT_THROW(RegularizedIncompleteBeta(1, 1, 1.5), std::domain_error);
}

TEST(BinomialTailTest, MatchesDirectSummation) {
  for (int n : {1, 5, 13, 30}) {
    for (double p : {0.02, 0.3, 0.5, 0.91}) {
      const boost::math::binomial_distribution<double> dist(n, p);
      for (int k = -1; k <= n + 1; ++k) {
        double upper = 0, lower = 0;
        for (int j = 0; j <= n; ++j) {
          if (j >= k) upper += boost::math::pdf(dist, j);
          if (j <= k) lower += boost::math::pdf(dist, j);
        }
        EXPECT_NEAR(BinomialUpperTail(k, n, p), upper, 1e-13);
        EXPECT_NEAR(BinomialLowerTail(k, n, p), lower, 1e-13);
      }
    }
  }
}

TEST(ClopperPearsonTest, MatchesBoostBounds) {
  using Dist = boost::math::binomial_distribution<double>;
  for (int n : {1, 7, 20, 100}) {
    for (int k = 0; k <= n; k += std::max(1, n / 7)) {
      const Interval ci = ClopperPearson(k, n, 0.95);
      EXPECT_NEAR(ci.lo, Dist::find_lower_bound_on_p(n, k, 0.025), 1e-10);
      EXPECT_NEAR(ci.hi, Dist::find_upper_bound_on_p(n, k, 0.025), 1e-10);
    }
  }
  const Interval zero = ClopperPearson(0, 10);
  EXPECT_EQ(zero.lo, 0.0);
  EXPECT_NEAR(zero.hi, 1 - std::pow(0.025, 0.1), 1e-12);
  EXPECT_EQ(ClopperPearson(10, 10).hi, 1.0);
  EXPECT_THROW(ClopperPearson(4, 3), std::invalid_argument);
  EXPECT_THROW(ClopperPearson(0, 0), std::invalid_argument);
}

TEST(StudentTTest, CdfMatchesBoost) {
  for (double df : {1.0, 2.0, 4.5, 19.0, 200.0}) {
    const boost::math::students_t_distribution<double> dist(df);
    for (double t : {-30.0, -2.1, -0.5, 0.0, 0.3, 1.7, 8.0}) {
      EXPECT_NEAR(StudentTCdf(t, df), boost::math::cdf(dist, t), 1e-13);
    }
  }
  EXPECT_EQ(StudentTCdf(INFINITY, 3), 1.0);
  EXPECT_THROW(StudentTCdf(0, 0), std::domain_error);
}

TEST(PairedTTest, MatchesTextbookFormula) {
  const std::vector<double> a = {5.1, 4.8, 6.0, 5.5, 5.9, 6.3};
  const std::vector<double> b = {4.9, 4.9, 5.2, 5.0, 5.8, 5.6};
  const int n = 6;
  double mean = 0;
  for (int k = 0; k < n; ++k) mean += (a[k] - b[k]) / n;
  double ss = 0;
  for (int k = 0; k < n; ++k) ss += std::pow(a[k] - b[k] - mean, 2);
  const double t = mean / std::sqrt(ss / (n - 1) / n);
  const boost::math::students_t_distribution<double> dist(n - 1);
  const TestResult two = PairedTTest(a, b);
  EXPECT_NEAR(two.statistic, t, 1e-12);
  EXPECT_NEAR(two.p_value, 2 * boost::math::cdf(boost::math::complement(dist, t)),
              1e-13);
  EXPECT_NEAR(PairedTTest(a, b, Alternative::kGreater).p_value,
              boost::math::cdf(boost::math::complement(dist, t)), 1e-13);
  EXPECT_NEAR(PairedTTest(a, b, Alternative::kLess).p_value,
              boost::math::cdf(dist, t), 1e-13);
}

TEST(PairedTTest, Degenerate) {
  const std::vector<double> a = {1, 2, 3};
  EXPECT_TRUE(PairedTTest(a, a).degenerate);
  EXPECT_EQ(PairedTTest(a, a).p_value, 1.0);
  const std::vector<double> b = {0, 1, 2};
  const TestResult shift = PairedTTest(a, b, Alternative::kGreater);
  EXPECT_TRUE(shift.degenerate);
  EXPECT_EQ(shift.p_value, 0.0);
  EXPECT_THROW(PairedTTest(a, std::vector<double>{1.0}), std::invalid_argument);
}

// Enumerates all 2^n sign assignments of the mid-ranks.
struct Enumerated {
  double w_plus, p_greater, p_less;
};

Enumerated EnumerateWilcoxon(const std::vector<double>& d_all) {
  std::vector<double> d;
  for (double x : d_all) {
    if (x != 0) d.push_back(x);
  }
  const std::size_t n = d.size();
  std::vector<double> rank(n);
  for (std::size_t i = 0; i < n; ++i) {
    double below = 0, equal = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(d[j]) < std::abs(d[i])) ++below;
      if (std::abs(d[j]) == std::abs(d[i])) ++equal;
    }
    rank[i] = below + (equal + 1) / 2;
  }
  double w = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] > 0) w += rank[i];
  }
  double ge = 0, le = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) s += rank[i];
    }
    if (s >= w - 1e-9) ++ge;
    if (s <= w + 1e-9) ++le;
  }
  const double total = std::ldexp(1.0, static_cast<int>(n));
  return {w, ge / total, le / total};
}

TEST(WilcoxonTest, ExactMatchesEnumeration) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> level(-4, 6);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + trial % 10;  // up to 12
    std::vector<double> a(n), b(n, 0.0), d(n);
    for (int k = 0; k < n; ++k) {
      // Coarse values force ties and zeros.
      a[k] = 0.5 * level(rng);
      d[k] = a[k];
    }
    const Enumerated want = EnumerateWilcoxon(d);
    if (want.p_greater == 1 && want.p_less == 1) continue;
    const TestResult g = WilcoxonSignedRankExact(a, b, Alternative::kGreater);
    const TestResult l = WilcoxonSignedRankExact(a, b, Alternative::kLess);
    const TestResult t = WilcoxonSignedRank(a, b, Alternative::kTwoSided);
    EXPECT_DOUBLE_EQ(g.statistic, want.w_plus);
    EXPECT_NEAR(g.p_value, want.p_greater, 1e-15);
    EXPECT_NEAR(l.p_value, want.p_less, 1e-15);
    EXPECT_NEAR(t.p_value,
                std::min(1.0, 2 * std::min(want.p_greater, want.p_less)), 1e-15);
  }
}

TEST(WilcoxonTest, AllPositiveOneSided) {
  std::vector<double> a(10), b(10, 0.0);
  for (int k = 0; k < 10; ++k) a[k] = k + 1;
  const TestResult r = WilcoxonSignedRank(a, b, Alternative::kGreater);
  EXPECT_EQ(r.statistic, 55.0);
  EXPECT_DOUBLE_EQ(r.p_value, 1.0 / 1024);
  EXPECT_DOUBLE_EQ(WilcoxonSignedRank(a, b).p_value, 2.0 / 1024);
}

TEST(WilcoxonTest, ApproximationTracksExactNearTheSwitch) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.3, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> a(25), b(25);
    for (int k = 0; k < 25; ++k) {
      a[k] = n(rng);
      b[k] = n(rng) - 0.2;
    }
    for (Alternative alt : {Alternative::kTwoSided, Alternative::kGreater}) {
      EXPECT_NEAR(WilcoxonSignedRankApprox(a, b, alt).p_value,
                  WilcoxonSignedRankExact(a, b, alt).p_value, 0.01);
    }
  }
}

TEST(WilcoxonTest, SwitchesBranchAboveTwentyFive) {
  std::vector<double> a(26), b(26, 0.0);
  for (int k = 0; k < 26; ++k) a[k] = (k % 3 == 0 ? -1.0 : 1.0) * (k + 1);
  EXPECT_EQ(WilcoxonSignedRank(a, b, Alternative::kGreater).p_value,
            WilcoxonSignedRankApprox(a, b, Alternative::kGreater).p_value);
  a.pop_back();
  b.pop_back();
  EXPECT_EQ(WilcoxonSignedRank(a, b, Alternative::kGreater).p_value,
            WilcoxonSignedRankExact(a, b, Alternative::kGreater).p_value);
}

TEST(WilcoxonTest, DegenerateWithoutDifferences) {
  const std::vector<double> a = {1, 2, 3};
  const TestResult r = WilcoxonSignedRank(a, a);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_THROW(WilcoxonSignedRank(a, std::vector<double>{1}),
               std::invalid_argument);
}

}  // namespace
}  // namespace slodds
