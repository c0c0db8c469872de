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


// Confidence intervals and paired tests.

#ifndef SLODDS_STATS_H_
#define SLODDS_STATS_H_

#include <cstdint>
#include <span>

namespace slodds {

struct Interval {
  double lo = 0;
  double hi = 0;
};

// Seed of replicate `index` under base seed `seed`: seed XOR index. All
// resampling in the library derives its std::mt19937_64 streams this way.
std::uint64_t StreamSeed(std::uint64_t seed, std::uint64_t index);

// Percentile interval of `replicates` resampled means. Replicate r draws
// its indices from std::mt19937_64(StreamSeed(seed, r)). Non-finite
// values must be removed by the caller. Throws std::invalid_argument on
// empty input or replicates < 1.
Interval BootstrapCi(std::span<const double> values, int replicates = 5000,
                     double level = 0.95, std::uint64_t seed = 0);

// Regularised incomplete beta I_x(a, b) by continued fraction.
double RegularizedIncompleteBeta(double a, double b, double x);

// P(X >= k) and P(X <= k) for X ~ Binomial(n, p).
double BinomialUpperTail(int k, int n, double p);
double BinomialLowerTail(int k, int n, double p);

// Exact binomial interval, endpoints found by bisection on the tails.
Interval ClopperPearson(int k, int n, double level = 0.95);

enum class Alternative {
  kTwoSided,
  kGreater,  // a tends to exceed b
  kLess,
};

struct TestResult {
  double statistic = 0;
  double p_value = 1;
  // Zero variance (t-test) or no non-zero differences (Wilcoxon).
  bool degenerate = false;
};

// Student t CDF with `df` degrees of freedom.
double StudentTCdf(double t, double df);

TestResult PairedTTest(std::span<const double> a, std::span<const double> b,
                       Alternative alternative = Alternative::kTwoSided);

// Signed-rank test on a - b, zero differences dropped and tied magnitudes
// given mid-ranks. Exact null distribution for up to 25 non-zero
// differences, otherwise a normal approximation with tie and continuity
// corrections. The statistic is W+, the rank sum of positive differences.
TestResult WilcoxonSignedRank(std::span<const double> a,
                              std::span<const double> b,
                              Alternative alternative = Alternative::kTwoSided);

// Same test with the branch forced; used to compare the two.
TestResult WilcoxonSignedRankApprox(std::span<const double> a,
                                    std::span<const double> b,
                                    Alternative alternative);
TestResult WilcoxonSignedRankExact(std::span<const double> a,
                                   std::span<const double> b,
                                   Alternative alternative);

}  // namespace slodds

#endif  // SLODDS_STATS_H_
