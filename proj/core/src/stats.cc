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
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace slodds {
namespace {

constexpr int kExactWilcoxonLimit = 25;

double NormalCdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Continued fraction for the incomplete beta (modified Lentz).
double BetaContinuedFraction(double a, double b, double x) {
  constexpr int kMaxIter = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

struct SignedRanks {
  std::vector<double> ranks;  // mid-ranks of |d|, non-zero d only
  std::vector<bool> positive;
  double tie_term = 0;        // sum of t^3 - t over tie groups
  double w_plus = 0;
};

SignedRanks RankDifferences(std::span<const double> a,
                            std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("paired samples differ in length");
  }
  std::vector<double> d;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double x = a[k] - b[k];
    if (x != 0) d.push_back(x);
  }
  std::vector<std::size_t> order(d.size());
  for (std::size_t k = 0; k < d.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::abs(d[x]) < std::abs(d[y]);
  });
  SignedRanks s;
  s.ranks.resize(d.size());
  s.positive.resize(d.size());
  std::size_t lo = 0;
  while (lo < order.size()) {
    std::size_t hi = lo;
    while (hi + 1 < order.size() &&
           std::abs(d[order[hi + 1]]) == std::abs(d[order[lo]])) {
      ++hi;
    }
    const double mid = 0.5 * static_cast<double>(lo + hi) + 1.0;
    const double t = static_cast<double>(hi - lo + 1);
    s.tie_term += t * t * t - t;
    for (std::size_t k = lo; k <= hi; ++k) s.ranks[order[k]] = mid;
    lo = hi + 1;
  }
  for (std::size_t k = 0; k < d.size(); ++k) {
    s.positive[k] = d[k] > 0;
    if (s.positive[k]) s.w_plus += s.ranks[k];
  }
  return s;
}

TestResult Combine(double statistic, double p_greater, double p_less,
                   Alternative alternative) {
  TestResult r;
  r.statistic = statistic;
  switch (alternative) {
    case Alternative::kGreater:
      r.p_value = p_greater;
      break;
    case Alternative::kLess:
      r.p_value = p_less;
      break;
    case Alternative::kTwoSided:
      r.p_value = std::min(1.0, 2.0 * std::min(p_greater, p_less));
      break;
  }
  r.p_value = std::clamp(r.p_value, 0.0, 1.0);
  return r;
}

TestResult Degenerate() {
  TestResult r;
  r.degenerate = true;
  return r;
}

}  // namespace

std::uint64_t StreamSeed(std::uint64_t seed, std::uint64_t index) {
  return seed ^ index;
}

Interval BootstrapCi(std::span<const double> values, int replicates,
                     double level, std::uint64_t seed) {
  if (values.empty()) throw std::invalid_argument("bootstrap needs data");
  if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  if (!(level > 0 && level < 1)) {
    throw std::invalid_argument("level must be in (0, 1)");
  }
  const std::size_t n = values.size();
  std::vector<double> means(replicates);
  for (int r = 0; r < replicates; ++r) {
    std::mt19937_64 rng(StreamSeed(seed, static_cast<std::uint64_t>(r)));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    double total = 0;
    for (std::size_t k = 0; k < n; ++k) total += values[pick(rng)];
    means[r] = total / static_cast<double>(n);
  }
  std::sort(means.begin(), means.end());
  const double alpha = 1.0 - level;
  const double b = static_cast<double>(replicates);
  // 1 - level is inexact (1 - 0.9 < 0.1); absorb that before rounding.
  constexpr double kSlack = 1e-9;
  auto lo_idx = static_cast<std::size_t>(std::floor(0.5 * alpha * b + kSlack));
  auto hi_idx = static_cast<std::size_t>(
      std::max(0.0, std::ceil((1.0 - 0.5 * alpha) * b - kSlack) - 1.0));
  lo_idx = std::min(lo_idx, means.size() - 1);
  hi_idx = std::min(hi_idx, means.size() - 1);
  return {means[lo_idx], means[hi_idx]};
}

double RegularizedIncompleteBeta(double a, double b, double x) {
  if (!(a > 0 && b > 0)) throw std::domain_error("beta parameters must be > 0");
  if (!(x >= 0 && x <= 1)) throw std::domain_error("x must lie in [0, 1]");
  if (x == 0) return 0;
  if (x == 1) return 1;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(log_front) * BetaContinuedFraction(a, b, x) / a;
  }
  return 1.0 - std::exp(log_front) * BetaContinuedFraction(b, a, 1.0 - x) / b;
}

double BinomialUpperTail(int k, int n, double p) {
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  return RegularizedIncompleteBeta(k, n - k + 1, p);
}

double BinomialLowerTail(int k, int n, double p) {
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  return RegularizedIncompleteBeta(n - k, k + 1, 1.0 - p);
}

Interval ClopperPearson(int k, int n, double level) {
  if (n < 1 || k < 0 || k > n) {
    throw std::invalid_argument("need 0 <= k <= n and n >= 1");
  }
  if (!(level > 0 && level < 1)) {
    throw std::invalid_argument("level must be in (0, 1)");
  }
  const double half_alpha = 0.5 * (1.0 - level);
  // Finds p in [0, 1] with tail(p) = half_alpha for a monotone tail.
  auto solve = [&](auto tail, bool increasing) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      const bool below = tail(mid) < half_alpha;
      if (below == increasing) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };
  Interval out{0.0, 1.0};
  if (k > 0) {
    out.lo = solve([&](double p) { return BinomialUpperTail(k, n, p); }, true);
  }
  if (k < n) {
    out.hi = solve([&](double p) { return BinomialLowerTail(k, n, p); }, false);
  }
  return out;
}

double StudentTCdf(double t, double df) {
  if (!(df > 0)) throw std::domain_error("degrees of freedom must be > 0");
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double tail =
      0.5 * RegularizedIncompleteBeta(0.5 * df, 0.5, df / (df + t * t));
  return t > 0 ? 1.0 - tail : tail;
}

TestResult PairedTTest(std::span<const double> a, std::span<const double> b,
                       Alternative alternative) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("paired samples differ in length");
  }
  const std::size_t n = a.size();
  if (n < 2) throw std::invalid_argument("paired t-test needs n >= 2");
  double mean = 0;
  for (std::size_t k = 0; k < n; ++k) mean += a[k] - b[k];
  mean /= static_cast<double>(n);
  double ss = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double e = a[k] - b[k] - mean;
    ss += e * e;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (sd == 0 && mean == 0) return Degenerate();
  const double t =
      sd == 0 ? std::copysign(std::numeric_limits<double>::infinity(), mean)
              : mean / (sd / std::sqrt(static_cast<double>(n)));
  const double df = static_cast<double>(n - 1);
  const double cdf = StudentTCdf(t, df);
  TestResult r = Combine(t, 1.0 - cdf, cdf, alternative);
  if (alternative == Alternative::kTwoSided && std::isfinite(t)) {
    // Direct form avoids cancellation in 1 - cdf.
    r.p_value = RegularizedIncompleteBeta(0.5 * df, 0.5, df / (df + t * t));
  }
  r.degenerate = sd == 0;
  return r;
}

TestResult WilcoxonSignedRankExact(std::span<const double> a,
                                   std::span<const double> b,
                                   Alternative alternative) {
  const SignedRanks s = RankDifferences(a, b);
  const std::size_t n = s.ranks.size();
  if (n == 0) return Degenerate();
  if (n > 62) throw std::invalid_argument("exact branch limited to n <= 62");
  // Doubled mid-ranks are integers; count sign patterns per doubled sum.
  std::vector<int> r2(n);
  int total = 0;
  for (std::size_t k = 0; k < n; ++k) {
    r2[k] = static_cast<int>(std::lround(2.0 * s.ranks[k]));
    total += r2[k];
  }
  std::vector<double> count(total + 1, 0.0);
  count[0] = 1.0;
  int reach = 0;
  for (int r : r2) {
    for (int v = reach; v >= 0; --v) {
      if (count[v] != 0) count[v + r] += count[v];
    }
    reach += r;
  }
  const double patterns = std::ldexp(1.0, static_cast<int>(n));
  const int observed = static_cast<int>(std::lround(2.0 * s.w_plus));
  double ge = 0, le = 0;
  for (int v = 0; v <= total; ++v) {
    if (v >= observed) ge += count[v];
    if (v <= observed) le += count[v];
  }
  return Combine(s.w_plus, ge / patterns, le / patterns, alternative);
}

TestResult WilcoxonSignedRankApprox(std::span<const double> a,
                                    std::span<const double> b,
                                    Alternative alternative) {
  const SignedRanks s = RankDifferences(a, b);
  const double n = static_cast<double>(s.ranks.size());
  if (n == 0) return Degenerate();
  const double mean = n * (n + 1) / 4.0;
  const double var = n * (n + 1) * (2 * n + 1) / 24.0 - s.tie_term / 48.0;
  if (!(var > 0)) return Degenerate();
  const double sd = std::sqrt(var);
  const double w = s.w_plus;
  TestResult r;
  r.statistic = w;
  switch (alternative) {
    case Alternative::kGreater:
      r.p_value = 1.0 - NormalCdf((w - mean - 0.5) / sd);
      break;
    case Alternative::kLess:
      r.p_value = NormalCdf((w - mean + 0.5) / sd);
      break;
    case Alternative::kTwoSided: {
      const double z = std::max(0.0, std::abs(w - mean) - 0.5) / sd;
      r.p_value = std::min(1.0, 2.0 * (1.0 - NormalCdf(z)));
      break;
    }
  }
  return r;
}

TestResult WilcoxonSignedRank(std::span<const double> a,
                              std::span<const double> b,
                              Alternative alternative) {
  std::size_t nonzero = 0;
  if (a.size() != b.size()) {
    throw std::invalid_argument("paired samples differ in length");
  }
  for (std::size_t k = 0; k < a.size(); ++k) nonzero += (a[k] != b[k]);
  if (nonzero <= kExactWilcoxonLimit) {
    return WilcoxonSignedRankExact(a, b, alternative);
  }
  return WilcoxonSignedRankApprox(a, b, alternative);
}

}  // namespace slodds
