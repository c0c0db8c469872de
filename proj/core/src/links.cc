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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace slodds {
namespace {

constexpr double kSkellamTailMass = 1e-10;
constexpr int kSkellamMaxSupport = 500;
// Series terms this far (in log units) below the running peak no longer
// change a double.
constexpr double kNegligibleLogTerm = 40.0;

void CheckSkellam(const SkellamParams& p) {
  if (!(p.mu1 > 0) || !(p.mu2 > 0) || !std::isfinite(p.mu1) ||
      !std::isfinite(p.mu2)) {
    throw std::invalid_argument("Skellam means must be positive and finite");
  }
}

}  // namespace

double OutcomeDistribution::Mass(Outcome outcome) const {
  switch (outcome) {
    case Outcome::kHomeWin:
      return p_win;
    case Outcome::kDraw:
      return p_draw;
    case Outcome::kAwayWin:
      return p_lose;
  }
  return 0;
}

bool OutcomeDistribution::IsValid(double tol) const {
  for (double p : {p_win, p_draw, p_lose}) {
    if (!(p >= 0.0 && p <= 1.0)) return false;
  }
  return std::abs(p_win + p_draw + p_lose - 1.0) <= tol;
}

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

double LogSigmoid(double x) {
  if (x >= 0) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

double Logit(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("logit is defined on (0, 1), got " +
                            std::to_string(p));
  }
  return std::log(p) - std::log1p(-p);
}

OutcomeDistribution TernaryProbs(double log_odds, double phi) {
  if (!(phi >= 0.0)) {
    throw std::domain_error("draw parameter phi must be non-negative");
  }
  OutcomeDistribution d;
  d.p_win = Sigmoid(log_odds);
  d.p_lose = Sigmoid(-log_odds - phi);
  d.p_draw = Sigmoid(-log_odds) - d.p_lose;
  return d;
}

double BesselI(int order, double x) {
  if (order < 0) throw std::domain_error("Bessel order must be non-negative");
  if (!(x >= 0.0)) throw std::domain_error("Bessel argument must be >= 0");
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  const double half = 0.5 * x;
  const double quarter_sq = half * half;
  double term = std::exp(order * std::log(half) - std::lgamma(order + 1.0));
  double sum = term;
  for (int k = 0; k < 1000000; ++k) {
    term *= quarter_sq / ((k + 1.0) * (order + k + 1.0));
    sum += term;
    if (!std::isfinite(sum)) {
      throw std::overflow_error("BesselI overflows for x = " +
                                std::to_string(x));
    }
    // Past the peak the terms decrease monotonically.
    if ((k + 1.0) * (order + k + 1.0) > quarter_sq &&
        term <= sum * std::numeric_limits<double>::epsilon() * 0.5) {
      return sum;
    }
  }
  throw std::overflow_error("BesselI series did not converge");
}

double LogBesselI(int order, double x) {
  if (order < 0) throw std::domain_error("Bessel order must be non-negative");
  if (!(x >= 0.0)) throw std::domain_error("Bessel argument must be >= 0");
  if (x == 0.0) {
    return order == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  const double log_half = std::log(0.5 * x);
  double log_term = order * log_half - std::lgamma(order + 1.0);
  std::vector<double> terms{log_term};
  double peak = log_term;
  for (int k = 0; k < 10000000; ++k) {
    log_term += 2.0 * log_half - std::log(k + 1.0) - std::log(order + k + 1.0);
    terms.push_back(log_term);
    peak = std::max(peak, log_term);
    if ((k + 1.0) * (order + k + 1.0) > 0.25 * x * x &&
        log_term < peak - kNegligibleLogTerm) {
      break;
    }
  }
  double acc = 0;
  for (double t : terms) acc += std::exp(t - peak);
  return peak + std::log(acc);
}

double SkellamLogPmf(int z, const SkellamParams& params) {
  CheckSkellam(params);
  const double x = 2.0 * std::sqrt(params.mu1 * params.mu2);
  return -(params.mu1 + params.mu2) +
         0.5 * z * (std::log(params.mu1) - std::log(params.mu2)) +
         LogBesselI(std::abs(z), x);
}

double SkellamPmf(int z, const SkellamParams& params) {
  return std::exp(SkellamLogPmf(z, params));
}

SkellamScore SkellamLogPmfGradient(int z, const SkellamParams& params) {
  const double here = SkellamLogPmf(z, params);
  return {std::exp(SkellamLogPmf(z - 1, params) - here) - 1.0,
          std::exp(SkellamLogPmf(z + 1, params) - here) - 1.0};
}

OutcomeDistribution SkellamTernary(const SkellamParams& params) {
  CheckSkellam(params);
  OutcomeDistribution d;
  d.p_draw = SkellamPmf(0, params);
  for (int z = 1; z <= kSkellamMaxSupport; ++z) {
    d.p_win += SkellamPmf(z, params);
    d.p_lose += SkellamPmf(-z, params);
    if (1.0 - (d.p_win + d.p_draw + d.p_lose) < kSkellamTailMass) break;
  }
  const double total = d.p_win + d.p_draw + d.p_lose;
  d.p_win /= total;
  d.p_draw /= total;
  d.p_lose = 1.0 - (d.p_win + d.p_draw);  // sums to exactly 1
  return d;
}

}  // namespace slodds
