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

#include "slodds/baselines.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace slodds {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kInitialGoalGrid = 10;
constexpr double kGridTailMass = 1e-10;

struct Rates {
  double lambda;  // home
  double mu;      // away
};

Rates RatesOf(const PoissonBaselineState& s, int i, int j) {
  return {s.alpha[i] * s.beta[j] * s.h, s.alpha[j] * s.beta[i]};
}

bool UsesTau(const PoissonBaselineState& s) {
  return s.variant == PoissonVariant::kDixonColes;
}

std::vector<double> Weights(const PoissonBaselineState& s,
                            const Dataset& data) {
  std::vector<double> w(data.size(), 1.0);
  if (!UsesTau(s) || s.xi == 0 || data.empty()) return w;
  const Date last = data.records().back().date;
  for (std::size_t k = 0; k < data.size(); ++k) {
    w[k] = DecayWeight(data[k].date, last, s.xi);
  }
  return w;
}

double LogPoisson(int x, double rate) {
  return x * std::log(rate) - rate - std::lgamma(x + 1.0);
}

// Poisson pmf values 0..n.
std::vector<double> PoissonRow(double rate, int n) {
  std::vector<double> p(n + 1);
  p[0] = std::exp(-rate);
  for (int k = 1; k <= n; ++k) p[k] = p[k - 1] * rate / k;
  return p;
}

}  // namespace

HomeWinBaseline FitHomeWinBaseline(const Dataset& train) {
  if (train.empty()) throw std::invalid_argument("training data is empty");
  double win = 0, draw = 0, lose = 0;
  for (const MatchRecord& r : train) {
    switch (r.outcome) {
      case Outcome::kHomeWin:
        ++win;
        break;
      case Outcome::kDraw:
        ++draw;
        break;
      case Outcome::kAwayWin:
        ++lose;
        break;
    }
  }
  const double n = static_cast<double>(train.size());
  HomeWinBaseline b;
  b.frequencies.p_win = win / n;
  b.frequencies.p_draw = draw / n;
  b.frequencies.p_lose = lose / n;
  return b;
}

OutcomeDistribution OddsToProbs(const DecimalOdds& odds) {
  if (!(odds.home > 1 && odds.draw > 1 && odds.away > 1)) {
    throw std::invalid_argument("decimal odds must exceed 1");
  }
  const double a = 1.0 / odds.home;
  const double b = 1.0 / odds.draw;
  const double c = 1.0 / odds.away;
  const double total = a + b + c;
  OutcomeDistribution d;
  d.p_win = a / total;
  d.p_draw = b / total;
  d.p_lose = c / total;
  return d;
}

PoissonBaselineState PoissonBaselineState::Initial(PoissonVariant variant,
                                                   int n_teams, double xi) {
  PoissonBaselineState s;
  s.variant = variant;
  s.alpha = Eigen::VectorXd::Ones(n_teams);
  s.beta = Eigen::VectorXd::Ones(n_teams);
  s.xi = xi;
  return s;
}

double DixonColesTau(int x, int y, double lambda, double mu, double rho) {
  if (x == 0 && y == 0) return 1 - lambda * mu * rho;
  if (x == 0 && y == 1) return 1 + lambda * rho;
  if (x == 1 && y == 0) return 1 + mu * rho;
  if (x == 1 && y == 1) return 1 - rho;
  return 1;
}

double DecayWeight(const Date& date, const Date& reference, double xi) {
  using std::chrono::sys_days;
  const double days =
      static_cast<double>((sys_days(reference) - sys_days(date)).count());
  return std::exp(-xi * days / 7.0);
}

double PoissonLogLikelihood(const PoissonBaselineState& state,
                            const Dataset& data) {
  const std::vector<double> w = Weights(state, data);
  double total = 0;
  for (std::size_t k = 0; k < data.size(); ++k) {
    const MatchRecord& r = data[k];
    const Rates rt = RatesOf(state, r.home, r.away);
    double ll = LogPoisson(r.home_goals, rt.lambda) +
                LogPoisson(r.away_goals, rt.mu);
    if (UsesTau(state)) {
      const double tau =
          DixonColesTau(r.home_goals, r.away_goals, rt.lambda, rt.mu, state.rho);
      if (!(tau > 0)) return kNegInf;
      ll += std::log(tau);
    }
    total += w[k] * ll;
  }
  return total;
}

PoissonGradient PoissonLogLikelihoodGradient(const PoissonBaselineState& state,
                                             const Dataset& data) {
  const Eigen::Index q = state.alpha.size();
  PoissonGradient g;
  g.d_log_alpha = Eigen::VectorXd::Zero(q);
  g.d_log_beta = Eigen::VectorXd::Zero(q);
  const std::vector<double> w = Weights(state, data);
  for (std::size_t k = 0; k < data.size(); ++k) {
    const MatchRecord& r = data[k];
    const int i = r.home;
    const int j = r.away;
    const Rates rt = RatesOf(state, i, j);
    double d_lambda = r.home_goals - rt.lambda;  // d / d log lambda
    double d_mu = r.away_goals - rt.mu;          // d / d log mu
    if (UsesTau(state)) {
      const int x = r.home_goals;
      const int y = r.away_goals;
      const double tau = DixonColesTau(x, y, rt.lambda, rt.mu, state.rho);
      const double lm = rt.lambda * rt.mu;
      if (x == 0 && y == 0) {
        d_lambda += -lm * state.rho / tau;
        d_mu += -lm * state.rho / tau;
        g.d_rho += w[k] * (-lm / tau);
      } else if (x == 0 && y == 1) {
        d_lambda += rt.lambda * state.rho / tau;
        g.d_rho += w[k] * (rt.lambda / tau);
      } else if (x == 1 && y == 0) {
        d_mu += rt.mu * state.rho / tau;
        g.d_rho += w[k] * (rt.mu / tau);
      } else if (x == 1 && y == 1) {
        g.d_rho += w[k] * (-1.0 / tau);
      }
    }
    d_lambda *= w[k];
    d_mu *= w[k];
    g.d_log_alpha[i] += d_lambda;
    g.d_log_beta[j] += d_lambda;
    g.d_log_h += d_lambda;
    g.d_log_alpha[j] += d_mu;
    g.d_log_beta[i] += d_mu;
  }
  return g;
}

PoissonFit FitPoissonBaseline(const Dataset& data, PoissonVariant variant,
                              double xi, const PoissonFitOptions& options) {
  if (data.empty()) throw std::invalid_argument("training data is empty");
  if (!(xi >= 0)) throw std::invalid_argument("xi must be non-negative");
  const int q = data.n_teams();
  const bool fit_rho =
      variant == PoissonVariant::kDixonColes && !options.fixed_rho.has_value();
  PoissonBaselineState work = PoissonBaselineState::Initial(variant, q, xi);
  if (options.fixed_rho) work.rho = *options.fixed_rho;
  const Eigen::Index n = 2 * q + 1 + (fit_rho ? 1 : 0);

  auto unpack = [&](const Eigen::VectorXd& x) {
    work.alpha = x.segment(0, q).array().exp();
    work.beta = x.segment(q, q).array().exp();
    work.h = std::exp(x[2 * q]);
    if (fit_rho) work.rho = x[2 * q + 1];
  };
  Objective f = [&](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
    unpack(x);
    const double ll = PoissonLogLikelihood(work, data);
    grad->resize(n);
    if (!std::isfinite(ll)) {
      grad->setZero();
      return ll;
    }
    const PoissonGradient g = PoissonLogLikelihoodGradient(work, data);
    grad->segment(0, q) = g.d_log_alpha;
    grad->segment(q, q) = g.d_log_beta;
    (*grad)[2 * q] = g.d_log_h;
    if (fit_rho) (*grad)[2 * q + 1] = g.d_rho;
    return ll;
  };
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n);
  AscentOptions opts;
  opts.max_iters = options.max_iters;
  opts.tol = options.tol;
  opts.initial_step = 1.0 / static_cast<double>(data.size());
  AscentResult r = MaximizeAscent(f, x0, opts);

  // alpha -> alpha / c, beta -> beta * c leaves every rate unchanged.
  const double shift = r.x.segment(0, q).mean();
  r.x.segment(0, q).array() -= shift;
  r.x.segment(q, q).array() += shift;
  unpack(r.x);
  return {work, std::move(r.trace)};
}

OutcomeDistribution PoissonPredictTernary(const PoissonBaselineState& state,
                                          int i, int j,
                                          double* truncated_mass) {
  if (i == j) throw std::invalid_argument("a team cannot play itself");
  const Rates rt = RatesOf(state, i, j);
  int n = kInitialGoalGrid;
  std::vector<double> px, py;
  double covered = 0;
  for (;;) {
    px = PoissonRow(rt.lambda, n);
    py = PoissonRow(rt.mu, n);
    double sx = 0, sy = 0;
    for (int k = 0; k <= n; ++k) {
      sx += px[k];
      sy += py[k];
    }
    covered = sx * sy;
    if (1.0 - covered < kGridTailMass || n >= 1000) break;
    n *= 2;
  }
  OutcomeDistribution d;
  for (int x = 0; x <= n; ++x) {
    for (int y = 0; y <= n; ++y) {
      double p = px[x] * py[y];
      if (UsesTau(state) && x < 2 && y < 2) {
        p *= DixonColesTau(x, y, rt.lambda, rt.mu, state.rho);
      }
      if (x > y) {
        d.p_win += p;
      } else if (x == y) {
        d.p_draw += p;
      } else {
        d.p_lose += p;
      }
    }
  }
  const double total = d.p_win + d.p_draw + d.p_lose;
  d.p_win /= total;
  d.p_draw /= total;
  d.p_lose = 1.0 - (d.p_win + d.p_draw);  // sums to exactly 1
  if (truncated_mass != nullptr) *truncated_mass = std::max(0.0, 1.0 - covered);
  return d;
}

std::vector<double> DefaultDecayGrid() {
  return {0.0, 0.0005, 0.001, 0.002, 0.005};
}

}  // namespace slodds
