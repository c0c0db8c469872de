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


// Reference predictors: constant home-win, bookmaker odds and the
// independent / low-score-corrected Poisson score models.

#ifndef SLODDS_BASELINES_H_
#define SLODDS_BASELINES_H_

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "slodds/dataset.h"
#include "slodds/links.h"
#include "slodds/optimize.h"

namespace slodds {

struct HomeWinBaseline {
  // Empirical frequencies of home win, draw, away win in the training data.
  OutcomeDistribution frequencies;
  // The deterministic label used for accuracy.
  Outcome label = Outcome::kHomeWin;
};

// Throws std::invalid_argument on empty data.
HomeWinBaseline FitHomeWinBaseline(const Dataset& train);

// Inverse odds normalised to sum to one. Throws std::invalid_argument
// unless every price exceeds 1.
OutcomeDistribution OddsToProbs(const DecimalOdds& odds);

enum class PoissonVariant { kMaher, kDixonColes };

// Home goals ~ Poisson(alpha_i beta_j h), away goals ~ Poisson(alpha_j
// beta_i), with the low-score factor tau(x, y; rho) for Dixon-Coles.
struct PoissonBaselineState {
  PoissonVariant variant = PoissonVariant::kMaher;
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
  double h = 1;
  double rho = 0;
  double xi = 0;

  static PoissonBaselineState Initial(PoissonVariant variant, int n_teams,
                                      double xi);
};

// tau(x, y) of the Dixon-Coles model; 1 outside the four low-score cases.
double DixonColesTau(int x, int y, double lambda, double mu, double rho);

// exp(-xi * weeks between `date` and `reference`).
double DecayWeight(const Date& date, const Date& reference, double xi);

// Weighted log-likelihood of the observed scores. The weights decay from
// the last date in `data`; Maher uses no decay and no tau factor. -inf
// when some tau factor is not positive.
double PoissonLogLikelihood(const PoissonBaselineState& state,
                            const Dataset& data);

struct PoissonGradient {
  Eigen::VectorXd d_log_alpha;
  Eigen::VectorXd d_log_beta;
  double d_log_h = 0;
  double d_rho = 0;
};

PoissonGradient PoissonLogLikelihoodGradient(const PoissonBaselineState& state,
                                             const Dataset& data);

struct PoissonFitOptions {
  int max_iters = 5000;
  double tol = 1e-10;
  // Holds rho at this value when set (Dixon-Coles only).
  std::optional<double> fixed_rho;
};

struct PoissonFit {
  PoissonBaselineState state;
  std::vector<TraceRow> trace;
};

// Maximises the log-likelihood over log alpha, log beta, log h and rho.
// The result has geometric-mean-one alpha.
PoissonFit FitPoissonBaseline(const Dataset& data, PoissonVariant variant,
                              double xi, const PoissonFitOptions& options = {});

// Win/draw/lose masses from the joint score pmf. The grid starts at 0..10
// goals a side and grows until the mass outside it is below 1e-10; that
// mass goes to `truncated_mass` when given.
OutcomeDistribution PoissonPredictTernary(const PoissonBaselineState& state,
                                          int i, int j,
                                          double* truncated_mass = nullptr);

// Decay rates tried for Dixon-Coles, per week.
std::vector<double> DefaultDecayGrid();

}  // namespace slodds

#endif  // SLODDS_BASELINES_H_
