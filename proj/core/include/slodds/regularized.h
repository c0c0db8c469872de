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


// Empirical log-odds matrices and nuclear-norm regularised estimation.

#ifndef SLODDS_REGULARIZED_H_
#define SLODDS_REGULARIZED_H_

#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "slodds/dataset.h"
#include "slodds/links.h"

namespace slodds {

// Outcome counts of row team against column team, home and away pooled.
// Binary counts skip draws. Ternary counts keep one matrix per level
// (win, draw, lose) from the row team's side.
struct CountMatrices {
  bool ternary = false;
  Eigen::MatrixXd wins;   // binary W, ternary W[win]
  Eigen::MatrixXd draws;  // ternary only
  Eigen::MatrixXd losses; // ternary only
  Eigen::MatrixXd n;
};

CountMatrices CountOutcomes(const Dataset& data, bool ternary);

struct EmpiricalLogOdds {
  Eigen::MatrixXd l1;  // binary L, or ternary L(1) = log(win / (draw + lose))
  Eigen::MatrixXd l2;  // ternary L(2) = log((win + draw) / lose)
  std::size_t undefined = 0;  // entries with no matches under eps = 0 (NaN)
  std::size_t infinite = 0;   // entries at +-inf under eps = 0
};

// Smoothed frequencies (W + eps) / (N + 2 eps), or (W[k] + eps) /
// (N + 3 eps) for ternary counts, mapped to log-odds. The diagonal holds
// the no-data value (0, or -log 2 and log 2).
EmpiricalLogOdds EmpiricalLogOddsMatrix(const CountMatrices& counts,
                                        double eps);

// Singular-value soft-thresholding: U max(S - t, 0) V^T.
Eigen::MatrixXd SoftThreshold(const Eigen::MatrixXd& m, double threshold);

// argmin ||lhat - L||_F^2 + lambda ||L||_* subject to L + L^T = 0.
Eigen::MatrixXd SolveNuclearBinary(const Eigen::MatrixXd& lhat, double lambda);

double NuclearObjectiveBinary(const Eigen::MatrixXd& lhat,
                              const Eigen::MatrixXd& l, double lambda);

struct TernaryNuclearSolution {
  Eigen::MatrixXd l;
  double phi = 0;
  std::vector<double> objective_trace;  // after each alternation
};

// argmin ||lhat1 - L||^2 + ||lhat2 - L - phi 11^T||^2 + lambda ||L||_* by
// alternating exact minimisation over phi and L.
TernaryNuclearSolution SolveNuclearTernary(const Eigen::MatrixXd& lhat1,
                                           const Eigen::MatrixXd& lhat2,
                                           double lambda,
                                           double tol = 1e-10,
                                           int max_iters = 100000);

double NuclearObjectiveTernary(const Eigen::MatrixXd& lhat1,
                               const Eigen::MatrixXd& lhat2,
                               const Eigen::MatrixXd& l, double phi,
                               double lambda);

// `count` log-spaced values from 1e-3 to 2 * sigma_max.
std::vector<double> LambdaGrid(double sigma_max, int count = 20);

struct RegularizedFit {
  bool ternary = false;
  double lambda = 0;
  Eigen::MatrixXd l;
  double phi = 0;
};

RegularizedFit FitRegularized(const Dataset& train, bool ternary,
                              double lambda, double eps = 0.01);

// sigma(L_ij) for binary fits, ternary_probs(L_ij, max(phi, 0)) otherwise.
OutcomeDistribution PredictRegularized(const RegularizedFit& fit, int i, int j);

struct LambdaScore {
  double lambda = 0;
  double mean_loglik = 0;
};

struct LambdaSearch {
  std::vector<LambdaScore> scores;
  std::size_t best = 0;
  RegularizedFit fit;
};

// Fits every lambda on `train` and keeps the best mean tune
// log-likelihood. An empty grid means LambdaGrid of the unregularised
// target.
LambdaSearch TuneLambda(const Dataset& train, const Dataset& tune,
                        bool ternary, double eps = 0.01,
                        std::vector<double> grid = {});

// Dense CSV with team names as header row and first column.
void WriteMatrixCsv(std::ostream& out, const Eigen::MatrixXd& m,
                    const TeamIndex& teams);

}  // namespace slodds

#endif  // SLODDS_REGULARIZED_H_
