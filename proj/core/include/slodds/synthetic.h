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


// Synthetic ground truths, match sampling and replicated model comparisons.

#ifndef SLODDS_SYNTHETIC_H_
#define SLODDS_SYNTHETIC_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "slodds/dataset.h"
#include "slodds/model.h"
#include "slodds/stats.h"

namespace slodds {

enum class TruthKind {
  kRank2Gaussian,     // u v^T - v u^T, entries N(mu, sigma^2)
  kRank4Orthonormal,  // s1 (u v^T - v u^T) + s2 (theta e^T - e theta^T)
  kRank4Gaussian,     // u v^T - v u^T + theta 1^T - 1 theta^T, N(mu, sigma^2)
  kEloGaussian,       // theta 1^T - 1 theta^T, theta ~ N(0, sd^2)
};

std::string_view TruthName(TruthKind kind);
TruthKind ParseTruth(std::string_view name);  // rank2|rank4|rank4-gaussian|elo

struct SynthSpec {
  int q = 47;
  TruthKind truth = TruthKind::kRank2Gaussian;
  double mu = 1.0;
  double sigma = 0.7;
  double s1 = 25;
  double s2 = 24;
  double sd = 0.8;
  int matches_per_pair = 4;
  std::uint64_t seed = 0;

  void Validate() const;  // throws std::invalid_argument
};

// Exactly antisymmetric truth matrix drawn from spec.seed. For the
// orthonormal kind, e is the normalised ones vector and u, v, theta are
// orthonormalised against it by Gram-Schmidt, redrawing degenerate draws.
Eigen::MatrixXd GenTruth(const SynthSpec& spec);

// Team names "T01", "T02", ...
std::shared_ptr<const TeamIndex> SyntheticTeams(int q);

// For each unordered pair i < j, `matches_per_pair` outcomes with i at
// home, won by i with probability sigmoid(L_ij). Matches are shuffled and
// dated one per day from `start`. Wins are recorded as 1-0, losses 0-1.
Dataset SampleMatches(const Eigen::MatrixXd& truth, int matches_per_pair,
                      std::uint64_t seed,
                      std::shared_ptr<const TeamIndex> teams,
                      const Date& start);

struct NamedModel {
  std::string name;
  ModelSpec spec;  // n_teams is filled in from the synthetic spec
};

struct ExperimentRow {
  int rep = 0;
  std::string model;
  double learning_rate = 0;  // chosen on the validation set
  double mean_loglik = 0;
  double accuracy = 0;
};

// One-sided tests that `second` beats `first`, plus two-sided versions.
struct ModelComparison {
  std::string first;
  std::string second;
  TestResult loglik_greater;
  TestResult accuracy_greater;
  TestResult loglik_two_sided;
  TestResult accuracy_two_sided;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;  // rep-major, models in input order
  std::vector<ModelComparison> comparisons;  // every ordered pair i < j

  // Per-replication values of one model.
  std::vector<double> Column(const std::string& model, bool loglik) const;
};

// Per replication: fresh truth, validation and test sets; every model is
// trained online (one match per batch, epoch size one), its learning rate
// chosen on the validation set, then run over validation followed by test
// and scored on test. Paired Wilcoxon tests compare models.
ExperimentResult ReplicateExperiment(const SynthSpec& spec,
                                     const std::vector<NamedModel>& models,
                                     int reps, std::uint64_t seed,
                                     const std::vector<double>& k_grid = {
                                         0.01, 0.02, 0.05, 0.1, 0.2, 0.5});

// CSV with header rep,model,learning_rate,mean_loglik,accuracy.
void WriteExperimentCsv(std::ostream& out, const ExperimentResult& result);

}  // namespace slodds

#endif  // SLODDS_SYNTHETIC_H_
