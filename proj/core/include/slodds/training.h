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


// Online, batch and two-stage training over batch/epoch schedules, and
// hyperparameter grid search.

#ifndef SLODDS_TRAINING_H_
#define SLODDS_TRAINING_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "slodds/dataset.h"
#include "slodds/links.h"
#include "slodds/model.h"
#include "slodds/optimize.h"

namespace slodds {

struct TrainConfig {
  double learning_rate = 0.1;  // K
  int initial_epochs = 1;      // tau_0
  int epoch_size = 1;          // tau_i, i >= 1
  BatchPolicy batch_policy = BatchPolicy::PerMatch();
  int max_iters = 5000;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  // Groups held fixed by gradient steps. Batch fits ignore this.
  unsigned frozen_groups = kGroupCovariates;

  // Throws std::invalid_argument.
  void Validate() const;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

// Adds lr times the log-likelihood gradient on `batch` to every active,
// non-frozen parameter.
void GradientStep(ModelState* state, const ModelSpec& spec,
                  const Dataset& batch, double lr, unsigned frozen_groups);

// One ascent step of size k on a single record. For binary rank2 this is
// theta_i += k (S - p), theta_j -= k (S - p).
ModelState EloOnlineUpdate(const ModelState& state, const ModelSpec& spec,
                           const MatchRecord& record, double k,
                           unsigned frozen_groups = kGroupCovariates);

struct FitResult {
  ModelState state;
  std::vector<TraceRow> trace;
  bool converged = false;
};

// Maximum-likelihood fit of all active parameters from `start`; theta is
// mean-centred afterwards. Throws std::invalid_argument on empty data and
// std::domain_error when the starting log-likelihood is not finite.
FitResult FitBatch(const ModelState& start, const ModelSpec& spec,
                   const Dataset& data, const TrainConfig& cfg);

// CSV with header iteration,loglik,grad_norm,step.
void WriteTraceCsv(std::ostream& out, const std::vector<TraceRow>& trace);

// What to do with a batch once its predictions are made.
struct EpochPlan {
  enum class Kind {
    kSteps,  // `steps` gradient steps on the batch
    kFit,    // fit to convergence on the batch, from the current state
    kRefit,  // fit from the initial state on every record seen so far
  };
  Kind kind = Kind::kSteps;
  int steps = 1;
};

struct ScheduleResult {
  // One entry per record across all batches, in order. Records before
  // `first_scored` carry an all-zero distribution.
  std::vector<OutcomeDistribution> predictions;
  std::vector<ModelState> snapshots;  // after each batch, when requested
  ModelState final_state;
  // Predictions that were made after an update had used that record or a
  // later one. Zero for every schedule here; kept as an audit.
  std::size_t leaked = 0;
};

// Algorithm with prequential output: predict every record of batch i,
// then apply its plan. Predictions are skipped for the first
// `first_scored` records.
ScheduleResult RunPlan(const ModelSpec& spec, const ModelState& start,
                       const std::vector<Dataset>& batches,
                       const std::vector<EpochPlan>& plans,
                       const TrainConfig& cfg, std::size_t first_scored = 0,
                       bool keep_snapshots = false);

// Plain batch/epoch schedule: tau_0 steps on batch 0, cfg.epoch_size on
// the rest, step size cfg.learning_rate.
ScheduleResult RunSchedule(const ModelSpec& spec, const ModelState& start,
                           const std::vector<Dataset>& batches,
                           const TrainConfig& cfg,
                           bool keep_snapshots = false);

enum class Regime { kSingleBatch, kRetrain, kOnline, kTwoStage };
std::string_view RegimeName(Regime r);
Regime ParseRegime(std::string_view name);  // batch|retrain|online|two-stage

struct RegimeRun {
  std::vector<OutcomeDistribution> test_predictions;
  ModelState final_state;
  std::size_t leaked = 0;
};

// Trains on `train` and predicts `test` prequentially:
//   single-batch: fit on train, never update;
//   retrain: fit on train, then refit from scratch each calendar quarter;
//   online: cfg.batch_policy batches over train and test, epoch_size steps;
//   two-stage: fit on train, then online over test.
// Requires every train date to precede every test date.
RegimeRun RunRegime(const ModelSpec& spec, Regime regime, const Dataset& train,
                    const Dataset& test, const TrainConfig& cfg);

// Mean log of the mass each prediction gives the observed outcome.
double MeanOutcomeLogLikelihood(const std::vector<OutcomeDistribution>& preds,
                                const Dataset& data);

struct GridEntry {
  TrainConfig config;
  double mean_loglik = 0;
};

struct GridSearchResult {
  std::size_t best_index = 0;
  TrainConfig best;
  std::vector<GridEntry> entries;
  // Entries whose score and learning rate tie with the winner.
  std::size_t ties = 0;
};

// Scores each config by RunRegime(train -> tune) and keeps the highest
// mean log-likelihood; ties go to the smaller learning rate, then to the
// earlier entry. Configs run concurrently.
GridSearchResult GridSearch(const ModelSpec& spec, Regime regime,
                            const Dataset& train, const Dataset& tune,
                            const std::vector<TrainConfig>& grid);

// `base` with learning rates {0.01, 0.02, 0.05, 0.1, 0.2, 0.5}.
std::vector<TrainConfig> DefaultGrid(const TrainConfig& base);

}  // namespace slodds

#endif  // SLODDS_TRAINING_H_
