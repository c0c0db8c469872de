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


// Losses, the temporal validation harness and validation reports.

#ifndef SLODDS_EVALUATION_H_
#define SLODDS_EVALUATION_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "slodds/baselines.h"
#include "slodds/dataset.h"
#include "slodds/links.h"
#include "slodds/model.h"
#include "slodds/stats.h"
#include "slodds/training.h"

namespace slodds {

// -log of the mass on the observed outcome; +inf for zero mass.
double LogLoss(const OutcomeDistribution& pred, Outcome observed);
// (1 - p_observed)^2 plus the squares of the other masses.
double BrierLoss(const OutcomeDistribution& pred, Outcome observed);
// Most probable outcome; ties go to win, then draw, then lose.
Outcome ArgmaxOutcome(const OutcomeDistribution& pred);

struct CaseRow {
  std::size_t match_id = 0;  // position in the test set
  OutcomeDistribution pred;
  Outcome observed = Outcome::kDraw;
  double log_loss = 0;
  double brier = 0;
  bool correct = false;
};

struct ValidationReport {
  std::string model;
  std::vector<CaseRow> cases;
  std::size_t skipped = 0;          // test records the model did not predict
  std::size_t leaked = 0;           // prequential audit, expected 0
  std::size_t infinite_losses = 0;  // excluded from the means and the CI
  std::size_t correct = 0;
  double mean_log_loss = 0;
  double mean_log_likelihood = 0;  // -mean_log_loss
  double mean_brier = 0;
  double accuracy = 0;
  Interval log_likelihood_ci;  // bootstrap percentile
  Interval accuracy_ci;        // Clopper-Pearson
};

struct ReportOptions {
  int bootstrap_replicates = 5000;
  double level = 0.95;
  std::uint64_t seed = 0;
};

// Per-case rows and aggregates from aligned predictions; std::nullopt
// marks a skipped record.
ValidationReport BuildReport(
    const std::string& model, const Dataset& test,
    const std::vector<std::optional<OutcomeDistribution>>& predictions,
    std::size_t leaked = 0, const ReportOptions& options = {});

struct RunnerOutput {
  std::vector<std::optional<OutcomeDistribution>> predictions;
  std::size_t leaked = 0;
};

// Produces one prediction per test record, each before the record is
// used for training.
using ModelRunner = std::function<RunnerOutput(
    const Dataset& train, const Dataset& test, const TrainConfig& cfg)>;

ModelRunner StructuredRunner(const ModelSpec& spec, Regime regime);
ModelRunner ConstantRunner(const OutcomeDistribution& dist);
// Training-set outcome frequencies.
ModelRunner HomeWinRunner();
// Normalised bookmaker odds; rows without odds are skipped.
ModelRunner OddsRunner();
// Refits on all earlier records at each calendar quarter of the test set.
ModelRunner PoissonRunner(PoissonVariant variant, double xi);
ModelRunner RegularizedRunner(bool ternary, double lambda, double eps = 0.01);

// Requires max(train dates) < min(test dates); throws std::invalid_argument.
ValidationReport TemporalValidate(const std::string& model,
                                  const ModelRunner& runner,
                                  const Dataset& train, const Dataset& test,
                                  const TrainConfig& cfg,
                                  const ReportOptions& options = {});

// Per-case log-likelihoods of the cases both reports scored finitely, in
// test order.
struct PairedValues {
  std::vector<double> a;
  std::vector<double> b;
};
PairedValues PairLogLikelihoods(const ValidationReport& a,
                                const ValidationReport& b);

// Per-case CSV: match_id,date,home,away,p_win,p_draw,p_lose,observed,
// log_loss,brier,correct.
void WriteReportCsv(std::ostream& out, const ValidationReport& report,
                    const Dataset& test);
// Aggregates as a JSON object.
std::string ReportJson(const ValidationReport& report);

}  // namespace slodds

#endif  // SLODDS_EVALUATION_H_
