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

#include "slodds/evaluation.h"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "json.hpp"
#include "slodds/format.h"
#include "slodds/regularized.h"

namespace slodds {
namespace {

using Predictions = std::vector<std::optional<OutcomeDistribution>>;

// Fits on every record before each calendar quarter of `test`, then
// predicts that quarter.
template <typename Fit, typename PredictFn>
Predictions QuarterlyRefit(const Dataset& train, const Dataset& test,
                           Fit fit, PredictFn predict) {
  if (train.empty()) throw std::invalid_argument("training data is empty");
  Predictions out;
  out.reserve(test.size());
  std::vector<MatchRecord> history(train.begin(), train.end());
  for (const Dataset& quarter :
       PartitionBatches(test, BatchPolicy::CalendarQuarter())) {
    const auto model = fit(Dataset(history, train.shared_teams()));
    for (const MatchRecord& r : quarter) out.emplace_back(predict(model, r));
    history.insert(history.end(), quarter.begin(), quarter.end());
  }
  return out;
}

nlohmann::json IntervalJson(const Interval& i) {
  return nlohmann::json::array({i.lo, i.hi});
}

// JSON has no infinities; write them as null.
nlohmann::json Number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

double LogLoss(const OutcomeDistribution& pred, Outcome observed) {
  const double p = pred.Mass(observed);
  if (p <= 0) return std::numeric_limits<double>::infinity();
  return -std::log(p);
}

double BrierLoss(const OutcomeDistribution& pred, Outcome observed) {
  double total = 0;
  for (Outcome o : {Outcome::kHomeWin, Outcome::kDraw, Outcome::kAwayWin}) {
    const double target = o == observed ? 1.0 : 0.0;
    const double e = target - pred.Mass(o);
    total += e * e;
  }
  return total;
}

Outcome ArgmaxOutcome(const OutcomeDistribution& pred) {
  Outcome best = Outcome::kHomeWin;
  double mass = pred.p_win;
  if (pred.p_draw > mass) {
    best = Outcome::kDraw;
    mass = pred.p_draw;
  }
  if (pred.p_lose > mass) best = Outcome::kAwayWin;
  return best;
}

ValidationReport BuildReport(const std::string& model, const Dataset& test,
                             const Predictions& predictions,
                             std::size_t leaked,
                             const ReportOptions& options) {
  if (predictions.size() != test.size()) {
    throw std::invalid_argument("one prediction slot is needed per record");
  }
  ValidationReport rep;
  rep.model = model;
  rep.leaked = leaked;
  std::vector<double> finite_ll;
  double brier_total = 0;
  for (std::size_t k = 0; k < test.size(); ++k) {
    if (!predictions[k]) {
      ++rep.skipped;
      continue;
    }
    CaseRow row;
    row.match_id = k;
    row.pred = *predictions[k];
    row.observed = test[k].outcome;
    row.log_loss = LogLoss(row.pred, row.observed);
    row.brier = BrierLoss(row.pred, row.observed);
    row.correct = ArgmaxOutcome(row.pred) == row.observed;
    rep.correct += row.correct;
    brier_total += row.brier;
    if (std::isfinite(row.log_loss)) {
      finite_ll.push_back(-row.log_loss);
    } else {
      ++rep.infinite_losses;
    }
    rep.cases.push_back(row);
  }
  if (!finite_ll.empty()) {
    double total = 0;
    for (double x : finite_ll) total += x;
    rep.mean_log_likelihood = total / static_cast<double>(finite_ll.size());
    rep.mean_log_loss = -rep.mean_log_likelihood;
    rep.log_likelihood_ci = BootstrapCi(finite_ll, options.bootstrap_replicates,
                                        options.level, options.seed);
  }
  if (!rep.cases.empty()) {
    const int n = static_cast<int>(rep.cases.size());
    rep.mean_brier = brier_total / n;
    rep.accuracy = static_cast<double>(rep.correct) / n;
    rep.accuracy_ci =
        ClopperPearson(static_cast<int>(rep.correct), n, options.level);
  }
  return rep;
}

ModelRunner StructuredRunner(const ModelSpec& spec, Regime regime) {
  return [spec, regime](const Dataset& train, const Dataset& test,
                        const TrainConfig& cfg) {
    RegimeRun run = RunRegime(spec, regime, train, test, cfg);
    RunnerOutput out;
    out.predictions.assign(run.test_predictions.begin(),
                           run.test_predictions.end());
    out.leaked = run.leaked;
    return out;
  };
}

ModelRunner ConstantRunner(const OutcomeDistribution& dist) {
  return [dist](const Dataset&, const Dataset& test, const TrainConfig&) {
    RunnerOutput out;
    out.predictions.assign(test.size(), dist);
    return out;
  };
}

ModelRunner HomeWinRunner() {
  return [](const Dataset& train, const Dataset& test, const TrainConfig&) {
    RunnerOutput out;
    out.predictions.assign(test.size(), FitHomeWinBaseline(train).frequencies);
    return out;
  };
}

ModelRunner OddsRunner() {
  return [](const Dataset&, const Dataset& test, const TrainConfig&) {
    RunnerOutput out;
    for (const MatchRecord& r : test) {
      if (r.odds) {
        out.predictions.emplace_back(OddsToProbs(*r.odds));
      } else {
        out.predictions.emplace_back(std::nullopt);
      }
    }
    return out;
  };
}

ModelRunner PoissonRunner(PoissonVariant variant, double xi) {
  return [variant, xi](const Dataset& train, const Dataset& test,
                       const TrainConfig& cfg) {
    PoissonFitOptions opts;
    opts.max_iters = cfg.max_iters;
    RunnerOutput out;
    out.predictions = QuarterlyRefit(
        train, test,
        [&](const Dataset& d) {
          return FitPoissonBaseline(d, variant, xi, opts).state;
        },
        [](const PoissonBaselineState& s, const MatchRecord& r) {
          return PoissonPredictTernary(s, r.home, r.away);
        });
    return out;
  };
}

ModelRunner RegularizedRunner(bool ternary, double lambda, double eps) {
  return [ternary, lambda, eps](const Dataset& train, const Dataset& test,
                                const TrainConfig&) {
    RunnerOutput out;
    out.predictions = QuarterlyRefit(
        train, test,
        [&](const Dataset& d) {
          return FitRegularized(d, ternary, lambda, eps);
        },
        [](const RegularizedFit& f, const MatchRecord& r) {
          return PredictRegularized(f, r.home, r.away);
        });
    return out;
  };
}

ValidationReport TemporalValidate(const std::string& model,
                                  const ModelRunner& runner,
                                  const Dataset& train, const Dataset& test,
                                  const TrainConfig& cfg,
                                  const ReportOptions& options) {
  if (!train.empty() && !test.empty() &&
      !(train.records().back().date < test.records().front().date)) {
    throw std::invalid_argument(
        "every training record must precede every test record");
  }
  RunnerOutput out = runner(train, test, cfg);
  return BuildReport(model, test, out.predictions, out.leaked, options);
}

PairedValues PairLogLikelihoods(const ValidationReport& a,
                                const ValidationReport& b) {
  PairedValues out;
  std::size_t j = 0;
  for (const CaseRow& row : a.cases) {
    while (j < b.cases.size() && b.cases[j].match_id < row.match_id) ++j;
    if (j == b.cases.size()) break;
    if (b.cases[j].match_id != row.match_id) continue;
    if (std::isfinite(row.log_loss) && std::isfinite(b.cases[j].log_loss)) {
      out.a.push_back(-row.log_loss);
      out.b.push_back(-b.cases[j].log_loss);
    }
  }
  return out;
}

void WriteReportCsv(std::ostream& out, const ValidationReport& report,
                    const Dataset& test) {
  out << "match_id,date,home,away,p_win,p_draw,p_lose,observed,log_loss,"
         "brier,correct\n";
  for (const CaseRow& row : report.cases) {
    const MatchRecord& r = test[row.match_id];
    out << row.match_id << ',' << FormatIsoDate(r.date) << ','
        << test.teams().Name(r.home) << ',' << test.teams().Name(r.away) << ','
        << FormatDouble(row.pred.p_win) << ',' << FormatDouble(row.pred.p_draw)
        << ',' << FormatDouble(row.pred.p_lose) << ','
        << OutcomeCode(row.observed) << ',' << FormatDouble(row.log_loss)
        << ',' << FormatDouble(row.brier) << ',' << (row.correct ? 1 : 0)
        << '\n';
  }
}

std::string ReportJson(const ValidationReport& report) {
  nlohmann::json j;
  j["model"] = report.model;
  j["cases"] = report.cases.size();
  j["skipped"] = report.skipped;
  j["leaked"] = report.leaked;
  j["infinite_losses"] = report.infinite_losses;
  j["correct"] = report.correct;
  j["mean_log_loss"] = Number(report.mean_log_loss);
  j["mean_log_likelihood"] = Number(report.mean_log_likelihood);
  j["mean_brier"] = Number(report.mean_brier);
  j["accuracy"] = Number(report.accuracy);
  j["log_likelihood_ci"] = IntervalJson(report.log_likelihood_ci);
  j["accuracy_ci"] = IntervalJson(report.accuracy_ci);
  return j.dump(2);
}

}  // namespace slodds
