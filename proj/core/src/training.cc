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

#include "slodds/training.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "slodds/format.h"

namespace slodds {
namespace {

void CheckChronology(const Dataset& train, const Dataset& test) {
  if (train.empty() || test.empty()) return;
  if (!(train.records().back().date < test.records().front().date)) {
    throw std::invalid_argument(
        "every training record must precede every test record");
  }
}

}  // namespace

void TrainConfig::Validate() const {
  if (!(learning_rate > 0)) {
    throw std::invalid_argument("learning rate must be positive");
  }
  if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
  if (initial_epochs < 0 || epoch_size < 0) {
    throw std::invalid_argument("epoch sizes must be non-negative");
  }
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (batch_policy.kind == BatchPolicy::Kind::kFixedCount &&
      batch_policy.count == 0) {
    throw std::invalid_argument("fixed batch count must be positive");
  }
}

void GradientStep(ModelState* state, const ModelSpec& spec,
                  const Dataset& batch, double lr, unsigned frozen_groups) {
  const unsigned groups = spec.ActiveGroups() & ~frozen_groups;
  if (groups == 0 || batch.empty()) return;
  const ModelState g = Gradient(*state, spec, batch);
  Eigen::VectorXd x = Pack(*state, spec, groups);
  x += lr * Pack(g, spec, groups);
  Unpack(x, spec, groups, state);
}

ModelState EloOnlineUpdate(const ModelState& state, const ModelSpec& spec,
                           const MatchRecord& record, double k,
                           unsigned frozen_groups) {
  ModelState g = ModelState::Zeros(spec.n_teams);
  AccumulateGradient(state, spec, record, 1.0, &g);
  const unsigned groups = spec.ActiveGroups() & ~frozen_groups;
  ModelState out = state;
  Eigen::VectorXd x = Pack(state, spec, groups);
  x += k * Pack(g, spec, groups);
  Unpack(x, spec, groups, &out);
  return out;
}

FitResult FitBatch(const ModelState& start, const ModelSpec& spec,
                   const Dataset& data, const TrainConfig& cfg) {
  spec.Validate();
  CheckDimensions(start, spec);
  if (data.empty()) throw std::invalid_argument("cannot fit an empty batch");
  const unsigned groups = spec.ActiveGroups();
  ModelState work = start;

  std::size_t zero_mass = 0;
  const double initial = LogLikelihood(start, spec, data, &zero_mass);
  if (!std::isfinite(initial)) {
    throw std::domain_error(
        "log-likelihood is not finite at the starting point: " +
        std::to_string(zero_mass) +
        " record(s) have zero probability (for example draws under phi = 0)");
  }

  Objective f = [&](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
    Unpack(x, spec, groups, &work);
    const double ll = LogLikelihood(work, spec, data);
    *grad = Pack(Gradient(work, spec, data), spec, groups);
    return ll;
  };
  AscentOptions opts;
  opts.max_iters = cfg.max_iters;
  opts.tol = cfg.tol;
  opts.initial_step = 1.0 / static_cast<double>(data.size());
  AscentResult r = MaximizeAscent(f, Pack(start, spec, groups), opts);

  FitResult out;
  out.state = start;
  Unpack(r.x, spec, groups, &out.state);
  CenterRatings(&out.state);
  out.trace = std::move(r.trace);
  out.converged = r.converged;
  return out;
}

void WriteTraceCsv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out << "iteration,loglik,grad_norm,step\n";
  for (const TraceRow& row : trace) {
    out << row.iteration << ',' << FormatDouble(row.objective) << ','
        << FormatDouble(row.grad_norm) << ',' << FormatDouble(row.step)
        << '\n';
  }
}

ScheduleResult RunPlan(const ModelSpec& spec, const ModelState& start,
                       const std::vector<Dataset>& batches,
                       const std::vector<EpochPlan>& plans,
                       const TrainConfig& cfg, std::size_t first_scored,
                       bool keep_snapshots) {
  spec.Validate();
  cfg.Validate();
  CheckDimensions(start, spec);
  if (plans.size() != batches.size()) {
    throw std::invalid_argument("one epoch plan is needed per batch");
  }
  ScheduleResult result;
  ModelState state = start;
  std::size_t total = 0;
  for (const Dataset& b : batches) total += b.size();
  result.predictions.resize(total);

  std::vector<MatchRecord> history;
  std::size_t index = 0;
  std::size_t trained_through = 0;  // records [0, trained_through) used
  for (std::size_t bi = 0; bi < batches.size(); ++bi) {
    const Dataset& batch = batches[bi];
    for (const MatchRecord& r : batch) {
      if (index >= first_scored) {
        if (trained_through > index) ++result.leaked;
        result.predictions[index] = PredictRecord(state, spec, r);
      }
      ++index;
    }
    history.insert(history.end(), batch.begin(), batch.end());

    const EpochPlan& plan = plans[bi];
    if (!batch.empty()) {
      switch (plan.kind) {
        case EpochPlan::Kind::kSteps:
          for (int s = 0; s < plan.steps; ++s) {
            GradientStep(&state, spec, batch, cfg.learning_rate,
                         cfg.frozen_groups);
          }
          if (plan.steps > 0) trained_through = index;
          break;
        case EpochPlan::Kind::kFit:
          state = FitBatch(state, spec, batch, cfg).state;
          trained_through = index;
          break;
        case EpochPlan::Kind::kRefit: {
          Dataset seen(history, batch.shared_teams());
          state = FitBatch(InitialState(spec, cfg.seed), spec, seen, cfg).state;
          trained_through = index;
          break;
        }
      }
    }
    if (keep_snapshots) result.snapshots.push_back(state);
  }
  result.final_state = std::move(state);
  return result;
}

ScheduleResult RunSchedule(const ModelSpec& spec, const ModelState& start,
                           const std::vector<Dataset>& batches,
                           const TrainConfig& cfg, bool keep_snapshots) {
  std::vector<EpochPlan> plans(batches.size(),
                               {EpochPlan::Kind::kSteps, cfg.epoch_size});
  if (!plans.empty()) plans[0].steps = cfg.initial_epochs;
  return RunPlan(spec, start, batches, plans, cfg, 0, keep_snapshots);
}

std::string_view RegimeName(Regime r) {
  switch (r) {
    case Regime::kSingleBatch:
      return "batch";
    case Regime::kRetrain:
      return "retrain";
    case Regime::kOnline:
      return "online";
    case Regime::kTwoStage:
      return "two-stage";
  }
  return "unknown";
}

Regime ParseRegime(std::string_view name) {
  if (name == "batch") return Regime::kSingleBatch;
  if (name == "retrain") return Regime::kRetrain;
  if (name == "online") return Regime::kOnline;
  if (name == "two-stage") return Regime::kTwoStage;
  throw std::invalid_argument("unknown regime '" + std::string(name) +
                              "' (valid: batch, retrain, online, two-stage)");
}

RegimeRun RunRegime(const ModelSpec& spec, Regime regime, const Dataset& train,
                    const Dataset& test, const TrainConfig& cfg) {
  CheckChronology(train, test);
  if (test.empty()) throw std::invalid_argument("test set is empty");
  const ModelState start = InitialState(spec, cfg.seed);

  std::vector<Dataset> batches;
  std::vector<EpochPlan> plans;
  if (regime == Regime::kOnline) {
    const Dataset all = train.empty() ? test : Concat(train, test);
    batches = PartitionBatches(all, cfg.batch_policy);
    plans.assign(batches.size(), {EpochPlan::Kind::kSteps, cfg.epoch_size});
  } else {
    if (!train.empty()) {
      batches.push_back(train);
      plans.push_back({EpochPlan::Kind::kFit, 0});
    }
    std::vector<Dataset> rest;
    EpochPlan plan;
    switch (regime) {
      case Regime::kSingleBatch:
        rest.push_back(test);
        plan = {EpochPlan::Kind::kSteps, 0};
        break;
      case Regime::kRetrain:
        rest = PartitionBatches(test, BatchPolicy::CalendarQuarter());
        plan = {EpochPlan::Kind::kRefit, 0};
        break;
      default:
        rest = PartitionBatches(test, cfg.batch_policy);
        plan = {EpochPlan::Kind::kSteps, cfg.epoch_size};
        break;
    }
    for (Dataset& b : rest) {
      batches.push_back(std::move(b));
      plans.push_back(plan);
    }
  }

  ScheduleResult s = RunPlan(spec, start, batches, plans, cfg, train.size());
  RegimeRun out;
  out.test_predictions.assign(s.predictions.begin() + train.size(),
                              s.predictions.end());
  out.final_state = std::move(s.final_state);
  out.leaked = s.leaked;
  return out;
}

double MeanOutcomeLogLikelihood(const std::vector<OutcomeDistribution>& preds,
                                const Dataset& data) {
  if (preds.size() != data.size()) {
    throw std::invalid_argument("predictions and records differ in length");
  }
  if (data.empty()) return 0;
  double total = 0;
  for (std::size_t k = 0; k < data.size(); ++k) {
    total += std::log(preds[k].Mass(data[k].outcome));
  }
  return total / static_cast<double>(data.size());
}

GridSearchResult GridSearch(const ModelSpec& spec, Regime regime,
                            const Dataset& train, const Dataset& tune,
                            const std::vector<TrainConfig>& grid) {
  if (grid.empty()) throw std::invalid_argument("grid is empty");
  for (const TrainConfig& c : grid) c.Validate();
  std::vector<double> scores(grid.size());
  const std::size_t width =
      std::max<std::size_t>(1, std::thread::hardware_concurrency());
  for (std::size_t lo = 0; lo < grid.size(); lo += width) {
    const std::size_t hi = std::min(grid.size(), lo + width);
    std::vector<std::future<double>> jobs;
    for (std::size_t k = lo; k < hi; ++k) {
      jobs.push_back(std::async(std::launch::async, [&, k] {
        RegimeRun run = RunRegime(spec, regime, train, tune, grid[k]);
        return MeanOutcomeLogLikelihood(run.test_predictions, tune);
      }));
    }
    for (std::size_t k = lo; k < hi; ++k) scores[k] = jobs[k - lo].get();
  }

  GridSearchResult result;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    result.entries.push_back({grid[k], scores[k]});
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const bool higher = scores[k] > scores[best];
    const bool tie_smaller_rate = scores[k] == scores[best] &&
                                  grid[k].learning_rate < grid[best].learning_rate;
    if (higher || tie_smaller_rate) best = k;
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (k != best && scores[k] == scores[best] &&
        grid[k].learning_rate == grid[best].learning_rate) {
      ++result.ties;
    }
  }
  result.best_index = best;
  result.best = grid[best];
  return result;
}

std::vector<TrainConfig> DefaultGrid(const TrainConfig& base) {
  std::vector<TrainConfig> grid;
  for (double k : {0.01, 0.02, 0.05, 0.1, 0.2, 0.5}) {
    TrainConfig c = base;
    c.learning_rate = k;
    grid.push_back(c);
  }
  return grid;
}

}  // namespace slodds
