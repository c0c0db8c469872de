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
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"

namespace slodds {
namespace {

using testing::RandomDataset;

double Sig(double x) { return 1 / (1 + std::exp(-x)); }

void ExpectClose(const OutcomeDistribution& a, const OutcomeDistribution& b) {
  EXPECT_NEAR(a.p_win, b.p_win, 1e-12);
  EXPECT_NEAR(a.p_draw, b.p_draw, 1e-12);
  EXPECT_NEAR(a.p_lose, b.p_lose, 1e-12);
}

TEST(TrainConfigTest, Validate) {
  TrainConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.learning_rate = 0;
  EXPECT_THROW(c.Validate(), std::invalid_argument);
  c = {};
  c.epoch_size = -1;
  EXPECT_THROW(c.Validate(), std::invalid_argument);
  c = {};
  c.initial_epochs = 0;
  c.epoch_size = 0;
  EXPECT_NO_THROW(c.Validate());
}

TEST(EloUpdateTest, MatchesTheClassicalRule) {
  const ModelSpec spec{Structure::kRank2, Link::kBinary, false, 3};
  ModelState s = ModelState::Zeros(3);
  s.theta << 0.3, -0.1, 0.0;
  const MatchRecord r{Date{}, 0, 1, 2, 0, Outcome::kHomeWin};
  const double k = 0.25;
  const double p = Sig(0.3 - -0.1);
  const ModelState t = EloOnlineUpdate(s, spec, r, k);
  EXPECT_NEAR(t.theta[0], 0.3 + k * (1 - p), 1e-15);
  EXPECT_NEAR(t.theta[1], -0.1 - k * (1 - p), 1e-15);
  EXPECT_EQ(t.theta[2], 0.0);
}

TEST(EloUpdateTest, FrozenGroupsStayPut) {
  const ModelSpec spec{Structure::kRank2HomeAdv, Link::kTernary, true, 3};
  ModelState s = ModelState::Zeros(3);
  s.h = 0.2;
  s.beta_home = 0.1;
  const MatchRecord r{Date{}, 0, 1, 0, 0, Outcome::kDraw, {}, {true, false}};
  const ModelState t =
      EloOnlineUpdate(s, spec, r, 0.5, kGroupHome | kGroupCovariates);
  EXPECT_EQ(t.h, 0.2);
  EXPECT_EQ(t.beta_home, 0.1);
  EXPECT_NE(t.phi_psi, s.phi_psi);
  const ModelState u = EloOnlineUpdate(s, spec, r, 0.5, 0);
  EXPECT_NE(u.beta_home, 0.1);
}

TEST(GradientStepTest, BatchStepSumsRecordGradients) {
  const Dataset data = RandomDataset({}, 5);
  const ModelSpec spec{Structure::kTwoFactorHomeAdv, Link::kTernary, false, 6};
  ModelState s = testing::RandomState(spec, 3);
  const ModelState g = Gradient(s, spec, data);
  ModelState t = s;
  GradientStep(&t, spec, data, 0.01, 0);
  EXPECT_LT((t.u - (s.u + 0.01 * g.u)).norm(), 1e-15);
  EXPECT_NEAR(t.h, s.h + 0.01 * g.h, 1e-15);
}

TEST(FitBatchTest, ReachesAStationaryPoint) {
  testing::RandomDataOptions opts;
  opts.n_matches = 150;
  const Dataset data = RandomDataset(opts, 9);
  for (Link link : {Link::kBinary, Link::kTernary}) {
    const ModelSpec spec{Structure::kRank2HomeAdv, link, false, 6};
    TrainConfig cfg;
    cfg.tol = 1e-12;
    const FitResult fit = FitBatch(InitialState(spec, 0), spec, data, cfg);
    EXPECT_TRUE(fit.converged);
    EXPECT_NEAR(fit.state.theta.sum(), 0.0, 1e-10);
    const ModelState g = Gradient(fit.state, spec, data);
    EXPECT_LT(Pack(g, spec, spec.ActiveGroups()).norm(), 1e-4);
    EXPECT_GE(fit.trace.back().objective, fit.trace.front().objective);
  }
}

TEST(FitBatchTest, ErrorsNameTheCause) {
  const ModelSpec spec{Structure::kRank2, Link::kTernary, false, 6};
  ModelState s = ModelState::Zeros(6);
  s.phi_psi = -std::numeric_limits<double>::infinity();
  try {
    FitBatch(s, spec, RandomDataset({}, 1), {});
    FAIL();
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("zero probability"), std::string::npos);
  }
  EXPECT_THROW(FitBatch(ModelState::Zeros(6), spec, Dataset(), {}),
               std::invalid_argument);
}

TEST(FitBatchTest, TraceCsv) {
  std::ostringstream out;
  WriteTraceCsv(out, {{0, -1.5, 2.0, 0.0}, {1, -1.25, 0.5, 0.1}});
  EXPECT_EQ(out.str(),
            "iteration,loglik,grad_norm,step\n0,-1.5,2,0\n1,-1.25,0.5,0.1\n");
}

TEST(ScheduleTest, PerMatchScheduleEqualsRepeatedEloUpdates) {
  testing::RandomDataOptions opts;
  opts.n_matches = 300;
  const Dataset data = RandomDataset(opts, 12);
  const ModelSpec spec{Structure::kRank2HomeAdv, Link::kTernary, false, 6};
  TrainConfig cfg;
  cfg.learning_rate = 0.07;
  const ModelState start = InitialState(spec, 0);
  const ScheduleResult run = RunSchedule(
      spec, start, PartitionBatches(data, BatchPolicy::PerMatch()), cfg, true);
  ModelState s = start;
  for (std::size_t k = 0; k < data.size(); ++k) {
    const OutcomeDistribution p = PredictRecord(s, spec, data[k]);
    ExpectClose(run.predictions[k], p);
    s = EloOnlineUpdate(s, spec, data[k], cfg.learning_rate);
    EXPECT_LT((run.snapshots[k].theta - s.theta).norm(), 1e-12);
  }
  EXPECT_EQ(run.leaked, 0u);
}

TEST(ScheduleTest, ZeroEpochsNeverMove) {
  const Dataset data = RandomDataset({}, 3);
  const ModelSpec spec{Structure::kRankFour, Link::kBinary, false, 6};
  TrainConfig cfg;
  cfg.initial_epochs = 0;
  cfg.epoch_size = 0;
  const ModelState start = InitialState(spec, 4);
  const ScheduleResult r = RunSchedule(
      spec, start, PartitionBatches(data, BatchPolicy::FixedCount(5)), cfg);
  EXPECT_EQ(r.final_state.u, start.u);
  for (std::size_t k = 0; k < data.size(); ++k) {
    ExpectClose(r.predictions[k], PredictRecord(start, spec, data[k]));
  }
}

TEST(ScheduleTest, PlanCountMustMatch) {
  const Dataset data = RandomDataset({}, 3);
  const ModelSpec spec{Structure::kRank2, Link::kBinary, false, 6};
  EXPECT_THROW(RunPlan(spec, InitialState(spec, 0), {data}, {}, {}),
               std::invalid_argument);
}

class RegimeTest : public ::testing::Test {
 protected:
  void SetUp() override {
    testing::RandomDataOptions opts;
    opts.n_matches = 240;
    opts.spacing_days = 2;
    const Dataset all = RandomDataset(opts, 44);
    train_ = all.Slice(0, 160);
    test_ = all.Slice(160, 80);
  }
  ModelSpec spec_{Structure::kRank2HomeAdv, Link::kTernary, false, 6};
  Dataset train_, test_;
};

TEST_F(RegimeTest, NamesRoundTrip) {
  for (Regime r : {Regime::kSingleBatch, Regime::kRetrain, Regime::kOnline,
                   Regime::kTwoStage}) {
    EXPECT_EQ(ParseRegime(RegimeName(r)), r);
  }
  EXPECT_THROW(ParseRegime("weekly"), std::invalid_argument);
}

TEST_F(RegimeTest, SingleBatchPredictsFromTheTrainingFit) {
  TrainConfig cfg;
  const RegimeRun run = RunRegime(spec_, Regime::kSingleBatch, train_, test_, cfg);
  const ModelState fit = FitBatch(InitialState(spec_, 0), spec_, train_, cfg).state;
  ASSERT_EQ(run.test_predictions.size(), test_.size());
  for (std::size_t k = 0; k < test_.size(); ++k) {
    ExpectClose(run.test_predictions[k], PredictRecord(fit, spec_, test_[k]));
  }
  EXPECT_EQ(run.leaked, 0u);
}

TEST_F(RegimeTest, TwoStageStartsFromTheFitThenUpdates) {
  TrainConfig cfg;
  cfg.learning_rate = 0.05;
  const RegimeRun run = RunRegime(spec_, Regime::kTwoStage, train_, test_, cfg);
  ModelState s = FitBatch(InitialState(spec_, 0), spec_, train_, cfg).state;
  for (std::size_t k = 0; k < test_.size(); ++k) {
    ExpectClose(run.test_predictions[k], PredictRecord(s, spec_, test_[k]));
    s = EloOnlineUpdate(s, spec_, test_[k], cfg.learning_rate);
  }
  EXPECT_LT((run.final_state.theta - s.theta).norm(), 1e-12);
}

TEST_F(RegimeTest, OnlineRunsThroughTrainAndTest) {
  TrainConfig cfg;
  const RegimeRun run = RunRegime(spec_, Regime::kOnline, train_, test_, cfg);
  ModelState s = InitialState(spec_, 0);
  for (const MatchRecord& r : train_) s = EloOnlineUpdate(s, spec_, r, 0.1);
  ExpectClose(run.test_predictions.front(), PredictRecord(s, spec_, test_[0]));
}

TEST_F(RegimeTest, RetrainRefitsEachQuarter) {
  TrainConfig cfg;
  const RegimeRun run = RunRegime(spec_, Regime::kRetrain, train_, test_, cfg);
  const auto quarters = PartitionBatches(test_, BatchPolicy::CalendarQuarter());
  ASSERT_GE(quarters.size(), 2u);
  // First quarter: fit on train. Second: refit from scratch on train + Q1.
  const Dataset seen = Concat(train_, quarters[0]);
  const ModelState refit = FitBatch(InitialState(spec_, 0), spec_, seen, cfg).state;
  const std::size_t k = quarters[0].size();
  const OutcomeDistribution want = PredictRecord(refit, spec_, test_[k]);
  EXPECT_NEAR(run.test_predictions[k].p_win, want.p_win, 1e-12);
  EXPECT_EQ(run.leaked, 0u);
}

TEST_F(RegimeTest, RejectsOverlappingPeriods) {
  EXPECT_THROW(RunRegime(spec_, Regime::kOnline, test_, train_, {}),
               std::invalid_argument);
}

TEST_F(RegimeTest, MeanOutcomeLogLikelihood) {
  const std::vector<OutcomeDistribution> preds(2, {0.5, 0.25, 0.25});
  const Dataset two = test_.Slice(0, 2);
  double want = 0;
  for (const MatchRecord& r : two) {
    want += std::log(r.outcome == Outcome::kHomeWin ? 0.5 : 0.25) / 2;
  }
  EXPECT_NEAR(MeanOutcomeLogLikelihood(preds, two), want, 1e-15);
  EXPECT_THROW(MeanOutcomeLogLikelihood(preds, test_), std::invalid_argument);
}

TEST_F(RegimeTest, GridSearchTieGoesToSmallerRate) {
  // The single-batch regime never uses the learning rate, so every entry
  // scores the same.
  TrainConfig base;
  std::vector<TrainConfig> grid = DefaultGrid(base);
  std::reverse(grid.begin(), grid.end());
  const GridSearchResult r =
      GridSearch(spec_, Regime::kSingleBatch, train_, test_, grid);
  EXPECT_EQ(r.best.learning_rate, 0.01);
  EXPECT_EQ(r.entries.size(), 6u);
  EXPECT_EQ(r.ties, 0u);
}

TEST_F(RegimeTest, GridSearchPicksTheBestScore) {
  std::vector<TrainConfig> grid = DefaultGrid({});
  const GridSearchResult r = GridSearch(spec_, Regime::kOnline, train_, test_, grid);
  for (const GridEntry& e : r.entries) {
    EXPECT_LE(e.mean_loglik, r.entries[r.best_index].mean_loglik);
  }
  // Same inputs, same choice.
  EXPECT_EQ(GridSearch(spec_, Regime::kOnline, train_, test_, grid).best_index,
            r.best_index);
}

TEST(GridSearchTest, RejectsEmptyGrid) {
  const ModelSpec spec{Structure::kRank2, Link::kBinary, false, 6};
  EXPECT_THROW(GridSearch(spec, Regime::kOnline, Dataset(), Dataset(), {}),
               std::invalid_argument);
}

}  // namespace
}  // namespace slodds
