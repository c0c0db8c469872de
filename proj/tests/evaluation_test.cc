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
#include <optional>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "slodds/regularized.h"
#include "test_util.h"

namespace slodds {
namespace {

using testing::Score;
using testing::ScoresDataset;

TEST(LossTest, LogAndBrier) {
  const OutcomeDistribution p{0.5, 0.3, 0.2};
  EXPECT_NEAR(LogLoss(p, Outcome::kDraw), -std::log(0.3), 1e-15);
  EXPECT_NEAR(BrierLoss(p, Outcome::kHomeWin), 0.25 + 0.09 + 0.04, 1e-15);
  EXPECT_NEAR(BrierLoss(p, Outcome::kAwayWin), 0.25 + 0.09 + 0.64, 1e-15);
  const OutcomeDistribution binary{0.7, 0.0, 0.3};
  EXPECT_EQ(LogLoss(binary, Outcome::kDraw),
            std::numeric_limits<double>::infinity());
  EXPECT_NEAR(BrierLoss(binary, Outcome::kDraw), 0.49 + 1 + 0.09, 1e-15);
}

TEST(LossTest, ArgmaxTieOrder) {
  EXPECT_EQ(ArgmaxOutcome({0.4, 0.4, 0.2}), Outcome::kHomeWin);
  EXPECT_EQ(ArgmaxOutcome({0.2, 0.4, 0.4}), Outcome::kDraw);
  EXPECT_EQ(ArgmaxOutcome({0.2, 0.3, 0.5}), Outcome::kAwayWin);
  EXPECT_EQ(ArgmaxOutcome({1.0 / 3, 1.0 / 3, 1.0 / 3}), Outcome::kHomeWin);
}

class ReportTest : public ::testing::Test {
 protected:
  Dataset test_ = ScoresDataset(
      3, {{0, 1, 2, 0}, {1, 2, 1, 1}, {2, 0, 0, 1}, {0, 2, 3, 0}});
};

TEST_F(ReportTest, AggregatesSkipsAndInfiniteLosses) {
  // Row 2 is an away win; row 3 a home win given zero mass.
  const std::vector<std::optional<OutcomeDistribution>> p = {
      OutcomeDistribution{0.6, 0.2, 0.2}, std::nullopt,
      OutcomeDistribution{0.5, 0.3, 0.2}, OutcomeDistribution{0.0, 0.5, 0.5}};
  const ValidationReport r = BuildReport("m", test_, p, 0, {200, 0.95, 1});
  EXPECT_EQ(r.skipped, 1u);
  EXPECT_EQ(r.cases.size(), 3u);
  EXPECT_EQ(r.infinite_losses, 1u);
  EXPECT_NEAR(r.mean_log_likelihood, 0.5 * (std::log(0.6) + std::log(0.2)), 1e-15);
  EXPECT_EQ(r.mean_log_loss, -r.mean_log_likelihood);
  EXPECT_EQ(r.correct, 1u);  // only the first row
  EXPECT_NEAR(r.accuracy, 1.0 / 3, 1e-15);
  const Interval cp = ClopperPearson(1, 3, 0.95);
  EXPECT_EQ(r.accuracy_ci.lo, cp.lo);
  EXPECT_EQ(r.accuracy_ci.hi, cp.hi);
  EXPECT_LE(r.log_likelihood_ci.lo, r.log_likelihood_ci.hi);
  EXPECT_EQ(r.cases[1].match_id, 2u);
  EXPECT_THROW(BuildReport("m", test_, {std::nullopt}), std::invalid_argument);
}

TEST_F(ReportTest, UniformPredictorScoresMinusLogThree) {
  const Dataset train = ScoresDataset(3, {{0, 1, 1, 0}});
  const Date after{std::chrono::year{2011}, std::chrono::January, std::chrono::day{1}};
  const Dataset test = ScoresDataset(3, {{0, 1, 0, 0}, {1, 0, 0, 2}}, after);
  const OutcomeDistribution u{1.0 / 3, 1.0 / 3, 1.0 / 3};
  const ValidationReport r =
      TemporalValidate("uniform", ConstantRunner(u), train, test, {});
  EXPECT_NEAR(r.mean_log_likelihood, -std::log(3.0), 1e-15);
  EXPECT_THROW(TemporalValidate("uniform", ConstantRunner(u), test, train, {}),
               std::invalid_argument);
}

TEST_F(ReportTest, OddsRunnerSkipsMissingPrices) {
  std::vector<MatchRecord> recs(test_.begin(), test_.end());
  recs[0].odds = DecimalOdds{2.0, 3.0, 6.0};
  recs[2].odds = DecimalOdds{1.5, 4.0, 7.0};
  const Dataset test(recs, test_.shared_teams());
  const RunnerOutput out = OddsRunner()(Dataset(), test, {});
  ASSERT_EQ(out.predictions.size(), 4u);
  EXPECT_TRUE(out.predictions[0].has_value());
  EXPECT_FALSE(out.predictions[1].has_value());
  EXPECT_EQ(*out.predictions[2], OddsToProbs({1.5, 4.0, 7.0}));
}

TEST_F(ReportTest, HomeWinRunnerUsesTrainingFrequencies) {
  const RunnerOutput out = HomeWinRunner()(test_, test_, {});
  EXPECT_EQ(*out.predictions[0], FitHomeWinBaseline(test_).frequencies);
}

TEST(RunnerTest, QuarterlyRefitSeesOnlyThePast) {
  testing::RandomDataOptions opts;
  opts.n_matches = 240;
  opts.spacing_days = 2;
  const Dataset all = testing::RandomDataset(opts, 71);
  const Dataset train = all.Slice(0, 150);
  const Dataset test = all.Slice(150, 90);
  const auto quarters = PartitionBatches(test, BatchPolicy::CalendarQuarter());
  ASSERT_GE(quarters.size(), 2u);
  const RunnerOutput out = RegularizedRunner(true, 0.3)(train, test, {});
  const RegularizedFit first = FitRegularized(train, true, 0.3);
  const RegularizedFit second = FitRegularized(Concat(train, quarters[0]), true, 0.3);
  const std::size_t k = quarters[0].size();
  EXPECT_EQ(*out.predictions[0],
            PredictRegularized(first, test[0].home, test[0].away));
  EXPECT_EQ(*out.predictions[k],
            PredictRegularized(second, test[k].home, test[k].away));

  const RunnerOutput dc = PoissonRunner(PoissonVariant::kMaher, 0)(train, test, {});
  const PoissonBaselineState maher =
      FitPoissonBaseline(train, PoissonVariant::kMaher, 0).state;
  const OutcomeDistribution want =
      PoissonPredictTernary(maher, test[0].home, test[0].away);
  EXPECT_NEAR(dc.predictions[0]->p_win, want.p_win, 1e-12);
}

TEST(RunnerTest, StructuredRunnerForwardsTheRegime) {
  testing::RandomDataOptions opts;
  opts.n_matches = 120;
  const Dataset all = testing::RandomDataset(opts, 5);
  const Dataset train = all.Slice(0, 80);
  const Dataset test = all.Slice(80, 40);
  const ModelSpec spec{Structure::kRank2HomeAdv, Link::kTernary, false, 6};
  const RunnerOutput out =
      StructuredRunner(spec, Regime::kTwoStage)(train, test, {});
  const RegimeRun run = RunRegime(spec, Regime::kTwoStage, train, test, {});
  ASSERT_EQ(out.predictions.size(), test.size());
  for (std::size_t k = 0; k < test.size(); ++k) {
    EXPECT_EQ(*out.predictions[k], run.test_predictions[k]);
  }
  EXPECT_EQ(out.leaked, 0u);
}

TEST_F(ReportTest, PairingKeepsCommonFiniteCases) {
  std::vector<std::optional<OutcomeDistribution>> a(4, OutcomeDistribution{0.4, 0.3, 0.3});
  std::vector<std::optional<OutcomeDistribution>> b = a;
  a[1] = std::nullopt;
  b[3] = OutcomeDistribution{0.0, 0.5, 0.5};  // home win observed: infinite
  const PairedValues p = PairLogLikelihoods(BuildReport("a", test_, a),
                                            BuildReport("b", test_, b));
  ASSERT_EQ(p.a.size(), 2u);  // cases 0 and 2
  EXPECT_NEAR(p.a[0], std::log(0.4), 1e-15);
  EXPECT_NEAR(p.b[1], std::log(0.3), 1e-15);
}

TEST_F(ReportTest, CsvAndJson) {
  const std::vector<std::optional<OutcomeDistribution>> preds = {
      OutcomeDistribution{0.5, 0.25, 0.25}, std::nullopt, std::nullopt,
      OutcomeDistribution{0.0, 0.5, 0.5}};
  const ValidationReport r = BuildReport("odds", test_, preds, 0, {50, 0.95, 0});
  std::ostringstream csv;
  WriteReportCsv(csv, r, test_);
  std::istringstream lines(csv.str());
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  EXPECT_EQ(header,
            "match_id,date,home,away,p_win,p_draw,p_lose,observed,log_loss,"
            "brier,correct");
  EXPECT_EQ(first.substr(0, 26), "0,2010-08-01,T0,T1,0.5,0.2");
  const nlohmann::json j = nlohmann::json::parse(ReportJson(r));
  EXPECT_EQ(j["model"], "odds");
  EXPECT_EQ(j["cases"], 2);
  EXPECT_EQ(j["skipped"], 2);
  EXPECT_EQ(j["infinite_losses"], 1);
  EXPECT_NEAR(j["mean_log_likelihood"].get<double>(), std::log(0.5), 1e-15);
  EXPECT_EQ(j["accuracy_ci"].size(), 2u);
}

}  // namespace
}  // namespace slodds
