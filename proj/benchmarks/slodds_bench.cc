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


#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <benchmark/benchmark.h>

#include "slodds/links.h"
#include "slodds/model.h"
#include "slodds/regularized.h"
#include "slodds/season.h"
#include "slodds/synthetic.h"
#include "slodds/training.h"

namespace slodds {
namespace {

Dataset Synthetic(int q, int per_pair) {
  SynthSpec spec;
  spec.q = q;
  spec.seed = 1;
  return SampleMatches(GenTruth(spec), per_pair, 2, SyntheticTeams(q),
                       ParseIsoDate("2020-01-01"));
}

void BM_Gradient(benchmark::State& st) {
  const Dataset data = Synthetic(20, 2);
  ModelSpec spec{static_cast<Structure>(st.range(0)), Link::kTernary, false,
                 20};
  const ModelState x = InitialState(spec, 3);
  for (auto _ : st) benchmark::DoNotOptimize(Gradient(x, spec, data));
  st.SetItemsProcessed(st.iterations() * data.size());
  st.SetLabel(std::string(StructureName(spec.structure)));
}
BENCHMARK(BM_Gradient)
    ->Arg(static_cast<int>(Structure::kRank2HomeAdv))
    ->Arg(static_cast<int>(Structure::kRankFourHomeAdv));

void BM_EloUpdate(benchmark::State& st) {
  const Dataset data = Synthetic(20, 1);
  ModelSpec spec{Structure::kRank2HomeAdv, Link::kBinary, false, 20};
  ModelState x = InitialState(spec, 3);
  std::size_t i = 0;
  for (auto _ : st) {
    x = EloOnlineUpdate(x, spec, data[i], 0.05);
    i = (i + 1) % data.size();
  }
  benchmark::DoNotOptimize(x.theta.data());
}
BENCHMARK(BM_EloUpdate);

void BM_SoftThreshold(benchmark::State& st) {
  const int q = static_cast<int>(st.range(0));
  Eigen::MatrixXd a = Eigen::MatrixXd::Random(q, q);
  const Eigen::MatrixXd m = a - a.transpose();
  for (auto _ : st) benchmark::DoNotOptimize(SoftThreshold(m, 0.5));
}
BENCHMARK(BM_SoftThreshold)->Arg(20)->Arg(47)->Arg(100);

void BM_SkellamTernary(benchmark::State& st) {
  const SkellamParams p{1.6, 1.1};
  for (auto _ : st) benchmark::DoNotOptimize(SkellamTernary(p));
}
BENCHMARK(BM_SkellamTernary);

void BM_SimulateSeason(benchmark::State& st) {
  constexpr int kTeams = 20;
  std::vector<Fixture> fixtures;
  std::vector<OutcomeDistribution> preds;
  for (int i = 0; i < kTeams; ++i) {
    for (int j = 0; j < kTeams; ++j) {
      if (i == j) continue;
      fixtures.emplace_back(i, j);
      preds.push_back(TernaryProbs(0.1 * (i - j), 0.6));
    }
  }
  const int reps = static_cast<int>(st.range(0));
  for (auto _ : st) {
    benchmark::DoNotOptimize(
        SimulateSeason(preds, fixtures, kTeams, reps, 42));
  }
  st.SetItemsProcessed(st.iterations() * reps);
}
BENCHMARK(BM_SimulateSeason)->Arg(1000);

}  // namespace
}  // namespace slodds

BENCHMARK_MAIN();
