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


#include "test_util.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "slodds/links.h"

namespace slodds::testing {

Dataset RandomDataset(const RandomDataOptions& options, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto teams = std::make_shared<TeamIndex>();
  for (int i = 0; i < options.n_teams; ++i) {
    teams->Intern("team" + std::to_string(i));
  }
  std::uniform_int_distribution<int> pick(0, options.n_teams - 1);
  std::poisson_distribution<int> goals(options.mean_goals);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::bernoulli_distribution coin(0.2);
  std::vector<MatchRecord> records;
  std::chrono::sys_days day{options.start};
  for (int m = 0; m < options.n_matches; ++m) {
    MatchRecord r;
    r.home = pick(rng);
    do {
      r.away = pick(rng);
    } while (r.away == r.home);
    r.home_goals = goals(rng);
    r.away_goals = goals(rng);
    r.outcome = OutcomeFromGoals(r.home_goals, r.away_goals);
    r.date = Date{day};
    day += std::chrono::days(options.spacing_days);
    if (options.odds) {
      const double pw = 0.2 + 0.5 * unit(rng);
      const double pd = 0.25 * (1 - pw);
      const double margin = 1.05;
      r.odds = DecimalOdds{1 / (pw * margin), 1 / (pd * margin),
                           1 / ((1 - pw - pd) * margin)};
    }
    if (options.promotions) {
      r.features.home_promoted = coin(rng);
      r.features.away_promoted = coin(rng);
    }
    records.push_back(r);
  }
  return Dataset(std::move(records), std::move(teams));
}

Dataset ScoresDataset(int n_teams, const std::vector<Score>& games,
                      const Date& start) {
  auto teams = std::make_shared<TeamIndex>();
  for (int i = 0; i < n_teams; ++i) teams->Intern("T" + std::to_string(i));
  std::vector<MatchRecord> records;
  std::chrono::sys_days day{start};
  for (const Score& g : games) {
    MatchRecord r;
    r.date = Date{day};
    r.home = g.home;
    r.away = g.away;
    r.home_goals = g.home_goals;
    r.away_goals = g.away_goals;
    r.outcome = OutcomeFromGoals(g.home_goals, g.away_goals);
    records.push_back(r);
    day += std::chrono::days(1);
  }
  return Dataset(std::move(records), std::move(teams));
}

Eigen::MatrixXd RandomMatrix(int rows, int cols, std::uint64_t seed,
                             double scale) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, scale);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = normal(rng);
  }
  return m;
}

Eigen::MatrixXd RandomAntisymmetric(int n, std::uint64_t seed, double scale) {
  Eigen::MatrixXd m = RandomMatrix(n, n, seed, scale);
  return (m - m.transpose()) / 2;
}

Eigen::VectorXd FiniteDifferenceGradient(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x, double h) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    Eigen::VectorXd up = x, down = x;
    up[k] += h;
    down[k] -= h;
    g[k] = (f(up) - f(down)) / (2 * h);
  }
  return g;
}

double MaxRelativeError(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double worst = 0;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    worst = std::max(worst,
                     std::abs(a[k] - b[k]) / std::max(1.0, std::abs(b[k])));
  }
  return worst;
}

ModelState RandomState(const ModelSpec& spec, std::uint64_t seed) {
  ModelState s = InitialState(spec, seed);
  const unsigned groups = spec.ActiveGroups();
  Eigen::VectorXd packed = Pack(s, spec, groups);
  std::mt19937_64 rng(seed + 1);
  std::normal_distribution<double> normal(0.0, 0.5);
  for (Eigen::Index k = 0; k < packed.size(); ++k) packed[k] = normal(rng);
  Unpack(packed, spec, groups, &s);
  return s;
}

}  // namespace slodds::testing
