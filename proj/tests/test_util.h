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


// Shared fixtures for the slodds tests.

#ifndef SLODDS_TESTS_TEST_UTIL_H_
#define SLODDS_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "slodds/dataset.h"
#include "slodds/model.h"

namespace slodds::testing {

struct RandomDataOptions {
  int n_teams = 6;
  int n_matches = 40;
  double mean_goals = 1.4;
  bool odds = false;
  bool promotions = false;
  // First match date; later matches follow one per `spacing_days`.
  Date start{std::chrono::year{2010}, std::chrono::August, std::chrono::day{1}};
  int spacing_days = 1;
};

// Random fixtures with Poisson scores, so all three outcomes occur.
Dataset RandomDataset(const RandomDataOptions& options, std::uint64_t seed);

// One match per day from `start`: {home, away, home goals, away goals}.
// Teams are named T0, T1, ...
struct Score {
  int home, away, home_goals, away_goals;
};
Dataset ScoresDataset(int n_teams, const std::vector<Score>& games,
                      const Date& start = RandomDataOptions{}.start);

Eigen::MatrixXd RandomMatrix(int rows, int cols, std::uint64_t seed,
                             double scale = 1.0);
Eigen::MatrixXd RandomAntisymmetric(int n, std::uint64_t seed,
                                    double scale = 1.0);

// Central differences of f at x with step h.
Eigen::VectorXd FiniteDifferenceGradient(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x, double h = 1e-5);

// max_k |a_k - b_k| / max(1, |b_k|).
double MaxRelativeError(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Random parameter values for every active group of `spec`.
ModelState RandomState(const ModelSpec& spec, std::uint64_t seed);

}  // namespace slodds::testing

#endif  // SLODDS_TESTS_TEST_UTIL_H_
