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


// Monte Carlo distribution of final league positions.

#ifndef SLODDS_SEASON_H_
#define SLODDS_SEASON_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "slodds/links.h"

namespace slodds {

struct RankDistribution {
  // probabilities(t, r): chance that team t finishes in position r + 1.
  Eigen::MatrixXd probabilities;
  int replicates = 0;
  std::uint64_t seed = 0;
};

using Fixture = std::pair<int, int>;  // (home, away)

// Samples every fixture's outcome from its distribution (win 3 points,
// draw 1) and ranks teams by points. Equal points are ordered uniformly
// at random, since goal difference is not simulated. Replicate r uses
// std::mt19937_64(StreamSeed(seed, r)). Throws std::invalid_argument on
// misaligned input.
RankDistribution SimulateSeason(const std::vector<OutcomeDistribution>& preds,
                                const std::vector<Fixture>& fixtures,
                                int n_teams, int replicates,
                                std::uint64_t seed);

struct RankQuartiles {
  int lower = 0;   // 25th percentile position
  int median = 0;
  int upper = 0;   // 75th percentile position
};

std::vector<RankQuartiles> SummarizeRanks(const RankDistribution& dist);

// Teams x positions CSV with a header row "team,1,2,...".
void WriteRankCsv(std::ostream& out, const RankDistribution& dist,
                  const std::vector<std::string>& names);

// One line per team with its quartile positions, preceded by a note on
// the random tie-break.
std::string RankSummaryText(const RankDistribution& dist,
                            const std::vector<std::string>& names);

}  // namespace slodds

#endif  // SLODDS_SEASON_H_
