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

#include "slodds/season.h"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "slodds/format.h"
#include "slodds/stats.h"

namespace slodds {

RankDistribution SimulateSeason(const std::vector<OutcomeDistribution>& preds,
                                const std::vector<Fixture>& fixtures,
                                int n_teams, int replicates,
                                std::uint64_t seed) {
  if (preds.size() != fixtures.size()) {
    throw std::invalid_argument("one prediction is needed per fixture");
  }
  if (n_teams < 1) throw std::invalid_argument("need at least one team");
  if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  for (const auto& [home, away] : fixtures) {
    if (home < 0 || away < 0 || home >= n_teams || away >= n_teams ||
        home == away) {
      throw std::invalid_argument("fixture refers to an invalid team pair");
    }
  }
  Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(n_teams, n_teams);
  std::vector<int> points(n_teams);
  std::vector<double> tie_key(n_teams);
  std::vector<int> order(n_teams);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int r = 0; r < replicates; ++r) {
    std::mt19937_64 rng(StreamSeed(seed, static_cast<std::uint64_t>(r)));
    std::fill(points.begin(), points.end(), 0);
    for (std::size_t f = 0; f < fixtures.size(); ++f) {
      const double x = unit(rng);
      const OutcomeDistribution& p = preds[f];
      if (x < p.p_win) {
        points[fixtures[f].first] += 3;
      } else if (x < p.p_win + p.p_draw) {
        points[fixtures[f].first] += 1;
        points[fixtures[f].second] += 1;
      } else {
        points[fixtures[f].second] += 3;
      }
    }
    for (int t = 0; t < n_teams; ++t) tie_key[t] = unit(rng);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (points[a] != points[b]) return points[a] > points[b];
      return tie_key[a] < tie_key[b];
    });
    for (int pos = 0; pos < n_teams; ++pos) ++counts(order[pos], pos);
  }
  RankDistribution d;
  d.probabilities = counts.cast<double>() / static_cast<double>(replicates);
  d.replicates = replicates;
  d.seed = seed;
  return d;
}

std::vector<RankQuartiles> SummarizeRanks(const RankDistribution& dist) {
  const Eigen::Index n = dist.probabilities.rows();
  std::vector<RankQuartiles> out(n);
  for (Eigen::Index t = 0; t < n; ++t) {
    // Smallest position whose cumulative probability reaches the level.
    auto quantile = [&](double level) {
      double cum = 0;
      for (Eigen::Index pos = 0; pos < dist.probabilities.cols(); ++pos) {
        cum += dist.probabilities(t, pos);
        if (cum >= level - 1e-12) return static_cast<int>(pos) + 1;
      }
      return static_cast<int>(dist.probabilities.cols());
    };
    out[t] = {quantile(0.25), quantile(0.5), quantile(0.75)};
  }
  return out;
}

void WriteRankCsv(std::ostream& out, const RankDistribution& dist,
                  const std::vector<std::string>& names) {
  if (static_cast<Eigen::Index>(names.size()) != dist.probabilities.rows()) {
    throw std::invalid_argument("one name is needed per team");
  }
  out << "team";
  for (Eigen::Index pos = 0; pos < dist.probabilities.cols(); ++pos) {
    out << ',' << pos + 1;
  }
  out << '\n';
  for (std::size_t t = 0; t < names.size(); ++t) {
    out << names[t];
    for (Eigen::Index pos = 0; pos < dist.probabilities.cols(); ++pos) {
      out << ',' << FormatDouble(dist.probabilities(t, pos));
    }
    out << '\n';
  }
}

std::string RankSummaryText(const RankDistribution& dist,
                            const std::vector<std::string>& names) {
  if (static_cast<Eigen::Index>(names.size()) != dist.probabilities.rows()) {
    throw std::invalid_argument("one name is needed per team");
  }
  std::ostringstream s;
  s << "# " << dist.replicates << " replicates, seed " << dist.seed << '\n';
  s << "# NOTE: teams level on points are ordered at random; goal difference "
       "is not simulated\n";
  s << "team,q25,median,q75\n";
  const std::vector<RankQuartiles> q = SummarizeRanks(dist);
  for (std::size_t t = 0; t < names.size(); ++t) {
    s << names[t] << ',' << q[t].lower << ',' << q[t].median << ','
      << q[t].upper << '\n';
  }
  return s.str();
}

}  // namespace slodds
