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

#include "slodds/synthetic.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>

#include "slodds/evaluation.h"
#include "slodds/format.h"
#include "slodds/training.h"

namespace slodds {
namespace {

constexpr int kMaxGramSchmidtRetries = 100;

Eigen::VectorXd Gaussian(std::mt19937_64& rng, int n, double mean, double sd) {
  std::normal_distribution<double> normal(mean, sd);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

// Fills the lower triangle from the upper one so L + L^T == 0 exactly.
template <typename Entry>
Eigen::MatrixXd Antisymmetric(int q, Entry entry) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(q, q);
  for (int i = 0; i < q; ++i) {
    for (int j = i + 1; j < q; ++j) {
      m(i, j) = entry(i, j);
      m(j, i) = -m(i, j);
    }
  }
  return m;
}

Eigen::VectorXd OrthonormalDraw(std::mt19937_64& rng,
                                const std::vector<Eigen::VectorXd>& basis,
                                int q) {
  for (int attempt = 0; attempt < kMaxGramSchmidtRetries; ++attempt) {
    Eigen::VectorXd v = Gaussian(rng, q, 0.0, 1.0);
    for (const Eigen::VectorXd& b : basis) v -= b.dot(v) * b;
    const double norm = v.norm();
    if (norm > 1e-8) return v / norm;
  }
  throw std::runtime_error("Gram-Schmidt kept producing degenerate vectors");
}

}  // namespace

std::string_view TruthName(TruthKind kind) {
  switch (kind) {
    case TruthKind::kRank2Gaussian:
      return "rank2";
    case TruthKind::kRank4Orthonormal:
      return "rank4";
    case TruthKind::kRank4Gaussian:
      return "rank4-gaussian";
    case TruthKind::kEloGaussian:
      return "elo";
  }
  return "unknown";
}

TruthKind ParseTruth(std::string_view name) {
  for (TruthKind k : {TruthKind::kRank2Gaussian, TruthKind::kRank4Orthonormal,
                      TruthKind::kRank4Gaussian, TruthKind::kEloGaussian}) {
    if (TruthName(k) == name) return k;
  }
  throw std::invalid_argument("unknown truth '" + std::string(name) +
                              "' (valid: rank2, rank4, rank4-gaussian, elo)");
}

void SynthSpec::Validate() const {
  if (q < 2) throw std::invalid_argument("need at least 2 teams");
  if (matches_per_pair < 1) {
    throw std::invalid_argument("matches per pair must be >= 1");
  }
  if (!(sigma > 0 && sd > 0 && s1 > 0 && s2 > 0)) {
    throw std::invalid_argument("scale parameters must be positive");
  }
  if (truth == TruthKind::kRank4Orthonormal && q < 4) {
    throw std::invalid_argument("an orthonormal rank-four truth needs q >= 4");
  }
}

Eigen::MatrixXd GenTruth(const SynthSpec& spec) {
  spec.Validate();
  std::mt19937_64 rng(spec.seed);
  const int q = spec.q;
  switch (spec.truth) {
    case TruthKind::kRank2Gaussian: {
      const Eigen::VectorXd u = Gaussian(rng, q, spec.mu, spec.sigma);
      const Eigen::VectorXd v = Gaussian(rng, q, spec.mu, spec.sigma);
      return Antisymmetric(q, [&](int i, int j) {
        return u[i] * v[j] - v[i] * u[j];
      });
    }
    case TruthKind::kRank4Gaussian: {
      const Eigen::VectorXd u = Gaussian(rng, q, spec.mu, spec.sigma);
      const Eigen::VectorXd v = Gaussian(rng, q, spec.mu, spec.sigma);
      const Eigen::VectorXd t = Gaussian(rng, q, spec.mu, spec.sigma);
      return Antisymmetric(q, [&](int i, int j) {
        return u[i] * v[j] - v[i] * u[j] + t[i] - t[j];
      });
    }
    case TruthKind::kRank4Orthonormal: {
      std::vector<Eigen::VectorXd> basis{
          Eigen::VectorXd::Constant(q, 1.0 / std::sqrt(static_cast<double>(q)))};
      for (int k = 0; k < 3; ++k) basis.push_back(OrthonormalDraw(rng, basis, q));
      const Eigen::VectorXd& e = basis[0];
      const Eigen::VectorXd& u = basis[1];
      const Eigen::VectorXd& v = basis[2];
      const Eigen::VectorXd& t = basis[3];
      return Antisymmetric(q, [&](int i, int j) {
        return spec.s1 * (u[i] * v[j] - v[i] * u[j]) +
               spec.s2 * (t[i] * e[j] - e[i] * t[j]);
      });
    }
    case TruthKind::kEloGaussian: {
      const Eigen::VectorXd t = Gaussian(rng, q, 0.0, spec.sd);
      return Antisymmetric(q, [&](int i, int j) { return t[i] - t[j]; });
    }
  }
  throw std::invalid_argument("unknown truth kind");
}

std::shared_ptr<const TeamIndex> SyntheticTeams(int q) {
  auto teams = std::make_shared<TeamIndex>();
  for (int i = 0; i < q; ++i) {
    char name[16];
    std::snprintf(name, sizeof(name), "T%02d", i + 1);
    teams->Intern(name);
  }
  return teams;
}

Dataset SampleMatches(const Eigen::MatrixXd& truth, int matches_per_pair,
                      std::uint64_t seed,
                      std::shared_ptr<const TeamIndex> teams,
                      const Date& start) {
  const int q = static_cast<int>(truth.rows());
  if (truth.cols() != q || teams->size() != q) {
    throw std::invalid_argument("truth and team index disagree in size");
  }
  if (matches_per_pair < 1) {
    throw std::invalid_argument("matches per pair must be >= 1");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<MatchRecord> records;
  records.reserve(static_cast<std::size_t>(q) * (q - 1) / 2 * matches_per_pair);
  for (int i = 0; i < q; ++i) {
    for (int j = i + 1; j < q; ++j) {
      const double l = std::clamp(truth(i, j), -kLogOddsClamp, kLogOddsClamp);
      const double p = Sigmoid(l);
      for (int k = 0; k < matches_per_pair; ++k) {
        MatchRecord r;
        r.home = i;
        r.away = j;
        const bool win = unit(rng) < p;
        r.home_goals = win ? 1 : 0;
        r.away_goals = win ? 0 : 1;
        r.outcome = win ? Outcome::kHomeWin : Outcome::kAwayWin;
        records.push_back(r);
      }
    }
  }
  std::shuffle(records.begin(), records.end(), rng);
  const std::chrono::sys_days day0{start};
  for (std::size_t k = 0; k < records.size(); ++k) {
    records[k].date = Date{day0 + std::chrono::days(static_cast<int>(k))};
  }
  return Dataset(std::move(records), std::move(teams));
}

std::vector<double> ExperimentResult::Column(const std::string& model,
                                             bool loglik) const {
  std::vector<double> out;
  for (const ExperimentRow& r : rows) {
    if (r.model == model) out.push_back(loglik ? r.mean_loglik : r.accuracy);
  }
  return out;
}

ExperimentResult ReplicateExperiment(const SynthSpec& spec,
                                     const std::vector<NamedModel>& models,
                                     int reps, std::uint64_t seed,
                                     const std::vector<double>& k_grid) {
  spec.Validate();
  if (reps < 2) throw std::invalid_argument("need at least 2 replications");
  if (models.empty()) throw std::invalid_argument("no models given");
  if (k_grid.empty()) throw std::invalid_argument("learning-rate grid is empty");
  const auto teams = SyntheticTeams(spec.q);
  using std::chrono::sys_days;
  const Date valid_start{std::chrono::year{2000}, std::chrono::January,
                         std::chrono::day{1}};

  ExperimentResult result;
  for (int rep = 0; rep < reps; ++rep) {
    const std::uint64_t base = 4 * static_cast<std::uint64_t>(rep);
    SynthSpec truth_spec = spec;
    truth_spec.seed = StreamSeed(seed, base);
    const Eigen::MatrixXd truth = GenTruth(truth_spec);
    const Dataset valid =
        SampleMatches(truth, spec.matches_per_pair, StreamSeed(seed, base + 1),
                      teams, valid_start);
    const Date test_start{sys_days(valid.records().back().date) +
                          std::chrono::days(1)};
    const Dataset test =
        SampleMatches(truth, spec.matches_per_pair, StreamSeed(seed, base + 2),
                      teams, test_start);

    for (const NamedModel& m : models) {
      ModelSpec ms = m.spec;
      ms.n_teams = spec.q;
      TrainConfig base_cfg;
      base_cfg.seed = StreamSeed(seed, base + 3);
      std::vector<TrainConfig> grid;
      for (double k : k_grid) {
        TrainConfig c = base_cfg;
        c.learning_rate = k;
        grid.push_back(c);
      }
      const Dataset none(std::vector<MatchRecord>{}, teams);
      const GridSearchResult tuned =
          GridSearch(ms, Regime::kOnline, none, valid, grid);
      const RegimeRun run =
          RunRegime(ms, Regime::kOnline, valid, test, tuned.best);

      ExperimentRow row;
      row.rep = rep;
      row.model = m.name;
      row.learning_rate = tuned.best.learning_rate;
      row.mean_loglik = MeanOutcomeLogLikelihood(run.test_predictions, test);
      std::size_t correct = 0;
      for (std::size_t k = 0; k < test.size(); ++k) {
        correct += ArgmaxOutcome(run.test_predictions[k]) == test[k].outcome;
      }
      row.accuracy = static_cast<double>(correct) / test.size();
      result.rows.push_back(row);
    }
  }

  for (std::size_t a = 0; a < models.size(); ++a) {
    for (std::size_t b = a + 1; b < models.size(); ++b) {
      ModelComparison c;
      c.first = models[a].name;
      c.second = models[b].name;
      const auto la = result.Column(c.first, true);
      const auto lb = result.Column(c.second, true);
      const auto aa = result.Column(c.first, false);
      const auto ab = result.Column(c.second, false);
      c.loglik_greater = WilcoxonSignedRank(lb, la, Alternative::kGreater);
      c.accuracy_greater = WilcoxonSignedRank(ab, aa, Alternative::kGreater);
      c.loglik_two_sided = WilcoxonSignedRank(lb, la, Alternative::kTwoSided);
      c.accuracy_two_sided = WilcoxonSignedRank(ab, aa, Alternative::kTwoSided);
      result.comparisons.push_back(c);
    }
  }
  return result;
}

void WriteExperimentCsv(std::ostream& out, const ExperimentResult& result) {
  out << "rep,model,learning_rate,mean_loglik,accuracy\n";
  for (const ExperimentRow& r : result.rows) {
    out << r.rep << ',' << r.model << ',' << FormatDouble(r.learning_rate)
        << ',' << FormatDouble(r.mean_loglik) << ',' << FormatDouble(r.accuracy)
        << '\n';
  }
}

}  // namespace slodds
