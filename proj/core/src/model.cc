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

#include "slodds/model.h"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace slodds {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Standard deviation of the random factor initialisation. Zero is a saddle
// point of the factor models; much smaller scales leave online training
// stuck near it for thousands of updates.
constexpr double kFactorInitScale = 0.2;

struct NameEntry {
  std::string_view name;
  Structure structure;
};

constexpr NameEntry kStructureNames[] = {
    {"rank2", Structure::kRank2},
    {"rank2-home", Structure::kRank2HomeAdv},
    {"twofactor", Structure::kTwoFactor},
    {"twofactor-home", Structure::kTwoFactorHomeAdv},
    {"rankfour", Structure::kRankFour},
    {"rankfour-home", Structure::kRankFourHomeAdv},
};

// Clamped value and whether the clamp was inactive (derivative 1).
struct Clamped {
  double value;
  double slope;
};

Clamped Clamp(double x) {
  if (x > kLogOddsClamp) return {kLogOddsClamp, 0.0};
  if (x < -kLogOddsClamp) return {-kLogOddsClamp, 0.0};
  return {x, 1.0};
}

double BinaryTarget(Outcome outcome) {
  switch (outcome) {
    case Outcome::kHomeWin:
      return 1.0;
    case Outcome::kDraw:
      return 0.5;
    case Outcome::kAwayWin:
      return 0.0;
  }
  return 0.0;
}

SkellamParams SkellamMeans(const ModelState& state, const ModelSpec& spec,
                           int i, int j, Clamped* home, Clamped* away) {
  const double hh = spec.HasHomeAdvantage() ? state.h : 0.0;
  *home = Clamp(state.skellam_u[j] + state.skellam_v[i] + hh);
  *away = Clamp(state.skellam_u[i] + state.skellam_v[j]);
  return {std::exp(home->value), std::exp(away->value)};
}

void CheckPair(const ModelSpec& spec, int i, int j) {
  if (i < 0 || j < 0 || i >= spec.n_teams || j >= spec.n_teams) {
    throw std::out_of_range("team id outside the model's team range");
  }
  if (i == j) throw std::invalid_argument("a team cannot play itself");
}

}  // namespace

std::string_view StructureName(Structure s) {
  for (const auto& e : kStructureNames) {
    if (e.structure == s) return e.name;
  }
  return "unknown";
}

std::string_view LinkName(Link l) {
  switch (l) {
    case Link::kBinary:
      return "binary";
    case Link::kTernary:
      return "ternary";
    case Link::kSkellam:
      return "skellam";
  }
  return "unknown";
}

Structure ParseStructure(std::string_view name) {
  for (const auto& e : kStructureNames) {
    if (e.name == name) return e.structure;
  }
  throw std::invalid_argument("unknown structure '" + std::string(name) + "'");
}

Link ParseLink(std::string_view name) {
  if (name == "binary") return Link::kBinary;
  if (name == "ternary") return Link::kTernary;
  if (name == "skellam") return Link::kSkellam;
  throw std::invalid_argument("unknown link '" + std::string(name) + "'");
}

bool ModelSpec::HasHomeAdvantage() const {
  return structure == Structure::kRank2HomeAdv ||
         structure == Structure::kTwoFactorHomeAdv ||
         structure == Structure::kRankFourHomeAdv;
}

bool ModelSpec::HasTheta() const {
  if (link == Link::kSkellam) return false;
  return structure == Structure::kRank2 ||
         structure == Structure::kRank2HomeAdv ||
         structure == Structure::kRankFour ||
         structure == Structure::kRankFourHomeAdv;
}

bool ModelSpec::HasFactors() const {
  if (link == Link::kSkellam) return false;
  return structure == Structure::kTwoFactor ||
         structure == Structure::kTwoFactorHomeAdv ||
         structure == Structure::kRankFour ||
         structure == Structure::kRankFourHomeAdv;
}

unsigned ModelSpec::ActiveGroups() const {
  unsigned g = 0;
  if (HasTheta()) g |= kGroupTheta;
  if (HasFactors()) g |= kGroupFactors;
  if (HasHomeAdvantage()) g |= kGroupHome;
  if (link == Link::kTernary) g |= kGroupDraw;
  if (covariates) g |= kGroupCovariates;
  if (link == Link::kSkellam) g |= kGroupSkellam;
  return g;
}

void ModelSpec::Validate() const {
  if (n_teams < 2) throw std::invalid_argument("a model needs at least 2 teams");
  if (link == Link::kSkellam) {
    if (structure != Structure::kRank2 &&
        structure != Structure::kRank2HomeAdv) {
      throw std::invalid_argument(
          "the skellam link supports only the rank2 structures");
    }
    if (covariates) {
      throw std::invalid_argument("the skellam link takes no covariates");
    }
  }
}

double ModelState::phi() const { return std::exp(phi_psi); }

ModelState ModelState::Zeros(int n_teams) {
  ModelState s;
  s.theta = Eigen::VectorXd::Zero(n_teams);
  s.u = Eigen::VectorXd::Zero(n_teams);
  s.v = Eigen::VectorXd::Zero(n_teams);
  s.skellam_u = Eigen::VectorXd::Zero(n_teams);
  s.skellam_v = Eigen::VectorXd::Zero(n_teams);
  return s;
}

ModelState InitialState(const ModelSpec& spec, std::uint64_t seed) {
  spec.Validate();
  ModelState s = ModelState::Zeros(spec.n_teams);
  if (spec.HasFactors()) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    for (int i = 0; i < spec.n_teams; ++i) s.u[i] = kFactorInitScale * normal(rng);
    for (int i = 0; i < spec.n_teams; ++i) s.v[i] = kFactorInitScale * normal(rng);
  }
  s.phi_psi = std::log(0.5);
  return s;
}

void CheckDimensions(const ModelState& state, const ModelSpec& spec) {
  const Eigen::Index q = spec.n_teams;
  if (state.theta.size() != q || state.u.size() != q || state.v.size() != q ||
      state.skellam_u.size() != q || state.skellam_v.size() != q) {
    throw std::invalid_argument("model state dimensions do not match " +
                                std::to_string(q) + " teams");
  }
}

LogOddsMatrix BuildLogOdds(const ModelState& state, const ModelSpec& spec) {
  spec.Validate();
  CheckDimensions(state, spec);
  const int q = spec.n_teams;
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(q);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(q, q);
  if (spec.link == Link::kSkellam) {
    m = ones * state.skellam_u.transpose() + state.skellam_v * ones.transpose();
  } else {
    if (spec.HasTheta()) {
      m += state.theta * ones.transpose() - ones * state.theta.transpose();
    }
    if (spec.HasFactors()) {
      m += state.u * state.v.transpose() - state.v * state.u.transpose();
    }
  }
  if (spec.HasHomeAdvantage()) m.array() += state.h;
  return {m, spec.structure};
}

double MatchLogOdds(const ModelState& state, const ModelSpec& spec, int i,
                    int j, const MatchFeatures& features) {
  double l = 0;
  if (spec.HasTheta()) l += state.theta[i] - state.theta[j];
  if (spec.HasFactors()) l += state.u[i] * state.v[j] - state.v[i] * state.u[j];
  if (spec.HasHomeAdvantage()) l += state.h;
  if (spec.covariates) {
    if (features.home_promoted) l += state.beta_home;
    if (features.away_promoted) l += state.beta_away;
  }
  return l;
}

OutcomeDistribution Predict(const ModelState& state, const ModelSpec& spec,
                            int i, int j, const MatchFeatures& features) {
  CheckPair(spec, i, j);
  if (spec.link == Link::kSkellam) {
    Clamped home, away;
    return SkellamTernary(SkellamMeans(state, spec, i, j, &home, &away));
  }
  const double l = Clamp(MatchLogOdds(state, spec, i, j, features)).value;
  if (spec.link == Link::kTernary) return TernaryProbs(l, state.phi());
  OutcomeDistribution d;
  d.p_win = Sigmoid(l);
  d.p_lose = 1.0 - d.p_win;
  return d;
}

OutcomeDistribution PredictRecord(const ModelState& state,
                                  const ModelSpec& spec,
                                  const MatchRecord& record) {
  return Predict(state, spec, record.home, record.away, record.features);
}

double RecordLogLikelihood(const ModelState& state, const ModelSpec& spec,
                           const MatchRecord& record) {
  const int i = record.home;
  const int j = record.away;
  CheckPair(spec, i, j);
  if (spec.link == Link::kSkellam) {
    Clamped home, away;
    return SkellamLogPmf(record.ScoreDifference(),
                         SkellamMeans(state, spec, i, j, &home, &away));
  }
  const double l =
      Clamp(MatchLogOdds(state, spec, i, j, record.features)).value;
  if (spec.link == Link::kBinary) {
    const double s = BinaryTarget(record.outcome);
    double out = 0;
    if (s > 0) out += s * LogSigmoid(l);
    if (s < 1) out += (1 - s) * LogSigmoid(-l);
    return out;
  }
  const double phi = state.phi();
  switch (record.outcome) {
    case Outcome::kHomeWin:
      return LogSigmoid(l);
    case Outcome::kAwayWin:
      return LogSigmoid(-l - phi);
    case Outcome::kDraw: {
      // s(-l) - s(-l - phi) = s(-l) s(l + phi) (1 - e^-phi)
      if (phi <= 0) return kNegInf;
      return LogSigmoid(-l) + LogSigmoid(l + phi) + std::log(-std::expm1(-phi));
    }
  }
  return kNegInf;
}

double LogLikelihood(const ModelState& state, const ModelSpec& spec,
                     const Dataset& data, std::size_t* zero_mass) {
  spec.Validate();
  CheckDimensions(state, spec);
  double total = 0;
  std::size_t zeros = 0;
  for (const MatchRecord& r : data) {
    const double ll = RecordLogLikelihood(state, spec, r);
    if (ll == kNegInf) ++zeros;
    total += ll;
  }
  if (zero_mass != nullptr) *zero_mass = zeros;
  return total;
}

void AccumulateGradient(const ModelState& state, const ModelSpec& spec,
                        const MatchRecord& record, double weight,
                        ModelState* grad) {
  const int i = record.home;
  const int j = record.away;
  CheckPair(spec, i, j);

  if (spec.link == Link::kSkellam) {
    Clamped home, away;
    const SkellamParams mu = SkellamMeans(state, spec, i, j, &home, &away);
    const SkellamScore score = SkellamLogPmfGradient(record.ScoreDifference(), mu);
    const double g1 = weight * score.d_mu1 * mu.mu1 * home.slope;
    const double g2 = weight * score.d_mu2 * mu.mu2 * away.slope;
    grad->skellam_u[j] += g1;
    grad->skellam_v[i] += g1;
    if (spec.HasHomeAdvantage()) grad->h += g1;
    grad->skellam_u[i] += g2;
    grad->skellam_v[j] += g2;
    return;
  }

  const Clamped c = Clamp(MatchLogOdds(state, spec, i, j, record.features));
  const double l = c.value;
  double dl = 0;    // d loglik / d l
  double dpsi = 0;  // d loglik / d psi
  if (spec.link == Link::kBinary) {
    dl = BinaryTarget(record.outcome) - Sigmoid(l);
  } else {
    const double phi = state.phi();
    switch (record.outcome) {
      case Outcome::kHomeWin:
        dl = Sigmoid(-l);
        break;
      case Outcome::kAwayWin:
        dl = -Sigmoid(l + phi);
        dpsi = phi * dl;
        break;
      case Outcome::kDraw: {
        const double b = Sigmoid(-l - phi);
        dl = b - Sigmoid(l);
        dpsi = phi * (b + 1.0 / std::expm1(phi));
        break;
      }
    }
  }
  dl *= weight * c.slope;
  grad->phi_psi += weight * dpsi;

  if (spec.HasTheta()) {
    grad->theta[i] += dl;
    grad->theta[j] -= dl;
  }
  if (spec.HasFactors()) {
    grad->u[i] += dl * state.v[j];
    grad->u[j] -= dl * state.v[i];
    grad->v[j] += dl * state.u[i];
    grad->v[i] -= dl * state.u[j];
  }
  if (spec.HasHomeAdvantage()) grad->h += dl;
  if (spec.covariates) {
    if (record.features.home_promoted) grad->beta_home += dl;
    if (record.features.away_promoted) grad->beta_away += dl;
  }
}

ModelState Gradient(const ModelState& state, const ModelSpec& spec,
                    const Dataset& data) {
  spec.Validate();
  CheckDimensions(state, spec);
  ModelState g = ModelState::Zeros(spec.n_teams);
  for (const MatchRecord& r : data) AccumulateGradient(state, spec, r, 1.0, &g);
  return g;
}

void CenterRatings(ModelState* state) {
  if (state->theta.size() > 0) {
    state->theta.array() -= state->theta.mean();
  }
}

Eigen::VectorXd Pack(const ModelState& state, const ModelSpec& spec,
                     unsigned groups) {
  groups &= spec.ActiveGroups();
  const Eigen::Index q = spec.n_teams;
  Eigen::Index n = 0;
  if (groups & kGroupTheta) n += q;
  if (groups & kGroupFactors) n += 2 * q;
  if (groups & kGroupHome) n += 1;
  if (groups & kGroupDraw) n += 1;
  if (groups & kGroupCovariates) n += 2;
  if (groups & kGroupSkellam) n += 2 * q;
  Eigen::VectorXd x(n);
  Eigen::Index at = 0;
  auto put = [&](const Eigen::VectorXd& block) {
    x.segment(at, block.size()) = block;
    at += block.size();
  };
  if (groups & kGroupTheta) put(state.theta);
  if (groups & kGroupFactors) {
    put(state.u);
    put(state.v);
  }
  if (groups & kGroupHome) x[at++] = state.h;
  if (groups & kGroupDraw) x[at++] = state.phi_psi;
  if (groups & kGroupCovariates) {
    x[at++] = state.beta_home;
    x[at++] = state.beta_away;
  }
  if (groups & kGroupSkellam) {
    put(state.skellam_u);
    put(state.skellam_v);
  }
  return x;
}

void Unpack(const Eigen::VectorXd& packed, const ModelSpec& spec,
            unsigned groups, ModelState* state) {
  groups &= spec.ActiveGroups();
  const Eigen::Index q = spec.n_teams;
  if (packed.size() != Pack(*state, spec, groups).size()) {
    throw std::invalid_argument("packed parameter vector has the wrong size");
  }
  Eigen::Index at = 0;
  auto take = [&](Eigen::VectorXd* block) {
    *block = packed.segment(at, q);
    at += q;
  };
  if (groups & kGroupTheta) take(&state->theta);
  if (groups & kGroupFactors) {
    take(&state->u);
    take(&state->v);
  }
  if (groups & kGroupHome) state->h = packed[at++];
  if (groups & kGroupDraw) state->phi_psi = packed[at++];
  if (groups & kGroupCovariates) {
    state->beta_home = packed[at++];
    state->beta_away = packed[at++];
  }
  if (groups & kGroupSkellam) {
    take(&state->skellam_u);
    take(&state->skellam_v);
  }
}

}  // namespace slodds
