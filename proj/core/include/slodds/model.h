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

// Structured log-odds models: parameterisation, prediction, likelihood and
// gradients.

#ifndef SLODDS_MODEL_H_
#define SLODDS_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "slodds/dataset.h"
#include "slodds/links.h"

namespace slodds {

enum class Structure {
  kRank2,
  kRank2HomeAdv,
  kTwoFactor,
  kTwoFactorHomeAdv,
  kRankFour,
  kRankFourHomeAdv,
};

enum class Link { kBinary, kTernary, kSkellam };

std::string_view StructureName(Structure s);
std::string_view LinkName(Link l);
Structure ParseStructure(std::string_view name);
Link ParseLink(std::string_view name);

// Bit flags naming groups of free parameters.
enum ParamGroup : unsigned {
  kGroupTheta = 1u << 0,
  kGroupFactors = 1u << 1,     // u, v
  kGroupHome = 1u << 2,        // h
  kGroupDraw = 1u << 3,        // psi
  kGroupCovariates = 1u << 4,  // beta_home, beta_away
  kGroupSkellam = 1u << 5,     // skellam_u, skellam_v
};

struct ModelSpec {
  Structure structure = Structure::kRank2;
  Link link = Link::kBinary;
  bool covariates = false;
  int n_teams = 0;

  bool HasHomeAdvantage() const;
  bool HasTheta() const;
  bool HasFactors() const;
  // Groups that carry free parameters under this spec.
  unsigned ActiveGroups() const;
  // Throws std::invalid_argument for unsupported combinations: the Skellam
  // link requires a rank-2 structure and no covariates.
  void Validate() const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

// All parameters of every variant; unused blocks stay at zero. Also used
// as the gradient record.
struct ModelState {
  Eigen::VectorXd theta;
  Eigen::VectorXd u;
  Eigen::VectorXd v;
  double h = 0;
  double phi_psi = 0;  // phi = exp(phi_psi)
  double beta_home = 0;
  double beta_away = 0;
  // Skellam log-means: home = skellam_u[away] + skellam_v[home] + h,
  // away = skellam_u[home] + skellam_v[away].
  Eigen::VectorXd skellam_u;
  Eigen::VectorXd skellam_v;

  double phi() const;
  // Zero-valued state of the right dimensions.
  static ModelState Zeros(int n_teams);
};

// theta, h, beta at zero; u, v ~ 0.2 * N(0, 1) from `seed`; phi = 0.5.
ModelState InitialState(const ModelSpec& spec, std::uint64_t seed);

// Log-odds values are clamped to this magnitude before exponentiation.
inline constexpr double kLogOddsClamp = 36.0;

struct LogOddsMatrix {
  Eigen::MatrixXd entries;
  Structure declared_structure = Structure::kRank2;
};

// Q x Q structured log-odds matrix. Under the Skellam link this is the
// home log-mean matrix 1 u^T + v 1^T (+ h); the away matrix is its
// transpose without h.
LogOddsMatrix BuildLogOdds(const ModelState& state, const ModelSpec& spec);

// Log-odds of home side i against away side j, including home advantage
// and covariate terms. Not clamped.
double MatchLogOdds(const ModelState& state, const ModelSpec& spec, int i,
                    int j, const MatchFeatures& features = {});

OutcomeDistribution Predict(const ModelState& state, const ModelSpec& spec,
                            int i, int j, const MatchFeatures& features = {});
OutcomeDistribution PredictRecord(const ModelState& state,
                                  const ModelSpec& spec,
                                  const MatchRecord& record);

// Log-likelihood of one record. Binary links score a draw as half a win.
double RecordLogLikelihood(const ModelState& state, const ModelSpec& spec,
                           const MatchRecord& record);

// Sum of record log-likelihoods. A record with zero mass makes the sum
// -inf; the number of such records goes to `zero_mass` when given.
double LogLikelihood(const ModelState& state, const ModelSpec& spec,
                     const Dataset& data, std::size_t* zero_mass = nullptr);

// Adds `weight` times the gradient of one record's log-likelihood to
// `grad`, which must be shaped like ModelState::Zeros(n_teams).
void AccumulateGradient(const ModelState& state, const ModelSpec& spec,
                        const MatchRecord& record, double weight,
                        ModelState* grad);

ModelState Gradient(const ModelState& state, const ModelSpec& spec,
                    const Dataset& data);

// Mean-centres theta. Predictions are unchanged.
void CenterRatings(ModelState* state);

// Checks vector lengths against spec.n_teams; throws std::invalid_argument.
void CheckDimensions(const ModelState& state, const ModelSpec& spec);

// Flattens the free parameters of `groups` (intersected with the active
// groups of `spec`) in a fixed order.
Eigen::VectorXd Pack(const ModelState& state, const ModelSpec& spec,
                     unsigned groups);
void Unpack(const Eigen::VectorXd& packed, const ModelSpec& spec,
            unsigned groups, ModelState* state);

// Versioned plain-text serialisation.
void SaveModel(std::ostream& out, const ModelSpec& spec,
               const ModelState& state, const TeamIndex& teams);
void SaveModelFile(const std::string& path, const ModelSpec& spec,
                   const ModelState& state, const TeamIndex& teams);

struct LoadedModel {
  ModelSpec spec;
  ModelState state;
  TeamIndex teams;
};
LoadedModel LoadModel(std::istream& in);
LoadedModel LoadModelFile(const std::string& path);

}  // namespace slodds

#endif  // SLODDS_MODEL_H_
