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

// Scalar link functions and outcome distributions.

#ifndef SLODDS_LINKS_H_
#define SLODDS_LINKS_H_

#include "slodds/dataset.h"

namespace slodds {

// Probability mass over {win, draw, lose} from the home side's point of
// view. Binary predictions carry p_draw == 0 exactly.
struct OutcomeDistribution {
  double p_win = 0;
  double p_draw = 0;
  double p_lose = 0;

  double Mass(Outcome outcome) const;
  // Components in [0, 1] summing to 1 within `tol`.
  bool IsValid(double tol = 1e-12) const;

  friend bool operator==(const OutcomeDistribution&,
                         const OutcomeDistribution&) = default;
};

double Sigmoid(double x);
// log(Sigmoid(x)) without cancellation for large |x|.
double LogSigmoid(double x);
// Throws std::domain_error unless 0 < p < 1.
double Logit(double p);

// Proportional-odds ternary link:
//   win = s(l), lose = s(-l - phi), draw = s(-l) - s(-l - phi).
// Throws std::domain_error for phi < 0.
OutcomeDistribution TernaryProbs(double log_odds, double phi);

// Modified Bessel function of the first kind by its power series. Throws
// std::overflow_error when the value is not representable.
double BesselI(int order, double x);
// log I_order(x), summed in log space; usable far past BesselI's range.
double LogBesselI(int order, double x);

struct SkellamParams {
  double mu1 = 1;
  double mu2 = 1;
};

double SkellamLogPmf(int z, const SkellamParams& params);
double SkellamPmf(int z, const SkellamParams& params);

// d/dmu1 and d/dmu2 of log P(z | mu1, mu2), using
//   dP(z)/dmu1 = P(z-1) - P(z),  dP(z)/dmu2 = P(z+1) - P(z).
struct SkellamScore {
  double d_mu1 = 0;
  double d_mu2 = 0;
};
SkellamScore SkellamLogPmfGradient(int z, const SkellamParams& params);

// Win/draw/lose masses of the score difference: P(Z > 0), P(Z = 0),
// P(Z < 0). Summation runs outwards symmetrically until the collected mass
// is within 1e-10 of one (or |z| reaches 500), then is renormalised.
OutcomeDistribution SkellamTernary(const SkellamParams& params);

}  // namespace slodds

#endif  // SLODDS_LINKS_H_
