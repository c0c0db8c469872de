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

#include "slodds/regularized.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "slodds/format.h"

namespace slodds {
namespace {

double SafeLogOdds(double a, double b, std::size_t* undefined,
                   std::size_t* infinite) {
  if (a == 0 && b == 0) {
    ++*undefined;
    return std::numeric_limits<double>::quiet_NaN();
  }
  const double v = std::log(a) - std::log(b);
  if (std::isinf(v)) ++*infinite;
  return v;
}

void CheckSquare(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
}

}  // namespace

CountMatrices CountOutcomes(const Dataset& data, bool ternary) {
  const int q = data.n_teams();
  CountMatrices c;
  c.ternary = ternary;
  c.wins = Eigen::MatrixXd::Zero(q, q);
  c.n = Eigen::MatrixXd::Zero(q, q);
  if (ternary) {
    c.draws = Eigen::MatrixXd::Zero(q, q);
    c.losses = Eigen::MatrixXd::Zero(q, q);
  }
  for (const MatchRecord& r : data) {
    const int i = r.home;
    const int j = r.away;
    if (!ternary) {
      if (r.outcome == Outcome::kDraw) continue;
      if (r.outcome == Outcome::kHomeWin) c.wins(i, j) += 1;
      if (r.outcome == Outcome::kAwayWin) c.wins(j, i) += 1;
    } else {
      switch (r.outcome) {
        case Outcome::kHomeWin:
          c.wins(i, j) += 1;
          c.losses(j, i) += 1;
          break;
        case Outcome::kDraw:
          c.draws(i, j) += 1;
          c.draws(j, i) += 1;
          break;
        case Outcome::kAwayWin:
          c.losses(i, j) += 1;
          c.wins(j, i) += 1;
          break;
      }
    }
    c.n(i, j) += 1;
    c.n(j, i) += 1;
  }
  return c;
}

EmpiricalLogOdds EmpiricalLogOddsMatrix(const CountMatrices& counts,
                                        double eps) {
  if (!(eps >= 0)) throw std::invalid_argument("eps must be non-negative");
  const Eigen::Index q = counts.n.rows();
  EmpiricalLogOdds e;
  e.l1 = Eigen::MatrixXd::Zero(q, q);
  if (counts.ternary) e.l2 = Eigen::MatrixXd::Zero(q, q);
  for (Eigen::Index i = 0; i < q; ++i) {
    for (Eigen::Index j = 0; j < q; ++j) {
      if (i == j) {
        if (counts.ternary) {
          e.l1(i, j) = -std::log(2.0);
          e.l2(i, j) = std::log(2.0);
        }
        continue;
      }
      if (!counts.ternary) {
        // p = (W_ij + eps) / (N_ij + 2 eps), 1 - p = (W_ji + eps) / (...)
        e.l1(i, j) = SafeLogOdds(counts.wins(i, j) + eps,
                                 counts.wins(j, i) + eps, &e.undefined,
                                 &e.infinite);
      } else {
        const double w = counts.wins(i, j) + eps;
        const double d = counts.draws(i, j) + eps;
        const double l = counts.losses(i, j) + eps;
        e.l1(i, j) = SafeLogOdds(w, d + l, &e.undefined, &e.infinite);
        e.l2(i, j) = SafeLogOdds(w + d, l, &e.undefined, &e.infinite);
      }
    }
  }
  return e;
}

Eigen::MatrixXd SoftThreshold(const Eigen::MatrixXd& m, double threshold) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU |
                                               Eigen::ComputeFullV);
  Eigen::VectorXd s =
      (svd.singularValues().array() - threshold).cwiseMax(0.0).matrix();
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
}

Eigen::MatrixXd SolveNuclearBinary(const Eigen::MatrixXd& lhat, double lambda) {
  CheckSquare(lhat);
  if (!(lambda >= 0)) throw std::invalid_argument("lambda must be >= 0");
  if (!lhat.allFinite()) throw std::invalid_argument("lhat must be finite");
  const Eigen::MatrixXd skew = 0.5 * (lhat - lhat.transpose());
  if (lambda == 0) return skew;
  const Eigen::MatrixXd l = SoftThreshold(skew, 0.5 * lambda);
  return 0.5 * (l - l.transpose());
}

double NuclearObjectiveBinary(const Eigen::MatrixXd& lhat,
                              const Eigen::MatrixXd& l, double lambda) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(l);
  return (lhat - l).squaredNorm() + lambda * svd.singularValues().sum();
}

double NuclearObjectiveTernary(const Eigen::MatrixXd& lhat1,
                               const Eigen::MatrixXd& lhat2,
                               const Eigen::MatrixXd& l, double phi,
                               double lambda) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(l);
  return (lhat1 - l).squaredNorm() + (lhat2.array() - l.array() - phi)
                                          .matrix()
                                          .squaredNorm() +
         lambda * svd.singularValues().sum();
}

TernaryNuclearSolution SolveNuclearTernary(const Eigen::MatrixXd& lhat1,
                                           const Eigen::MatrixXd& lhat2,
                                           double lambda, double tol,
                                           int max_iters) {
  CheckSquare(lhat1);
  if (lhat1.rows() != lhat2.rows() || lhat1.cols() != lhat2.cols()) {
    throw std::invalid_argument("lhat1 and lhat2 differ in shape");
  }
  if (!(lambda >= 0)) throw std::invalid_argument("lambda must be >= 0");
  if (!lhat1.allFinite() || !lhat2.allFinite()) {
    throw std::invalid_argument("lhat must be finite");
  }
  TernaryNuclearSolution sol;
  sol.l = lhat1;
  double previous = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iters; ++it) {
    sol.phi = (lhat2 - sol.l).mean();
    const Eigen::MatrixXd target =
        0.5 * (lhat1 + (lhat2.array() - sol.phi).matrix());
    sol.l = lambda == 0 ? target : SoftThreshold(target, 0.25 * lambda);
    const double obj =
        NuclearObjectiveTernary(lhat1, lhat2, sol.l, sol.phi, lambda);
    sol.objective_trace.push_back(obj);
    if (previous - obj < tol) break;
    previous = obj;
  }
  return sol;
}

std::vector<double> LambdaGrid(double sigma_max, int count) {
  if (count < 2) throw std::invalid_argument("grid needs at least 2 values");
  const double lo = 1e-3;
  const double hi = std::max(2.0 * sigma_max, 2.0 * lo);
  std::vector<double> grid;
  for (int k = 0; k < count; ++k) {
    const double t = static_cast<double>(k) / (count - 1);
    grid.push_back(std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))));
  }
  return grid;
}

RegularizedFit FitRegularized(const Dataset& train, bool ternary,
                              double lambda, double eps) {
  if (!(eps > 0)) {
    throw std::invalid_argument("fitting needs eps > 0 for finite entries");
  }
  const EmpiricalLogOdds e =
      EmpiricalLogOddsMatrix(CountOutcomes(train, ternary), eps);
  RegularizedFit fit;
  fit.ternary = ternary;
  fit.lambda = lambda;
  if (!ternary) {
    fit.l = SolveNuclearBinary(e.l1, lambda);
  } else {
    TernaryNuclearSolution s = SolveNuclearTernary(e.l1, e.l2, lambda);
    fit.l = std::move(s.l);
    fit.phi = s.phi;
  }
  return fit;
}

OutcomeDistribution PredictRegularized(const RegularizedFit& fit, int i,
                                       int j) {
  if (i == j) throw std::invalid_argument("a team cannot play itself");
  const double l = std::clamp(fit.l(i, j), -36.0, 36.0);
  if (fit.ternary) return TernaryProbs(l, std::max(fit.phi, 0.0));
  OutcomeDistribution d;
  d.p_win = Sigmoid(l);
  d.p_lose = 1.0 - d.p_win;
  return d;
}

LambdaSearch TuneLambda(const Dataset& train, const Dataset& tune,
                        bool ternary, double eps, std::vector<double> grid) {
  if (tune.empty()) throw std::invalid_argument("tune set is empty");
  if (grid.empty()) {
    const EmpiricalLogOdds e =
        EmpiricalLogOddsMatrix(CountOutcomes(train, ternary), eps);
    Eigen::MatrixXd target;
    double scale = 1.0;
    if (!ternary) {
      target = 0.5 * (e.l1 - e.l1.transpose());
    } else {
      // At L = 0 the best phi is mean(L(2)); L = 0 stays optimal while
      // lambda / 4 covers the top singular value of this target.
      target = 0.5 * (e.l1 + (e.l2.array() - e.l2.mean()).matrix());
      scale = 2.0;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(target);
    grid = LambdaGrid(scale * svd.singularValues()(0));
  }
  LambdaSearch out;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    RegularizedFit fit = FitRegularized(train, ternary, grid[k], eps);
    double total = 0;
    for (const MatchRecord& r : tune) {
      total += std::log(PredictRegularized(fit, r.home, r.away).Mass(r.outcome));
    }
    const double mean = total / static_cast<double>(tune.size());
    out.scores.push_back({grid[k], mean});
    if (k == 0 || mean > best) {
      best = mean;
      out.best = k;
      out.fit = std::move(fit);
    }
  }
  return out;
}

void WriteMatrixCsv(std::ostream& out, const Eigen::MatrixXd& m,
                    const TeamIndex& teams) {
  if (m.rows() != teams.size() || m.cols() != teams.size()) {
    throw std::invalid_argument("matrix does not match the team index");
  }
  out << "team";
  for (int j = 0; j < teams.size(); ++j) out << ',' << teams.Name(j);
  out << '\n';
  for (int i = 0; i < teams.size(); ++i) {
    out << teams.Name(i);
    for (int j = 0; j < teams.size(); ++j) out << ',' << FormatDouble(m(i, j));
    out << '\n';
  }
}

}  // namespace slodds
