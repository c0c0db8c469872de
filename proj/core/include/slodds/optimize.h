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


// Gradient ascent with Barzilai-Borwein steps and Armijo backtracking.

#ifndef SLODDS_OPTIMIZE_H_
#define SLODDS_OPTIMIZE_H_

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace slodds {

// Returns f(x) and writes the gradient. A non-finite value marks x as
// infeasible; the line search then shrinks the step.
using Objective =
    std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad)>;

struct AscentOptions {
  int max_iters = 5000;
  // Stop once the relative improvement stays below tol for three
  // consecutive iterations.
  double tol = 1e-8;
  // Stop once the gradient norm falls below this.
  double grad_tol = 1e-10;
  double initial_step = 1e-2;
};

struct TraceRow {
  int iteration = 0;
  double objective = 0;
  double grad_norm = 0;
  double step = 0;
};

struct AscentResult {
  Eigen::VectorXd x;
  double objective = 0;
  std::vector<TraceRow> trace;  // row 0 is the starting point
  bool converged = false;
};

// Throws std::domain_error when f(x0) is not finite.
AscentResult MaximizeAscent(const Objective& f, Eigen::VectorXd x0,
                            const AscentOptions& options);

}  // namespace slodds

#endif  // SLODDS_OPTIMIZE_H_
