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

#include "slodds/optimize.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slodds {
namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-20;
constexpr double kMaxStep = 1e10;
constexpr int kStallLimit = 3;

}  // namespace

AscentResult MaximizeAscent(const Objective& f, Eigen::VectorXd x0,
                            const AscentOptions& options) {
  AscentResult result;
  Eigen::VectorXd grad(x0.size());
  double value = f(x0, &grad);
  if (!std::isfinite(value)) {
    throw std::domain_error("objective is not finite at the starting point");
  }
  result.x = std::move(x0);
  result.trace.push_back({0, value, grad.norm(), 0.0});

  double step = options.initial_step;
  int stalled = 0;
  Eigen::VectorXd x_new(result.x.size());
  Eigen::VectorXd grad_new(result.x.size());
  for (int it = 1; it <= options.max_iters; ++it) {
    const double gnorm2 = grad.squaredNorm();
    if (std::sqrt(gnorm2) < options.grad_tol) {
      result.converged = true;
      break;
    }
    double value_new = 0;
    bool accepted = false;
    while (step >= kMinStep) {
      x_new = result.x + step * grad;
      value_new = f(x_new, &grad_new);
      if (std::isfinite(value_new) &&
          value_new >= value + kArmijo * step * gnorm2) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      result.converged = true;  // no ascent direction left at this precision
      break;
    }
    const Eigen::VectorXd s = x_new - result.x;
    const Eigen::VectorXd y = grad_new - grad;
    const double improvement = value_new - value;
    result.x.swap(x_new);
    grad.swap(grad_new);
    value = value_new;
    result.trace.push_back({it, value, grad.norm(), step});

    if (improvement <= options.tol * std::max(1.0, std::abs(value))) {
      if (++stalled >= kStallLimit) {
        result.converged = true;
        break;
      }
    } else {
      stalled = 0;
    }
    // Barzilai-Borwein step for ascent: s's / -s'y, kept when curvature
    // is negative along s.
    const double sy = s.dot(y);
    if (sy < 0) {
      step = std::clamp(s.squaredNorm() / -sy, kMinStep, kMaxStep);
    } else {
      step = std::min(step * 2.0, kMaxStep);
    }
  }
  result.objective = value;
  return result;
}

}  // namespace slodds
