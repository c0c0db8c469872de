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


// Subcommands of the slodds tool. Each Run* function writes its artifacts
// under `out` and a human summary to `log`.

#ifndef SLODDS_TOOLS_COMMANDS_H_
#define SLODDS_TOOLS_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "manifest.h"
#include "slodds/model.h"

namespace slodds::cli {

// Flag combinations that parse but make no sense; reported with exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string> kModelNames = {
    "elo", "elo-cov", "twofactor", "rankfour", "score"};
inline const std::vector<std::string> kBaselineNames = {"home", "odds",
                                                        "maher", "dixon-coles"};

// Model name plus link and home-advantage flags to a spec (n_teams unset).
// An empty link means ternary, or skellam for "score".
ModelSpec MakeModel(const std::string& name, const std::string& link,
                    bool no_home);

struct FitOptions {
  std::string data;
  std::string model = "elo";
  std::string link;
  bool no_home = false;
  std::string train_end;  // ISO date, exclusive; empty = all rows
  int max_iters = 5000;
  double tol = 1e-8;
  std::string out;
};

struct EvalOptions {
  std::string data;
  std::vector<std::string> models{"elo"};
  std::string link;
  bool no_home = false;
  std::string regime = "two-stage";
  std::string tune_start;
  std::string test_start;
  std::vector<std::string> baselines;
  std::vector<double> k_grid;  // empty = default grid
  int bootstrap = 5000;
  std::string out;
};

struct SynthOptions {
  std::string truth = "rank2";
  int reps = 20;
  std::vector<std::string> models{"elo", "twofactor"};
  int q = 47;
  int matches_per_pair = 4;
  std::vector<double> k_grid;
  std::string out;
};

struct RegularizeOptions {
  std::string data;
  std::string link = "binary";
  std::string tune_start;
  std::string test_start;
  std::string lambda_grid = "auto";
  double eps = 0.01;
  int bootstrap = 5000;
  std::string out;
};

struct SimulateOptions {
  std::string data;
  std::string model = "elo";
  std::string link;
  bool no_home = false;
  std::string regime = "two-stage";
  int season = 0;
  int reps = 10000;
  double learning_rate = 0.1;
  std::string out;
};

void RunFit(const FitOptions& o, std::uint64_t seed, Manifest* manifest,
            std::ostream& log);
void RunEval(const EvalOptions& o, std::uint64_t seed, Manifest* manifest,
             std::ostream& log);
void RunSynth(const SynthOptions& o, std::uint64_t seed, Manifest* manifest,
              std::ostream& log);
void RunRegularize(const RegularizeOptions& o, std::uint64_t seed,
                   Manifest* manifest, std::ostream& log);
void RunSimulate(const SimulateOptions& o, std::uint64_t seed,
                 Manifest* manifest, std::ostream& log);

}  // namespace slodds::cli

#endif  // SLODDS_TOOLS_COMMANDS_H_
