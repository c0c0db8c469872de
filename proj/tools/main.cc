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


// slodds: fit, evaluate and simulate structured log-odds models.
//
// Exit status: 0 on success, 1 on runtime or data errors, 2 on usage
// errors.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.h"
#include "manifest.h"

namespace {

using slodds::cli::Manifest;

constexpr std::uint64_t kDefaultSeed = 42;

struct Common {
  std::optional<std::uint64_t> seed;
};

void AddCommon(CLI::App* sub, Common* common, std::string* out,
               bool out_required = true) {
  sub->add_option("--seed", common->seed,
                  "Random seed (default: $SLODDS_SEED, else 42)");
  auto* o = sub->add_option("--out", *out, "Output directory");
  if (out_required) o->required();
}

// Seed from the flag, the environment, or the default, with its source.
std::pair<std::uint64_t, std::string> ResolveSeed(const Common& common) {
  if (common.seed) return {*common.seed, "flag"};
  if (const char* env = std::getenv("SLODDS_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
      throw slodds::cli::UsageError("SLODDS_SEED is not an unsigned integer");
    }
    return {v, "env"};
  }
  return {kDefaultSeed, "default"};
}

// Every option of `sub` with its effective value.
void RecordConfig(const CLI::App* sub, Manifest* manifest) {
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_name();
    if (name == "--help") continue;
    nlohmann::ordered_json value;
    if (opt->get_expected_max() == 0) {
      value = opt->count() > 0;
    } else if (opt->count() > 0) {
      const auto& results = opt->results();
      if (results.size() == 1 && opt->get_expected_max() <= 1) {
        value = results.front();
      } else {
        value = results;
      }
    } else if (opt->get_default_str().empty()) {
      value = nullptr;
    } else {
      value = opt->get_default_str();
    }
    manifest->config()[name] = value;
  }
}

int Main(int argc, char** argv) {
  CLI::App app{"Structured log-odds models for paired competitions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(SLODDS_VERSION));

  const auto models = CLI::IsMember(slodds::cli::kModelNames);
  const auto links = CLI::IsMember({"binary", "ternary", "skellam"});
  const auto regimes =
      CLI::IsMember({"batch", "retrain", "online", "two-stage"});

  Common common;

  slodds::cli::FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a model by maximum likelihood");
  fit_cmd->add_option("--data", fit.data, "Results CSV")->required();
  fit_cmd->add_option("--model", fit.model, "Model name")
      ->check(models)
      ->capture_default_str();
  fit_cmd->add_option("--link", fit.link, "binary, ternary or skellam")
      ->check(links);
  fit_cmd->add_flag("--no-home", fit.no_home, "Drop the home advantage");
  fit_cmd->add_option("--train-end", fit.train_end,
                      "Use matches before this date (YYYY-MM-DD)");
  fit_cmd->add_option("--max-iters", fit.max_iters)->capture_default_str();
  fit_cmd->add_option("--tol", fit.tol)->capture_default_str();
  AddCommon(fit_cmd, &common, &fit.out);

  slodds::cli::EvalOptions ev;
  auto* eval_cmd = app.add_subcommand(
      "eval", "Tune on the tuning period and evaluate on the test period");
  eval_cmd->add_option("--data", ev.data, "Results CSV")->required();
  eval_cmd->add_option("--model", ev.models, "Model names, comma separated")
      ->delimiter(',')
      ->check(models)
      ->capture_default_str();
  eval_cmd->add_option("--link", ev.link)->check(links);
  eval_cmd->add_flag("--no-home", ev.no_home);
  eval_cmd->add_option("--regime", ev.regime)
      ->check(regimes)
      ->capture_default_str();
  eval_cmd->add_option("--tune-start", ev.tune_start, "YYYY-MM-DD")
      ->required();
  eval_cmd->add_option("--test-start", ev.test_start, "YYYY-MM-DD")
      ->required();
  eval_cmd->add_option("--baselines", ev.baselines, "home,odds,maher,dixon-coles")
      ->delimiter(',')
      ->check(CLI::IsMember(slodds::cli::kBaselineNames));
  eval_cmd->add_option("--k-grid", ev.k_grid, "Learning rates to try")
      ->delimiter(',');
  eval_cmd->add_option("--bootstrap", ev.bootstrap)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  AddCommon(eval_cmd, &common, &ev.out);

  slodds::cli::SynthOptions sy;
  auto* synth_cmd =
      app.add_subcommand("synth", "Replicated comparison on synthetic truths");
  synth_cmd->add_option("--truth", sy.truth)
      ->check(CLI::IsMember({"rank2", "rank4", "rank4-gaussian", "elo"}))
      ->capture_default_str();
  synth_cmd->add_option("--reps", sy.reps)->capture_default_str();
  synth_cmd->add_option("--models", sy.models)
      ->delimiter(',')
      ->check(CLI::IsMember({"elo", "twofactor", "rankfour"}))
      ->capture_default_str();
  synth_cmd->add_option("--teams", sy.q)->capture_default_str();
  synth_cmd->add_option("--matches-per-pair", sy.matches_per_pair)
      ->capture_default_str();
  synth_cmd->add_option("--k-grid", sy.k_grid)->delimiter(',');
  AddCommon(synth_cmd, &common, &sy.out);

  slodds::cli::RegularizeOptions rg;
  auto* reg_cmd = app.add_subcommand(
      "regularize", "Nuclear-norm regularised log-odds estimation");
  reg_cmd->add_option("--data", rg.data, "Results CSV")->required();
  reg_cmd->add_option("--link", rg.link)
      ->check(CLI::IsMember({"binary", "ternary"}))
      ->capture_default_str();
  reg_cmd->add_option("--tune-start", rg.tune_start)->required();
  reg_cmd->add_option("--test-start", rg.test_start)->required();
  reg_cmd->add_option("--lambda-grid", rg.lambda_grid,
                      "'auto' or comma-separated values")
      ->capture_default_str();
  reg_cmd->add_option("--eps", rg.eps, "Count smoothing")
      ->capture_default_str();
  reg_cmd->add_option("--bootstrap", rg.bootstrap)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  AddCommon(reg_cmd, &common, &rg.out);

  slodds::cli::SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Distribution of final league positions for one season");
  sim_cmd->add_option("--data", sim.data, "Results CSV")->required();
  sim_cmd->add_option("--model", sim.model)->check(models)->capture_default_str();
  sim_cmd->add_option("--link", sim.link)->check(links);
  sim_cmd->add_flag("--no-home", sim.no_home);
  sim_cmd->add_option("--regime", sim.regime)
      ->check(regimes)
      ->capture_default_str();
  sim_cmd->add_option("--season", sim.season,
                      "Season label: the year it starts in")
      ->required();
  sim_cmd->add_option("--reps", sim.reps)->capture_default_str();
  sim_cmd->add_option("--k", sim.learning_rate, "Online learning rate")
      ->capture_default_str();
  AddCommon(sim_cmd, &common, &sim.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  std::vector<std::string> args(argv + 1, argv + argc);
  Manifest manifest(sub->get_name(), args);
  RecordConfig(sub, &manifest);
  const auto [seed, source] = ResolveSeed(common);
  manifest.SetSeed(seed, source);

  std::string out;
  if (sub == fit_cmd) {
    slodds::cli::RunFit(fit, seed, &manifest, std::cout);
    out = fit.out;
  } else if (sub == eval_cmd) {
    slodds::cli::RunEval(ev, seed, &manifest, std::cout);
    out = ev.out;
  } else if (sub == synth_cmd) {
    slodds::cli::RunSynth(sy, seed, &manifest, std::cout);
    out = sy.out;
  } else if (sub == reg_cmd) {
    slodds::cli::RunRegularize(rg, seed, &manifest, std::cout);
    out = rg.out;
  } else {
    slodds::cli::RunSimulate(sim, seed, &manifest, std::cout);
    out = sim.out;
  }
  manifest.Write(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Main(argc, argv);
  } catch (const slodds::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
