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


#include "commands.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "slodds/baselines.h"
#include "slodds/dataset.h"
#include "slodds/evaluation.h"
#include "slodds/format.h"
#include "slodds/regularized.h"
#include "slodds/season.h"
#include "slodds/stats.h"
#include "slodds/synthetic.h"
#include "slodds/training.h"

namespace slodds::cli {
namespace {

using nlohmann::ordered_json;

Dataset LoadData(const std::string& path, Manifest* manifest) {
  try {
    Dataset data = ParseCsv(path);
    manifest->AddInput(path);
    return data;
  } catch (const DataError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

Date DateFlag(const std::string& flag, const std::string& text) {
  try {
    return ParseIsoDate(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

void MakeOutDir(const std::string& dir) {
  std::filesystem::create_directories(dir);
}

std::ofstream OpenOut(const std::string& dir, const std::string& name,
                      Manifest* manifest) {
  const std::string path = dir + "/" + name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  manifest->AddOutput(name);
  return out;
}

// Records before `end` (exclusive).
Dataset Before(const Dataset& data, const Date& end) {
  auto it = std::lower_bound(
      data.begin(), data.end(), end,
      [](const MatchRecord& r, const Date& d) { return r.date < d; });
  return data.Slice(0, static_cast<std::size_t>(it - data.begin()));
}

std::string Describe(const ModelSpec& spec) {
  std::string s(StructureName(spec.structure));
  s += ", ";
  s += LinkName(spec.link);
  if (spec.covariates) s += ", covariates";
  return s;
}

ordered_json TestJson(const TestResult& t) {
  ordered_json j;
  j["statistic"] = std::isfinite(t.statistic) ? ordered_json(t.statistic)
                                              : ordered_json(nullptr);
  j["p_value"] = t.p_value;
  j["degenerate"] = t.degenerate;
  return j;
}

void PrintReportHeader(std::ostream& log) {
  log << "model\tcases\tskipped\tmean_loglik\tci95\taccuracy\tbrier\n";
}

void PrintReportLine(std::ostream& log, const ValidationReport& r) {
  log << r.model << '\t' << r.cases.size() << '\t' << r.skipped << '\t'
      << FormatShort(r.mean_log_likelihood) << "\t["
      << FormatShort(r.log_likelihood_ci.lo) << ", "
      << FormatShort(r.log_likelihood_ci.hi) << "]\t"
      << FormatShort(r.accuracy) << '\t' << FormatShort(r.mean_brier) << '\n';
  if (r.infinite_losses > 0) {
    log << "  " << r.infinite_losses
        << " cases with zero predicted mass excluded from the means\n";
  }
}

// Per-case rows of several reports in one file, prefixed by the model.
void WriteCombinedCases(std::ostream& out,
                        const std::vector<ValidationReport>& reports,
                        const Dataset& test) {
  bool header_done = false;
  for (const ValidationReport& r : reports) {
    std::ostringstream one;
    WriteReportCsv(one, r, test);
    std::istringstream lines(one.str());
    std::string line;
    bool first = true;
    while (std::getline(lines, line)) {
      if (first) {
        first = false;
        if (!header_done) out << "model," << line << '\n';
        header_done = true;
        continue;
      }
      out << r.model << ',' << line << '\n';
    }
  }
}

ordered_json CompareReports(const std::vector<ValidationReport>& reports,
                            std::ostream& log) {
  ordered_json all = ordered_json::array();
  for (std::size_t a = 0; a < reports.size(); ++a) {
    for (std::size_t b = a + 1; b < reports.size(); ++b) {
      const PairedValues pv = PairLogLikelihoods(reports[a], reports[b]);
      ordered_json c;
      c["first"] = reports[a].model;
      c["second"] = reports[b].model;
      c["paired_cases"] = pv.a.size();
      if (pv.a.size() < 2) {
        c["note"] = "fewer than two paired cases";
        all.push_back(c);
        continue;
      }
      const TestResult w2 = WilcoxonSignedRank(pv.b, pv.a);
      const TestResult w1 =
          WilcoxonSignedRank(pv.b, pv.a, Alternative::kGreater);
      const TestResult t2 = PairedTTest(pv.b, pv.a);
      const TestResult t1 = PairedTTest(pv.b, pv.a, Alternative::kGreater);
      c["wilcoxon_two_sided"] = TestJson(w2);
      c["wilcoxon_second_greater"] = TestJson(w1);
      c["t_two_sided"] = TestJson(t2);
      c["t_second_greater"] = TestJson(t1);
      all.push_back(c);
      log << reports[b].model << " vs " << reports[a].model << " ("
          << pv.a.size() << " paired cases): t p=" << FormatShort(t2.p_value)
          << " (one-sided " << FormatShort(t1.p_value)
          << "), Wilcoxon p=" << FormatShort(w2.p_value) << " (one-sided "
          << FormatShort(w1.p_value) << ")\n";
    }
  }
  return all;
}

std::vector<TrainConfig> KGrid(const std::vector<double>& ks,
                               const TrainConfig& base) {
  if (ks.empty()) return DefaultGrid(base);
  std::vector<TrainConfig> grid;
  for (double k : ks) {
    if (!(k > 0)) throw UsageError("--k-grid values must be positive");
    TrainConfig c = base;
    c.learning_rate = k;
    grid.push_back(c);
  }
  return grid;
}

Regime RegimeFlag(const std::string& name) {
  try {
    return ParseRegime(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

}  // namespace

ModelSpec MakeModel(const std::string& name, const std::string& link,
                    bool no_home) {
  ModelSpec spec;
  const bool home = !no_home;
  if (name == "elo" || name == "elo-cov" || name == "score") {
    spec.structure = home ? Structure::kRank2HomeAdv : Structure::kRank2;
  } else if (name == "twofactor") {
    spec.structure = home ? Structure::kTwoFactorHomeAdv : Structure::kTwoFactor;
  } else if (name == "rankfour") {
    spec.structure = home ? Structure::kRankFourHomeAdv : Structure::kRankFour;
  } else {
    std::string valid;
    for (const auto& n : kModelNames) valid += (valid.empty() ? "" : ", ") + n;
    throw UsageError("unknown model '" + name + "'; valid models: " + valid);
  }
  spec.covariates = name == "elo-cov";
  try {
    if (name == "score") {
      if (!link.empty() && link != "skellam") {
        throw UsageError("model 'score' uses the skellam link");
      }
      spec.link = Link::kSkellam;
    } else {
      spec.link = link.empty() ? Link::kTernary : ParseLink(link);
    }
    ModelSpec probe = spec;  // team count is not known yet
    probe.n_teams = 2;
    probe.Validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return spec;
}

void RunFit(const FitOptions& o, std::uint64_t seed, Manifest* manifest,
            std::ostream& log) {
  ModelSpec spec = MakeModel(o.model, o.link, o.no_home);
  Dataset data = LoadData(o.data, manifest);
  if (!o.train_end.empty()) data = Before(data, DateFlag("--train-end", o.train_end));
  if (data.empty()) throw std::runtime_error("no training records");
  spec.n_teams = data.n_teams();

  TrainConfig cfg;
  cfg.max_iters = o.max_iters;
  cfg.tol = o.tol;
  cfg.seed = seed;
  cfg.Validate();
  const FitResult fit = FitBatch(InitialState(spec, seed), spec, data, cfg);

  MakeOutDir(o.out);
  SaveModelFile(o.out + "/model.txt", spec, fit.state, data.teams());
  manifest->AddOutput("model.txt");
  {
    std::ofstream trace = OpenOut(o.out, "trace.csv", manifest);
    WriteTraceCsv(trace, fit.trace);
  }
  const double ll = LogLikelihood(fit.state, spec, data);
  log << "model " << o.model << " (" << Describe(spec) << ")\n"
      << "teams " << data.n_teams() << ", matches " << data.size() << '\n'
      << "log-likelihood " << FormatShort(ll) << " (mean "
      << FormatShort(ll / data.size()) << ")\n"
      << "iterations " << fit.trace.size() - 1
      << (fit.converged ? ", converged\n" : ", not converged\n");
  if (spec.HasHomeAdvantage()) log << "h " << FormatShort(fit.state.h) << '\n';
  if (spec.link == Link::kTernary) {
    log << "phi " << FormatShort(fit.state.phi()) << '\n';
  }
}

void RunEval(const EvalOptions& o, std::uint64_t seed, Manifest* manifest,
             std::ostream& log) {
  const Regime regime = RegimeFlag(o.regime);
  std::vector<ModelSpec> specs;
  for (const std::string& name : o.models) {
    specs.push_back(MakeModel(name, o.link, o.no_home));
  }
  const Date tune_start = DateFlag("--tune-start", o.tune_start);
  const Date test_start = DateFlag("--test-start", o.test_start);
  if (!(tune_start < test_start)) {
    throw UsageError("--tune-start must precede --test-start");
  }
  const Dataset data = LoadData(o.data, manifest);
  TemporalSplit split;
  try {
    split = SplitByDates(data, tune_start, test_start, true);
  } catch (const DataError& e) {
    throw std::runtime_error(o.data + ": " + e.what());
  }
  const Dataset train_all = Concat(split.train, split.tune);

  ReportOptions ropts;
  ropts.bootstrap_replicates = o.bootstrap;
  ropts.seed = seed;
  TrainConfig base;
  base.seed = seed;

  std::vector<ValidationReport> reports;
  ordered_json models_json = ordered_json::array();
  auto record = [&](ValidationReport r, ordered_json extra) {
    ordered_json j = ordered_json::parse(ReportJson(r));
    for (auto& [k, v] : extra.items()) j[k] = v;
    models_json.push_back(j);
    reports.push_back(std::move(r));
  };

  for (std::size_t m = 0; m < specs.size(); ++m) {
    ModelSpec spec = specs[m];
    spec.n_teams = data.n_teams();
    const GridSearchResult tuned = GridSearch(
        spec, regime, split.train, split.tune, KGrid(o.k_grid, base));
    ordered_json grid = ordered_json::array();
    for (const GridEntry& e : tuned.entries) {
      grid.push_back({{"learning_rate", e.config.learning_rate},
                      {"mean_loglik", std::isfinite(e.mean_loglik)
                                          ? ordered_json(e.mean_loglik)
                                          : ordered_json(nullptr)}});
    }
    log << o.models[m] << ": K=" << FormatShort(tuned.best.learning_rate)
        << " chosen on the tuning set (" << split.tune.size() << " matches)\n";
    record(TemporalValidate(o.models[m], StructuredRunner(spec, regime),
                            train_all, split.test, tuned.best, ropts),
           {{"spec", Describe(spec)},
            {"regime", std::string(RegimeName(regime))},
            {"learning_rate", tuned.best.learning_rate},
            {"grid", grid}});
  }

  for (const std::string& b : o.baselines) {
    if (b == "home") {
      record(TemporalValidate("home", HomeWinRunner(), train_all, split.test,
                              base, ropts),
             ordered_json::object());
    } else if (b == "odds") {
      record(TemporalValidate("odds", OddsRunner(), train_all, split.test,
                              base, ropts),
             ordered_json::object());
    } else if (b == "maher") {
      record(TemporalValidate("maher", PoissonRunner(PoissonVariant::kMaher, 0),
                              train_all, split.test, base, ropts),
             ordered_json::object());
    } else if (b == "dixon-coles") {
      ReportOptions quick = ropts;
      quick.bootstrap_replicates = 1;
      double best_xi = 0;
      double best_ll = -std::numeric_limits<double>::infinity();
      for (double xi : DefaultDecayGrid()) {
        const ValidationReport r = TemporalValidate(
            "dixon-coles", PoissonRunner(PoissonVariant::kDixonColes, xi),
            split.train, split.tune, base, quick);
        if (r.mean_log_likelihood > best_ll) {
          best_ll = r.mean_log_likelihood;
          best_xi = xi;
        }
      }
      log << "dixon-coles: xi=" << FormatShort(best_xi)
          << " chosen on the tuning set\n";
      record(TemporalValidate("dixon-coles",
                              PoissonRunner(PoissonVariant::kDixonColes, best_xi),
                              train_all, split.test, base, ropts),
             {{"xi", best_xi}});
    } else {
      throw UsageError("unknown baseline '" + b + "'");
    }
  }

  log << "train " << split.train.size() << ", tune " << split.tune.size()
      << ", test " << split.test.size() << " matches\n";
  PrintReportHeader(log);
  for (const ValidationReport& r : reports) PrintReportLine(log, r);
  const ordered_json comparisons = CompareReports(reports, log);

  MakeOutDir(o.out);
  {
    std::ofstream csv = OpenOut(o.out, "report.csv", manifest);
    WriteCombinedCases(csv, reports, split.test);
  }
  ordered_json j;
  j["split"] = {{"train", split.train.size()},
                {"tune", split.tune.size()},
                {"test", split.test.size()}};
  j["models"] = models_json;
  j["comparisons"] = comparisons;
  std::ofstream js = OpenOut(o.out, "report.json", manifest);
  js << j.dump(2) << '\n';
}

void RunSynth(const SynthOptions& o, std::uint64_t seed, Manifest* manifest,
              std::ostream& log) {
  SynthSpec spec;
  try {
    spec.truth = ParseTruth(o.truth);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  spec.q = o.q;
  spec.matches_per_pair = o.matches_per_pair;
  try {
    spec.Validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (o.reps < 2) throw UsageError("--reps must be at least 2");
  std::vector<NamedModel> models;
  for (const std::string& name : o.models) {
    if (name != "elo" && name != "twofactor" && name != "rankfour") {
      throw UsageError("synth models are elo, twofactor and rankfour");
    }
    models.push_back({name, MakeModel(name, "binary", true)});
  }
  const ExperimentResult result =
      o.k_grid.empty()
          ? ReplicateExperiment(spec, models, o.reps, seed)
          : ReplicateExperiment(spec, models, o.reps, seed, o.k_grid);

  MakeOutDir(o.out);
  {
    std::ofstream csv = OpenOut(o.out, "report.csv", manifest);
    WriteExperimentCsv(csv, result);
  }
  log << "truth " << TruthName(spec.truth) << ", " << spec.q << " teams, "
      << o.reps << " replications\n";
  log << "model\tmean_loglik\taccuracy\n";
  ordered_json summary = ordered_json::array();
  for (const NamedModel& m : models) {
    const auto ll = result.Column(m.name, true);
    const auto acc = result.Column(m.name, false);
    double mll = 0, macc = 0;
    for (double v : ll) mll += v / ll.size();
    for (double v : acc) macc += v / acc.size();
    log << m.name << '\t' << FormatShort(mll) << '\t' << FormatShort(macc)
        << '\n';
    summary.push_back(
        {{"model", m.name}, {"mean_loglik", mll}, {"mean_accuracy", macc}});
  }
  ordered_json comps = ordered_json::array();
  for (const ModelComparison& c : result.comparisons) {
    log << c.second << " > " << c.first
        << ": Wilcoxon one-sided p (loglik) = "
        << FormatShort(c.loglik_greater.p_value)
        << ", p (accuracy) = " << FormatShort(c.accuracy_greater.p_value)
        << '\n';
    comps.push_back({{"first", c.first},
                     {"second", c.second},
                     {"loglik_second_greater", TestJson(c.loglik_greater)},
                     {"accuracy_second_greater", TestJson(c.accuracy_greater)},
                     {"loglik_two_sided", TestJson(c.loglik_two_sided)},
                     {"accuracy_two_sided", TestJson(c.accuracy_two_sided)}});
  }
  ordered_json j;
  j["truth"] = std::string(TruthName(spec.truth));
  j["reps"] = o.reps;
  j["models"] = summary;
  j["comparisons"] = comps;
  std::ofstream js = OpenOut(o.out, "report.json", manifest);
  js << j.dump(2) << '\n';
}

void RunRegularize(const RegularizeOptions& o, std::uint64_t seed,
                   Manifest* manifest, std::ostream& log) {
  if (o.link != "binary" && o.link != "ternary") {
    throw UsageError("--link must be binary or ternary");
  }
  const bool ternary = o.link == "ternary";
  if (!(o.eps > 0)) throw UsageError("--eps must be positive");
  std::vector<double> grid;
  if (o.lambda_grid != "auto") {
    std::stringstream ss(o.lambda_grid);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        grid.push_back(ParseDouble(item));
      } catch (const std::invalid_argument&) {
        throw UsageError("--lambda-grid: '" + item + "' is not a number");
      }
      if (!(grid.back() > 0)) throw UsageError("--lambda-grid values must be positive");
    }
    if (grid.empty()) throw UsageError("--lambda-grid is empty");
  }
  const Date tune_start = DateFlag("--tune-start", o.tune_start);
  const Date test_start = DateFlag("--test-start", o.test_start);
  if (!(tune_start < test_start)) {
    throw UsageError("--tune-start must precede --test-start");
  }
  const Dataset data = LoadData(o.data, manifest);
  TemporalSplit split;
  try {
    split = SplitByDates(data, tune_start, test_start, true);
  } catch (const DataError& e) {
    throw std::runtime_error(o.data + ": " + e.what());
  }
  const LambdaSearch search =
      TuneLambda(split.train, split.tune, ternary, o.eps, grid);

  MakeOutDir(o.out);
  log << "lambda\ttune_mean_loglik\n";
  {
    std::ofstream csv = OpenOut(o.out, "lambda.csv", manifest);
    csv << "lambda,mean_loglik\n";
    for (std::size_t k = 0; k < search.scores.size(); ++k) {
      const LambdaScore& s = search.scores[k];
      csv << FormatDouble(s.lambda) << ',' << FormatDouble(s.mean_loglik)
          << '\n';
      log << FormatShort(s.lambda) << '\t' << FormatShort(s.mean_loglik)
          << (k == search.best ? "\t<- best\n" : "\n");
    }
  }
  const double lambda = search.scores[search.best].lambda;
  const Dataset train_all = Concat(split.train, split.tune);
  const RegularizedFit fit = FitRegularized(train_all, ternary, lambda, o.eps);
  {
    std::ofstream csv = OpenOut(o.out, "matrix.csv", manifest);
    WriteMatrixCsv(csv, fit.l, data.teams());
  }

  ReportOptions ropts;
  ropts.bootstrap_replicates = o.bootstrap;
  ropts.seed = seed;
  const ValidationReport report = TemporalValidate(
      "regularized-" + o.link, RegularizedRunner(ternary, lambda, o.eps),
      train_all, split.test, TrainConfig{}, ropts);
  PrintReportHeader(log);
  PrintReportLine(log, report);
  {
    std::ofstream csv = OpenOut(o.out, "report.csv", manifest);
    WriteReportCsv(csv, report, split.test);
  }
  ordered_json j = ordered_json::parse(ReportJson(report));
  j["lambda"] = lambda;
  if (ternary) j["phi"] = fit.phi;
  std::ofstream js = OpenOut(o.out, "report.json", manifest);
  js << j.dump(2) << '\n';
}

void RunSimulate(const SimulateOptions& o, std::uint64_t seed,
                 Manifest* manifest, std::ostream& log) {
  ModelSpec spec = MakeModel(o.model, o.link, o.no_home);
  const Regime regime = RegimeFlag(o.regime);
  if (o.reps < 1) throw UsageError("--reps must be positive");
  if (!(o.learning_rate > 0)) throw UsageError("--k must be positive");
  const Dataset data = LoadData(o.data, manifest);
  spec.n_teams = data.n_teams();

  std::size_t first = 0;
  while (first < data.size() && SeasonOf(data[first].date) < o.season) ++first;
  std::size_t last = first;
  while (last < data.size() && SeasonOf(data[last].date) == o.season) ++last;
  if (first == last) {
    throw std::runtime_error("no matches in season " +
                             std::to_string(o.season));
  }
  const Dataset train = data.Slice(0, first);
  const Dataset season = data.Slice(first, last - first);
  if (train.empty() && regime != Regime::kOnline) {
    throw std::runtime_error("no matches before season " +
                             std::to_string(o.season) +
                             "; use --regime online");
  }
  TrainConfig cfg;
  cfg.learning_rate = o.learning_rate;
  cfg.seed = seed;
  const RegimeRun run = RunRegime(spec, regime, train, season, cfg);

  std::set<int> ids;
  for (const MatchRecord& r : season) {
    ids.insert(r.home);
    ids.insert(r.away);
  }
  std::map<int, int> local;
  std::vector<std::string> names;
  for (int id : ids) {
    local[id] = static_cast<int>(names.size());
    names.push_back(data.teams().Name(id));
  }
  std::vector<Fixture> fixtures;
  for (const MatchRecord& r : season) {
    fixtures.emplace_back(local[r.home], local[r.away]);
  }
  const RankDistribution dist =
      SimulateSeason(run.test_predictions, fixtures,
                     static_cast<int>(names.size()), o.reps, seed);

  MakeOutDir(o.out);
  {
    std::ofstream csv = OpenOut(o.out, "ranks.csv", manifest);
    WriteRankCsv(csv, dist, names);
  }
  const std::string summary = RankSummaryText(dist, names);
  {
    std::ofstream txt = OpenOut(o.out, "summary.txt", manifest);
    txt << summary;
  }
  log << "season " << o.season << ": " << names.size() << " teams, "
      << season.size() << " fixtures, " << o.reps << " replicates\n"
      << summary;
}

}  // namespace slodds::cli
