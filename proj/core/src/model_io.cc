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

// Model file layout, one record per line:
//
//   slodds-model 1
//   structure <name>
//   link <name>
//   covariates <0|1>
//   n_teams <Q>
//   team <id> <name...>
//   h / phi_psi / beta_home / beta_away <value>
//   theta / u / v / skellam_u / skellam_v <Q values>
//   end

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "slodds/format.h"
#include "slodds/model.h"

namespace slodds {
namespace {

constexpr std::string_view kMagic = "slodds-model";
constexpr int kVersion = 1;

void WriteVector(std::ostream& out, std::string_view key,
                 const Eigen::VectorXd& v) {
  out << key;
  for (Eigen::Index i = 0; i < v.size(); ++i) out << ' ' << FormatDouble(v[i]);
  out << '\n';
}

[[noreturn]] void Fail(const std::string& message, int line) {
  throw std::runtime_error("model file line " + std::to_string(line) + ": " +
                           message);
}

}  // namespace

void SaveModel(std::ostream& out, const ModelSpec& spec,
               const ModelState& state, const TeamIndex& teams) {
  spec.Validate();
  CheckDimensions(state, spec);
  if (teams.size() != spec.n_teams) {
    throw std::invalid_argument("team index size does not match the model");
  }
  out << kMagic << ' ' << kVersion << '\n';
  out << "structure " << StructureName(spec.structure) << '\n';
  out << "link " << LinkName(spec.link) << '\n';
  out << "covariates " << (spec.covariates ? 1 : 0) << '\n';
  out << "n_teams " << spec.n_teams << '\n';
  for (int i = 0; i < teams.size(); ++i) {
    out << "team " << i << ' ' << teams.Name(i) << '\n';
  }
  out << "h " << FormatDouble(state.h) << '\n';
  out << "phi_psi " << FormatDouble(state.phi_psi) << '\n';
  out << "beta_home " << FormatDouble(state.beta_home) << '\n';
  out << "beta_away " << FormatDouble(state.beta_away) << '\n';
  WriteVector(out, "theta", state.theta);
  WriteVector(out, "u", state.u);
  WriteVector(out, "v", state.v);
  WriteVector(out, "skellam_u", state.skellam_u);
  WriteVector(out, "skellam_v", state.skellam_v);
  out << "end\n";
}

void SaveModelFile(const std::string& path, const ModelSpec& spec,
                   const ModelState& state, const TeamIndex& teams) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  SaveModel(out, spec, state, teams);
  if (!out) throw std::runtime_error("write failed for " + path);
}

LoadedModel LoadModel(std::istream& in) {
  LoadedModel m;
  std::string line;
  int line_no = 0;
  bool saw_end = false;
  bool saw_header = false;
  std::vector<std::string> team_names;

  auto read_vector = [&](std::istringstream& fields, Eigen::VectorXd* out) {
    std::vector<double> values;
    std::string tok;
    while (fields >> tok) values.push_back(ParseDouble(tok));
    if (static_cast<int>(values.size()) != m.spec.n_teams) {
      Fail("expected " + std::to_string(m.spec.n_teams) + " values", line_no);
    }
    *out = Eigen::Map<Eigen::VectorXd>(values.data(), values.size());
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string key;
    fields >> key;
    try {
      if (!saw_header) {
        int version = 0;
        if (key != kMagic || !(fields >> version)) Fail("not a model file", line_no);
        if (version != kVersion) {
          Fail("unsupported version " + std::to_string(version), line_no);
        }
        saw_header = true;
        continue;
      }
      std::string value;
      if (key == "structure") {
        fields >> value;
        m.spec.structure = ParseStructure(value);
      } else if (key == "link") {
        fields >> value;
        m.spec.link = ParseLink(value);
      } else if (key == "covariates") {
        int flag = 0;
        fields >> flag;
        m.spec.covariates = flag != 0;
      } else if (key == "n_teams") {
        fields >> m.spec.n_teams;
        if (m.spec.n_teams < 2) Fail("bad team count", line_no);
        m.state = ModelState::Zeros(m.spec.n_teams);
      } else if (key == "team") {
        int id = -1;
        fields >> id;
        std::string name;
        std::getline(fields >> std::ws, name);
        if (id != static_cast<int>(team_names.size())) {
          Fail("team ids must be consecutive", line_no);
        }
        team_names.push_back(name);
      } else if (key == "h" || key == "phi_psi" || key == "beta_home" ||
                 key == "beta_away") {
        fields >> value;
        const double x = ParseDouble(value);
        if (key == "h") m.state.h = x;
        if (key == "phi_psi") m.state.phi_psi = x;
        if (key == "beta_home") m.state.beta_home = x;
        if (key == "beta_away") m.state.beta_away = x;
      } else if (key == "theta") {
        read_vector(fields, &m.state.theta);
      } else if (key == "u") {
        read_vector(fields, &m.state.u);
      } else if (key == "v") {
        read_vector(fields, &m.state.v);
      } else if (key == "skellam_u") {
        read_vector(fields, &m.state.skellam_u);
      } else if (key == "skellam_v") {
        read_vector(fields, &m.state.skellam_v);
      } else if (key == "end") {
        saw_end = true;
        break;
      } else {
        Fail("unknown key '" + key + "'", line_no);
      }
    } catch (const std::invalid_argument& e) {
      Fail(e.what(), line_no);
    }
  }
  if (!saw_header) Fail("empty model file", line_no);
  if (!saw_end) Fail("missing end marker", line_no);
  if (static_cast<int>(team_names.size()) != m.spec.n_teams) {
    Fail("team list does not match n_teams", line_no);
  }
  for (const auto& name : team_names) m.teams.Intern(name);
  m.spec.Validate();
  CheckDimensions(m.state, m.spec);
  return m;
}

LoadedModel LoadModelFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return LoadModel(in);
}

}  // namespace slodds
