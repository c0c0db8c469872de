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


// Run manifests: what was run, with which settings, on which inputs.

#ifndef SLODDS_TOOLS_MANIFEST_H_
#define SLODDS_TOOLS_MANIFEST_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace slodds::cli {

// Lower-case hex SHA-256 of a file's bytes. Throws std::runtime_error when
// the file cannot be read.
std::string Sha256File(const std::string& path);

class Manifest {
 public:
  Manifest(std::string command, std::vector<std::string> argv);

  void SetSeed(std::uint64_t seed, const std::string& source);
  void AddInput(const std::string& path);
  void AddOutput(const std::string& name);
  nlohmann::ordered_json& config() { return config_; }

  nlohmann::ordered_json ToJson() const;
  void Write(const std::string& dir) const;

 private:
  std::string command_;
  std::vector<std::string> argv_;
  std::uint64_t seed_ = 0;
  std::string seed_source_;
  nlohmann::ordered_json config_ = nlohmann::ordered_json::object();
  nlohmann::ordered_json inputs_ = nlohmann::ordered_json::array();
  std::vector<std::string> outputs_;
};

}  // namespace slodds::cli

#endif  // SLODDS_TOOLS_MANIFEST_H_
