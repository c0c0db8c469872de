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


#include "manifest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>

#include <openssl/evp.h>

#ifndef SLODDS_VERSION
#define SLODDS_VERSION "unknown"
#endif

namespace slodds::cli {

std::string Sha256File(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 initialisation failed");
  }
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    if (in.gcount() > 0) {
      EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
    }
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    char pair[3];
    std::snprintf(pair, sizeof(pair), "%02x", digest[i]);
    hex += pair;
  }
  return hex;
}

Manifest::Manifest(std::string command, std::vector<std::string> argv)
    : command_(std::move(command)), argv_(std::move(argv)) {}

void Manifest::SetSeed(std::uint64_t seed, const std::string& source) {
  seed_ = seed;
  seed_source_ = source;
}

void Manifest::AddInput(const std::string& path) {
  inputs_.push_back({{"path", path},
                     {"bytes", std::filesystem::file_size(path)},
                     {"sha256", Sha256File(path)}});
}

void Manifest::AddOutput(const std::string& name) { outputs_.push_back(name); }

nlohmann::ordered_json Manifest::ToJson() const {
  nlohmann::ordered_json j;
  j["tool"] = "slodds";
  j["version"] = SLODDS_VERSION;
  j["command"] = command_;
  j["argv"] = argv_;
  j["seed"] = seed_;
  j["seed_source"] = seed_source_;
  j["config"] = config_;
  j["inputs"] = inputs_;
  j["outputs"] = outputs_;
  return j;
}

void Manifest::Write(const std::string& dir) const {
  const std::string path = dir + "/manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << ToJson().dump(2) << '\n';
}

}  // namespace slodds::cli
