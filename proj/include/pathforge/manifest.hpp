// Copyright 2026 The pathforge Authors
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

// Run manifests and configuration hashing.

#ifndef PATHFORGE_MANIFEST_HPP_
#define PATHFORGE_MANIFEST_HPP_

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "pathforge/dataset_io.hpp"

namespace pathforge {

inline constexpr const char* kToolVersion = "0.1.0";

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

// Hash of the parsed dataset (sorted keys, compact), any side-car profile
// file and the run parameters. Formatting of the source file does not
// change the hash.
inline std::string config_hash(const std::filesystem::path& dataset, const json& params) {
  const json doc = load_dataset_json(dataset);
  json canon;
  canon["dataset"] = doc;
  canon["params"] = params;
  if (doc.contains("profiles_csv")) {
    const auto p = dataset.parent_path() / doc["profiles_csv"].get<std::string>();
    canon["profiles_sha256"] = sha256_hex(read_text_file(p));
  }
  return sha256_hex(canon.dump());
}

inline std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct RunManifest {
  std::string command;
  std::string dataset;
  std::string scenario;
  std::string config_hash;
  std::string tool_version = kToolVersion;
  std::string started_at;
  std::string finished_at;
  std::string output_dir;
  std::vector<std::string> outputs;  // relative to output_dir, sorted
  std::vector<std::string> applied_overrides;
  json params = json::object();

  json to_json() const {
    return {{"command", command},
            {"dataset", dataset},
            {"scenario", scenario},
            {"config_hash", config_hash},
            {"tool_version", tool_version},
            {"timestamps", {{"started_at", started_at}, {"finished_at", finished_at}}},
            {"output_dir", output_dir},
            {"outputs", outputs},
            {"applied_overrides", applied_overrides},
            {"params", params}};
  }
};

}  // namespace pathforge

#endif  // PATHFORGE_MANIFEST_HPP_
