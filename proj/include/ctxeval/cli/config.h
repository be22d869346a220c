// Copyright 2026 The ctxeval Authors.
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

#ifndef CTXEVAL_CLI_CONFIG_H_
#define CTXEVAL_CLI_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ctxeval/core/json.h"
#include "ctxeval/core/types.h"
#include "ctxeval/gateway/chat.h"
#include "ctxeval/generation/generation.h"

namespace ctxeval {

struct ModelRoute {
  std::string model_id;
  std::string provider_id;
  std::string api_name;
};

struct AnnotationConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  int judgments_per_task = 3;
  int quota = 3;
  int lease_minutes = 30;
  int starve_after_skips = 10;
  std::string token_env;  // variable holding the shared token
  std::filesystem::path static_dir;
};

// Everything a run needs, read from one JSON file. Relative paths resolve
// against the file's directory. Credentials never appear here, only the
// names of the environment variables that hold them.
struct RunConfig {
  std::uint64_t seed = 0;
  std::filesystem::path runs_dir = "runs";
  std::filesystem::path cache_dir = ".ctxeval_cache";
  std::filesystem::path queries_file;
  std::optional<std::filesystem::path> prompts_file;
  std::optional<std::filesystem::path> attributes_file;
  std::vector<ProviderConfig> providers;
  std::vector<ModelRoute> models;
  std::string classifier;
  std::vector<std::string> generators;
  std::vector<std::string> jurors;
  std::vector<std::string> judges;
  std::vector<ModelPair> pairs;
  std::vector<EvaluationSetting> settings;
  std::string constraint_judge;
  std::string justification_judge;
  std::string rating_judge;
  std::string bias_candidate;
  int filter_cap = 1000;
  std::optional<int> max_concurrency;
  AnnotationConfig annotation;
};

// Parses and validates. Throws ConfigError with the offending field.
RunConfig ParseRunConfig(const Json& j, const std::filesystem::path& base_dir);

// Checks model references resolve and that no judge is a candidate of any
// pair. Throws ConfigError.
void ValidateRunConfig(const RunConfig& config);

// Splits "a,b" into a pair. Throws ConfigError.
ModelPair ParsePairFlag(const std::string& flag);

}  // namespace ctxeval

#endif  // CTXEVAL_CLI_CONFIG_H_
