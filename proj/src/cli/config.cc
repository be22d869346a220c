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

#include "ctxeval/cli/config.h"

#include <algorithm>
#include <set>

#include "ctxeval/core/strings.h"

namespace ctxeval {
namespace {

std::filesystem::path Resolve(const std::filesystem::path& base, const std::string& p) {
  if (p.empty()) return {};
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

template <typename T>
T Field(const Json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::kConfigError, std::string("field '") + key + "' has the wrong type");
  }
}

ProviderConfig ParseProvider(const Json& j, const std::filesystem::path& base) {
  ProviderConfig p;
  p.provider_id = Field<std::string>(j, "id", "");
  if (p.provider_id.empty()) throw Error(ErrorCode::kConfigError, "provider without id");
  p.kind = Field<std::string>(j, "kind", "mock");
  if (p.kind != "mock" && p.kind != "openai") {
    throw Error(ErrorCode::kConfigError, "provider " + p.provider_id + ": unknown kind " + p.kind);
  }
  p.base_url = Field<std::string>(j, "base_url", "");
  p.credential_env = Field<std::string>(j, "credential_env", "");
  p.requests_per_minute = Field<double>(j, "requests_per_minute", p.requests_per_minute);
  p.max_concurrency = Field<int>(j, "max_concurrency", p.max_concurrency);
  p.max_tokens_ceiling = Field<int>(j, "max_tokens_ceiling", p.max_tokens_ceiling);
  if (auto it = j.find("default_temperature"); it != j.end() && !it->is_null()) {
    p.default_temperature = it->get<double>();
  }
  if (auto it = j.find("retry"); it != j.end() && it->is_object()) {
    p.retry.max_attempts = Field<int>(*it, "max_attempts", p.retry.max_attempts);
    p.retry.backoff_base =
        std::chrono::milliseconds(Field<int>(*it, "backoff_base_ms", p.retry.backoff_base.count()));
    p.retry.backoff_cap =
        std::chrono::milliseconds(Field<int>(*it, "backoff_cap_ms", p.retry.backoff_cap.count()));
  }
  const auto script = Field<std::string>(j, "mock_script", "");
  if (!script.empty()) p.mock_script = Resolve(base, script).string();
  if (p.kind == "mock" && p.mock_script.empty()) {
    throw Error(ErrorCode::kConfigError, "mock provider " + p.provider_id + " needs mock_script");
  }
  if (p.kind == "openai" && p.base_url.empty()) {
    throw Error(ErrorCode::kConfigError, "provider " + p.provider_id + " needs base_url");
  }
  if (p.requests_per_minute <= 0 || p.max_concurrency < 1 || p.retry.max_attempts < 1) {
    throw Error(ErrorCode::kConfigError, "provider " + p.provider_id + " has non-positive limits");
  }
  return p;
}

}  // namespace

ModelPair ParsePairFlag(const std::string& flag) {
  const auto parts = Split(flag, ',');
  if (parts.size() != 2 || Trim(parts[0]).empty() || Trim(parts[1]).empty()) {
    throw Error(ErrorCode::kConfigError, "pair must look like a,b: '" + flag + "'");
  }
  ModelPair pair{std::string(Trim(parts[0])), std::string(Trim(parts[1])), ""};
  pair.label = pair.candidate_a + " vs " + pair.candidate_b;
  return pair;
}

RunConfig ParseRunConfig(const Json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw Error(ErrorCode::kConfigError, "config must be a JSON object");
  RunConfig c;
  c.seed = Field<std::uint64_t>(j, "seed", 0);
  c.runs_dir = Resolve(base_dir, Field<std::string>(j, "runs_dir", "runs"));
  c.cache_dir = Resolve(base_dir, Field<std::string>(j, "cache_dir", ".ctxeval_cache"));
  c.queries_file = Resolve(base_dir, Field<std::string>(j, "queries_file", ""));
  if (auto p = Field<std::string>(j, "prompts_file", ""); !p.empty()) {
    c.prompts_file = Resolve(base_dir, p);
  }
  if (auto p = Field<std::string>(j, "attributes_file", ""); !p.empty()) {
    c.attributes_file = Resolve(base_dir, p);
  }
  for (const auto& p : Field<Json>(j, "providers", Json::array())) {
    c.providers.push_back(ParseProvider(p, base_dir));
  }
  for (const auto& m : Field<Json>(j, "models", Json::array())) {
    ModelRoute route;
    route.model_id = Field<std::string>(m, "id", "");
    route.provider_id = Field<std::string>(m, "provider", "");
    route.api_name = Field<std::string>(m, "api_name", route.model_id);
    if (route.model_id.empty() || route.provider_id.empty()) {
      throw Error(ErrorCode::kConfigError, "model entries need id and provider");
    }
    c.models.push_back(route);
  }
  c.classifier = Field<std::string>(j, "classifier", "");
  c.generators = Field<std::vector<std::string>>(j, "generators", {});
  c.jurors = Field<std::vector<std::string>>(j, "jurors", {});
  c.judges = Field<std::vector<std::string>>(j, "judges", {});
  for (const auto& p : Field<Json>(j, "pairs", Json::array())) {
    ModelPair pair;
    if (p.is_string()) {
      pair = ParsePairFlag(p.get<std::string>());
    } else {
      pair.candidate_a = Field<std::string>(p, "a", "");
      pair.candidate_b = Field<std::string>(p, "b", "");
      pair.label = Field<std::string>(p, "label", pair.candidate_a + " vs " + pair.candidate_b);
    }
    c.pairs.push_back(pair);
  }
  for (const auto& s : Field<std::vector<std::string>>(j, "settings", {})) {
    try {
      c.settings.push_back(ParseEnum<EvaluationSetting>(s));
    } catch (const Error&) {
      throw Error(ErrorCode::kConfigError, "unknown setting " + s);
    }
  }
  if (c.settings.empty()) {
    const auto all = AllEnumValues<EvaluationSetting>();
    c.settings.assign(all.begin(), all.end());
  }
  c.constraint_judge = Field<std::string>(j, "constraint_judge", "");
  c.justification_judge = Field<std::string>(j, "justification_judge", "");
  c.rating_judge = Field<std::string>(j, "rating_judge", "");
  c.bias_candidate = Field<std::string>(j, "bias_candidate", "");
  c.filter_cap = Field<int>(j, "filter_cap", c.filter_cap);
  if (auto it = j.find("max_concurrency"); it != j.end() && !it->is_null()) {
    c.max_concurrency = it->get<int>();
  }
  if (auto it = j.find("annotation"); it != j.end() && it->is_object()) {
    auto& a = c.annotation;
    a.host = Field<std::string>(*it, "host", a.host);
    a.port = Field<int>(*it, "port", a.port);
    a.judgments_per_task = Field<int>(*it, "judgments_per_task", a.judgments_per_task);
    a.quota = Field<int>(*it, "quota", a.quota);
    a.lease_minutes = Field<int>(*it, "lease_minutes", a.lease_minutes);
    a.starve_after_skips = Field<int>(*it, "starve_after_skips", a.starve_after_skips);
    a.token_env = Field<std::string>(*it, "token_env", "");
    a.static_dir = Resolve(base_dir, Field<std::string>(*it, "static_dir", ""));
  }
  ValidateRunConfig(c);
  return c;
}

void ValidateRunConfig(const RunConfig& c) {
  std::set<std::string> providers;
  for (const auto& p : c.providers) {
    if (!providers.insert(p.provider_id).second) {
      throw Error(ErrorCode::kConfigError, "duplicate provider " + p.provider_id);
    }
  }
  std::set<std::string> models;
  for (const auto& m : c.models) {
    if (!providers.count(m.provider_id)) {
      throw Error(ErrorCode::kConfigError,
                  "model " + m.model_id + " routes to unknown provider " + m.provider_id);
    }
    if (!models.insert(m.model_id).second) {
      throw Error(ErrorCode::kConfigError, "duplicate model " + m.model_id);
    }
  }
  auto require = [&](const std::string& model, const std::string& role) {
    if (!model.empty() && !models.count(model)) {
      throw Error(ErrorCode::kConfigError, role + " " + model + " is not a configured model");
    }
  };
  require(c.classifier, "classifier");
  require(c.constraint_judge, "constraint_judge");
  require(c.justification_judge, "justification_judge");
  require(c.rating_judge, "rating_judge");
  require(c.bias_candidate, "bias_candidate");
  for (const auto& m : c.generators) require(m, "generator");
  for (const auto& m : c.jurors) require(m, "juror");
  for (const auto& m : c.judges) require(m, "judge");
  for (const auto& p : c.pairs) {
    if (p.candidate_a.empty() || p.candidate_b.empty() || p.candidate_a == p.candidate_b) {
      throw Error(ErrorCode::kConfigError, "pair " + p.label + " needs two distinct candidates");
    }
    require(p.candidate_a, "candidate");
    require(p.candidate_b, "candidate");
    for (const auto& judge : c.judges) {
      if (judge == p.candidate_a || judge == p.candidate_b) {
        throw Error(ErrorCode::kConfigError,
                    "judge " + judge + " is a candidate of pair " + p.label);
      }
    }
  }
  if (c.filter_cap < 1) throw Error(ErrorCode::kConfigError, "filter_cap must be at least 1");
  if (c.max_concurrency && *c.max_concurrency < 1) {
    throw Error(ErrorCode::kConfigError, "max_concurrency must be at least 1");
  }
}

}  // namespace ctxeval
