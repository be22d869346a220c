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

#include "ctxeval/gateway/mock.h"

#include <fstream>
#include <sstream>
#include <thread>

#include "ctxeval/core/digest.h"

namespace ctxeval {
namespace {

std::int64_t CountWords(const std::string& s) {
  std::istringstream in(s);
  std::int64_t n = 0;
  std::string w;
  while (in >> w) ++n;
  return n;
}

std::optional<std::regex> CompileModel(const std::string& pattern) {
  if (pattern.empty()) return std::nullopt;
  return std::regex(pattern, std::regex::ECMAScript);
}

}  // namespace

MockScript& MockScript::AddDigest(std::string digest, std::string text) {
  Rule r;
  r.digest = std::move(digest);
  r.text = std::move(text);
  rules_.push_back(std::move(r));
  return *this;
}

MockScript& MockScript::AddRegex(const std::string& pattern, std::string text,
                                 const std::string& model_pattern) {
  Rule r;
  r.regex = std::regex(pattern, std::regex::ECMAScript);
  r.model = CompileModel(model_pattern);
  r.text = std::move(text);
  rules_.push_back(std::move(r));
  return *this;
}

MockScript& MockScript::AddContains(std::vector<std::string> needles, std::string text,
                                    const std::string& model_pattern) {
  Rule r;
  r.contains = std::move(needles);
  r.model = CompileModel(model_pattern);
  r.text = std::move(text);
  rules_.push_back(std::move(r));
  return *this;
}

MockScript& MockScript::AddHandler(Handler handler) {
  Rule r;
  r.handler = std::move(handler);
  rules_.push_back(std::move(r));
  return *this;
}

MockScript& MockScript::SetDefault(std::string text) {
  default_ = std::move(text);
  return *this;
}

MockScript& MockScript::SetLatency(std::chrono::milliseconds latency) {
  latency_ = latency;
  return *this;
}

std::string MockScript::Respond(const ChatRequest& request) const {
  std::optional<std::string> digest;
  for (const auto& rule : rules_) {
    if (rule.handler) {
      if (auto out = rule.handler(request)) return *out;
      continue;
    }
    if (rule.model && !std::regex_match(request.model_id, *rule.model)) continue;
    if (rule.digest) {
      if (!digest) digest = Sha256Hex(request.prompt);
      if (*digest != *rule.digest) continue;
    }
    bool ok = true;
    for (const auto& needle : rule.contains) {
      if (request.prompt.find(needle) == std::string::npos) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (rule.regex && !std::regex_search(request.prompt, *rule.regex)) continue;
    return rule.text;
  }
  if (default_) return *default_;
  throw Error(ErrorCode::kMockMiss, "no mock rule matches prompt for model " +
                                        request.model_id + " (prompt digest " +
                                        Sha256Hex(request.prompt).substr(0, 12) + ")");
}

MockScript MockScript::FromJson(const Json& j) {
  MockScript script;
  try {
    if (auto it = j.find("default"); it != j.end() && !it->is_null()) {
      script.SetDefault(it->get<std::string>());
    }
    script.SetLatency(std::chrono::milliseconds(j.value("latency_ms", 0)));
    for (const auto& r : j.value("rules", Json::array())) {
      Rule rule;
      if (auto it = r.find("digest"); it != r.end()) rule.digest = it->get<std::string>();
      if (auto it = r.find("regex"); it != r.end()) {
        rule.regex = std::regex(it->get<std::string>(), std::regex::ECMAScript);
      }
      if (auto it = r.find("contains"); it != r.end()) {
        rule.contains = it->get<std::vector<std::string>>();
      }
      rule.model = CompileModel(r.value("model", std::string()));
      rule.text = r.at("text").get<std::string>();
      script.rules_.push_back(std::move(rule));
    }
  } catch (const std::regex_error& e) {
    throw Error(ErrorCode::kConfigError, std::string("bad mock regex: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigError, std::string("bad mock script: ") + e.what());
  }
  return script;
}

MockScript MockScript::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open mock script " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigError, path.string() + ": " + e.what());
  }
  return FromJson(j);
}

BackendReply MockBackend::Send(const ChatRequest& request, const ProviderConfig&,
                               const std::string&, const std::string&) {
  ++calls_;
  const int now = ++in_flight_;
  int seen = max_in_flight_.load();
  while (now > seen && !max_in_flight_.compare_exchange_weak(seen, now)) {
  }
  struct Leave {
    std::atomic<int>& n;
    ~Leave() { --n; }
  } leave{in_flight_};
  if (script_.latency().count() > 0) std::this_thread::sleep_for(script_.latency());
  BackendReply reply;
  reply.text = script_.Respond(request);
  reply.usage.prompt_tokens = CountWords(request.prompt);
  reply.usage.completion_tokens = CountWords(reply.text);
  return reply;
}

}  // namespace ctxeval
