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

#ifndef CTXEVAL_GATEWAY_MOCK_H_
#define CTXEVAL_GATEWAY_MOCK_H_

#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "ctxeval/core/json.h"
#include "ctxeval/gateway/backend.h"

namespace ctxeval {

// A scripted backend. Rules are tried in insertion order and the first match
// wins. A rule matches when every condition it carries holds:
//   digest    SHA-256 hex of the prompt equals this value
//   regex     ECMAScript search over the prompt succeeds
//   contains  every listed literal occurs in the prompt
//   model     ECMAScript full match over the model id
// Unmatched prompts fall back to `default`, else MockMiss.
//
// Script file format (JSON):
//   {"default": "...", "latency_ms": 0,
//    "rules": [{"regex": "...", "model": "...", "contains": ["..."],
//               "digest": "...", "text": "..."}]}
class MockScript {
 public:
  using Handler = std::function<std::optional<std::string>(const ChatRequest&)>;

  MockScript& AddDigest(std::string digest, std::string text);
  MockScript& AddRegex(const std::string& pattern, std::string text,
                       const std::string& model_pattern = "");
  MockScript& AddContains(std::vector<std::string> needles, std::string text,
                          const std::string& model_pattern = "");
  // Programmatic rule; returning nullopt means "no match".
  MockScript& AddHandler(Handler handler);
  MockScript& SetDefault(std::string text);
  MockScript& SetLatency(std::chrono::milliseconds latency);

  // Throws MockMiss when nothing matches and there is no default.
  std::string Respond(const ChatRequest& request) const;

  std::chrono::milliseconds latency() const { return latency_; }
  std::size_t rule_count() const { return rules_.size(); }

  static MockScript FromJson(const Json& j);
  static MockScript Load(const std::filesystem::path& path);

 private:
  struct Rule {
    std::optional<std::string> digest;
    std::optional<std::regex> regex;
    std::vector<std::string> contains;
    std::optional<std::regex> model;
    Handler handler;
    std::string text;
  };

  std::vector<Rule> rules_;
  std::optional<std::string> default_;
  std::chrono::milliseconds latency_{0};
};

class MockBackend : public Backend {
 public:
  explicit MockBackend(MockScript script) : script_(std::move(script)) {}

  BackendReply Send(const ChatRequest& request, const ProviderConfig& config,
                    const std::string& api_model, const std::string& credential) override;
  bool needs_credential() const override { return false; }

  // Instrumentation.
  int calls() const { return calls_.load(); }
  int max_in_flight() const { return max_in_flight_.load(); }

 private:
  MockScript script_;
  std::atomic<int> calls_{0};
  std::atomic<int> in_flight_{0};
  std::atomic<int> max_in_flight_{0};
};

}  // namespace ctxeval

#endif  // CTXEVAL_GATEWAY_MOCK_H_
