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

#ifndef CTXEVAL_GATEWAY_CHAT_H_
#define CTXEVAL_GATEWAY_CHAT_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

namespace ctxeval {

// Appendix hyperparameters: generation 2048 tokens, judging 512.
inline constexpr int kGenerationMaxTokens = 2048;
inline constexpr int kJudgeMaxTokens = 512;

struct ChatRequest {
  std::string provider_id;
  std::string model_id;
  std::string prompt;
  int max_tokens = kGenerationMaxTokens;
  // nullopt leaves the provider's default temperature in place.
  std::optional<double> temperature;
};

enum class FinishReason { kStop, kLength, kError };

struct Usage {
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
};

struct ChatResponse {
  std::string text;
  FinishReason finish_reason = FinishReason::kStop;
  Usage usage;
  bool cached = false;
  std::string request_digest;
};

struct RetryPolicy {
  int max_attempts = 4;
  std::chrono::milliseconds backoff_base{500};
  std::chrono::milliseconds backoff_cap{30000};

  // Delay before attempt `attempt` (1-based; attempt 1 has no delay).
  std::chrono::milliseconds DelayBefore(int attempt) const;
};

struct ProviderConfig {
  std::string provider_id;
  std::string kind = "mock";  // "mock" or "openai" (any OpenAI-compatible API)
  std::string base_url;
  std::string credential_env;
  double requests_per_minute = 600;
  int max_concurrency = 4;
  RetryPolicy retry;
  int max_tokens_ceiling = kGenerationMaxTokens;
  std::optional<double> default_temperature;
  std::string mock_script;  // path, for kind == "mock"
};

}  // namespace ctxeval

#endif  // CTXEVAL_GATEWAY_CHAT_H_
