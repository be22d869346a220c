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

#ifndef CTXEVAL_GATEWAY_GATEWAY_H_
#define CTXEVAL_GATEWAY_GATEWAY_H_

#include <atomic>
#include <filesystem>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "ctxeval/core/parallel.h"
#include "ctxeval/gateway/backend.h"
#include "ctxeval/gateway/cache.h"
#include "ctxeval/gateway/chat.h"
#include "ctxeval/gateway/rate_limit.h"

namespace ctxeval {

struct GatewayStats {
  int backend_calls = 0;  // requests that reached a backend (incl. retries)
  int network_calls = 0;  // backend calls to non-mock providers
  int cache_hits = 0;
  int retries = 0;
};

// Uniform entry point for every model call. Thread-safe.
//
// Complete() serves from the disk cache when possible, otherwise waits for a
// concurrency permit and a rate-limit token, calls the backend, retries
// transient failures (transport errors, 408, 429, 5xx) with exponential
// backoff, and persists the result. Concurrent identical requests share one
// backend call.
class Gateway {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  // An empty cache_dir disables caching.
  explicit Gateway(std::filesystem::path cache_dir = {});
  ~Gateway();

  Gateway(const Gateway&) = delete;
  Gateway& operator=(const Gateway&) = delete;

  void AddProvider(const ProviderConfig& config, std::shared_ptr<Backend> backend);

  // Routes a model id to a provider. api_model defaults to the model id.
  void AddModel(const std::string& model_id, const std::string& provider_id,
                const std::string& api_model = "");

  bool HasModel(const std::string& model_id) const;

  // Request for `model_id` on its routed provider.
  ChatRequest MakeRequest(const std::string& model_id, std::string prompt,
                          int max_tokens = kGenerationMaxTokens) const;

  ChatResponse Complete(const ChatRequest& request);

  // Hash of (provider, model, prompt, max_tokens, temperature).
  static std::string RequestDigest(const ChatRequest& request);

  // Overrides max_concurrency for every provider registered afterwards and
  // for existing ones.
  void SetMaxConcurrency(int limit);

  // Largest configured max_concurrency; batteries size their pools with it.
  int max_concurrency() const;

  void SetSleeper(Sleeper sleeper) { sleeper_ = std::move(sleeper); }

  GatewayStats stats() const;

 private:
  struct Provider {
    ProviderConfig config;
    std::shared_ptr<Backend> backend;
    std::unique_ptr<Semaphore> slots;
    std::unique_ptr<TokenBucket> bucket;
  };
  struct Route {
    std::string provider_id;
    std::string api_model;
  };

  ChatResponse CallWithRetries(Provider& provider, const ChatRequest& request,
                               const std::string& digest);
  Provider& ProviderFor(const std::string& provider_id);

  std::optional<ResponseCache> cache_;
  mutable std::mutex mu_;
  std::map<std::string, std::unique_ptr<Provider>> providers_;
  std::map<std::string, Route> routes_;
  std::map<std::string, std::shared_future<ChatResponse>> in_flight_;
  std::optional<int> concurrency_override_;
  Sleeper sleeper_;

  std::atomic<int> backend_calls_{0};
  std::atomic<int> network_calls_{0};
  std::atomic<int> cache_hits_{0};
  std::atomic<int> retries_{0};
};

}  // namespace ctxeval

#endif  // CTXEVAL_GATEWAY_GATEWAY_H_
