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

#include "ctxeval/gateway/gateway.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "ctxeval/core/digest.h"
#include "ctxeval/core/error.h"

namespace ctxeval {
namespace {

bool IsTransient(int status) {
  return status == 0 || status == 408 || status == 429 || status >= 500;
}

std::string FormatTemperature(const std::optional<double>& t) {
  if (!t) return "default";
  std::ostringstream out;
  out.precision(17);
  out << *t;
  return out.str();
}

}  // namespace

std::chrono::milliseconds RetryPolicy::DelayBefore(int attempt) const {
  if (attempt <= 1) return std::chrono::milliseconds(0);
  auto delay = backoff_base;
  for (int i = 2; i < attempt && delay < backoff_cap; ++i) delay *= 2;
  return std::min(delay, backoff_cap);
}

Gateway::Gateway(std::filesystem::path cache_dir)
    : sleeper_([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }) {
  if (!cache_dir.empty()) cache_.emplace(std::move(cache_dir));
}

Gateway::~Gateway() = default;

void Gateway::AddProvider(const ProviderConfig& config, std::shared_ptr<Backend> backend) {
  if (config.requests_per_minute <= 0 || config.max_concurrency <= 0 ||
      config.retry.max_attempts <= 0) {
    throw Error(ErrorCode::kConfigError,
                "provider " + config.provider_id + " needs positive limits");
  }
  auto p = std::make_unique<Provider>();
  p->config = config;
  if (concurrency_override_) p->config.max_concurrency = *concurrency_override_;
  p->backend = std::move(backend);
  p->slots = std::make_unique<Semaphore>(p->config.max_concurrency);
  const double rate = config.requests_per_minute / 60.0;
  p->bucket = std::make_unique<TokenBucket>(rate, std::max(1.0, std::ceil(rate)));
  std::lock_guard lock(mu_);
  providers_[config.provider_id] = std::move(p);
}

void Gateway::AddModel(const std::string& model_id, const std::string& provider_id,
                       const std::string& api_model) {
  std::lock_guard lock(mu_);
  routes_[model_id] = Route{provider_id, api_model.empty() ? model_id : api_model};
}

bool Gateway::HasModel(const std::string& model_id) const {
  std::lock_guard lock(mu_);
  return routes_.count(model_id) > 0;
}

ChatRequest Gateway::MakeRequest(const std::string& model_id, std::string prompt,
                                 int max_tokens) const {
  std::lock_guard lock(mu_);
  auto it = routes_.find(model_id);
  if (it == routes_.end()) {
    throw Error(ErrorCode::kConfigError, "model " + model_id + " has no provider route");
  }
  ChatRequest req;
  req.provider_id = it->second.provider_id;
  req.model_id = model_id;
  req.prompt = std::move(prompt);
  req.max_tokens = max_tokens;
  return req;
}

void Gateway::SetMaxConcurrency(int limit) {
  if (limit <= 0) throw Error(ErrorCode::kConfigError, "max concurrency must be positive");
  std::lock_guard lock(mu_);
  concurrency_override_ = limit;
  for (auto& [id, p] : providers_) {
    p->config.max_concurrency = limit;
    p->slots = std::make_unique<Semaphore>(limit);
  }
}

int Gateway::max_concurrency() const {
  std::lock_guard lock(mu_);
  int out = 1;
  for (const auto& [id, p] : providers_) out = std::max(out, p->config.max_concurrency);
  return out;
}

GatewayStats Gateway::stats() const {
  return GatewayStats{backend_calls_.load(), network_calls_.load(), cache_hits_.load(),
                      retries_.load()};
}

std::string Gateway::RequestDigest(const ChatRequest& request) {
  return FieldDigest({"chat", request.provider_id, request.model_id, request.prompt,
                      std::to_string(request.max_tokens),
                      FormatTemperature(request.temperature)});
}

Gateway::Provider& Gateway::ProviderFor(const std::string& provider_id) {
  std::lock_guard lock(mu_);
  auto it = providers_.find(provider_id);
  if (it == providers_.end()) {
    throw Error(ErrorCode::kConfigError, "provider " + provider_id + " is not configured");
  }
  return *it->second;
}

ChatResponse Gateway::Complete(const ChatRequest& request) {
  if (request.prompt.empty()) throw Error(ErrorCode::kPrecondition, "prompt is empty");
  if (request.max_tokens <= 0) throw Error(ErrorCode::kPrecondition, "max_tokens must be positive");
  if (request.temperature && *request.temperature < 0) {
    throw Error(ErrorCode::kPrecondition, "temperature must be non-negative");
  }
  Provider& provider = ProviderFor(request.provider_id);
  if (request.max_tokens > provider.config.max_tokens_ceiling) {
    throw Error(ErrorCode::kPrecondition,
                "max_tokens " + std::to_string(request.max_tokens) + " exceeds ceiling " +
                    std::to_string(provider.config.max_tokens_ceiling));
  }
  const std::string digest = RequestDigest(request);

  if (cache_) {
    if (auto hit = cache_->Get(request.provider_id, digest)) {
      ++cache_hits_;
      return *hit;
    }
  }

  std::promise<ChatResponse> promise;
  std::shared_future<ChatResponse> shared;
  bool leader = false;
  {
    std::lock_guard lock(mu_);
    auto it = in_flight_.find(digest);
    if (it != in_flight_.end()) {
      shared = it->second;
    } else {
      shared = promise.get_future().share();
      in_flight_.emplace(digest, shared);
      leader = true;
    }
  }
  if (!leader) {
    ChatResponse r = shared.get();
    r.cached = true;
    ++cache_hits_;
    return r;
  }

  try {
    ChatResponse r = CallWithRetries(provider, request, digest);
    promise.set_value(r);
    std::lock_guard lock(mu_);
    in_flight_.erase(digest);
    return r;
  } catch (...) {
    promise.set_exception(std::current_exception());
    std::lock_guard lock(mu_);
    in_flight_.erase(digest);
    throw;
  }
}

ChatResponse Gateway::CallWithRetries(Provider& provider, const ChatRequest& request,
                                      const std::string& digest) {
  std::string credential;
  if (provider.backend->needs_credential()) {
    const char* value = provider.config.credential_env.empty()
                            ? nullptr
                            : std::getenv(provider.config.credential_env.c_str());
    if (value == nullptr || *value == '\0') {
      throw Error(ErrorCode::kCredentialMissing,
                  "provider " + provider.config.provider_id + " needs $" +
                      provider.config.credential_env);
    }
    credential = value;
  }
  std::string api_model = request.model_id;
  {
    std::lock_guard lock(mu_);
    if (auto it = routes_.find(request.model_id); it != routes_.end()) {
      api_model = it->second.api_model;
    }
  }

  const auto& policy = provider.config.retry;
  int last_status = 0;
  std::string last_body;
  for (int attempt = 1; attempt <= policy.max_attempts; ++attempt) {
    if (attempt > 1) {
      ++retries_;
      sleeper_(policy.DelayBefore(attempt));
      // Another process may have persisted the answer meanwhile.
      if (cache_) {
        if (auto hit = cache_->Get(request.provider_id, digest)) {
          ++cache_hits_;
          return *hit;
        }
      }
    }
    provider.bucket->Acquire();
    try {
      BackendReply reply;
      {
        SemaphoreGuard slot(*provider.slots);
        ++backend_calls_;
        if (provider.backend->needs_credential()) ++network_calls_;
        reply = provider.backend->Send(request, provider.config, api_model, credential);
      }
      ChatResponse r;
      r.text = std::move(reply.text);
      r.finish_reason = reply.finish_reason;
      r.usage = reply.usage;
      r.request_digest = digest;
      if (cache_) cache_->Put(request.provider_id, digest, request, r);
      return r;
    } catch (const ProviderFailure& f) {
      last_status = f.status();
      last_body = f.body_excerpt();
      if (!IsTransient(f.status())) {
        throw ProviderFailure(ErrorCode::kProviderError, f.status(), f.body_excerpt());
      }
    }
  }
  if (last_status == 429) {
    throw ProviderFailure(ErrorCode::kRateLimitedExhausted, 429, last_body);
  }
  throw ProviderFailure(ErrorCode::kProviderError, last_status, last_body);
}

}  // namespace ctxeval
