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

#include "ctxeval/gateway/http_backend.h"

#include "httplib.h"

#include "ctxeval/core/error.h"
#include "ctxeval/core/json.h"

namespace ctxeval {
namespace {

std::string Excerpt(const std::string& body) {
  return body.size() <= 200 ? body : body.substr(0, 200) + "...";
}

FinishReason ParseFinish(const std::string& s) {
  if (s == "length") return FinishReason::kLength;
  if (s == "stop" || s.empty()) return FinishReason::kStop;
  return FinishReason::kError;
}

}  // namespace

BackendReply HttpChatBackend::Send(const ChatRequest& request, const ProviderConfig& config,
                                   const std::string& api_model,
                                   const std::string& credential) {
  httplib::Client client(config.base_url);
  client.set_connection_timeout(30);
  client.set_read_timeout(300);
  Json body{{"model", api_model},
            {"messages", Json::array({Json{{"role", "user"}, {"content", request.prompt}}})},
            {"max_tokens", request.max_tokens}};
  const auto temperature = request.temperature ? request.temperature : config.default_temperature;
  if (temperature) body["temperature"] = *temperature;

  httplib::Headers headers;
  if (!credential.empty()) headers.emplace("Authorization", "Bearer " + credential);
  auto res = client.Post("/v1/chat/completions", headers, body.dump(), "application/json");
  if (!res) {
    throw ProviderFailure(ErrorCode::kProviderError, 0, httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw ProviderFailure(ErrorCode::kProviderError, res->status, Excerpt(res->body));
  }
  try {
    const auto j = Json::parse(res->body);
    const auto& choice = j.at("choices").at(0);
    BackendReply reply;
    const auto& content = choice.at("message").at("content");
    reply.text = content.is_null() ? "" : content.get<std::string>();
    reply.finish_reason = ParseFinish(choice.value("finish_reason", std::string()));
    if (auto u = j.find("usage"); u != j.end() && u->is_object()) {
      reply.usage.prompt_tokens = u->value("prompt_tokens", std::int64_t{0});
      reply.usage.completion_tokens = u->value("completion_tokens", std::int64_t{0});
    }
    return reply;
  } catch (const nlohmann::json::exception& e) {
    throw ProviderFailure(ErrorCode::kProviderError, res->status,
                          std::string("malformed response: ") + e.what());
  }
}

}  // namespace ctxeval
