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

#include "ctxeval/gateway/cache.h"

#include <atomic>
#include <fstream>
#include <thread>

#include "ctxeval/core/digest.h"
#include "ctxeval/core/error.h"
#include "ctxeval/core/json.h"

namespace ctxeval {
namespace {

std::string_view FinishName(FinishReason r) {
  switch (r) {
    case FinishReason::kStop: return "stop";
    case FinishReason::kLength: return "length";
    case FinishReason::kError: return "error";
  }
  return "error";
}

FinishReason FinishFromName(const std::string& s) {
  if (s == "stop") return FinishReason::kStop;
  if (s == "length") return FinishReason::kLength;
  return FinishReason::kError;
}

}  // namespace

std::filesystem::path ResponseCache::PathFor(const std::string& provider_id,
                                             const std::string& digest) const {
  return root_ / provider_id / digest.substr(0, 2) / (digest + ".json");
}

std::optional<ChatResponse> ResponseCache::Get(const std::string& provider_id,
                                               const std::string& digest) const {
  const auto path = PathFor(provider_id, digest);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    const auto j = Json::parse(in);
    ChatResponse r;
    r.text = j.at("text").get<std::string>();
    r.finish_reason = FinishFromName(j.value("finish_reason", "stop"));
    r.usage.prompt_tokens = j.value("prompt_tokens", std::int64_t{0});
    r.usage.completion_tokens = j.value("completion_tokens", std::int64_t{0});
    r.cached = true;
    r.request_digest = digest;
    return r;
  } catch (const nlohmann::json::exception&) {
    // A torn entry cannot exist (rename is atomic); treat anything unreadable
    // as a miss so the request is simply redone.
    return std::nullopt;
  }
}

void ResponseCache::Put(const std::string& provider_id, const std::string& digest,
                        const ChatRequest& request, const ChatResponse& response) const {
  static std::atomic<unsigned> counter{0};
  const auto path = PathFor(provider_id, digest);
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + path.parent_path().string());
  Json j{{"text", response.text},
         {"finish_reason", FinishName(response.finish_reason)},
         {"prompt_tokens", response.usage.prompt_tokens},
         {"completion_tokens", response.usage.completion_tokens},
         {"provider_id", request.provider_id},
         {"model_id", request.model_id},
         {"max_tokens", request.max_tokens},
         {"temperature", request.temperature ? Json(*request.temperature) : Json(nullptr)},
         {"prompt_sha256", Sha256Hex(request.prompt)}};
  const auto tmp = path.parent_path() /
                   (digest + ".tmp." +
                    std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) +
                    "." + std::to_string(counter++));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp.string());
    out << j.dump(2) << '\n';
    if (!out.flush()) throw Error(ErrorCode::kIoError, "short write " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot rename into " + path.string());
}

}  // namespace ctxeval
