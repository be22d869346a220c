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

#ifndef CTXEVAL_GATEWAY_CACHE_H_
#define CTXEVAL_GATEWAY_CACHE_H_

#include <filesystem>
#include <optional>
#include <string>

#include "ctxeval/gateway/chat.h"

namespace ctxeval {

// Content-addressed response store laid out as
// <root>/<provider>/<first 2 hex>/<digest>.json. Entries are never evicted;
// writes go to a temp file that is renamed into place.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path root) : root_(std::move(root)) {}

  std::optional<ChatResponse> Get(const std::string& provider_id,
                                  const std::string& digest) const;
  void Put(const std::string& provider_id, const std::string& digest,
           const ChatRequest& request, const ChatResponse& response) const;

  std::filesystem::path PathFor(const std::string& provider_id,
                                const std::string& digest) const;

 private:
  std::filesystem::path root_;
};

}  // namespace ctxeval

#endif  // CTXEVAL_GATEWAY_CACHE_H_
