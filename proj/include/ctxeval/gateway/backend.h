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

#ifndef CTXEVAL_GATEWAY_BACKEND_H_
#define CTXEVAL_GATEWAY_BACKEND_H_

#include <string>

#include "ctxeval/gateway/chat.h"

namespace ctxeval {

struct BackendReply {
  std::string text;
  FinishReason finish_reason = FinishReason::kStop;
  Usage usage;
};

// One model API. Implementations throw ProviderFailure; the gateway decides
// which failures are transient from the status code.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual BackendReply Send(const ChatRequest& request, const ProviderConfig& config,
                            const std::string& api_model,
                            const std::string& credential) = 0;

  virtual bool needs_credential() const { return true; }
};

}  // namespace ctxeval

#endif  // CTXEVAL_GATEWAY_BACKEND_H_
