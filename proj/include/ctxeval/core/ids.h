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

#ifndef CTXEVAL_CORE_IDS_H_
#define CTXEVAL_CORE_IDS_H_

#include <string>
#include <string_view>

#include "ctxeval/core/types.h"

namespace ctxeval {

// "q-" plus 16 hex digits of hash(source, text).
std::string DeriveQueryId(std::string_view source, std::string_view text);

// "t-" plus 16 hex digits of hash(query, pair, setting, context digest).
// context_digest is empty for context-agnostic settings.
std::string DeriveTaskId(std::string_view query_id, std::string_view candidate_a,
                         std::string_view candidate_b, EvaluationSetting setting,
                         std::string_view context_digest);

}  // namespace ctxeval

#endif  // CTXEVAL_CORE_IDS_H_
