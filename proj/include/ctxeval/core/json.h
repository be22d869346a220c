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

#ifndef CTXEVAL_CORE_JSON_H_
#define CTXEVAL_CORE_JSON_H_

#include <string>

#include "json.hpp"
#include "ctxeval/core/types.h"

namespace ctxeval {

using Json = nlohmann::json;

// Canonical object shapes. Field names follow the record types one-to-one;
// absent optionals serialize as null. Unknown fields are ignored on read.
void to_json(Json& j, const Query& v);
void from_json(const Json& j, Query& v);
void to_json(Json& j, const JuryVote& v);
void from_json(const Json& j, JuryVote& v);
void to_json(Json& j, const FollowUpQA& v);
void from_json(const Json& j, FollowUpQA& v);
void to_json(Json& j, const ContextSpec& v);
void from_json(const Json& j, ContextSpec& v);
void to_json(Json& j, const QAPair& v);
void from_json(const Json& j, QAPair& v);
void to_json(Json& j, const SampledContext& v);
void from_json(const Json& j, SampledContext& v);
void to_json(Json& j, const ProviderMeta& v);
void from_json(const Json& j, ProviderMeta& v);
void to_json(Json& j, const GenerationRecord& v);
void from_json(const Json& j, GenerationRecord& v);
void to_json(Json& j, const ConstraintCheck& v);
void from_json(const Json& j, ConstraintCheck& v);
void to_json(Json& j, const JudgmentRecord& v);
void from_json(const Json& j, JudgmentRecord& v);
void to_json(Json& j, const RelevanceRating& v);
void from_json(const Json& j, RelevanceRating& v);

// Compact single-line dump with sorted keys; the JSONL line format.
std::string DumpLine(const Json& j);

// Parses and converts, mapping any JSON error to Error(kValidationError).
template <typename T>
T ParseRecord(const Json& j) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kValidationError, e.what());
  }
}

}  // namespace ctxeval

#endif  // CTXEVAL_CORE_JSON_H_
