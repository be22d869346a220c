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

#include "ctxeval/core/ids.h"

#include "ctxeval/core/digest.h"

namespace ctxeval {

std::string DeriveQueryId(std::string_view source, std::string_view text) {
  return "q-" + FieldDigest({"query", source, text}).substr(0, 16);
}

std::string DeriveTaskId(std::string_view query_id, std::string_view candidate_a,
                         std::string_view candidate_b, EvaluationSetting setting,
                         std::string_view context_digest) {
  return "t-" + FieldDigest({"task", query_id, candidate_a, candidate_b,
                             EnumName(setting), context_digest})
                    .substr(0, 16);
}

}  // namespace ctxeval
