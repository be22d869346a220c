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

#ifndef CTXEVAL_CONTEXT_PIPELINE_H_
#define CTXEVAL_CONTEXT_PIPELINE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctxeval/core/types.h"
#include "ctxeval/gateway/gateway.h"
#include "ctxeval/prompts/catalog.h"

namespace ctxeval {

// Everything a context-pipeline step needs to reach models.
struct ModelAccess {
  Gateway& gateway;
  const PromptCatalog& prompts;
};

struct NeedForContextDecision {
  std::string query_id;
  std::vector<std::pair<std::string, bool>> verdicts;  // (generator, says yes)
  bool needs_context = false;

  bool operator==(const NeedForContextDecision&) const = default;
};

// Throws Error(kParseFailure) when the reply holds no recognizable list.
QueryTypeSet ClassifyQueryTypes(const Query& query, const std::string& judge_model,
                                ModelAccess models);

struct FollowupResult {
  NeedForContextDecision decision;
  std::optional<ContextSpec> spec;   // present iff needs_context
  std::string source_generator;      // whose QA list became the spec
  std::vector<std::string> warnings; // truncation, dropped QAs, parse failures
};

// Asks every generator for a need-for-context verdict plus QAs. A generator
// whose reply cannot be parsed counts as "No". When all say Yes, one
// generator's list (among those with at least one usable QA) is chosen by the
// seeded stream (seed, "followup_source", query id) and capped at 10.
// Throws GenerationFailed when no generator reply parses, or when all say Yes
// but none produced a usable QA.
FollowupResult GenerateFollowups(const Query& query,
                                 const std::vector<std::string>& generator_models,
                                 std::uint64_t seed, ModelAccess models);

struct JuryResult {
  ContextSpec retained;              // only unanimously approved followups
  std::vector<FollowUpQA> reviewed;  // every followup with its votes
  int juror_parse_failures = 0;
};

// Each juror labels every followup once. A missing or unparseable label is a
// negative vote. Throws EmptyContext when nothing survives.
JuryResult JuryValidate(const Query& query, const ContextSpec& spec,
                        const std::vector<std::string>& juror_models, ModelAccess models);

}  // namespace ctxeval

#endif  // CTXEVAL_CONTEXT_PIPELINE_H_
