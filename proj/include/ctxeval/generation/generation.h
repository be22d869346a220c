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

#ifndef CTXEVAL_GENERATION_GENERATION_H_
#define CTXEVAL_GENERATION_GENERATION_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctxeval/context/pipeline.h"
#include "ctxeval/core/clock.h"
#include "ctxeval/core/types.h"

namespace ctxeval {

struct ModelPair {
  std::string candidate_a;
  std::string candidate_b;
  std::string label;

  bool operator==(const ModelPair&) const = default;
};

void Validate(const ModelPair& pair);

// Bare query for context-agnostic generation; query, a "Context:" header and
// the sampled QA lines for context-aware generation.
std::string RenderGenerationPrompt(const Query& query, const SampledContext* context,
                                   const PromptCatalog& prompts);

// Requires mode == ContextAware exactly when `context` is given, and the
// context to belong to `query`. Throws EmptyResponse on blank model output.
GenerationRecord GenerateResponse(const Query& query, const std::string& model,
                                  GenerationMode mode, const SampledContext* context,
                                  ModelAccess models, const TimestampFn& now);

// Two records per query, one per candidate, sorted by (query_id, model_id).
// In context-aware settings both candidates see the same sampled context.
// Throws MissingContext when the setting needs a context a query lacks.
std::vector<GenerationRecord> GeneratePairBattery(
    const std::vector<Query>& queries, const ModelPair& pair, EvaluationSetting setting,
    const std::map<std::string, SampledContext>& contexts, ModelAccess models,
    const TimestampFn& now);

}  // namespace ctxeval

#endif  // CTXEVAL_GENERATION_GENERATION_H_
