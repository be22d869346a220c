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

#include "ctxeval/generation/generation.h"

#include <algorithm>
#include <tuple>

#include "ctxeval/core/context.h"
#include "ctxeval/core/parallel.h"
#include "ctxeval/core/strings.h"

namespace ctxeval {

void Validate(const ModelPair& pair) {
  if (pair.candidate_a.empty() || pair.candidate_b.empty()) {
    throw Error(ErrorCode::kValidationError, "model pair has an empty candidate");
  }
  if (pair.candidate_a == pair.candidate_b) {
    throw Error(ErrorCode::kValidationError, "model pair candidates must differ");
  }
}

std::string RenderGenerationPrompt(const Query& query, const SampledContext* context,
                                   const PromptCatalog& prompts) {
  if (context == nullptr) return query.text;
  const auto rendered = RenderContext(*context);
  return RenderTemplate(prompts.Get(PromptId::kGenerateWithContext),
                        {{"[QUERY]", query.text}, {"[CONTEXT]", rendered}});
}

GenerationRecord GenerateResponse(const Query& query, const std::string& model,
                                  GenerationMode mode, const SampledContext* context,
                                  ModelAccess models, const TimestampFn& now) {
  const bool aware = mode == GenerationMode::kContextAware;
  if (aware != (context != nullptr)) {
    throw Error(ErrorCode::kPrecondition,
                aware ? "context-aware generation needs a sampled context"
                      : "context-agnostic generation must not receive a context");
  }
  if (context != nullptr && context->query_id != query.id) {
    throw Error(ErrorCode::kPrecondition,
                "context " + context->query_id + " does not belong to " + query.id);
  }
  auto request = models.gateway.MakeRequest(
      model, RenderGenerationPrompt(query, context, models.prompts), kGenerationMaxTokens);
  const auto reply = models.gateway.Complete(request);
  if (Trim(reply.text).empty()) {
    throw Error(ErrorCode::kEmptyResponse, model + " returned nothing for " + query.id);
  }
  GenerationRecord record;
  record.query_id = query.id;
  record.model_id = model;
  record.generation_mode = mode;
  if (context != nullptr) record.context_digest = ContextDigest(*context);
  record.text = reply.text;
  record.provider_meta = ProviderMeta{reply.request_digest, now(), reply.usage.prompt_tokens,
                                      reply.usage.completion_tokens};
  return record;
}

std::vector<GenerationRecord> GeneratePairBattery(
    const std::vector<Query>& queries, const ModelPair& pair, EvaluationSetting setting,
    const std::map<std::string, SampledContext>& contexts, ModelAccess models,
    const TimestampFn& now) {
  Validate(pair);
  const auto mode = GenerationModeFor(setting);
  const bool aware = mode == GenerationMode::kContextAware;
  std::vector<std::pair<const Query*, const SampledContext*>> work;
  for (const auto& q : queries) {
    const SampledContext* ctx = nullptr;
    if (aware) {
      auto it = contexts.find(q.id);
      if (it == contexts.end()) throw Error(ErrorCode::kMissingContext, q.id);
      ctx = &it->second;
    }
    work.emplace_back(&q, ctx);
  }
  const std::string* models_in_pair[] = {&pair.candidate_a, &pair.candidate_b};
  auto records = ParallelMap(work.size() * 2, models.gateway.max_concurrency(), [&](std::size_t i) {
    const auto& [q, ctx] = work[i / 2];
    return GenerateResponse(*q, *models_in_pair[i % 2], mode, ctx, models, now);
  });
  std::stable_sort(records.begin(), records.end(), [](const auto& l, const auto& r) {
    return std::tie(l.query_id, l.model_id) < std::tie(r.query_id, r.model_id);
  });
  return records;
}

}  // namespace ctxeval
