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

#ifndef CTXEVAL_JUDGING_JUDGING_H_
#define CTXEVAL_JUDGING_JUDGING_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctxeval/context/pipeline.h"
#include "ctxeval/core/json.h"
#include "ctxeval/core/types.h"
#include "ctxeval/generation/generation.h"

namespace ctxeval {

// One pairwise comparison as shown to one rater.
struct JudgeTask {
  std::string task_id;
  Query query;
  EvaluationSetting setting = EvaluationSetting::kNoCtxGenNoCtxEval;
  std::string candidate_a;
  std::string candidate_b;
  std::string response_a;
  std::string response_b;
  Position presented_first = Position::kA;
  std::optional<SampledContext> context;
  std::string rater_id;

  const std::string& first_response() const {
    return presented_first == Position::kA ? response_a : response_b;
  }
  const std::string& second_response() const {
    return presented_first == Position::kA ? response_b : response_a;
  }
};

// Seeded coin for (task_id, rater_id).
Position PresentationOrder(std::uint64_t seed, const std::string& task_id,
                           const std::string& rater_id);

// Builds a task from the two candidates' generations. `context` must be given
// exactly for context-aware settings.
JudgeTask MakeJudgeTask(const Query& query, EvaluationSetting setting,
                        const GenerationRecord& a, const GenerationRecord& b,
                        const SampledContext* context, const std::string& rater_id,
                        std::uint64_t seed);

// Checks the rater is not a candidate (SelfPreference) and that a context is
// present exactly for context-aware settings (Precondition).
void ValidateTask(const JudgeTask& task);

std::string RenderJudgePrompt(const JudgeTask& task, const PromptCatalog& prompts);

// Unparseable replies yield a kept record with raw Unparsed and canonical
// Invalid.
JudgmentRecord JudgePair(const JudgeTask& task, ModelAccess models);

struct JudgeBatteryResult {
  std::vector<JudgmentRecord> records;  // sorted by (task_id, rater_id)
  int unparsed = 0;
};

// Every rater judges every query of the pair under `setting`. All raters are
// checked against the candidates before any model call.
JudgeBatteryResult JudgeBattery(const std::vector<Query>& queries, const ModelPair& pair,
                                EvaluationSetting setting,
                                const std::vector<GenerationRecord>& generations,
                                const std::map<std::string, SampledContext>& contexts,
                                const std::vector<std::string>& raters, std::uint64_t seed,
                                ModelAccess models);

struct ConstraintCount {
  std::string task_id;
  std::string query_id;
  EvaluationSetting setting = EvaluationSetting::kNoCtxGenNoCtxEval;
  std::string candidate_a;
  std::string candidate_b;
  std::string model_id;
  int satisfied = 0;
  std::string justification;

  bool operator==(const ConstraintCount&) const = default;
};

// satisfied >= 0 and model_id is one of the candidates.
void Validate(const ConstraintCount& count);
void to_json(Json& j, const ConstraintCount& v);
void from_json(const Json& j, ConstraintCount& v);

// Asks `judge` how many of the context's followups `response` addresses.
ConstraintCount CountConstraints(const Query& query, const SampledContext& context,
                                 const GenerationRecord& response, const std::string& judge,
                                 ModelAccess models);

struct ConstraintBatteryResult {
  std::vector<ConstraintCount> counts;
  int parse_failures = 0;
  int out_of_range = 0;
};

// Counts for both candidates of every query that has a context.
ConstraintBatteryResult CountConstraintsBattery(
    const std::vector<Query>& queries, const ModelPair& pair, EvaluationSetting setting,
    const std::vector<GenerationRecord>& generations,
    const std::map<std::string, SampledContext>& contexts, const std::string& judge,
    ModelAccess models);

// Rating prompt for one followup, listing every answer choice.
std::string RenderRatingPrompt(const Query& query, const FollowUpQA& followup,
                               const std::string& response, const PromptCatalog& prompts);

// One rating per answer choice of `followup`, in choice order.
std::vector<RelevanceRating> RateRelevance(const Query& query, const std::string& attribute,
                                           const FollowUpQA& followup,
                                           const std::string& response, ResponseMode mode,
                                           const std::string& judge, ModelAccess models);

// Empty text is Unknown without a model call.
JustificationClass ClassifyJustification(const std::string& text, const std::string& judge,
                                         ModelAccess models);

struct JustificationLabel {
  std::string task_id;
  std::string rater_id;
  RaterKind rater_kind = RaterKind::kAutorater;
  EvaluationSetting setting = EvaluationSetting::kNoCtxGenNoCtxEval;
  JustificationClass justification_class = JustificationClass::kUnknown;

  bool operator==(const JustificationLabel&) const = default;
};

void to_json(Json& j, const JustificationLabel& v);
void from_json(const Json& j, JustificationLabel& v);

}  // namespace ctxeval

#endif  // CTXEVAL_JUDGING_JUDGING_H_
