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

#include "ctxeval/core/types.h"

#include <algorithm>

#include "ctxeval/core/strings.h"
#include "ctxeval/core/verdict.h"

namespace ctxeval {
namespace {

[[noreturn]] void Fail(const std::string& message) {
  throw Error(ErrorCode::kValidationError, message);
}

}  // namespace

bool RequiresContext(EvaluationSetting setting) {
  return setting != EvaluationSetting::kNoCtxGenNoCtxEval;
}

GenerationMode GenerationModeFor(EvaluationSetting setting) {
  return setting == EvaluationSetting::kCtxGenCtxEval
             ? GenerationMode::kContextAware
             : GenerationMode::kContextAgnostic;
}

void Validate(const Query& query) {
  if (query.id.empty()) Fail("query id is empty");
  if (Trim(query.text).empty()) Fail("query " + query.id + " has blank text");
}

void Validate(const FollowUpQA& followup) {
  if (Trim(followup.question).empty()) Fail("followup question is empty");
  std::vector<std::string> distinct;
  for (const auto& choice : followup.answer_choices) {
    if (Trim(choice) == "Other") {
      Fail("answer choice 'Other' is not allowed: " + followup.question);
    }
    if (std::find(distinct.begin(), distinct.end(), choice) == distinct.end()) {
      distinct.push_back(choice);
    }
  }
  if (distinct.size() < 2) {
    Fail("followup needs at least two distinct choices: " + followup.question);
  }
}

void Validate(const ContextSpec& spec) {
  if (spec.query_id.empty()) Fail("context spec has no query id");
  if (spec.followups.empty() || spec.followups.size() > kMaxFollowUps) {
    Fail("context spec for " + spec.query_id + " has " +
         std::to_string(spec.followups.size()) + " followups (want 1..10)");
  }
  for (const auto& f : spec.followups) {
    Validate(f);
    if (f.jury_votes) {
      for (const auto& v : *f.jury_votes) {
        if (!v.vote) Fail("retained followup has a negative jury vote: " + f.question);
      }
    }
  }
}

void Validate(const SampledContext& context) {
  if (context.query_id.empty()) Fail("sampled context has no query id");
  if (context.pairs.empty()) Fail("sampled context is empty");
  for (const auto& p : context.pairs) {
    if (p.question.empty() || p.answer.empty()) Fail("sampled context has a blank pair");
  }
}

void ValidateAgainst(const SampledContext& context, const ContextSpec& spec) {
  if (context.query_id != spec.query_id) Fail("query id mismatch");
  if (context.pairs.size() != spec.followups.size()) Fail("pair count mismatch");
  for (std::size_t i = 0; i < context.pairs.size(); ++i) {
    const auto& f = spec.followups[i];
    const auto& p = context.pairs[i];
    if (p.question != f.question) Fail("pair " + std::to_string(i) + " out of order");
    if (std::find(f.answer_choices.begin(), f.answer_choices.end(), p.answer) ==
        f.answer_choices.end()) {
      Fail("answer '" + p.answer + "' is not a choice of: " + f.question);
    }
  }
}

void Validate(const GenerationRecord& record) {
  if (record.query_id.empty() || record.model_id.empty()) {
    Fail("generation record lacks query or model id");
  }
  const bool aware = record.generation_mode == GenerationMode::kContextAware;
  if (aware != record.context_digest.has_value()) {
    Fail("generation mode and context digest disagree for " + record.query_id);
  }
}

void Validate(const JudgmentRecord& record) {
  if (record.task_id.empty() || record.query_id.empty() || record.rater_id.empty()) {
    Fail("judgment record lacks an id");
  }
  if (record.candidate_a == record.candidate_b) Fail("candidates must differ");
  if (record.rater_kind == RaterKind::kAutorater &&
      (record.rater_id == record.candidate_a || record.rater_id == record.candidate_b)) {
    Fail("autorater " + record.rater_id + " is one of the candidates");
  }
  if (CanonicalizeVerdict(record.raw_verdict, record.presented_first) !=
      record.canonical_verdict) {
    Fail("canonical verdict does not match raw verdict and order");
  }
  if (record.constraint_checks &&
      (record.rater_kind != RaterKind::kHuman || !RequiresContext(record.setting))) {
    Fail("constraint checks are only recorded for context-aware human judgments");
  }
}

void Validate(const RelevanceRating& rating) {
  if (rating.query_id.empty() || rating.attribute.empty()) Fail("rating lacks ids");
  if (rating.rating < 1 || rating.rating > 5) {
    Fail("rating " + std::to_string(rating.rating) + " outside 1..5");
  }
}

}  // namespace ctxeval
