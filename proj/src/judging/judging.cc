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

#include "ctxeval/judging/judging.h"

#include <algorithm>
#include <tuple>

#include "ctxeval/context/parsing.h"
#include "ctxeval/core/context.h"
#include "ctxeval/core/ids.h"
#include "ctxeval/core/log.h"
#include "ctxeval/core/parallel.h"
#include "ctxeval/core/rng.h"
#include "ctxeval/core/strings.h"
#include "ctxeval/core/verdict.h"
#include "ctxeval/judging/parse.h"

namespace ctxeval {
namespace {

const GenerationRecord* FindGeneration(const std::vector<GenerationRecord>& generations,
                                       const std::string& query_id, const std::string& model,
                                       GenerationMode mode) {
  for (const auto& g : generations) {
    if (g.query_id == query_id && g.model_id == model && g.generation_mode == mode) return &g;
  }
  return nullptr;
}

const GenerationRecord& RequireGeneration(const std::vector<GenerationRecord>& generations,
                                          const std::string& query_id,
                                          const std::string& model, GenerationMode mode) {
  const auto* g = FindGeneration(generations, query_id, model, mode);
  if (g == nullptr) {
    throw Error(ErrorCode::kMissingArtifact, "no " + std::string(EnumName(mode)) +
                                                 " generation from " + model + " for " +
                                                 query_id);
  }
  return *g;
}

}  // namespace

Position PresentationOrder(std::uint64_t seed, const std::string& task_id,
                           const std::string& rater_id) {
  return StreamFor(seed, {"presented_first", task_id, rater_id}).Coin() ? Position::kB
                                                                         : Position::kA;
}

JudgeTask MakeJudgeTask(const Query& query, EvaluationSetting setting,
                        const GenerationRecord& a, const GenerationRecord& b,
                        const SampledContext* context, const std::string& rater_id,
                        std::uint64_t seed) {
  if (a.query_id != query.id || b.query_id != query.id) {
    throw Error(ErrorCode::kPrecondition, "generations do not belong to " + query.id);
  }
  JudgeTask task;
  task.query = query;
  task.setting = setting;
  task.candidate_a = a.model_id;
  task.candidate_b = b.model_id;
  task.response_a = a.text;
  task.response_b = b.text;
  if (context != nullptr) task.context = *context;
  task.task_id = DeriveTaskId(query.id, a.model_id, b.model_id, setting,
                              context != nullptr ? ContextDigest(*context) : "");
  task.rater_id = rater_id;
  task.presented_first = PresentationOrder(seed, task.task_id, rater_id);
  return task;
}

void ValidateTask(const JudgeTask& task) {
  if (task.rater_id == task.candidate_a || task.rater_id == task.candidate_b) {
    throw Error(ErrorCode::kSelfPreference,
                "rater " + task.rater_id + " is a candidate of task " + task.task_id);
  }
  if (RequiresContext(task.setting) != task.context.has_value()) {
    throw Error(ErrorCode::kPrecondition,
                "task " + task.task_id + ": context presence does not match setting " +
                    std::string(EnumName(task.setting)));
  }
}

std::string RenderJudgePrompt(const JudgeTask& task, const PromptCatalog& prompts) {
  if (!task.context) {
    return RenderTemplate(prompts.Get(PromptId::kJudgeNoContext),
                          {{"[QUERY]", task.query.text},
                           {"[RESPONSE 1]", task.first_response()},
                           {"[RESPONSE 2]", task.second_response()}});
  }
  const auto context = RenderContext(*task.context);
  return RenderTemplate(prompts.Get(PromptId::kJudgeWithContext),
                        {{"[QUERY]", task.query.text},
                         {"[CONTEXT]", context},
                         {"[RESPONSE 1]", task.first_response()},
                         {"[RESPONSE 2]", task.second_response()}});
}

JudgmentRecord JudgePair(const JudgeTask& task, ModelAccess models) {
  ValidateTask(task);
  const auto reply = models.gateway.Complete(models.gateway.MakeRequest(
      task.rater_id, RenderJudgePrompt(task, models.prompts), kJudgeMaxTokens));
  JudgmentRecord record;
  record.task_id = task.task_id;
  record.query_id = task.query.id;
  record.setting = task.setting;
  record.candidate_a = task.candidate_a;
  record.candidate_b = task.candidate_b;
  record.rater_id = task.rater_id;
  record.rater_kind = RaterKind::kAutorater;
  record.presented_first = task.presented_first;
  record.raw_verdict = ParseVerdict(reply.text);
  record.canonical_verdict = CanonicalizeVerdict(record.raw_verdict, task.presented_first);
  record.justification = ExtractJustification(reply.text);
  return record;
}

JudgeBatteryResult JudgeBattery(const std::vector<Query>& queries, const ModelPair& pair,
                                EvaluationSetting setting,
                                const std::vector<GenerationRecord>& generations,
                                const std::map<std::string, SampledContext>& contexts,
                                const std::vector<std::string>& raters, std::uint64_t seed,
                                ModelAccess models) {
  Validate(pair);
  if (raters.empty()) throw Error(ErrorCode::kPrecondition, "no raters configured");
  for (const auto& r : raters) {
    if (r == pair.candidate_a || r == pair.candidate_b) {
      throw Error(ErrorCode::kSelfPreference, "rater " + r + " is a candidate of pair " +
                                                  pair.candidate_a + "," + pair.candidate_b);
    }
  }
  if (raters.size() % 2 == 0) {
    Log(LogLevel::kWarning, std::to_string(raters.size()) +
                             " raters configured; an odd count avoids majority ties");
  }
  const auto mode = GenerationModeFor(setting);
  std::vector<JudgeTask> tasks;
  for (const auto& q : queries) {
    const SampledContext* ctx = nullptr;
    if (RequiresContext(setting)) {
      auto it = contexts.find(q.id);
      if (it == contexts.end()) throw Error(ErrorCode::kMissingContext, q.id);
      ctx = &it->second;
    }
    const auto& a = RequireGeneration(generations, q.id, pair.candidate_a, mode);
    const auto& b = RequireGeneration(generations, q.id, pair.candidate_b, mode);
    for (const auto& r : raters) tasks.push_back(MakeJudgeTask(q, setting, a, b, ctx, r, seed));
  }
  JudgeBatteryResult out;
  out.records = ParallelMap(tasks.size(), models.gateway.max_concurrency(),
                            [&](std::size_t i) { return JudgePair(tasks[i], models); });
  std::stable_sort(out.records.begin(), out.records.end(), [](const auto& l, const auto& r) {
    return std::tie(l.task_id, l.rater_id) < std::tie(r.task_id, r.rater_id);
  });
  for (const auto& r : out.records) {
    if (r.raw_verdict == RawVerdict::kUnparsed) ++out.unparsed;
  }
  return out;
}

void Validate(const ConstraintCount& count) {
  if (count.satisfied < 0) {
    throw Error(ErrorCode::kValidationError, "negative constraint count for " + count.query_id);
  }
  if (count.model_id != count.candidate_a && count.model_id != count.candidate_b) {
    throw Error(ErrorCode::kValidationError,
                "constraint count model " + count.model_id + " is not a candidate");
  }
}

void to_json(Json& j, const ConstraintCount& v) {
  j = Json{{"task_id", v.task_id},
           {"query_id", v.query_id},
           {"setting", EnumName(v.setting)},
           {"candidate_a", v.candidate_a},
           {"candidate_b", v.candidate_b},
           {"model_id", v.model_id},
           {"satisfied", v.satisfied},
           {"justification", v.justification}};
}

void from_json(const Json& j, ConstraintCount& v) {
  v.task_id = j.at("task_id").get<std::string>();
  v.query_id = j.at("query_id").get<std::string>();
  v.setting = ParseEnum<EvaluationSetting>(j.at("setting").get<std::string>());
  v.candidate_a = j.at("candidate_a").get<std::string>();
  v.candidate_b = j.at("candidate_b").get<std::string>();
  v.model_id = j.at("model_id").get<std::string>();
  v.satisfied = j.at("satisfied").get<int>();
  v.justification = j.value("justification", std::string());
}

ConstraintCount CountConstraints(const Query& query, const SampledContext& context,
                                 const GenerationRecord& response, const std::string& judge,
                                 ModelAccess models) {
  if (context.pairs.empty()) throw Error(ErrorCode::kPrecondition, "empty context");
  const auto rendered = RenderContext(context);
  const auto prompt = RenderTemplate(
      models.prompts.Get(PromptId::kCountConstraints),
      {{"[QUERY]", query.text}, {"[CONTEXT]", rendered}, {"[RESPONSE]", response.text}});
  const auto reply =
      models.gateway.Complete(models.gateway.MakeRequest(judge, prompt, kJudgeMaxTokens));
  ConstraintCount out;
  out.query_id = query.id;
  out.model_id = response.model_id;
  out.satisfied = ParseConstraintCount(reply.text, context.pairs.size());
  std::string_view text = Trim(reply.text);
  const auto newline = text.find('\n');
  out.justification = newline == std::string_view::npos
                          ? std::string()
                          : std::string(Trim(text.substr(newline + 1)));
  return out;
}

ConstraintBatteryResult CountConstraintsBattery(
    const std::vector<Query>& queries, const ModelPair& pair, EvaluationSetting setting,
    const std::vector<GenerationRecord>& generations,
    const std::map<std::string, SampledContext>& contexts, const std::string& judge,
    ModelAccess models) {
  Validate(pair);
  const auto mode = GenerationModeFor(setting);
  struct Work {
    const Query* query;
    const SampledContext* context;
    const GenerationRecord* response;
    std::string task_id;
  };
  std::vector<Work> work;
  for (const auto& q : queries) {
    auto it = contexts.find(q.id);
    if (it == contexts.end()) continue;
    const auto task_id = DeriveTaskId(q.id, pair.candidate_a, pair.candidate_b, setting,
                                      RequiresContext(setting) ? ContextDigest(it->second) : "");
    for (const auto* model : {&pair.candidate_a, &pair.candidate_b}) {
      work.push_back({&q, &it->second, &RequireGeneration(generations, q.id, *model, mode),
                      task_id});
    }
  }
  struct Outcome {
    std::optional<ConstraintCount> count;
    ErrorCode failure = ErrorCode::kParseFailure;
  };
  auto results = ParallelMap(work.size(), models.gateway.max_concurrency(), [&](std::size_t i) {
    Outcome outcome;
    try {
      auto c = CountConstraints(*work[i].query, *work[i].context, *work[i].response, judge,
                                models);
      c.task_id = work[i].task_id;
      c.setting = setting;
      c.candidate_a = pair.candidate_a;
      c.candidate_b = pair.candidate_b;
      outcome.count = std::move(c);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kParseFailure && e.code() != ErrorCode::kOutOfRange) throw;
      Log(LogLevel::kWarning, e.what());
      outcome.failure = e.code();
    }
    return outcome;
  });
  ConstraintBatteryResult out;
  for (auto& r : results) {
    if (r.count) {
      out.counts.push_back(std::move(*r.count));
    } else if (r.failure == ErrorCode::kOutOfRange) {
      ++out.out_of_range;
    } else {
      ++out.parse_failures;
    }
  }
  return out;
}

std::string RenderRatingPrompt(const Query& query, const FollowUpQA& followup,
                               const std::string& response, const PromptCatalog& prompts) {
  std::string format = "\"**output: {";
  for (std::size_t i = 0; i < followup.answer_choices.size(); ++i) {
    if (i > 0) format += ", ";
    format += "\"" + followup.answer_choices[i] + "\": \"_\"";
  }
  format += "}**\"";
  const auto context =
      "Q: " + followup.question + " A: " + RenderChoiceList(followup.answer_choices);
  return RenderTemplate(prompts.Get(PromptId::kRateRelevance), {{"[OUTPUT_FORMAT]", format},
                                                                {"[QUERY]", query.text},
                                                                {"[CONTEXT]", context},
                                                                {"[RESPONSE]", response}});
}

std::vector<RelevanceRating> RateRelevance(const Query& query, const std::string& attribute,
                                           const FollowUpQA& followup,
                                           const std::string& response, ResponseMode mode,
                                           const std::string& judge, ModelAccess models) {
  if (followup.answer_choices.size() < 2) {
    throw Error(ErrorCode::kPrecondition, "followup needs at least two choices");
  }
  const auto reply = models.gateway.Complete(models.gateway.MakeRequest(
      judge, RenderRatingPrompt(query, followup, response, models.prompts), kJudgeMaxTokens));
  const auto parsed = ParseRatings(reply.text, followup.answer_choices);
  std::vector<RelevanceRating> out;
  for (const auto& choice : followup.answer_choices) {
    out.push_back(RelevanceRating{query.id, attribute, choice, mode, parsed.at(choice)});
  }
  return out;
}

JustificationClass ClassifyJustification(const std::string& text, const std::string& judge,
                                         ModelAccess models) {
  if (Trim(text).empty()) return JustificationClass::kUnknown;
  const auto prompt = RenderTemplate(models.prompts.Get(PromptId::kClassifyJustification),
                                     {{"[JUSTIFICATION]", text}});
  const auto reply =
      models.gateway.Complete(models.gateway.MakeRequest(judge, prompt, kJudgeMaxTokens));
  return ParseJustificationClass(reply.text);
}

void to_json(Json& j, const JustificationLabel& v) {
  j = Json{{"task_id", v.task_id},
           {"rater_id", v.rater_id},
           {"rater_kind", EnumName(v.rater_kind)},
           {"setting", EnumName(v.setting)},
           {"justification_class", EnumName(v.justification_class)}};
}

void from_json(const Json& j, JustificationLabel& v) {
  v.task_id = j.at("task_id").get<std::string>();
  v.rater_id = j.at("rater_id").get<std::string>();
  v.rater_kind = ParseEnum<RaterKind>(j.at("rater_kind").get<std::string>());
  v.setting = ParseEnum<EvaluationSetting>(j.at("setting").get<std::string>());
  v.justification_class =
      ParseEnum<JustificationClass>(j.at("justification_class").get<std::string>());
}

}  // namespace ctxeval
