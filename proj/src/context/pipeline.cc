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

#include "ctxeval/context/pipeline.h"

#include "ctxeval/context/parsing.h"
#include "ctxeval/core/rng.h"
#include "ctxeval/core/strings.h"
#include "ctxeval/core/log.h"

namespace ctxeval {

QueryTypeSet ClassifyQueryTypes(const Query& query, const std::string& judge_model,
                                ModelAccess models) {
  const auto prompt = RenderTemplate(models.prompts.Get(PromptId::kClassifyQueryTypes),
                                     {{"[QUERY]", query.text}});
  const auto reply =
      models.gateway.Complete(models.gateway.MakeRequest(judge_model, prompt, kJudgeMaxTokens));
  auto types = ParseQueryTypeList(reply.text);
  if (!types) {
    throw Error(ErrorCode::kParseFailure, "no query-type list for " + query.id);
  }
  return *types;
}

FollowupResult GenerateFollowups(const Query& query,
                                 const std::vector<std::string>& generator_models,
                                 std::uint64_t seed, ModelAccess models) {
  if (generator_models.empty()) {
    throw Error(ErrorCode::kPrecondition, "at least one generator model is required");
  }
  const auto prompt = RenderTemplate(models.prompts.Get(PromptId::kGenerateFollowups),
                                     {{"[QUERY]", query.text}});
  FollowupResult out;
  out.decision.query_id = query.id;
  out.decision.needs_context = true;

  std::vector<std::pair<std::string, std::vector<FollowUpQA>>> candidates;
  int parsed = 0;
  for (const auto& model : generator_models) {
    const auto reply =
        models.gateway.Complete(models.gateway.MakeRequest(model, prompt, kGenerationMaxTokens));
    auto parsed_reply = ParseFollowupOutput(reply.text);
    bool yes = false;
    if (parsed_reply.needs_context) {
      ++parsed;
      yes = *parsed_reply.needs_context;
    } else {
      out.warnings.push_back(model + ": unparseable need-for-context verdict on " + query.id);
    }
    for (const auto& q : parsed_reply.dropped) {
      out.warnings.push_back(model + ": dropped malformed followup '" + q + "'");
    }
    out.decision.verdicts.emplace_back(model, yes);
    out.decision.needs_context = out.decision.needs_context && yes;
    if (yes && !parsed_reply.followups.empty()) {
      candidates.emplace_back(model, std::move(parsed_reply.followups));
    }
  }
  if (parsed == 0) {
    throw Error(ErrorCode::kGenerationFailed, "no generator reply parsed for " + query.id);
  }
  if (!out.decision.needs_context) return out;
  if (candidates.empty()) {
    throw Error(ErrorCode::kGenerationFailed,
                "all generators asked for context on " + query.id + " but gave no usable QA");
  }

  auto rng = StreamFor(seed, {"followup_source", query.id});
  auto& [source, followups] = candidates[rng.Below(candidates.size())];
  if (followups.size() > kMaxFollowUps) {
    out.warnings.push_back(source + ": " + std::to_string(followups.size()) +
                           " followups for " + query.id + ", keeping the first 10");
    followups.resize(kMaxFollowUps);
  }
  out.source_generator = source;
  out.spec = ContextSpec{query.id, std::move(followups)};
  return out;
}

JuryResult JuryValidate(const Query& query, const ContextSpec& spec,
                        const std::vector<std::string>& juror_models, ModelAccess models) {
  if (juror_models.empty()) throw Error(ErrorCode::kPrecondition, "at least one juror is required");
  std::string listing;
  for (std::size_t i = 0; i < spec.followups.size(); ++i) {
    const auto& f = spec.followups[i];
    if (i) listing.push_back('\n');
    listing += std::to_string(i + 1) + ". " + f.question + " A: " + RenderChoiceList(f.answer_choices);
  }
  const auto prompt = RenderTemplate(models.prompts.Get(PromptId::kJuryImportance),
                                     {{"[QUERY]", query.text}, {"[FOLLOWUPS]", listing}});

  JuryResult out;
  out.reviewed = spec.followups;
  for (auto& f : out.reviewed) f.jury_votes.emplace();
  for (const auto& juror : juror_models) {
    const auto reply =
        models.gateway.Complete(models.gateway.MakeRequest(juror, prompt, kJudgeMaxTokens));
    const auto labels = ParseYesNoObject(reply.text);
    if (!labels) {
      ++out.juror_parse_failures;
      Log(LogLevel::kWarning, "juror " + juror + " reply unparseable for " + query.id +
                                  "; counting every followup as rejected");
    }
    for (std::size_t i = 0; i < out.reviewed.size(); ++i) {
      bool vote = false;
      if (labels) {
        auto it = labels->find(std::to_string(i + 1));
        if (it != labels->end()) {
          vote = it->second;
        } else {
          ++out.juror_parse_failures;
          Log(LogLevel::kWarning, "juror " + juror + " gave no label for followup " +
                                      std::to_string(i + 1) + " of " + query.id);
        }
      }
      out.reviewed[i].jury_votes->push_back(JuryVote{juror, vote});
    }
  }
  out.retained.query_id = spec.query_id;
  for (const auto& f : out.reviewed) {
    bool unanimous = true;
    for (const auto& v : *f.jury_votes) unanimous = unanimous && v.vote;
    if (unanimous) out.retained.followups.push_back(f);
  }
  if (out.retained.followups.empty()) {
    throw Error(ErrorCode::kEmptyContext, "jury rejected every followup for " + query.id);
  }
  return out;
}

}  // namespace ctxeval
