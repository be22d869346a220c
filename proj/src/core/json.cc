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

#include "ctxeval/core/json.h"

namespace ctxeval {
namespace {

template <typename E>
E EnumField(const Json& j, const char* key) {
  return ParseEnum<E>(j.at(key).get<std::string>());
}

template <typename T>
std::optional<T> OptionalField(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

template <typename T>
Json OptionalJson(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

void to_json(Json& j, const Query& v) {
  Json types = Json::array();
  for (auto t : v.query_types) types.push_back(EnumName(t));
  j = Json{{"id", v.id}, {"text", v.text}, {"source", v.source}, {"query_types", types}};
}

void from_json(const Json& j, Query& v) {
  v.id = j.value("id", std::string());
  v.text = j.at("text").get<std::string>();
  v.source = j.value("source", std::string());
  v.query_types.clear();
  if (auto it = j.find("query_types"); it != j.end() && !it->is_null()) {
    for (const auto& t : *it) v.query_types.insert(ParseEnum<QueryType>(t.get<std::string>()));
  }
}

void to_json(Json& j, const JuryVote& v) {
  j = Json{{"juror_id", v.juror_id}, {"vote", v.vote}};
}

void from_json(const Json& j, JuryVote& v) {
  v.juror_id = j.at("juror_id").get<std::string>();
  v.vote = j.at("vote").get<bool>();
}

void to_json(Json& j, const FollowUpQA& v) {
  j = Json{{"question", v.question},
           {"answer_choices", v.answer_choices},
           {"jury_votes", OptionalJson(v.jury_votes)}};
}

void from_json(const Json& j, FollowUpQA& v) {
  v.question = j.at("question").get<std::string>();
  v.answer_choices = j.at("answer_choices").get<std::vector<std::string>>();
  v.jury_votes = OptionalField<std::vector<JuryVote>>(j, "jury_votes");
}

void to_json(Json& j, const ContextSpec& v) {
  j = Json{{"query_id", v.query_id}, {"followups", v.followups}};
}

void from_json(const Json& j, ContextSpec& v) {
  v.query_id = j.at("query_id").get<std::string>();
  v.followups = j.at("followups").get<std::vector<FollowUpQA>>();
}

void to_json(Json& j, const QAPair& v) {
  j = Json{{"question", v.question}, {"answer", v.answer}};
}

void from_json(const Json& j, QAPair& v) {
  v.question = j.at("question").get<std::string>();
  v.answer = j.at("answer").get<std::string>();
}

void to_json(Json& j, const SampledContext& v) {
  j = Json{{"query_id", v.query_id}, {"pairs", v.pairs}, {"seed", v.seed}};
}

void from_json(const Json& j, SampledContext& v) {
  v.query_id = j.at("query_id").get<std::string>();
  v.pairs = j.at("pairs").get<std::vector<QAPair>>();
  v.seed = j.at("seed").get<std::uint64_t>();
}

void to_json(Json& j, const ProviderMeta& v) {
  j = Json{{"request_digest", v.request_digest},
           {"timestamp", v.timestamp},
           {"prompt_tokens", v.prompt_tokens},
           {"completion_tokens", v.completion_tokens}};
}

void from_json(const Json& j, ProviderMeta& v) {
  v.request_digest = j.value("request_digest", std::string());
  v.timestamp = j.value("timestamp", std::string());
  v.prompt_tokens = j.value("prompt_tokens", std::int64_t{0});
  v.completion_tokens = j.value("completion_tokens", std::int64_t{0});
}

void to_json(Json& j, const GenerationRecord& v) {
  j = Json{{"query_id", v.query_id},
           {"model_id", v.model_id},
           {"generation_mode", EnumName(v.generation_mode)},
           {"context_digest", OptionalJson(v.context_digest)},
           {"text", v.text},
           {"provider_meta", v.provider_meta}};
}

void from_json(const Json& j, GenerationRecord& v) {
  v.query_id = j.at("query_id").get<std::string>();
  v.model_id = j.at("model_id").get<std::string>();
  v.generation_mode = EnumField<GenerationMode>(j, "generation_mode");
  v.context_digest = OptionalField<std::string>(j, "context_digest");
  v.text = j.at("text").get<std::string>();
  v.provider_meta = j.value("provider_meta", Json::object()).get<ProviderMeta>();
}

void to_json(Json& j, const ConstraintCheck& v) {
  j = Json{{"a", v.a}, {"b", v.b}};
}

void from_json(const Json& j, ConstraintCheck& v) {
  v.a = j.at("a").get<bool>();
  v.b = j.at("b").get<bool>();
}

void to_json(Json& j, const JudgmentRecord& v) {
  j = Json{{"task_id", v.task_id},
           {"query_id", v.query_id},
           {"setting", EnumName(v.setting)},
           {"candidate_a", v.candidate_a},
           {"candidate_b", v.candidate_b},
           {"rater_id", v.rater_id},
           {"rater_kind", EnumName(v.rater_kind)},
           {"presented_first", EnumName(v.presented_first)},
           {"raw_verdict", EnumName(v.raw_verdict)},
           {"canonical_verdict", EnumName(v.canonical_verdict)},
           {"justification", v.justification},
           {"constraint_checks", OptionalJson(v.constraint_checks)}};
}

void from_json(const Json& j, JudgmentRecord& v) {
  v.task_id = j.at("task_id").get<std::string>();
  v.query_id = j.at("query_id").get<std::string>();
  v.setting = EnumField<EvaluationSetting>(j, "setting");
  v.candidate_a = j.at("candidate_a").get<std::string>();
  v.candidate_b = j.at("candidate_b").get<std::string>();
  v.rater_id = j.at("rater_id").get<std::string>();
  v.rater_kind = EnumField<RaterKind>(j, "rater_kind");
  v.presented_first = EnumField<Position>(j, "presented_first");
  v.raw_verdict = EnumField<RawVerdict>(j, "raw_verdict");
  v.canonical_verdict = EnumField<Verdict>(j, "canonical_verdict");
  v.justification = j.value("justification", std::string());
  v.constraint_checks = OptionalField<std::vector<ConstraintCheck>>(j, "constraint_checks");
}

void to_json(Json& j, const RelevanceRating& v) {
  j = Json{{"query_id", v.query_id},
           {"attribute", v.attribute},
           {"attribute_value", v.attribute_value},
           {"response_mode", EnumName(v.response_mode)},
           {"rating", v.rating}};
}

void from_json(const Json& j, RelevanceRating& v) {
  v.query_id = j.at("query_id").get<std::string>();
  v.attribute = j.at("attribute").get<std::string>();
  v.attribute_value = j.at("attribute_value").get<std::string>();
  v.response_mode = EnumField<ResponseMode>(j, "response_mode");
  v.rating = j.at("rating").get<int>();
}

std::string DumpLine(const Json& j) {
  return j.dump(-1, ' ', false, Json::error_handler_t::replace);
}

}  // namespace ctxeval
