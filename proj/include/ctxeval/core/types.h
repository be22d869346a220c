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

#ifndef CTXEVAL_CORE_TYPES_H_
#define CTXEVAL_CORE_TYPES_H_

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ctxeval/core/error.h"

namespace ctxeval {

// Underspecification labels. A query may carry several at once.
enum class QueryType { kIncomplete, kAmbiguous, kSubjective, kOpenEnded, kClosedEnded };
using QueryTypeSet = std::set<QueryType>;

enum class EvaluationSetting { kNoCtxGenNoCtxEval, kNoCtxGenCtxEval, kCtxGenCtxEval };
enum class GenerationMode { kContextAgnostic, kContextAware };
enum class RaterKind { kAutorater, kHuman };
enum class Position { kA, kB };
enum class RawVerdict { kResponse1, kResponse2, kTie, kUnparsed };
enum class Verdict { kA, kB, kTie, kInvalid };
enum class ResponseMode { kDefault, kAdapted };
enum class JustificationClass { kSurface, kContent, kUnknown };

template <typename E>
struct EnumNames;

#define CTXEVAL_ENUM_NAMES(E, N, ...)                                      \
  template <>                                                              \
  struct EnumNames<E> {                                                    \
    static constexpr std::array<std::pair<E, std::string_view>, N> kNames{ \
        {__VA_ARGS__}};                                                    \
  }

CTXEVAL_ENUM_NAMES(QueryType, 5, {QueryType::kIncomplete, "Incomplete"},
                   {QueryType::kAmbiguous, "Ambiguous"},
                   {QueryType::kSubjective, "Subjective"},
                   {QueryType::kOpenEnded, "OpenEnded"},
                   {QueryType::kClosedEnded, "ClosedEnded"});
CTXEVAL_ENUM_NAMES(EvaluationSetting, 3,
                   {EvaluationSetting::kNoCtxGenNoCtxEval, "NoCtxGen_NoCtxEval"},
                   {EvaluationSetting::kNoCtxGenCtxEval, "NoCtxGen_CtxEval"},
                   {EvaluationSetting::kCtxGenCtxEval, "CtxGen_CtxEval"});
CTXEVAL_ENUM_NAMES(GenerationMode, 2,
                   {GenerationMode::kContextAgnostic, "ContextAgnostic"},
                   {GenerationMode::kContextAware, "ContextAware"});
CTXEVAL_ENUM_NAMES(RaterKind, 2, {RaterKind::kAutorater, "Autorater"},
                   {RaterKind::kHuman, "Human"});
CTXEVAL_ENUM_NAMES(Position, 2, {Position::kA, "A"}, {Position::kB, "B"});
CTXEVAL_ENUM_NAMES(RawVerdict, 4, {RawVerdict::kResponse1, "Response1"},
                   {RawVerdict::kResponse2, "Response2"},
                   {RawVerdict::kTie, "Tie"}, {RawVerdict::kUnparsed, "Unparsed"});
CTXEVAL_ENUM_NAMES(Verdict, 4, {Verdict::kA, "A"}, {Verdict::kB, "B"},
                   {Verdict::kTie, "Tie"}, {Verdict::kInvalid, "Invalid"});
CTXEVAL_ENUM_NAMES(ResponseMode, 2, {ResponseMode::kDefault, "Default"},
                   {ResponseMode::kAdapted, "Adapted"});
CTXEVAL_ENUM_NAMES(JustificationClass, 3,
                   {JustificationClass::kSurface, "Surface"},
                   {JustificationClass::kContent, "Content"},
                   {JustificationClass::kUnknown, "Unknown"});

#undef CTXEVAL_ENUM_NAMES

template <typename E>
std::string_view EnumName(E value) {
  for (const auto& [v, name] : EnumNames<E>::kNames) {
    if (v == value) return name;
  }
  return "?";
}

template <typename E>
E ParseEnum(std::string_view name) {
  for (const auto& [v, n] : EnumNames<E>::kNames) {
    if (n == name) return v;
  }
  throw Error(ErrorCode::kValidationError,
              "unknown enum value '" + std::string(name) + "'");
}

template <typename E>
constexpr auto AllEnumValues() {
  std::array<E, EnumNames<E>::kNames.size()> out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = EnumNames<E>::kNames[i].first;
  return out;
}

bool RequiresContext(EvaluationSetting setting);
GenerationMode GenerationModeFor(EvaluationSetting setting);

struct Query {
  std::string id;
  std::string text;
  std::string source;
  QueryTypeSet query_types;

  bool operator==(const Query&) const = default;
};

struct JuryVote {
  std::string juror_id;
  bool vote = false;

  bool operator==(const JuryVote&) const = default;
};

struct FollowUpQA {
  std::string question;
  std::vector<std::string> answer_choices;
  std::optional<std::vector<JuryVote>> jury_votes;

  bool operator==(const FollowUpQA&) const = default;
};

inline constexpr std::size_t kMaxFollowUps = 10;

struct ContextSpec {
  std::string query_id;
  std::vector<FollowUpQA> followups;

  bool operator==(const ContextSpec&) const = default;
};

struct QAPair {
  std::string question;
  std::string answer;

  bool operator==(const QAPair&) const = default;
};

// One internally consistent answer assignment for a ContextSpec.
struct SampledContext {
  std::string query_id;
  std::vector<QAPair> pairs;
  std::uint64_t seed = 0;

  bool operator==(const SampledContext&) const = default;
};

struct ProviderMeta {
  std::string request_digest;
  std::string timestamp;
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;

  bool operator==(const ProviderMeta&) const = default;
};

struct GenerationRecord {
  std::string query_id;
  std::string model_id;
  GenerationMode generation_mode = GenerationMode::kContextAgnostic;
  std::optional<std::string> context_digest;
  std::string text;
  ProviderMeta provider_meta;

  bool operator==(const GenerationRecord&) const = default;
};

// Per followup, whether candidate A and candidate B satisfied it.
struct ConstraintCheck {
  bool a = false;
  bool b = false;

  bool operator==(const ConstraintCheck&) const = default;
};

struct JudgmentRecord {
  std::string task_id;
  std::string query_id;
  EvaluationSetting setting = EvaluationSetting::kNoCtxGenNoCtxEval;
  std::string candidate_a;
  std::string candidate_b;
  std::string rater_id;
  RaterKind rater_kind = RaterKind::kAutorater;
  Position presented_first = Position::kA;
  RawVerdict raw_verdict = RawVerdict::kUnparsed;
  Verdict canonical_verdict = Verdict::kInvalid;
  std::string justification;
  std::optional<std::vector<ConstraintCheck>> constraint_checks;

  bool operator==(const JudgmentRecord&) const = default;
};

struct RelevanceRating {
  std::string query_id;
  std::string attribute;
  std::string attribute_value;
  ResponseMode response_mode = ResponseMode::kDefault;
  int rating = 0;

  bool operator==(const RelevanceRating&) const = default;
};

// Invariant checks. Each throws Error(kValidationError) on violation.
void Validate(const Query& query);
void Validate(const FollowUpQA& followup);
void Validate(const ContextSpec& spec);
void Validate(const SampledContext& context);
void Validate(const GenerationRecord& record);
void Validate(const JudgmentRecord& record);
void Validate(const RelevanceRating& rating);

// Checks that `context` is a consistent draw from `spec`.
void ValidateAgainst(const SampledContext& context, const ContextSpec& spec);

}  // namespace ctxeval

#endif  // CTXEVAL_CORE_TYPES_H_
