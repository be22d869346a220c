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

#include <gtest/gtest.h>

#include "ctxeval/core/context.h"
#include "ctxeval/core/ids.h"
#include "ctxeval/generation/generation.h"
#include "testing/util.h"

namespace ctxeval {
namespace {

using testing::MockModels;

const TimestampFn kEpoch = [] { return std::string("1970-01-01T00:00:00Z"); };

std::vector<Query> Queries(int n) {
  std::vector<Query> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(Query{"q" + std::to_string(i), "Query number " + std::to_string(i), "t", {}});
  }
  return out;
}

SampledContext ContextFor(const std::string& qid) {
  return SampledContext{qid, {{"Budget?", "Low"}, {"Length?", "Short"}}, 1};
}

MockScript CandidateScript() {
  MockScript script;
  script.AddContains({"Context:"}, "ALPHA aware", "alpha");
  script.AddContains({}, "ALPHA plain", "alpha");
  script.AddContains({"Context:"}, "BETA aware", "beta");
  script.AddContains({}, "BETA plain", "beta");
  return script;
}

TEST(Generation, ModeMustMatchContext) {
  MockModels models(CandidateScript(), {"alpha"});
  const auto q = Queries(1)[0];
  const auto ctx = ContextFor(q.id);
  try {
    GenerateResponse(q, "alpha", GenerationMode::kContextAgnostic, &ctx, models.access(), kEpoch);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPrecondition);
  }
  EXPECT_THROW(
      GenerateResponse(q, "alpha", GenerationMode::kContextAware, nullptr, models.access(), kEpoch),
      Error);
}

TEST(Generation, RecordFields) {
  MockModels models(CandidateScript(), {"alpha"});
  const auto q = Queries(1)[0];
  const auto ctx = ContextFor(q.id);
  const auto plain =
      GenerateResponse(q, "alpha", GenerationMode::kContextAgnostic, nullptr, models.access(), kEpoch);
  EXPECT_EQ(plain.text, "ALPHA plain");
  EXPECT_FALSE(plain.context_digest.has_value());
  const auto aware =
      GenerateResponse(q, "alpha", GenerationMode::kContextAware, &ctx, models.access(), kEpoch);
  EXPECT_EQ(aware.text, "ALPHA aware");
  EXPECT_EQ(aware.context_digest, ContextDigest(ctx));
  EXPECT_EQ(GenerateResponse(q, "alpha", GenerationMode::kContextAware, &ctx, models.access(), kEpoch),
            aware);
}

TEST(Generation, PromptShapes) {
  const auto q = Queries(1)[0];
  const auto ctx = ContextFor(q.id);
  EXPECT_EQ(RenderGenerationPrompt(q, nullptr, PromptCatalog::Builtin()), q.text);
  EXPECT_EQ(RenderGenerationPrompt(q, &ctx, PromptCatalog::Builtin()),
            q.text + "\n\nContext:\nQ: Budget?\nA: Low\nQ: Length?\nA: Short");
}

TEST(Generation, EmptyReply) {
  MockModels models(MockScript().SetDefault("   "), {"alpha"});
  try {
    GenerateResponse(Queries(1)[0], "alpha", GenerationMode::kContextAgnostic, nullptr,
                     models.access(), kEpoch);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyResponse);
  }
}

const ModelPair kPair{"alpha", "beta", "alpha vs beta"};

TEST(GeneratePairBattery, Cardinality) {
  MockModels models(CandidateScript(), {"alpha", "beta"});
  const auto out = GeneratePairBattery(Queries(3), kPair, EvaluationSetting::kNoCtxGenNoCtxEval,
                                       {}, models.access(), kEpoch);
  EXPECT_EQ(out.size(), 6u);
}

TEST(GeneratePairBattery, MissingContext) {
  MockModels models(CandidateScript(), {"alpha", "beta"});
  try {
    GeneratePairBattery(Queries(2), kPair, EvaluationSetting::kCtxGenCtxEval,
                        {{"q0", ContextFor("q0")}}, models.access(), kEpoch);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingContext);
  }
}

TEST(GeneratePairBattery, SharedContext) {
  MockModels models(CandidateScript(), {"alpha", "beta"});
  const auto out = GeneratePairBattery(Queries(1), kPair, EvaluationSetting::kCtxGenCtxEval,
                                       {{"q0", ContextFor("q0")}}, models.access(), kEpoch);
  ASSERT_EQ(out.size(), 2u);
  ASSERT_TRUE(out[0].context_digest.has_value());
  EXPECT_EQ(out[0].context_digest, out[1].context_digest);
}

GenerationRecord Gen(const std::string& qid, const std::string& model, const std::string& text) {
  return GenerationRecord{qid, model, GenerationMode::kContextAgnostic, std::nullopt, text, {}};
}

JudgeTask TaskFor(int i, const std::string& rater, std::uint64_t seed) {
  const Query q{"q" + std::to_string(i), "Query " + std::to_string(i), "t", {}};
  return MakeJudgeTask(q, EvaluationSetting::kNoCtxGenNoCtxEval, Gen(q.id, "alpha", "ALPHA text"),
                       Gen(q.id, "beta", "BETA text"), nullptr, rater, seed);
}

TEST(JudgePair, CanonicalizesPosition) {
  MockModels models(
      MockScript().SetDefault(
          R"(**output: {"judgement": "Response 2"}** Response 2 better addresses the context)"),
      {"j"});
  auto task = TaskFor(0, "j", 1);
  task.presented_first = Position::kB;
  const auto r = JudgePair(task, models.access());
  EXPECT_EQ(r.raw_verdict, RawVerdict::kResponse2);
  EXPECT_EQ(r.canonical_verdict, Verdict::kA);
  EXPECT_EQ(r.justification, "Response 2 better addresses the context");
}

TEST(JudgePair, TieAndUnparsed) {
  MockScript script;
  script.AddContains({"Query 0\n"}, R"(**output: {"judgement": "Tie"}**)");
  script.SetDefault("I prefer the first one");
  MockModels models(std::move(script), {"j"});
  EXPECT_EQ(JudgePair(TaskFor(0, "j", 1), models.access()).canonical_verdict, Verdict::kTie);
  const auto bad = JudgePair(TaskFor(1, "j", 1), models.access());
  EXPECT_EQ(bad.raw_verdict, RawVerdict::kUnparsed);
  EXPECT_EQ(bad.canonical_verdict, Verdict::kInvalid);
}

TEST(JudgePair, PromptPresentsInOrder) {
  auto task = TaskFor(0, "j", 1);
  task.presented_first = Position::kB;
  const auto prompt = RenderJudgePrompt(task, PromptCatalog::Builtin());
  EXPECT_NE(prompt.find("Response 1: BETA text\nResponse 2: ALPHA text"), std::string::npos);
  EXPECT_EQ(prompt.find("alpha"), std::string::npos);
}

TEST(JudgePair, SelfPreferenceGuard) {
  auto task = TaskFor(0, "alpha", 1);
  try {
    ValidateTask(task);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSelfPreference);
  }
}

TEST(OrderDebias, AlwaysFirstJudgeIsBalanced) {
  MockModels models(MockScript().SetDefault(R"(**output: {"judgement": "Response 1"}**)"), {"j"},
                    8);
  int a = 0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    a += JudgePair(TaskFor(i, "j", 2024), models.access()).canonical_verdict == Verdict::kA;
  }
  EXPECT_NEAR(a / static_cast<double>(n), 0.5, 0.047);
}

TEST(OrderDebias, TextKeyedJudgeIsOrderInvariant) {
  MockScript script;
  // Prefers alpha on even queries and beta on odd ones, wherever it appears.
  script.AddHandler([](const ChatRequest& r) -> std::optional<std::string> {
    const auto q = r.prompt.find("Query: Query ");
    const int i = std::stoi(r.prompt.substr(q + 13));
    const bool first_is_alpha = r.prompt.find("Response 1: ALPHA") != std::string::npos;
    const bool want_alpha = i % 2 == 0;
    return std::string(R"(**output: {"judgement": ")") +
           (want_alpha == first_is_alpha ? "Response 1" : "Response 2") + "\"}**";
  });
  MockModels models(std::move(script), {"j"});
  for (int i = 0; i < 200; ++i) {
    auto task = TaskFor(i, "j", 5);
    task.presented_first = Position::kA;
    const auto first = JudgePair(task, models.access()).canonical_verdict;
    task.presented_first = Position::kB;
    const auto second = JudgePair(task, models.access()).canonical_verdict;
    EXPECT_EQ(first, second);
    EXPECT_EQ(first, i % 2 == 0 ? Verdict::kA : Verdict::kB);
  }
}

TEST(JudgeBattery, RefusesCandidateRater) {
  MockModels models(MockScript().SetDefault("x"), {"alpha", "beta", "j"});
  const auto queries = Queries(1);
  std::vector<GenerationRecord> gens = {Gen("q0", "alpha", "A"), Gen("q0", "beta", "B")};
  try {
    JudgeBattery(queries, kPair, EvaluationSetting::kNoCtxGenNoCtxEval, gens, {}, {"j", "beta"}, 1,
                 models.access());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSelfPreference);
  }
  EXPECT_EQ(models.backend->calls(), 0);
}

TEST(JudgeBattery, RecordsPerRater) {
  MockModels models(MockScript().SetDefault(R"(**output: {"judgement": "Tie"}**)"),
                    {"j1", "j2", "j3"});
  const auto queries = Queries(4);
  std::vector<GenerationRecord> gens;
  for (const auto& q : queries) {
    gens.push_back(Gen(q.id, "alpha", "A"));
    gens.push_back(Gen(q.id, "beta", "B"));
  }
  const auto r = JudgeBattery(queries, kPair, EvaluationSetting::kNoCtxGenNoCtxEval, gens, {},
                              {"j1", "j2", "j3"}, 1, models.access());
  EXPECT_EQ(r.records.size(), 12u);
  EXPECT_EQ(r.unparsed, 0);
  for (const auto& rec : r.records) {
    EXPECT_EQ(rec.task_id, DeriveTaskId(rec.query_id, "alpha", "beta",
                                        EvaluationSetting::kNoCtxGenNoCtxEval, ""));
  }
}

TEST(CountConstraints, ParsesCount) {
  MockScript script;
  script.AddContains({"Response: ALPHA"}, "3\nThe response covers budget, length and audience.");
  script.AddContains({"Response: BETA"}, "12");
  script.SetDefault("0\nnone addressed");
  MockModels models(std::move(script), {"k"});
  const Query q{"q0", "Query 0", "t", {}};
  SampledContext ctx{"q0", {}, 0};
  for (int i = 0; i < 9; ++i) ctx.pairs.push_back({"F" + std::to_string(i) + "?", "x"});
  auto rec = Gen("q0", "alpha", "ALPHA text");
  rec.generation_mode = GenerationMode::kContextAware;
  rec.context_digest = ContextDigest(ctx);
  const auto c = CountConstraints(q, ctx, rec, "k", models.access());
  EXPECT_EQ(c.satisfied, 3);
  EXPECT_EQ(c.justification, "The response covers budget, length and audience.");
  try {
    CountConstraints(q, ctx, Gen("q0", "beta", "BETA text"), "k", models.access());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
  }
  EXPECT_EQ(CountConstraints(q, ctx, Gen("q0", "gamma", "G"), "k", models.access()).satisfied, 0);
}

TEST(RateRelevance, OneRatingPerChoice) {
  MockModels models(
      MockScript().SetDefault(
          R"(**output: {"Complete beginner": 4, "Basic understanding": 5, "Intermediate": 4, "Advanced": 3, "Expert": 2}**)"),
      {"k"});
  const FollowUpQA followup{"What is your level of expertise on this topic?",
                            {"Complete beginner", "Basic understanding", "Intermediate",
                             "Advanced", "Expert"},
                            {}};
  const auto r = RateRelevance(Query{"q0", "What is distillation?", "t", {}}, "User Expertise",
                               followup, "text", ResponseMode::kDefault, "k", models.access());
  ASSERT_EQ(r.size(), 5u);
  EXPECT_EQ(r[0].attribute_value, "Complete beginner");
  EXPECT_EQ(r[1].rating, 5);
  EXPECT_EQ(r[4].rating, 2);
  EXPECT_EQ(r[4].attribute, "User Expertise");
}

TEST(RateRelevance, PromptListsChoices) {
  const FollowUpQA followup{"Age?", {"Kids", "Adults"}, {}};
  const auto prompt =
      RenderRatingPrompt(Query{"q", "Q text", "t", {}}, followup, "resp", PromptCatalog::Builtin());
  EXPECT_NE(prompt.find(R"("**output: {"Kids": "_", "Adults": "_"}**")"), std::string::npos);
  EXPECT_NE(prompt.find(R"(Context: Q: Age? A: ["Kids", "Adults"])"), std::string::npos);
}

TEST(ClassifyJustification, Cases) {
  MockScript script;
  script.AddContains({"more concise and better formatted"}, R"(**output: {"category": "Surface"}**)");
  script.AddContains({"dietary restriction"}, R"(**output: {"category": "Content"}**)");
  MockModels models(std::move(script), {"k"});
  EXPECT_EQ(ClassifyJustification("Response A is more concise and better formatted.", "k",
                                  models.access()),
            JustificationClass::kSurface);
  EXPECT_EQ(ClassifyJustification(
                "Response B correctly accounts for the user's stated dietary restriction.", "k",
                models.access()),
            JustificationClass::kContent);
  EXPECT_EQ(ClassifyJustification("", "k", models.access()), JustificationClass::kUnknown);
  EXPECT_EQ(models.backend->calls(), 2);
}

}  // namespace
}  // namespace ctxeval
