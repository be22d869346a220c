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

#include <gtest/gtest.h>

#include "ctxeval/context/parsing.h"
#include "testing/util.h"

namespace ctxeval {
namespace {

using testing::MockModels;

const Query kQuery{"q1", "best team in the football league", "test", {}};

const char* kExampleQas =
    "Yes\nContext: Q: Which league are you referring to? A: [\"English Premier League\", "
    "\"La Liga\", \"Bundesliga\", \"Italian Serie A\", \"MLS\", \"UEFA\"]\n"
    "Q: How do you define \"best\"? A: [\"Most recent wins\", \"Number of championships won\", "
    "\"Goal difference\", \"Squad strength\"]";

TEST(ClassifyQueryTypes, WorkedExamples) {
  MockScript script;
  // The prompt's own examples include the first query, so the second rule goes first.
  script.AddContains({"Query: What is the capital of France?\nQuery Types:"}, R"(["Closed-ended"])");
  script.AddContains({"Query: best team in the league\nQuery Types:"},
                     R"(["Incomplete", "Subjective", "Closed-ended"])");
  MockModels models(std::move(script), {"c"});
  EXPECT_EQ(ClassifyQueryTypes(Query{"a", "best team in the league", "", {}}, "c", models.access()),
            (QueryTypeSet{QueryType::kIncomplete, QueryType::kSubjective, QueryType::kClosedEnded}));
  EXPECT_EQ(
      ClassifyQueryTypes(Query{"b", "What is the capital of France?", "", {}}, "c", models.access()),
      (QueryTypeSet{QueryType::kClosedEnded}));
}

TEST(ClassifyQueryTypes, EmptyListIsParseFailure) {
  MockModels models(MockScript().SetDefault("[]"), {"c"});
  try {
    ClassifyQueryTypes(kQuery, "c", models.access());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseFailure);
  }
}

TEST(GenerateFollowups, ExampleQa) {
  MockModels models(MockScript().SetDefault(kExampleQas), {"g1", "g2"});
  const auto r = GenerateFollowups(kQuery, {"g1", "g2"}, 1, models.access());
  EXPECT_TRUE(r.decision.needs_context);
  ASSERT_TRUE(r.spec.has_value());
  EXPECT_EQ(r.spec->followups[0].question, "Which league are you referring to?");
  EXPECT_EQ(r.spec->followups[0].answer_choices,
            (std::vector<std::string>{"English Premier League", "La Liga", "Bundesliga",
                                      "Italian Serie A", "MLS", "UEFA"}));
}

TEST(GenerateFollowups, UnanimityRequired) {
  MockScript script;
  script.AddContains({"Need for Context:"}, "No", "g3");
  script.SetDefault(kExampleQas);
  MockModels models(std::move(script), {"g1", "g2", "g3"});
  const auto r = GenerateFollowups(kQuery, {"g1", "g2", "g3"}, 1, models.access());
  EXPECT_FALSE(r.decision.needs_context);
  EXPECT_FALSE(r.spec.has_value());
  ASSERT_EQ(r.decision.verdicts.size(), 3u);
  EXPECT_FALSE(r.decision.verdicts[2].second);
}

TEST(GenerateFollowups, CapsAtTen) {
  std::string reply = "Yes\nContext: ";
  for (int i = 0; i < 12; ++i) reply += "Q: Question " + std::to_string(i) + "? A: [\"a\", \"b\"]\n";
  MockModels models(MockScript().SetDefault(reply), {"g"});
  const auto r = GenerateFollowups(kQuery, {"g"}, 1, models.access());
  ASSERT_TRUE(r.spec.has_value());
  ASSERT_EQ(r.spec->followups.size(), 10u);
  EXPECT_EQ(r.spec->followups[9].question, "Question 9?");
  EXPECT_FALSE(r.warnings.empty());
}

TEST(GenerateFollowups, NothingParsesIsGenerationFailed) {
  MockModels models(MockScript().SetDefault("I cannot help."), {"g"});
  try {
    GenerateFollowups(kQuery, {"g"}, 1, models.access());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGenerationFailed);
  }
}

TEST(GenerateFollowups, SourceChoiceIsSeeded) {
  MockScript script;
  script.AddContains({"Need for Context:"}, "Yes\nContext: Q: From one? A: [\"a\", \"b\"]", "g1");
  script.AddContains({"Need for Context:"}, "Yes\nContext: Q: From two? A: [\"a\", \"b\"]", "g2");
  MockModels models(std::move(script), {"g1", "g2"});
  std::set<std::string> sources;
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    const auto a = GenerateFollowups(kQuery, {"g1", "g2"}, seed, models.access());
    const auto b = GenerateFollowups(kQuery, {"g1", "g2"}, seed, models.access());
    EXPECT_EQ(a.source_generator, b.source_generator);
    sources.insert(a.source_generator);
  }
  EXPECT_EQ(sources.size(), 2u);
}

ContextSpec ThreeFollowups() {
  return ContextSpec{"q1",
                     {FollowUpQA{"F1?", {"a", "b"}, {}}, FollowUpQA{"F2?", {"a", "b"}, {}},
                      FollowUpQA{"F3?", {"a", "b"}, {}}}};
}

TEST(JuryValidate, UnanimityRule) {
  MockScript script;
  script.AddContains({"Follow-up Questions:"}, R"(**output: {"1": "Yes", "2": "No", "3": "Yes"}**)",
                     "u2");
  script.SetDefault(R"(**output: {"1": "Yes", "2": "Yes", "3": "Yes"}**)");
  MockModels models(std::move(script), {"u1", "u2", "u3"});
  const auto r = JuryValidate(kQuery, ThreeFollowups(), {"u1", "u2", "u3"}, models.access());
  ASSERT_EQ(r.retained.followups.size(), 2u);
  EXPECT_EQ(r.retained.followups[0].question, "F1?");
  EXPECT_EQ(r.retained.followups[1].question, "F3?");
  for (const auto& f : r.retained.followups) {
    ASSERT_TRUE(f.jury_votes.has_value());
    EXPECT_EQ(f.jury_votes->size(), 3u);
    for (const auto& v : *f.jury_votes) EXPECT_TRUE(v.vote);
  }
  EXPECT_EQ(r.reviewed.size(), 3u);
}

TEST(JuryValidate, MissingLabelIsNegative) {
  MockModels models(MockScript().SetDefault(R"(**output: {"1": "Yes", "3": "Yes"}**)"), {"u1"});
  const auto r = JuryValidate(kQuery, ThreeFollowups(), {"u1"}, models.access());
  EXPECT_EQ(r.retained.followups.size(), 2u);
}

TEST(JuryValidate, UnparseableJurorCountsAsNo) {
  MockScript script;
  script.AddContains({"Follow-up Questions:"}, "no idea", "u2");
  script.SetDefault(R"(**output: {"1": "Yes", "2": "Yes", "3": "Yes"}**)");
  MockModels models(std::move(script), {"u1", "u2"});
  try {
    JuryValidate(kQuery, ThreeFollowups(), {"u1", "u2"}, models.access());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyContext);
  }
}

}  // namespace
}  // namespace ctxeval
