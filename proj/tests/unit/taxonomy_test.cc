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

#include "ctxeval/taxonomy/attributes.h"

#include <gtest/gtest.h>

#include <fstream>

#include "testing/util.h"

namespace ctxeval {
namespace {

using testing::MockModels;

TEST(BuiltinAttributes, Table) {
  const auto& all = BuiltinAttributes();
  EXPECT_EQ(all.size(), 12u);
  EXPECT_NO_THROW(ValidateAttributes(all));
  const auto& expertise = FindAttribute(all, "User Expertise");
  EXPECT_EQ(expertise.followup.question, "What is your level of expertise on this topic?");
  EXPECT_EQ(expertise.followup.answer_choices.size(), 5u);
  EXPECT_EQ(expertise.followup.answer_choices.back(), "Expert");
  EXPECT_EQ(FindAttribute(all, "Age Group").followup.answer_choices,
            (std::vector<std::string>{"Children", "Teenagers", "Young adults", "Middle-aged adults",
                                      "Seniors"}));
}

TEST(FindAttribute, IgnoresCaseAndSpacing) {
  const auto& all = BuiltinAttributes();
  EXPECT_EQ(FindAttribute(all, "geographical/regional context").name,
            FindAttribute(all, "Geographical / Regional Context").name);
  try {
    FindAttribute(all, "Shoe Size");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidationError);
  }
}

TEST(LoadAttributes, RoundTrip) {
  testing::TempDir dir;
  const auto path = dir.path() / "attrs.json";
  std::ofstream(path) << Json(BuiltinAttributes()).dump();
  EXPECT_EQ(LoadAttributes(path), BuiltinAttributes());
}

TEST(ValidateAttributes, RejectsDuplicates) {
  auto attrs = BuiltinAttributes();
  attrs.push_back(attrs.front());
  EXPECT_THROW(ValidateAttributes(attrs), Error);
}

TEST(FilterQueries, ConjunctionRule) {
  MockScript script;
  script.AddContains({"Query: What is distillation in machine learning?"},
                     R"({"1": "Yes", "2": "Yes", "3": "Yes"})");
  script.AddContains({"Query: I am a professor, explain distillation"},
                     R"({"1": "Yes", "2": "No", "3": "Yes"})");
  script.SetDefault("unsure");
  MockModels models(std::move(script), {"k"});
  const std::vector<Query> queries = {
      {"a", "What is distillation in machine learning?", "t", {}},
      {"b", "I am a professor, explain distillation", "t", {}},
      {"c", "garbled", "t", {}}};
  const auto r = FilterQueriesForAttribute(queries, FindAttribute(BuiltinAttributes(), "User Expertise"),
                                           "k", kDefaultFilterCap, 1, models.access());
  ASSERT_EQ(r.retained.size(), 1u);
  EXPECT_EQ(r.retained[0].id, "a");
  EXPECT_EQ(r.passed, 1);
  EXPECT_EQ(r.rejected, 1);
  EXPECT_EQ(r.parse_failures, 1);
}

TEST(FilterQueries, CapIsSeeded) {
  MockModels models(MockScript().SetDefault(R"({"1": "Yes", "2": "Yes", "3": "Yes"})"), {"k"});
  std::vector<Query> queries;
  for (int i = 0; i < 5; ++i) queries.push_back({"q" + std::to_string(i), "Query " + std::to_string(i), "t", {}});
  const auto& attr = FindAttribute(BuiltinAttributes(), "Age Group");
  const auto a = FilterQueriesForAttribute(queries, attr, "k", 2, 9, models.access());
  const auto b = FilterQueriesForAttribute(queries, attr, "k", 2, 9, models.access());
  ASSERT_EQ(a.retained.size(), 2u);
  EXPECT_EQ(a.retained, b.retained);
  EXPECT_LT(a.retained[0].id, a.retained[1].id);
  EXPECT_EQ(a.passed, 5);
}

}  // namespace
}  // namespace ctxeval
