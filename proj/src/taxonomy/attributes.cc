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

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <set>

#include "ctxeval/context/parsing.h"
#include "ctxeval/core/parallel.h"
#include "ctxeval/core/rng.h"
#include "ctxeval/core/strings.h"

namespace ctxeval {
namespace {

std::string Squash(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

ContextualAttribute Row(std::string name, std::string question,
                        std::vector<std::string> choices) {
  return ContextualAttribute{std::move(name),
                             FollowUpQA{std::move(question), std::move(choices), std::nullopt}};
}

enum class FilterOutcome { kKept, kRejected, kParseFailure };

}  // namespace

void to_json(Json& j, const ContextualAttribute& v) {
  j = Json{{"name", v.name},
           {"question", v.followup.question},
           {"answer_choices", v.followup.answer_choices}};
}

void from_json(const Json& j, ContextualAttribute& v) {
  v.name = j.at("name").get<std::string>();
  v.followup.question = j.at("question").get<std::string>();
  v.followup.answer_choices = j.at("answer_choices").get<std::vector<std::string>>();
  v.followup.jury_votes.reset();
}

const std::vector<ContextualAttribute>& BuiltinAttributes() {
  static const std::vector<ContextualAttribute> kAttributes = {
      Row("Level of Detail", "How much detail do you prefer in the response?",
          {"One-sentence answer", "Key points only", "Moderate detailed", "Extensive detail"}),
      Row("User Expertise", "What is your level of expertise on this topic?",
          {"Complete beginner", "Basic understanding", "Intermediate", "Advanced", "Expert"}),
      Row("Length", "What is your preferred length for the response?",
          {"One sentence", "2-3 sentences", "One paragraph (>3 sentences)",
           "Several paragraphs"}),
      Row("Format of response", "What format would you prefer the response to be in?",
          {"Bulleted list", "Numbered steps", "Paragraph text", "Table or chart"}),
      Row("Style", "What style of response do you prefer?",
          {"Formal", "Informal", "Conversational", "Academic", "Technical"}),
      Row("Intended Audience", "Who is the intended audience for this response?",
          {"General public", "Children", "Students", "Professionals / Experts"}),
      Row("Geographical / Regional Context",
          "What region or country should this response be based on?",
          {"North America", "Europe", "Asia", "Africa", "Latin America"}),
      Row("Cultural Context", "What cultural perspective should be considered in the response?",
          {"Western culture", "Eastern culture", "Indigenous culture",
           "Multicultural perspective"}),
      Row("Age Group", "Which age group should this response be relevant for?",
          {"Children", "Teenagers", "Young adults", "Middle-aged adults", "Seniors"}),
      Row("Economic Context", "What economic situation should this response be relevant for?",
          {"Low-income", "Middle-income", "High-income", "Budget-conscious"}),
      Row("Political Context", "What political context should this response consider?",
          {"Liberal", "Conservative", "Centrist", "Socialist"}),
      Row("Gender", "Should the response consider any specific gender perspective?",
          {"Male", "Female", "Non-binary", "Gender-neutral"}),
  };
  return kAttributes;
}

void ValidateAttributes(const std::vector<ContextualAttribute>& attributes) {
  std::set<std::string> names;
  for (const auto& a : attributes) {
    if (Trim(a.name).empty()) throw Error(ErrorCode::kValidationError, "attribute without name");
    if (!names.insert(Squash(a.name)).second) {
      throw Error(ErrorCode::kValidationError, "duplicate attribute " + a.name);
    }
    if (Trim(a.followup.question).empty() || a.followup.answer_choices.empty()) {
      throw Error(ErrorCode::kValidationError, "attribute " + a.name + " needs a question and choices");
    }
  }
}

std::vector<ContextualAttribute> LoadAttributes(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kValidationError, path.string() + ": " + e.what());
  }
  auto attributes = ParseRecord<std::vector<ContextualAttribute>>(j);
  ValidateAttributes(attributes);
  return attributes;
}

const ContextualAttribute& FindAttribute(const std::vector<ContextualAttribute>& attributes,
                                         std::string_view name) {
  const auto key = Squash(name);
  for (const auto& a : attributes) {
    if (Squash(a.name) == key) return a;
  }
  throw Error(ErrorCode::kValidationError, "unknown attribute '" + std::string(name) + "'");
}

AttributeFilterResult FilterQueriesForAttribute(const std::vector<Query>& queries,
                                                const ContextualAttribute& attribute,
                                                const std::string& judge, int cap,
                                                std::uint64_t seed, ModelAccess models) {
  if (cap < 1) throw Error(ErrorCode::kPrecondition, "filter cap must be at least 1");
  const auto question = attribute.followup.question + " " +
                        RenderChoiceList(attribute.followup.answer_choices);
  const auto outcomes =
      ParallelMap(queries.size(), models.gateway.max_concurrency(), [&](std::size_t i) {
        const auto prompt =
            RenderTemplate(models.prompts.Get(PromptId::kFilterAttribute),
                           {{"[QUERY]", queries[i].text}, {"[QUESTION]", question}});
        const auto reply =
            models.gateway.Complete(models.gateway.MakeRequest(judge, prompt, kJudgeMaxTokens));
        const auto answers = ParseYesNoObject(reply.text);
        if (!answers) return FilterOutcome::kParseFailure;
        for (const char* key : {"1", "2", "3"}) {
          auto it = answers->find(key);
          if (it == answers->end()) return FilterOutcome::kParseFailure;
          if (!it->second) return FilterOutcome::kRejected;
        }
        return FilterOutcome::kKept;
      });
  AttributeFilterResult out;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    switch (outcomes[i]) {
      case FilterOutcome::kKept: kept.push_back(i); break;
      case FilterOutcome::kRejected: ++out.rejected; break;
      case FilterOutcome::kParseFailure: ++out.parse_failures; break;
    }
  }
  out.passed = static_cast<int>(kept.size());
  if (kept.size() > static_cast<std::size_t>(cap)) {
    auto rng = StreamFor(seed, {"attribute_filter", attribute.name});
    for (std::size_t i = kept.size() - 1; i > 0; --i) {
      std::swap(kept[i], kept[rng.Below(i + 1)]);
    }
    kept.resize(cap);
    std::sort(kept.begin(), kept.end());
  }
  for (auto i : kept) out.retained.push_back(queries[i]);
  return out;
}

}  // namespace ctxeval
