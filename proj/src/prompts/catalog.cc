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

#include "ctxeval/prompts/catalog.h"

#include <fstream>

#include "ctxeval/core/digest.h"
#include "ctxeval/core/error.h"
#include "ctxeval/core/json.h"

namespace ctxeval {
namespace {

constexpr std::string_view kBuiltinVersion = "ctxeval-prompts/1";

constexpr std::string_view kClassifyQueryTypes =
    R"ctx(You will be shown a query issued by a real user to a language model. You need to answer what query type(s) this query belongs to, from the list below.

- Ambiguous: Queries which can be interpreted in different ways, that cause confusion about what is being asked.
- Incomplete: Queries which lack information that is essential to understand the intent of the query. Note these are different from ambiguous queries, which need clarification due to multiple possible interpretations.
- Subjective: Queries whose responses can be influenced by personal beliefs and perspectives.
- Open-ended: Queries which require detailed responses and lack a single, concise answer.
- Closed-ended: Queries which require an unambiguous and concise answer.

Note that a single query can belong to multiple query types. Provide your output as a list with the query types that the query belongs to.

###

Query: best team in the league
Query Types: ["Incomplete", "Subjective", "Closed-ended"]
Query: [QUERY]
Query Types:)ctx";

constexpr std::string_view kGenerateFollowups =
    R"ctx(You will be shown a query issued by a real user to a language model. Imagine that you are required to answer this query. First, you need to answer whether it would be helpful to know context surrounding this query to give a useful response. The context can be about the user (eg, their background, age, language fluency, location, profession, expertise etc), their intent / preferences for the response (eg, query intent, text formatting/style, structure, length, presence of citations, or any other open-ended criteria) or information missing that is required to respond to a query or resolve ambiguity in the query. Queries that are objective, closed-ended or have straightforward answers should not require context.

Answer in Yes or No for whether context is required and generate context if the answer is Yes. This context should be formatted as follow-up question answer pairs, where you ask the most important questions first and list plausible answers to these questions.

Here are criteria that individual questions need to satisfy:
- salient: The question should ask about information that would be useful to adapt the query's response to the user's needs and background.
- influential: The answer to this question should directly influence the response. With different answers to this question, the response to the query would need to be phrased differently.

Here are the criteria that the list of questions needs to satisfy:
- sufficient: There should be enough important questions to cover a large space of possible contexts for the query.
- ranked in order of salience: the questions should be ranked in the order of their importance.

Here are the criteria that each answer set needs to satisfy:
- plausible answers: The answer set should represent a realistic set of answers to the question, such that a real user would answer the question with any of the choices. Do not generate answer choices such as "Other" which are uninformative.
- discrete answer space: The possible answers to the question should be discrete, short strings.
- diverse coverage: The answer set should be a representative set of possible answers to the question, such that each answer choice would elicit different responses to the original query.

Generate up to 10 follow-up QA pairs and they should all meet the above criteria. Each QA pair should be such that it is easy to check whether the QA is incorporated in a candidate response.

Example Follow-up QA:

Query: best team in the football league
Need for Context: Yes
Context: Q: Which league are you referring to? A: ["English Premier League", "La Liga", "Bundesliga", "Italian Serie A", "MLS", "UEFA"]
Q: How do you define "best"? A: ["Most recent wins", "Number of championships won", "Goal difference", "Squad strength"]
Q: Do you want the best team based on current form or overall historical performance? A: ["Current form", "Historical performance"]
Q: Are you asking about men’s football or women’s football? A: ["Men’s football", "Women’s football"] ...

Query: How do antibiotics work against bacteria?
Need for Context: Yes
Context: Q: What is your background in biology or medicine? A: ["No background", "High school level", "College level", "Medical or professional background"]
Q: What is your purpose for asking this question? A: ["For a class", "Personal knowledge", "Professional/medical use", "To explain to someone else"]
Q: What level of detail are you looking for in the explanation? A: ["Basic overview", "Intermediate (some scientific terms)", "Detailed (in-depth biological mechanisms)"] ...

Query: [QUERY]
Need for Context:)ctx";

// Not published with the method; written for this harness around the two
// question criteria used during context generation.
constexpr std::string_view kJuryImportance =
    R"ctx(You will be shown a query issued by a real user to a language model, followed by a numbered list of follow-up questions that an assistant could ask the user before answering. For each follow-up question, decide whether it is important to ask. Label a question "Yes" only if both hold:
- it asks for information that matters for answering this particular query well, and
- different answers to it would change how the query should be answered.
Otherwise label it "No".

IMPORTANT: You should produce the final output as a dictionary in precisely this format (with **): "**output: {"1": "Yes/No", "2": "Yes/No", ...}**", with exactly one entry per numbered follow-up question.

Query: [QUERY]
Follow-up Questions:
[FOLLOWUPS]
Output:)ctx";

constexpr std::string_view kGenerateWithContext = R"ctx([QUERY]

Context:
[CONTEXT])ctx";

constexpr std::string_view kJudgeNoContext =
    R"ctx(You will be given a query issued by a real user to a language model. You will also be given two model responses to this query, and you will need to judge which response is better.

IMPORTANT: You should produce the final judgement as a dictionary in precisely this format (with **): "**output: {"judgement": "_" }**", where you should fill in the spaces with either "Response 1" if Response 1 is better, "Response 2" if Response 2 is better or "Tie" if both responses are equally good or equally bad. Only the three choices "Response 1", "Response 2" and "Tie" are valid. Make note of the ** required to enclose the output dictionary. After generating the output, provide a brief justification of your judgement.

Query: [QUERY]
Response 1: [RESPONSE 1]
Response 2: [RESPONSE 2]
Judgement: **output: {"judgement": "_" }**
Justification: [JUSTIFICATION])ctx";

constexpr std::string_view kJudgeWithContext =
    R"ctx(You will be given a query issued by a real user to a language model and the context under which the query was issued. This context will be presented in the form of follow-up questions and the user's answers to these questions. The context provides information about the user's intent, preferences and background.

You will be given two model responses to this query, and you will need to judge which response more accurately and completely incorporates the information from the query and context. To evaluate the responses, you should first check whether the answer to each of the follow-up questions in the context is incorporated well in each response. Then, you should choose the response which incorporates more of the constraints from the context and provides the most relevant and complete answer to the query.

IMPORTANT: You should produce the final judgement as a dictionary in precisely this format (with **): "**output: {"judgement": "_" }**", where you should fill in the spaces with 1) "Response 1" if Response 1 is better, 2) "Response 2" if Response 2 is better or 3) "Tie" if both responses are equally good or equally bad. Only the three choices "Response 1", "Response 2" and "Tie" are valid. Make note of the ** required to enclose the output dictionary. After generating the output, provide a brief justification of your judgement that mentions which aspects of the context were better incorporated by the chosen response, or why the responses are equally good or equally lacking.

Query: [QUERY]
Context: [CONTEXT]
Response 1: [RESPONSE 1]
Response 2: [RESPONSE 2]
Judgement: **output: {"judgement": "_" }**
Justification: [JUSTIFICATION])ctx";

constexpr std::string_view kCountConstraints =
    R"ctx(You will be given a query issued by a real user and the context under which the query was issued. This context will be presented in the form of follow-up questions and the user's answers to them.

You will be given a model response to this query, and you will need to judge how many of the criteria in the follow-up questions are addressed by the response. So if the response incorporates 5 of the follow-up questions completely, you should output 5. If it incorporates 2 of the follow-up questions, you should output a 2. If it does not address any of the follow-up questions, you should rate it as a 0.

IMPORTANT: You should first generate a single number, which is the total number of constraints satisfied. After generating this number, provide a very brief justification for your answer.

Query: [QUERY]
Context: [CONTEXT]
Response: [RESPONSE]
Output:)ctx";

constexpr std::string_view kFilterAttribute =
    R"ctx(You will be given a query from a real user to a language model, along with a follow-up question that can be asked to the user. The follow-up question will have a set of answer choices. Your task is to answer the following three questions:

1) Is it important to know the user's answer to the follow-up question to provide a useful response to the original query?
2) Is the query independent of the answer choices? If the query already implies a specific answer choice, it is not independent.
3) Is the query well-formed? A well-formed query clearly expresses an information need, even if it is not fully fluent, unambiguous, or fully specified. Queries not in English are not considered well-formed.

IMPORTANT: Please provide the final output in the following dictionary format: {"1": "Yes/No", "2": "Yes/No", "3": "Yes/No"}.

Query: [QUERY]
Follow-up Question: [QUESTION]
Output:)ctx";

constexpr std::string_view kRateRelevance =
    R"ctx(You will be given a query issued by a real user to a language model and the context under which the query may have been issued. This context will be presented in the form of a follow-up question issued to the user and possible answers to this question.

You will be given a model response to this query, and you will need to judge the quality of this response corresponding to each follow-up question-answer pair. Rate the response on a scale of 1-5 on the following axis:

* Relevance: How relevant is the response to addressing the query and context?
    * 1: The response is not helpful in responding to the query and context at all.
    * 2: The response provides limited help, missing important information from the query or context.
    * 3: The response is somewhat helpful, offering useful information but lacking thoroughness or depth for the query and context.
    * 4: The response is helpful, addressing most of the query and context adequately.
    * 5: The response is highly helpful, fully addressing the query and context with thorough and useful information.

IMPORTANT: You should produce the final output as a dictionary in precisely this format (with **): [OUTPUT_FORMAT], where you should fill in the spaces with ratings for each one of the possible answers to the follow-up question. Make note of the ** required to enclose the output dictionary.

Query: [QUERY]
Context: [CONTEXT]
Response: [RESPONSE]
Judgement:)ctx";

// Not published with the method; a forced-choice coding prompt over the two
// criterion families.
constexpr std::string_view kClassifyJustification =
    R"ctx(You will be given a free-text justification that an evaluator wrote after choosing between two responses to a user query. Decide which kind of criteria the justification mainly relies on:

- Surface: criteria about the surface of a response, such as clarity, conciseness, style or formatting, tone and length.
- Content: criteria about the substance of a response, such as relevance, correctness, completeness, level of detail and context adherence.

IMPORTANT: You should produce the final output as a dictionary in precisely this format (with **): "**output: {"category": "_" }**", filling in either "Surface" or "Content".

Justification: [JUSTIFICATION]
Output:)ctx";

}  // namespace

std::string_view PromptName(PromptId id) {
  switch (id) {
    case PromptId::kClassifyQueryTypes: return "classify_query_types";
    case PromptId::kGenerateFollowups: return "generate_followups";
    case PromptId::kJuryImportance: return "jury_importance";
    case PromptId::kGenerateWithContext: return "generate_with_context";
    case PromptId::kJudgeNoContext: return "judge_no_context";
    case PromptId::kJudgeWithContext: return "judge_with_context";
    case PromptId::kCountConstraints: return "count_constraints";
    case PromptId::kFilterAttribute: return "filter_attribute";
    case PromptId::kRateRelevance: return "rate_relevance";
    case PromptId::kClassifyJustification: return "classify_justification";
  }
  return "?";
}

PromptCatalog::PromptCatalog() : version_(kBuiltinVersion) {
  templates_[PromptId::kClassifyQueryTypes] = kClassifyQueryTypes;
  templates_[PromptId::kGenerateFollowups] = kGenerateFollowups;
  templates_[PromptId::kJuryImportance] = kJuryImportance;
  templates_[PromptId::kGenerateWithContext] = kGenerateWithContext;
  templates_[PromptId::kJudgeNoContext] = kJudgeNoContext;
  templates_[PromptId::kJudgeWithContext] = kJudgeWithContext;
  templates_[PromptId::kCountConstraints] = kCountConstraints;
  templates_[PromptId::kFilterAttribute] = kFilterAttribute;
  templates_[PromptId::kRateRelevance] = kRateRelevance;
  templates_[PromptId::kClassifyJustification] = kClassifyJustification;
}

const PromptCatalog& PromptCatalog::Builtin() {
  static const PromptCatalog kCatalog;
  return kCatalog;
}

PromptCatalog PromptCatalog::WithOverrides(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open prompt overrides " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Json j;
  try {
    j = Json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigError, path.string() + ": " + e.what());
  }
  PromptCatalog catalog;
  for (auto& [id, text] : catalog.templates_) {
    if (auto it = j.find(std::string(PromptName(id))); it != j.end()) {
      text = it->get<std::string>();
    }
  }
  catalog.version_ = std::string(kBuiltinVersion) + "+" + Sha256Hex(bytes).substr(0, 12);
  return catalog;
}

const std::string& PromptCatalog::Get(PromptId id) const { return templates_.at(id); }

}  // namespace ctxeval
