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

#ifndef CTXEVAL_CONTEXT_PARSING_H_
#define CTXEVAL_CONTEXT_PARSING_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctxeval/core/types.h"

namespace ctxeval {

// Parses a JSON-ish list of strings starting at text[pos] == '['. Accepts
// double or single quotes, bare items, and a trailing comma. On success sets
// *end to the index just past the closing bracket.
std::optional<std::vector<std::string>> ParseLooseStringList(std::string_view text,
                                                             std::size_t pos,
                                                             std::size_t* end = nullptr);

// `["a", "b"]`, the list rendering used inside prompts.
std::string RenderChoiceList(const std::vector<std::string>& choices);

// Maps a label such as "Open-ended" or "closed ended" onto a QueryType.
std::optional<QueryType> ParseQueryTypeLabel(std::string_view label);

// First list in the text, mapped through ParseQueryTypeLabel. nullopt when
// there is no list or no label in it is recognized.
std::optional<QueryTypeSet> ParseQueryTypeList(std::string_view text);

struct ParsedFollowups {
  std::optional<bool> needs_context;  // nullopt: no Yes/No found
  std::vector<FollowUpQA> followups;  // well-formed QAs, in output order
  std::vector<std::string> dropped;   // questions rejected as malformed
};

// Reads generator output of the form
//   Need for Context: Yes
//   Context: Q: <question> A: ["choice", ...]
//   Q: ...
// Curly quotes are normalized first. "Other" choices and duplicate choices
// are removed; a QA left with fewer than two choices is dropped.
ParsedFollowups ParseFollowupOutput(std::string_view text);

// The {...} object inside a starred "**output: {...}**" marker, or failing
// that the first balanced {...} in the text.
std::optional<std::string> ExtractOutputObject(std::string_view text);

// Reads {"1": "Yes", "2": "No", ...}. Keys are returned as written.
std::optional<std::map<std::string, bool>> ParseYesNoObject(std::string_view text);

}  // namespace ctxeval

#endif  // CTXEVAL_CONTEXT_PARSING_H_
