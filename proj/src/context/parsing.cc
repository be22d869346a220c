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

#include "ctxeval/context/parsing.h"

#include <algorithm>
#include <cctype>
#include <regex>

#include "ctxeval/core/json.h"
#include "ctxeval/core/strings.h"

namespace ctxeval {
namespace {

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::size_t SkipSpace(std::string_view s, std::size_t i) {
  while (i < s.size() && IsSpace(s[i])) ++i;
  return i;
}

// Index of the bracket/brace closing the one at `open`, honoring quotes.
std::optional<std::size_t> MatchingClose(std::string_view s, std::size_t open) {
  const char o = s[open];
  const char c = o == '[' ? ']' : '}';
  int depth = 0;
  char quote = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    const char ch = s[i];
    if (quote) {
      if (ch == '\\') {
        ++i;
      } else if (ch == quote) {
        quote = 0;
      }
      continue;
    }
    if (ch == '"') {
      quote = ch;
    } else if (ch == o) {
      ++depth;
    } else if (ch == c) {
      if (--depth == 0) return i;
    }
  }
  return std::nullopt;
}

std::string Alnum(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

// Finds "Q:" at the start of the text or after whitespace.
std::size_t FindQuestionMarker(std::string_view s, std::size_t from) {
  while (true) {
    const auto pos = s.find("Q:", from);
    if (pos == std::string_view::npos) return pos;
    if (pos == 0 || IsSpace(s[pos - 1])) return pos;
    from = pos + 2;
  }
}

}  // namespace

std::optional<std::vector<std::string>> ParseLooseStringList(std::string_view text,
                                                             std::size_t pos,
                                                             std::size_t* end) {
  if (pos >= text.size() || text[pos] != '[') return std::nullopt;
  std::vector<std::string> out;
  std::size_t i = pos + 1;
  while (true) {
    i = SkipSpace(text, i);
    if (i >= text.size()) return std::nullopt;
    if (text[i] == ']') {
      if (end) *end = i + 1;
      return out;
    }
    std::string item;
    if (text[i] == '"' || text[i] == '\'') {
      const char quote = text[i++];
      bool closed = false;
      while (i < text.size()) {
        const char ch = text[i];
        if (ch == '\\' && i + 1 < text.size()) {
          item.push_back(text[i + 1]);
          i += 2;
          continue;
        }
        // A single quote followed by a letter is an apostrophe, not a close.
        if (ch == quote &&
            !(quote == '\'' && i + 1 < text.size() &&
              std::isalpha(static_cast<unsigned char>(text[i + 1])))) {
          ++i;
          closed = true;
          break;
        }
        item.push_back(ch);
        ++i;
      }
      if (!closed) return std::nullopt;
    } else {
      while (i < text.size() && text[i] != ',' && text[i] != ']' && text[i] != '\n') {
        item.push_back(text[i++]);
      }
      item = std::string(Trim(item));
      if (item.empty()) return std::nullopt;
    }
    out.push_back(std::move(item));
    i = SkipSpace(text, i);
    if (i < text.size() && text[i] == ',') ++i;
  }
}

std::string RenderChoiceList(const std::vector<std::string>& choices) {
  std::string out = "[";
  for (std::size_t i = 0; i < choices.size(); ++i) {
    if (i) out += ", ";
    out += Json(choices[i]).dump();
  }
  return out + "]";
}

std::optional<QueryType> ParseQueryTypeLabel(std::string_view label) {
  const std::string key = Alnum(label);
  if (key == "incomplete") return QueryType::kIncomplete;
  if (key == "ambiguous") return QueryType::kAmbiguous;
  if (key == "subjective") return QueryType::kSubjective;
  if (key == "openended") return QueryType::kOpenEnded;
  if (key == "closedended") return QueryType::kClosedEnded;
  return std::nullopt;
}

std::optional<QueryTypeSet> ParseQueryTypeList(std::string_view raw) {
  const std::string text = NormalizeQuotes(raw);
  const auto open = text.find('[');
  if (open == std::string::npos) return std::nullopt;
  const auto items = ParseLooseStringList(text, open);
  if (!items) return std::nullopt;
  QueryTypeSet out;
  for (const auto& item : *items) {
    if (auto t = ParseQueryTypeLabel(item)) out.insert(*t);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

ParsedFollowups ParseFollowupOutput(std::string_view raw) {
  const std::string text = NormalizeQuotes(raw);
  ParsedFollowups out;

  static const std::regex kNeed(R"(need\s+for\s+context\s*:\s*\**\s*(yes|no)\b)",
                                std::regex::ECMAScript | std::regex::icase);
  static const std::regex kLeading(R"(^\s*\**\s*(yes|no)\b)",
                                   std::regex::ECMAScript | std::regex::icase);
  std::smatch m;
  if (std::regex_search(text, m, kNeed) || std::regex_search(text, m, kLeading)) {
    out.needs_context = ToLower(m[1].str()) == "yes";
  }

  std::size_t pos = FindQuestionMarker(text, 0);
  while (pos != std::string::npos) {
    const std::size_t q_begin = pos + 2;
    const auto a_pos = text.find("A:", q_begin);
    const auto next_q = FindQuestionMarker(text, q_begin);
    if (a_pos == std::string::npos || (next_q != std::string::npos && next_q < a_pos)) {
      out.dropped.emplace_back(Trim(std::string_view(text).substr(q_begin, 80)));
      pos = next_q;
      continue;
    }
    std::string question(Trim(std::string_view(text).substr(q_begin, a_pos - q_begin)));
    const std::size_t list_pos = SkipSpace(text, a_pos + 2);
    std::size_t list_end = list_pos;
    auto choices = ParseLooseStringList(text, list_pos, &list_end);
    if (!choices) {
      out.dropped.push_back(question);
      pos = FindQuestionMarker(text, a_pos + 2);
      continue;
    }
    FollowUpQA qa;
    qa.question = question;
    for (auto& c : *choices) {
      std::string choice(Trim(c));
      if (choice.empty() || ToLower(choice) == "other") continue;
      if (std::find(qa.answer_choices.begin(), qa.answer_choices.end(), choice) ==
          qa.answer_choices.end()) {
        qa.answer_choices.push_back(std::move(choice));
      }
    }
    if (qa.question.empty() || qa.answer_choices.size() < 2) {
      out.dropped.push_back(question);
    } else {
      out.followups.push_back(std::move(qa));
    }
    pos = FindQuestionMarker(text, list_end);
  }
  return out;
}

std::optional<std::string> ExtractOutputObject(std::string_view raw) {
  const std::string text = NormalizeQuotes(raw);
  static const std::regex kMarker(R"(\*\*\s*output\s*:\s*\{)",
                                  std::regex::ECMAScript | std::regex::icase);
  std::smatch m;
  std::size_t open = std::string::npos;
  if (std::regex_search(text, m, kMarker)) {
    open = static_cast<std::size_t>(m.position(0) + m.length(0) - 1);
  } else {
    open = text.find('{');
  }
  if (open == std::string::npos) return std::nullopt;
  const auto close = MatchingClose(text, open);
  if (!close) return std::nullopt;
  return text.substr(open, *close - open + 1);
}

std::optional<std::map<std::string, bool>> ParseYesNoObject(std::string_view text) {
  const auto object = ExtractOutputObject(text);
  if (!object) return std::nullopt;
  static const std::regex kEntry(R"re(["']?([A-Za-z0-9_]+)["']?\s*:\s*["']?(yes|no)\b)re",
                                 std::regex::ECMAScript | std::regex::icase);
  std::map<std::string, bool> out;
  for (std::sregex_iterator it(object->begin(), object->end(), kEntry), end; it != end; ++it) {
    out.emplace((*it)[1].str(), ToLower((*it)[2].str()) == "yes");
  }
  if (out.empty()) return std::nullopt;
  return out;
}

}  // namespace ctxeval
