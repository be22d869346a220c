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

#include "ctxeval/judging/parse.h"

#include <cctype>
#include <optional>
#include <regex>
#include <set>

#include "ctxeval/context/parsing.h"
#include "ctxeval/core/json.h"
#include "ctxeval/core/strings.h"

namespace ctxeval {
namespace {

struct ObjectSpan {
  std::size_t begin;
  std::size_t end;  // one past the closing brace
};

std::optional<std::size_t> CloseBrace(std::string_view s, std::size_t open) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = open; i < s.size(); ++i) {
    const char c = s[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}' && --depth == 0) {
      return i;
    }
  }
  return std::nullopt;
}

std::optional<ObjectSpan> StarredObject(const std::string& text) {
  static const std::regex kMarker(R"(\*\*\s*output\s*:\s*\{)",
                                  std::regex::ECMAScript | std::regex::icase);
  std::smatch m;
  if (!std::regex_search(text, m, kMarker)) return std::nullopt;
  const auto open = static_cast<std::size_t>(m.position(0) + m.length(0) - 1);
  const auto close = CloseBrace(text, open);
  if (!close) return std::nullopt;
  return ObjectSpan{open, *close + 1};
}

std::vector<ObjectSpan> AllObjects(const std::string& text) {
  std::vector<ObjectSpan> out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '{') continue;
    if (auto close = CloseBrace(text, i)) {
      out.push_back({i, *close + 1});
      i = *close;
    }
  }
  return out;
}

// Value of the judgement key inside an object, if present.
std::optional<std::string> JudgementValue(std::string_view object) {
  static const std::regex kKey(R"re(["']?judge?ment["']?\s*:\s*["']([^"'\n]*)["'])re",
                               std::regex::ECMAScript | std::regex::icase);
  std::cmatch m;
  if (!std::regex_search(object.data(), object.data() + object.size(), m, kKey)) {
    return std::nullopt;
  }
  return m[1].str();
}

RawVerdict VerdictFromValue(std::string_view value) {
  std::string key;
  for (char c : value) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (key == "response1") return RawVerdict::kResponse1;
  if (key == "response2") return RawVerdict::kResponse2;
  if (key == "tie") return RawVerdict::kTie;
  return RawVerdict::kUnparsed;
}

std::optional<ObjectSpan> VerdictObject(const std::string& text) {
  if (auto starred = StarredObject(text)) {
    if (JudgementValue(std::string_view(text).substr(starred->begin,
                                                     starred->end - starred->begin))) {
      return starred;
    }
  }
  std::optional<ObjectSpan> found;
  for (const auto& span : AllObjects(text)) {
    if (JudgementValue(std::string_view(text).substr(span.begin, span.end - span.begin))) {
      if (!found) found = span;
    }
  }
  return found;
}

}  // namespace

RawVerdict ParseVerdict(std::string_view raw_text) {
  const std::string text = NormalizeQuotes(raw_text);
  if (auto starred = StarredObject(text)) {
    const auto value =
        JudgementValue(std::string_view(text).substr(starred->begin, starred->end - starred->begin));
    if (value) return VerdictFromValue(*value);
  }
  // Fallback: every object carrying a judgement key must agree.
  std::set<RawVerdict> seen;
  for (const auto& span : AllObjects(text)) {
    const auto value =
        JudgementValue(std::string_view(text).substr(span.begin, span.end - span.begin));
    if (value) seen.insert(VerdictFromValue(*value));
  }
  if (seen.size() == 1) return *seen.begin();
  return RawVerdict::kUnparsed;
}

std::string ExtractJustification(std::string_view raw_text) {
  const std::string text = NormalizeQuotes(raw_text);
  auto span = VerdictObject(text);
  if (!span) return std::string(Trim(raw_text));
  std::size_t pos = span->end;
  while (pos < text.size() && (text[pos] == '*' || text[pos] == '"')) ++pos;
  std::string_view rest = Trim(std::string_view(text).substr(pos));
  if (StartsWithIgnoreCase(rest, "justification:")) {
    rest = Trim(rest.substr(std::string_view("justification:").size()));
  }
  return std::string(rest);
}

int ParseConstraintCount(std::string_view raw_text, std::size_t followup_count) {
  std::string_view text = Trim(raw_text);
  while (!text.empty() && text.front() == '*') text.remove_prefix(1);
  if (StartsWithIgnoreCase(text, "output:")) text = Trim(text.substr(7));
  std::size_t digits = 0;
  while (digits < text.size() && std::isdigit(static_cast<unsigned char>(text[digits]))) ++digits;
  if (digits == 0 || digits > 6 ||
      (digits < text.size() && std::isalpha(static_cast<unsigned char>(text[digits])))) {
    throw Error(ErrorCode::kParseFailure,
                "constraint count reply has no leading integer: '" +
                    std::string(text.substr(0, 40)) + "'");
  }
  const int value = std::stoi(std::string(text.substr(0, digits)));
  if (static_cast<std::size_t>(value) > followup_count) {
    throw Error(ErrorCode::kOutOfRange, std::to_string(value) + " exceeds " +
                                            std::to_string(followup_count) + " followups");
  }
  return value;
}

std::map<std::string, int> ParseRatings(std::string_view raw_text,
                                        const std::vector<std::string>& choices) {
  const auto object = ExtractOutputObject(raw_text);
  if (!object) throw Error(ErrorCode::kParseFailure, "no rating dictionary in reply");
  Json j;
  try {
    j = Json::parse(*object);
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::kParseFailure, "rating dictionary is not valid JSON: " + *object);
  }
  if (!j.is_object()) throw Error(ErrorCode::kParseFailure, "rating output is not a dictionary");
  std::map<std::string, int> out;
  std::vector<std::string> missing;
  for (const auto& choice : choices) {
    const Json* value = nullptr;
    if (auto it = j.find(choice); it != j.end()) {
      value = &*it;
    } else {
      for (auto it2 = j.begin(); it2 != j.end(); ++it2) {
        if (ToLower(Trim(it2.key())) == ToLower(Trim(choice))) {
          value = &it2.value();
          break;
        }
      }
    }
    if (value == nullptr) {
      missing.push_back(choice);
      continue;
    }
    int rating = 0;
    if (value->is_number_integer()) {
      rating = value->get<int>();
    } else if (value->is_string()) {
      const auto s = std::string(Trim(value->get<std::string>()));
      if (s.size() != 1 || !std::isdigit(static_cast<unsigned char>(s[0]))) {
        throw Error(ErrorCode::kParseFailure, "non-integer rating for '" + choice + "'");
      }
      rating = s[0] - '0';
    } else {
      throw Error(ErrorCode::kParseFailure, "non-integer rating for '" + choice + "'");
    }
    if (rating < 1 || rating > 5) {
      throw Error(ErrorCode::kParseFailure,
                  "rating " + std::to_string(rating) + " for '" + choice + "' outside 1..5");
    }
    out[choice] = rating;
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw Error(ErrorCode::kPartialRatings, list);
  }
  return out;
}

JustificationClass ParseJustificationClass(std::string_view raw_text) {
  static const std::regex kCategory(R"re(["']?category["']?\s*:\s*["']?\s*(surface|content)\b)re",
                                    std::regex::ECMAScript | std::regex::icase);
  static const std::regex kBare(R"(^\W*(surface|content)\b)",
                                std::regex::ECMAScript | std::regex::icase);
  const std::string text = NormalizeQuotes(raw_text);
  std::smatch m;
  if (std::regex_search(text, m, kCategory) || std::regex_search(text, m, kBare)) {
    return ToLower(m[1].str()) == "surface" ? JustificationClass::kSurface
                                            : JustificationClass::kContent;
  }
  return JustificationClass::kUnknown;
}

}  // namespace ctxeval
