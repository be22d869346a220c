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

#ifndef CTXEVAL_TAXONOMY_ATTRIBUTES_H_
#define CTXEVAL_TAXONOMY_ATTRIBUTES_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ctxeval/context/pipeline.h"
#include "ctxeval/core/json.h"
#include "ctxeval/core/types.h"

namespace ctxeval {

struct ContextualAttribute {
  std::string name;
  FollowUpQA followup;

  bool operator==(const ContextualAttribute&) const = default;
};

void to_json(Json& j, const ContextualAttribute& v);
void from_json(const Json& j, ContextualAttribute& v);

// The twelve built-in attributes, in table order.
const std::vector<ContextualAttribute>& BuiltinAttributes();

// Names must be unique and every attribute needs at least one choice.
void ValidateAttributes(const std::vector<ContextualAttribute>& attributes);

// Reads a JSON array of {"name", "question", "answer_choices"} objects.
std::vector<ContextualAttribute> LoadAttributes(const std::filesystem::path& path);

// Lookup ignoring case and whitespace, so "Geographical/Regional Context"
// finds "Geographical / Regional Context". Throws ValidationError when absent.
const ContextualAttribute& FindAttribute(const std::vector<ContextualAttribute>& attributes,
                                         std::string_view name);

inline constexpr int kDefaultFilterCap = 1000;

struct AttributeFilterResult {
  std::vector<Query> retained;  // input order
  int passed = 0;               // all three answers Yes, before the cap
  int rejected = 0;
  int parse_failures = 0;
};

// Keeps queries for which the judge answers Yes to all three filter
// questions, then draws at most `cap` of them with the stream
// (seed, "attribute_filter", attribute name).
AttributeFilterResult FilterQueriesForAttribute(const std::vector<Query>& queries,
                                                const ContextualAttribute& attribute,
                                                const std::string& judge, int cap,
                                                std::uint64_t seed, ModelAccess models);

}  // namespace ctxeval

#endif  // CTXEVAL_TAXONOMY_ATTRIBUTES_H_
