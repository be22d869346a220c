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

#ifndef CTXEVAL_CORE_STRINGS_H_
#define CTXEVAL_CORE_STRINGS_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ctxeval {

std::string_view Trim(std::string_view s);
std::string ToLower(std::string_view s);
std::vector<std::string> Split(std::string_view s, char sep);
bool StartsWithIgnoreCase(std::string_view s, std::string_view prefix);

// Replaces curly quotes with their ASCII counterparts.
std::string NormalizeQuotes(std::string_view s);

// Replaces [PLACEHOLDER] tokens in a single left-to-right pass; substituted
// text is never rescanned.
std::string RenderTemplate(
    std::string_view tmpl,
    const std::vector<std::pair<std::string_view, std::string_view>>& values);

}  // namespace ctxeval

#endif  // CTXEVAL_CORE_STRINGS_H_
