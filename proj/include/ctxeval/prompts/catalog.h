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

#ifndef CTXEVAL_PROMPTS_CATALOG_H_
#define CTXEVAL_PROMPTS_CATALOG_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace ctxeval {

enum class PromptId {
  kClassifyQueryTypes,
  kGenerateFollowups,
  kJuryImportance,
  kGenerateWithContext,
  kJudgeNoContext,
  kJudgeWithContext,
  kCountConstraints,
  kFilterAttribute,
  kRateRelevance,
  kClassifyJustification,
};

std::string_view PromptName(PromptId id);

// Versioned prompt templates with [PLACEHOLDER] slots. The built-in set is
// fixed; a JSON file {"<prompt name>": "<template>", ...} may override any
// entry, which changes version() so run manifests record the edit.
class PromptCatalog {
 public:
  static const PromptCatalog& Builtin();
  static PromptCatalog WithOverrides(const std::filesystem::path& path);

  const std::string& Get(PromptId id) const;
  const std::string& version() const { return version_; }

 private:
  PromptCatalog();

  std::map<PromptId, std::string> templates_;
  std::string version_;
};

}  // namespace ctxeval

#endif  // CTXEVAL_PROMPTS_CATALOG_H_
