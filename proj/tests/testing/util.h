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

#ifndef CTXEVAL_TESTING_UTIL_H_
#define CTXEVAL_TESTING_UTIL_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "ctxeval/context/pipeline.h"
#include "ctxeval/core/json.h"
#include "ctxeval/gateway/gateway.h"
#include "ctxeval/gateway/mock.h"
#include "ctxeval/prompts/catalog.h"

namespace ctxeval::testing {

std::filesystem::path FixtureDir();
std::filesystem::path DocsDir();

// A fresh directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Copies fixtures/<name> into `dest` and returns dest/config.json.
std::filesystem::path CopyFixture(const std::string& name, const std::filesystem::path& dest);

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult Cli(const std::vector<std::string>& args);

std::string ReadText(const std::filesystem::path& path);
std::vector<Json> ReadJsonl(const std::filesystem::path& path);

// A gateway whose every model routes to one mock backend, uncached.
struct MockModels {
  explicit MockModels(MockScript script, const std::vector<std::string>& model_ids,
                      int max_concurrency = 4);

  ModelAccess access() { return ModelAccess{*gateway, PromptCatalog::Builtin()}; }

  std::shared_ptr<MockBackend> backend;
  std::unique_ptr<Gateway> gateway;
};

// SplitMix64-based generator for hand-rolled property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : state_(seed) {}
  std::uint64_t Next();
  int Int(int lo, int hi);  // inclusive
  double Uniform();         // [0, 1)
  bool Bool() { return Next() & 1U; }

 private:
  std::uint64_t state_;
};

}  // namespace ctxeval::testing

#endif  // CTXEVAL_TESTING_UTIL_H_
