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

#ifndef CTXEVAL_STORE_STORE_H_
#define CTXEVAL_STORE_STORE_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "ctxeval/core/json.h"
#include "ctxeval/core/log.h"

namespace ctxeval {

// Record kinds, one JSONL file each.
namespace kinds {
inline constexpr std::string_view kQueries = "queries";
inline constexpr std::string_view kClassifications = "classifications";
inline constexpr std::string_view kNeedForContext = "need_for_context";
inline constexpr std::string_view kContexts = "contexts";
inline constexpr std::string_view kSampledContexts = "sampled_contexts";
inline constexpr std::string_view kGenerations = "generations";
inline constexpr std::string_view kJudgments = "judgments";
inline constexpr std::string_view kConstraints = "constraints";
inline constexpr std::string_view kJustificationClasses = "justification_classes";
inline constexpr std::string_view kRatings = "ratings";
inline constexpr std::string_view kAnnotationEvents = "annotation_events";
}  // namespace kinds

struct ProviderRoster {
  std::string provider_id;
  std::string kind;
  std::vector<std::string> models;

  bool operator==(const ProviderRoster&) const = default;
};

struct RunManifest {
  std::string run_id;
  std::string created_at;
  std::string config_digest;  // SHA-256 of config.json as stored
  std::uint64_t seed = 0;
  std::string prompt_catalog_version;
  std::map<std::string, int> counts;
  std::vector<ProviderRoster> roster;

  bool operator==(const RunManifest&) const = default;
};

void to_json(Json& j, const ProviderRoster& v);
void from_json(const Json& j, ProviderRoster& v);
void to_json(Json& j, const RunManifest& v);
void from_json(const Json& j, RunManifest& v);

template <typename T>
struct LoadResult {
  std::vector<T> records;
  int skipped_partial = 0;  // truncated trailing line
};

// Run directory holding one JSONL file per record kind. Appends from any
// thread serialize through one writer lock; reads are independent.
class RunStore {
 public:
  RunStore(const std::filesystem::path& runs_root, const std::string& run_id);

  const std::filesystem::path& dir() const { return dir_; }
  const std::string& run_id() const { return run_id_; }
  std::filesystem::path PathFor(std::string_view kind) const;
  bool Has(std::string_view kind) const;

  // Appends one line and flushes. Returns the byte offset the line starts at.
  std::uint64_t AppendJson(std::string_view kind, const Json& record);

  // Validates with the record type's Validate() overload when it has one.
  template <typename T>
  std::uint64_t Append(std::string_view kind, const T& record) {
    if constexpr (requires { Validate(record); }) Validate(record);
    return AppendJson(kind, Json(record));
  }

  // Every complete line in order. A final line lacking its newline is a
  // write cut short by a crash and is skipped with a warning. Throws
  // MissingArtifact when the file does not exist.
  LoadResult<Json> LoadJson(std::string_view kind) const;

  template <typename T>
  LoadResult<T> Load(std::string_view kind,
                     const std::function<bool(const T&)>& keep = nullptr) const {
    auto raw = LoadJson(kind);
    LoadResult<T> out;
    out.skipped_partial = raw.skipped_partial;
    for (const auto& j : raw.records) {
      auto record = ParseRecord<T>(j);
      if (!keep || keep(record)) out.records.push_back(std::move(record));
    }
    return out;
  }

  // Replaces the whole file atomically (temp file then rename). Used when a
  // stage is re-run and its previous output for the same inputs is replaced.
  void RewriteJson(std::string_view kind, const std::vector<Json>& records);

  template <typename T>
  void Rewrite(std::string_view kind, const std::vector<T>& records) {
    std::vector<Json> lines;
    lines.reserve(records.size());
    for (const auto& r : records) {
      if constexpr (requires { Validate(r); }) Validate(r);
      lines.emplace_back(r);
    }
    RewriteJson(kind, lines);
  }

  // Atomic write of a non-JSONL artifact relative to the run directory.
  void WriteFile(const std::filesystem::path& relative, std::string_view content) const;
  std::string ReadFile(const std::filesystem::path& relative) const;
  bool HasFile(const std::filesystem::path& relative) const;

  // Stores the config bytes as config.json and returns their digest.
  std::string SaveConfig(std::string_view config_bytes) const;

  bool HasManifest() const;
  RunManifest LoadManifest() const;
  void SaveManifest(const RunManifest& manifest) const;
  // Line counts of every *.jsonl file in the run directory.
  std::map<std::string, int> CountRecords() const;

 private:
  std::filesystem::path dir_;
  std::string run_id_;
  mutable std::mutex write_mu_;
};

// Writes `content` to `path` through a temp file and rename.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view content);
std::string ReadFileOrThrow(const std::filesystem::path& path);

}  // namespace ctxeval

#endif  // CTXEVAL_STORE_STORE_H_
