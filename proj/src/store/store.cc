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

#include "ctxeval/store/store.h"

#include <fstream>
#include <sstream>

#include "ctxeval/core/digest.h"

namespace ctxeval {
namespace {

constexpr std::string_view kManifestFile = "manifest.json";
constexpr std::string_view kConfigFile = "config.json";

}  // namespace

void to_json(Json& j, const ProviderRoster& v) {
  j = Json{{"provider_id", v.provider_id}, {"kind", v.kind}, {"models", v.models}};
}

void from_json(const Json& j, ProviderRoster& v) {
  v.provider_id = j.at("provider_id").get<std::string>();
  v.kind = j.at("kind").get<std::string>();
  v.models = j.at("models").get<std::vector<std::string>>();
}

void to_json(Json& j, const RunManifest& v) {
  j = Json{{"run_id", v.run_id},
           {"created_at", v.created_at},
           {"config_digest", v.config_digest},
           {"seed", v.seed},
           {"prompt_catalog_version", v.prompt_catalog_version},
           {"counts", v.counts},
           {"roster", v.roster}};
}

void from_json(const Json& j, RunManifest& v) {
  v.run_id = j.at("run_id").get<std::string>();
  v.created_at = j.value("created_at", std::string());
  v.config_digest = j.at("config_digest").get<std::string>();
  v.seed = j.at("seed").get<std::uint64_t>();
  v.prompt_catalog_version = j.value("prompt_catalog_version", std::string());
  v.counts = j.value("counts", std::map<std::string, int>());
  v.roster = j.value("roster", std::vector<ProviderRoster>());
}

void WriteFileAtomic(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::kIoError, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIoError, "rename " + tmp.string() + ": " + ec.message());
}

std::string ReadFileOrThrow(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kMissingArtifact, path.filename().string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

RunStore::RunStore(const std::filesystem::path& runs_root, const std::string& run_id)
    : dir_(runs_root / run_id), run_id_(run_id) {
  if (run_id.empty() || run_id.find('/') != std::string::npos || run_id == "." ||
      run_id == "..") {
    throw Error(ErrorCode::kValidationError, "invalid run id '" + run_id + "'");
  }
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + dir_.string() + ": " + ec.message());
}

std::filesystem::path RunStore::PathFor(std::string_view kind) const {
  return dir_ / (std::string(kind) + ".jsonl");
}

bool RunStore::Has(std::string_view kind) const {
  return std::filesystem::exists(PathFor(kind));
}

std::uint64_t RunStore::AppendJson(std::string_view kind, const Json& record) {
  const auto line = DumpLine(record) + "\n";
  std::lock_guard lock(write_mu_);
  const auto path = PathFor(kind);
  std::error_code ec;
  const auto offset = std::filesystem::exists(path) ? std::filesystem::file_size(path, ec) : 0;
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  out.write(line.data(), static_cast<std::streamsize>(line.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "append to " + path.string() + " failed");
  return offset;
}

LoadResult<Json> RunStore::LoadJson(std::string_view kind) const {
  const auto path = PathFor(kind);
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::kMissingArtifact, path.filename().string());
  }
  const auto content = ReadFileOrThrow(path);
  LoadResult<Json> out;
  std::size_t start = 0;
  int line_number = 0;
  while (start < content.size()) {
    const auto end = content.find('\n', start);
    ++line_number;
    if (end == std::string::npos) {
      ++out.skipped_partial;
      Log(LogLevel::kWarning, path.filename().string() + ": skipped truncated final line " +
                                  std::to_string(line_number));
      break;
    }
    const std::string_view line(content.data() + start, end - start);
    start = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      out.records.push_back(Json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kValidationError, path.filename().string() + ":" +
                                                   std::to_string(line_number) + ": " + e.what());
    }
  }
  return out;
}

void RunStore::RewriteJson(std::string_view kind, const std::vector<Json>& records) {
  std::string content;
  for (const auto& r : records) content += DumpLine(r) + "\n";
  std::lock_guard lock(write_mu_);
  WriteFileAtomic(PathFor(kind), content);
}

void RunStore::WriteFile(const std::filesystem::path& relative, std::string_view content) const {
  WriteFileAtomic(dir_ / relative, content);
}

std::string RunStore::ReadFile(const std::filesystem::path& relative) const {
  return ReadFileOrThrow(dir_ / relative);
}

bool RunStore::HasFile(const std::filesystem::path& relative) const {
  return std::filesystem::exists(dir_ / relative);
}

std::string RunStore::SaveConfig(std::string_view config_bytes) const {
  WriteFile(kConfigFile, config_bytes);
  return Sha256Hex(config_bytes);
}

bool RunStore::HasManifest() const { return HasFile(kManifestFile); }

RunManifest RunStore::LoadManifest() const {
  const auto text = ReadFile(kManifestFile);
  try {
    return ParseRecord<RunManifest>(Json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kValidationError, "manifest.json: " + std::string(e.what()));
  }
}

void RunStore::SaveManifest(const RunManifest& manifest) const {
  WriteFile(kManifestFile, Json(manifest).dump(2) + "\n");
}

std::map<std::string, int> RunStore::CountRecords() const {
  std::map<std::string, int> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
    if (entry.path().extension() != ".jsonl") continue;
    const auto content = ReadFileOrThrow(entry.path());
    int lines = 0;
    for (char c : content) lines += c == '\n';
    out[entry.path().stem().string()] = lines;
  }
  return out;
}

}  // namespace ctxeval
