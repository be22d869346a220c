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

#include "testing/util.h"

#include <atomic>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "ctxeval/cli/cli.h"

namespace ctxeval::testing {

namespace fs = std::filesystem;

fs::path FixtureDir() { return CTXEVAL_FIXTURE_DIR; }
fs::path DocsDir() { return CTXEVAL_DOCS_DIR; }

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("ctxeval-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

fs::path CopyFixture(const std::string& name, const fs::path& dest) {
  fs::create_directories(dest);
  fs::copy(FixtureDir() / name, dest, fs::copy_options::recursive | fs::copy_options::overwrite_existing);
  return dest / "config.json";
}

CliResult Cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CliResult r;
  r.code = RunCli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<Json> ReadJsonl(const fs::path& path) {
  std::vector<Json> out;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(Json::parse(line));
  }
  return out;
}

MockModels::MockModels(MockScript script, const std::vector<std::string>& model_ids,
                       int max_concurrency)
    : backend(std::make_shared<MockBackend>(std::move(script))),
      gateway(std::make_unique<Gateway>()) {
  ProviderConfig config;
  config.provider_id = "mock";
  config.requests_per_minute = 1e9;
  config.max_concurrency = max_concurrency;
  gateway->AddProvider(config, backend);
  for (const auto& id : model_ids) gateway->AddModel(id, "mock");
}

std::uint64_t Gen::Next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

int Gen::Int(int lo, int hi) {
  return lo + static_cast<int>(Next() % static_cast<std::uint64_t>(hi - lo + 1));
}

double Gen::Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

}  // namespace ctxeval::testing
