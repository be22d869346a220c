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

#ifndef CTXEVAL_CLI_STAGES_H_
#define CTXEVAL_CLI_STAGES_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ctxeval/analytics/report.h"
#include "ctxeval/cli/config.h"
#include "ctxeval/core/clock.h"
#include "ctxeval/gateway/gateway.h"
#include "ctxeval/prompts/catalog.h"
#include "ctxeval/store/store.h"
#include "ctxeval/taxonomy/attributes.h"

namespace ctxeval {

struct StageOptions {
  std::string run_id = "default";
  std::optional<std::uint64_t> seed;
  std::optional<int> max_concurrency;
  bool deterministic = false;
  std::vector<ModelPair> pairs;               // empty: all configured
  std::vector<EvaluationSetting> settings;    // empty: all configured
  std::vector<std::string> raters;            // empty: configured judges
  std::optional<std::filesystem::path> queries_file;
  std::optional<std::string> attribute;       // bias / sensitivity; empty: all
  int min_constraint_diff = 0;
};

// Per-stage counters printed to stderr and kept in tallies.json.
using Tallies = std::map<std::string, int>;

// Shared state of one CLI invocation: config, run directory, gateway and
// prompts.
class RunContext {
 public:
  RunContext(RunConfig config, std::string config_bytes, StageOptions options);

  const RunConfig& config() const { return config_; }
  const StageOptions& options() const { return options_; }
  RunStore& store() { return *store_; }
  Gateway& gateway() { return *gateway_; }
  const PromptCatalog& prompts() const { return prompts_; }
  std::uint64_t seed() const { return seed_; }
  const TimestampFn& now() const { return now_; }

  std::vector<ModelPair> Pairs() const;
  std::vector<EvaluationSetting> Settings() const;
  std::vector<ContextualAttribute> Attributes() const;

  // Records the stage's tallies and refreshes the manifest counts.
  void Finish(const std::string& stage, const Tallies& tallies);

 private:
  RunConfig config_;
  StageOptions options_;
  std::uint64_t seed_;
  std::unique_ptr<RunStore> store_;
  std::unique_ptr<Gateway> gateway_;
  PromptCatalog prompts_;
  TimestampFn now_;
  std::string config_digest_;
};

// Queries of the run, importing the configured query file on first use.
std::vector<Query> EnsureQueries(RunContext& ctx);

// Sampled contexts keyed by query id; empty when the stage has not run.
std::map<std::string, SampledContext> LoadSampledContexts(const RunStore& store);

Tallies StageClassify(RunContext& ctx);
Tallies StageGenContext(RunContext& ctx);
Tallies StageGenerate(RunContext& ctx);
Tallies StageJudge(RunContext& ctx);
Tallies StageAnalyze(RunContext& ctx);
Tallies StageBias(RunContext& ctx);
Tallies StageSensitivity(RunContext& ctx);
Tallies StageReport(RunContext& ctx);
// Blocks serving the annotation API until the process is stopped.
Tallies StageServeAnnotation(RunContext& ctx);

// Analysis inputs gathered from the run directory.
AnalysisInputs GatherAnalysisInputs(RunContext& ctx);

}  // namespace ctxeval

#endif  // CTXEVAL_CLI_STAGES_H_
