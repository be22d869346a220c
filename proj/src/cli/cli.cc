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

#include "ctxeval/cli/cli.h"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <sstream>

#include "ctxeval/cli/config.h"
#include "ctxeval/cli/stages.h"
#include "ctxeval/core/error.h"
#include "ctxeval/core/log.h"
#include "ctxeval/core/strings.h"

namespace ctxeval {
namespace {

struct Flags {
  std::string config = "ctxeval.json";
  std::string run_id = "default";
  std::optional<std::uint64_t> seed;
  std::optional<int> max_concurrency;
  bool deterministic = false;
  bool verbose = false;
  std::vector<std::string> pairs;
  std::vector<std::string> settings;
  std::string raters;
  std::string queries;
  std::string attribute;
  std::vector<std::string> filters;
};

using StageFn = std::function<Tallies(RunContext&)>;

struct Subcommand {
  const char* name;
  const char* help;
  StageFn run;
};

const std::vector<Subcommand>& Subcommands() {
  static const std::vector<Subcommand> kAll = {
      {"classify", "Label queries with underspecification types", StageClassify},
      {"gen-context", "Generate, validate and sample follow-up context", StageGenContext},
      {"generate", "Generate candidate responses", StageGenerate},
      {"judge", "Collect pairwise autorater judgments", StageJudge},
      {"analyze", "Compute agreement, win rates and significance", StageAnalyze},
      {"bias", "Rate default responses against contextual attributes", StageBias},
      {"sensitivity", "Rate adapted responses per attribute value", StageSensitivity},
      {"report", "Write report.json, report.md and figure tables", StageReport},
      {"serve-annotation", "Serve the annotation HTTP API", StageServeAnnotation},
  };
  return kAll;
}

int ParseMinConstraintDiff(const std::vector<std::string>& filters) {
  int value = 0;
  for (const auto& f : filters) {
    const auto eq = f.find('=');
    if (eq == std::string::npos || Trim(f.substr(0, eq)) != "min-constraint-diff") {
      throw Error(ErrorCode::kConfigError, "unknown filter '" + f + "'");
    }
    try {
      std::size_t used = 0;
      const auto text = std::string(Trim(f.substr(eq + 1)));
      value = std::stoi(text, &used);
      if (used != text.size() || value < 0) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kConfigError, "bad filter value in '" + f + "'");
    }
  }
  return value;
}

StageOptions ToStageOptions(const Flags& flags) {
  StageOptions o;
  o.run_id = flags.run_id;
  o.seed = flags.seed;
  o.max_concurrency = flags.max_concurrency;
  o.deterministic = flags.deterministic;
  for (const auto& p : flags.pairs) o.pairs.push_back(ParsePairFlag(p));
  for (const auto& s : flags.settings) {
    try {
      o.settings.push_back(ParseEnum<EvaluationSetting>(s));
    } catch (const Error&) {
      throw Error(ErrorCode::kConfigError, "unknown setting '" + s + "'");
    }
  }
  if (!flags.raters.empty()) {
    for (const auto& r : Split(flags.raters, ',')) {
      if (!Trim(r).empty()) o.raters.emplace_back(Trim(r));
    }
  }
  if (!flags.queries.empty()) o.queries_file = flags.queries;
  if (!flags.attribute.empty()) o.attribute = flags.attribute;
  o.min_constraint_diff = ParseMinConstraintDiff(flags.filters);
  return o;
}

int ExitCodeFor(ErrorCode code) {
  return code == ErrorCode::kRateLimitedExhausted || code == ErrorCode::kProviderError
             ? kExitProvider
             : kExitFailure;
}

int RunStage(const Subcommand& sub, const Flags& flags, std::ostream& out, std::ostream& err) {
  const std::filesystem::path config_path = flags.config;
  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    err << "error: cannot read config " << config_path.string() << "\n";
    return kExitFailure;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string bytes = buffer.str();
  try {
    Json j;
    try {
      j = Json::parse(bytes);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kConfigError, config_path.string() + ": " + e.what());
    }
    auto config = ParseRunConfig(j, std::filesystem::absolute(config_path).parent_path());
    ValidateRunConfig(config);
    RunContext ctx(std::move(config), bytes, ToStageOptions(flags));
    auto tallies = sub.run(ctx);
    tallies["network_calls"] = ctx.gateway().stats().network_calls;
    ctx.Finish(sub.name, tallies);
    for (const auto& [name, value] : tallies) err << sub.name << "." << name << " = " << value << "\n";
    out << ctx.store().dir().string() << "\n";
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contextualized pairwise evaluation harness", "ctxeval"};
  app.require_subcommand(1);
  Flags flags;
  app.add_option("--config", flags.config, "Run configuration (JSON)");
  app.add_option("--run-id", flags.run_id, "Run directory name under runs_dir");
  app.add_option("--seed", flags.seed, "Override the configured seed");
  app.add_option("--max-concurrency", flags.max_concurrency, "Global in-flight request cap")
      ->check(CLI::PositiveNumber);
  app.add_flag("--deterministic", flags.deterministic, "Epoch timestamps for byte-stable output");
  app.add_flag("-v,--verbose", flags.verbose, "Debug logging");

  const Subcommand* chosen = nullptr;
  for (const auto& sub : Subcommands()) {
    auto* cmd = app.add_subcommand(sub.name, sub.help);
    cmd->fallthrough();
    cmd->callback([&chosen, &sub] { chosen = &sub; });
    const std::string name = sub.name;
    if (name == "generate" || name == "judge" || name == "serve-annotation" ||
        name == "analyze" || name == "report") {
      cmd->add_option("--pair", flags.pairs, "Candidate pair a,b (repeatable)");
      cmd->add_option("--setting", flags.settings, "Evaluation setting (repeatable)");
    }
    if (name == "judge") cmd->add_option("--raters", flags.raters, "Comma-separated rater ids");
    if (name == "classify" || name == "gen-context" || name == "generate") {
      cmd->add_option("--queries", flags.queries, "Query JSONL to import");
    }
    if (name == "bias" || name == "sensitivity") {
      cmd->add_option("--attribute", flags.attribute, "Limit to one attribute");
    }
    if (name == "analyze" || name == "report") {
      cmd->add_option("--filter", flags.filters, "Filter, e.g. min-constraint-diff=2");
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    for (auto* sub : app.get_subcommands()) {
      if (sub->parsed()) err << sub->help();
    }
    return kExitFailure;
  }
  SetMinLogLevel(flags.verbose ? LogLevel::kDebug : LogLevel::kInfo);
  if (chosen == nullptr) return kExitFailure;
  try {
    return RunStage(*chosen, flags, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  }
}

}  // namespace ctxeval
