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

#include "ctxeval/cli/stages.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <tuple>

#include "ctxeval/analytics/schema.h"
#include "ctxeval/annotation/server.h"
#include "ctxeval/annotation/service.h"
#include "ctxeval/context/pipeline.h"
#include "ctxeval/core/context.h"
#include "ctxeval/core/ids.h"
#include "ctxeval/core/log.h"
#include "ctxeval/core/parallel.h"
#include "ctxeval/core/strings.h"
#include "ctxeval/gateway/http_backend.h"
#include "ctxeval/gateway/mock.h"
#include "ctxeval/generation/generation.h"
#include "ctxeval/judging/judging.h"

namespace ctxeval {
namespace {

constexpr const char* kTalliesFile = "tallies.json";
constexpr const char* kAnalysisFile = "analysis.json";

struct Classification {
  std::string query_id;
  QueryTypeSet query_types;
};

void to_json(Json& j, const Classification& v) {
  Json types = Json::array();
  for (auto t : v.query_types) types.push_back(EnumName(t));
  j = Json{{"query_id", v.query_id}, {"query_types", types}};
}

void from_json(const Json& j, Classification& v) {
  v.query_id = j.at("query_id").get<std::string>();
  v.query_types.clear();
  for (const auto& t : j.at("query_types")) v.query_types.insert(ParseEnum<QueryType>(t.get<std::string>()));
}

Json DecisionJson(const NeedForContextDecision& d) {
  Json verdicts = Json::array();
  for (const auto& [model, yes] : d.verdicts) {
    verdicts.push_back(Json{{"generator", model}, {"needs_context", yes}});
  }
  return Json{{"query_id", d.query_id}, {"verdicts", verdicts}, {"needs_context", d.needs_context}};
}

void RequireModel(const std::string& model, const char* role) {
  if (model.empty()) throw Error(ErrorCode::kConfigError, std::string("config has no ") + role);
}

bool SamePair(const std::string& a, const std::string& b, const ModelPair& pair) {
  return a == pair.candidate_a && b == pair.candidate_b;
}

// Queries that take part in generation and judging: those with a sampled
// context once the context stage has run, otherwise all of them.
std::vector<Query> EvaluationQueries(const std::vector<Query>& queries,
                                     const std::map<std::string, SampledContext>& contexts,
                                     const std::vector<EvaluationSetting>& settings) {
  if (contexts.empty()) {
    for (auto s : settings) {
      if (RequiresContext(s)) {
        throw Error(ErrorCode::kMissingArtifact, std::string(kinds::kSampledContexts) + ".jsonl");
      }
    }
    return queries;
  }
  std::vector<Query> out;
  for (const auto& q : queries) {
    if (contexts.count(q.id)) out.push_back(q);
  }
  return out;
}

template <typename T>
std::vector<T> LoadIfPresent(const RunStore& store, std::string_view kind, Tallies* tallies) {
  if (!store.Has(kind)) return {};
  auto loaded = store.Load<T>(kind);
  if (loaded.skipped_partial > 0 && tallies != nullptr) {
    (*tallies)["truncated_lines." + std::string(kind)] += loaded.skipped_partial;
  }
  return std::move(loaded.records);
}

std::vector<GenerationRecord> RequireGenerations(const RunStore& store) {
  return store.Load<GenerationRecord>(kinds::kGenerations).records;
}

std::shared_ptr<Backend> MakeBackend(const ProviderConfig& p) {
  if (p.kind == "mock") return std::make_shared<MockBackend>(MockScript::Load(p.mock_script));
  return std::make_shared<HttpChatBackend>();
}

std::string ReportSchemaText() {
  static const char kSchema[] =
#include "report_schema.inc"
      ;
  return kSchema;
}

}  // namespace

RunContext::RunContext(RunConfig config, std::string config_bytes, StageOptions options)
    : config_(std::move(config)),
      options_(std::move(options)),
      seed_(options_.seed.value_or(config_.seed)),
      store_(std::make_unique<RunStore>(config_.runs_dir, options_.run_id)),
      gateway_(std::make_unique<Gateway>(config_.cache_dir)),
      prompts_(config_.prompts_file ? PromptCatalog::WithOverrides(*config_.prompts_file)
                                    : PromptCatalog::Builtin()),
      now_(MakeTimestampFn(options_.deterministic)) {
  for (const auto& p : config_.providers) gateway_->AddProvider(p, MakeBackend(p));
  for (const auto& m : config_.models) gateway_->AddModel(m.model_id, m.provider_id, m.api_name);
  if (auto limit = options_.max_concurrency ? options_.max_concurrency : config_.max_concurrency) {
    gateway_->SetMaxConcurrency(*limit);
  }
  config_digest_ = store_->SaveConfig(config_bytes);
  RunManifest manifest;
  if (store_->HasManifest()) manifest = store_->LoadManifest();
  manifest.run_id = options_.run_id;
  if (manifest.created_at.empty() || options_.deterministic) manifest.created_at = now_();
  manifest.config_digest = config_digest_;
  manifest.seed = seed_;
  manifest.prompt_catalog_version = prompts_.version();
  manifest.roster.clear();
  for (const auto& p : config_.providers) {
    ProviderRoster roster{p.provider_id, p.kind, {}};
    for (const auto& m : config_.models) {
      if (m.provider_id == p.provider_id) roster.models.push_back(m.model_id);
    }
    manifest.roster.push_back(roster);
  }
  manifest.counts = store_->CountRecords();
  store_->SaveManifest(manifest);
}

std::vector<ModelPair> RunContext::Pairs() const {
  return options_.pairs.empty() ? config_.pairs : options_.pairs;
}

std::vector<EvaluationSetting> RunContext::Settings() const {
  return options_.settings.empty() ? config_.settings : options_.settings;
}

std::vector<ContextualAttribute> RunContext::Attributes() const {
  return config_.attributes_file ? LoadAttributes(*config_.attributes_file) : BuiltinAttributes();
}

void RunContext::Finish(const std::string& stage, const Tallies& tallies) {
  Json all = Json::object();
  if (store_->HasFile(kTalliesFile)) {
    try {
      all = Json::parse(store_->ReadFile(kTalliesFile));
    } catch (const nlohmann::json::exception&) {
      Log(LogLevel::kWarning, "tallies.json unreadable; starting afresh");
    }
  }
  all[stage] = tallies;
  store_->WriteFile(kTalliesFile, all.dump(2) + "\n");
  auto manifest = store_->LoadManifest();
  manifest.counts = store_->CountRecords();
  store_->SaveManifest(manifest);
}

std::vector<Query> EnsureQueries(RunContext& ctx) {
  auto& store = ctx.store();
  if (store.Has(kinds::kQueries) && !ctx.options().queries_file) {
    return store.Load<Query>(kinds::kQueries).records;
  }
  const auto path = ctx.options().queries_file.value_or(ctx.config().queries_file);
  if (path.empty()) {
    throw Error(ErrorCode::kMissingArtifact, std::string(kinds::kQueries) + ".jsonl");
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read query file " + path.string());
  std::vector<Query> queries;
  std::set<std::string> ids;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (Trim(line).empty()) continue;
    Query q;
    try {
      q = ParseRecord<Query>(Json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kValidationError,
                  path.filename().string() + ":" + std::to_string(line_number) + ": " + e.what());
    }
    if (q.id.empty()) q.id = DeriveQueryId(q.source, q.text);
    Validate(q);
    if (!ids.insert(q.id).second) {
      Log(LogLevel::kWarning, "duplicate query " + q.id + " skipped");
      continue;
    }
    queries.push_back(std::move(q));
  }
  store.Rewrite(kinds::kQueries, queries);
  Log(LogLevel::kInfo, "imported " + std::to_string(queries.size()) + " queries");
  return queries;
}

std::map<std::string, SampledContext> LoadSampledContexts(const RunStore& store) {
  std::map<std::string, SampledContext> out;
  if (!store.Has(kinds::kSampledContexts)) return out;
  for (auto& c : store.Load<SampledContext>(kinds::kSampledContexts).records) {
    out.emplace(c.query_id, std::move(c));
  }
  return out;
}

Tallies StageClassify(RunContext& ctx) {
  RequireModel(ctx.config().classifier, "classifier");
  const auto queries = EnsureQueries(ctx);
  ModelAccess models{ctx.gateway(), ctx.prompts()};
  auto results = ParallelMap(queries.size(), ctx.gateway().max_concurrency(),
                             [&](std::size_t i) -> std::optional<Classification> {
                               try {
                                 return Classification{
                                     queries[i].id,
                                     ClassifyQueryTypes(queries[i], ctx.config().classifier, models)};
                               } catch (const Error& e) {
                                 if (e.code() != ErrorCode::kParseFailure) throw;
                                 Log(LogLevel::kWarning, e.what());
                                 return std::nullopt;
                               }
                             });
  Tallies tallies{{"queries", static_cast<int>(queries.size())}, {"classified", 0},
                  {"parse_failures", 0}};
  std::vector<Classification> records;
  for (auto& r : results) {
    if (r) {
      records.push_back(std::move(*r));
      ++tallies["classified"];
    } else {
      ++tallies["parse_failures"];
    }
  }
  ctx.store().Rewrite(kinds::kClassifications, records);
  return tallies;
}

Tallies StageGenContext(RunContext& ctx) {
  const auto& config = ctx.config();
  if (config.generators.empty()) throw Error(ErrorCode::kConfigError, "config has no generators");
  if (config.jurors.empty()) throw Error(ErrorCode::kConfigError, "config has no jurors");
  const auto queries = EnsureQueries(ctx);
  ModelAccess models{ctx.gateway(), ctx.prompts()};
  struct Outcome {
    std::optional<NeedForContextDecision> decision;
    std::optional<ContextSpec> spec;
    std::optional<SampledContext> sampled;
    std::optional<ErrorCode> failure;
    int dropped_by_jury = 0;
    int juror_parse_failures = 0;
    int warnings = 0;
  };
  auto outcomes = ParallelMap(queries.size(), ctx.gateway().max_concurrency(), [&](std::size_t i) {
    Outcome o;
    const auto& q = queries[i];
    try {
      auto followups = GenerateFollowups(q, config.generators, ctx.seed(), models);
      o.warnings = static_cast<int>(followups.warnings.size());
      for (const auto& w : followups.warnings) Log(LogLevel::kWarning, w);
      o.decision = followups.decision;
      if (!followups.spec) return o;
      auto jury = JuryValidate(q, *followups.spec, config.jurors, models);
      o.juror_parse_failures = jury.juror_parse_failures;
      o.dropped_by_jury =
          static_cast<int>(jury.reviewed.size() - jury.retained.followups.size());
      o.sampled = SampleContext(jury.retained, ctx.seed());
      o.spec = std::move(jury.retained);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kGenerationFailed && e.code() != ErrorCode::kEmptyContext) throw;
      Log(LogLevel::kWarning, e.what());
      o.failure = e.code();
    }
    return o;
  });
  Tallies tallies{{"queries", static_cast<int>(queries.size())},
                  {"needs_context", 0},
                  {"no_context_needed", 0},
                  {"generation_failed", 0},
                  {"empty_after_jury", 0},
                  {"followups_retained", 0},
                  {"followups_dropped_by_jury", 0},
                  {"juror_parse_failures", 0},
                  {"generator_warnings", 0}};
  std::vector<Json> decisions;
  std::vector<ContextSpec> specs;
  std::vector<SampledContext> sampled;
  for (auto& o : outcomes) {
    tallies["followups_dropped_by_jury"] += o.dropped_by_jury;
    tallies["juror_parse_failures"] += o.juror_parse_failures;
    tallies["generator_warnings"] += o.warnings;
    if (o.decision) {
      decisions.push_back(DecisionJson(*o.decision));
      ++tallies[o.decision->needs_context ? "needs_context" : "no_context_needed"];
    }
    if (o.failure == ErrorCode::kGenerationFailed) ++tallies["generation_failed"];
    if (o.failure == ErrorCode::kEmptyContext) ++tallies["empty_after_jury"];
    if (o.spec) {
      tallies["followups_retained"] += static_cast<int>(o.spec->followups.size());
      specs.push_back(std::move(*o.spec));
      sampled.push_back(std::move(*o.sampled));
    }
  }
  ctx.store().RewriteJson(kinds::kNeedForContext, decisions);
  ctx.store().Rewrite(kinds::kContexts, specs);
  ctx.store().Rewrite(kinds::kSampledContexts, sampled);
  return tallies;
}

Tallies StageGenerate(RunContext& ctx) {
  const auto queries = EnsureQueries(ctx);
  const auto contexts = LoadSampledContexts(ctx.store());
  const auto settings = ctx.Settings();
  const auto eval = EvaluationQueries(queries, contexts, settings);
  ModelAccess models{ctx.gateway(), ctx.prompts()};

  using Key = std::tuple<std::string, std::string, GenerationMode>;
  std::map<Key, GenerationRecord> merged;
  std::vector<Key> order;
  if (ctx.store().Has(kinds::kGenerations)) {
    for (auto& g : RequireGenerations(ctx.store())) {
      Key key{g.query_id, g.model_id, g.generation_mode};
      merged[key] = std::move(g);
    }
  }
  std::set<GenerationMode> modes;
  for (auto s : settings) modes.insert(GenerationModeFor(s));
  Tallies tallies{{"queries", static_cast<int>(eval.size())}, {"generations", 0}};
  for (const auto& pair : ctx.Pairs()) {
    for (auto mode : modes) {
      const auto representative = mode == GenerationMode::kContextAware
                                      ? EvaluationSetting::kCtxGenCtxEval
                                      : EvaluationSetting::kNoCtxGenNoCtxEval;
      for (auto& g : GeneratePairBattery(eval, pair, representative, contexts, models, ctx.now())) {
        Key key{g.query_id, g.model_id, g.generation_mode};
        merged[key] = std::move(g);
        ++tallies["generations"];
      }
    }
  }
  std::vector<GenerationRecord> records;
  for (auto& [key, g] : merged) records.push_back(std::move(g));
  ctx.store().Rewrite(kinds::kGenerations, records);
  return tallies;
}

Tallies StageJudge(RunContext& ctx) {
  // Upstream artifacts first, so a premature call names what is missing.
  const auto generations = RequireGenerations(ctx.store());
  const auto queries = EnsureQueries(ctx);
  const auto contexts = LoadSampledContexts(ctx.store());
  const auto settings = ctx.Settings();
  const auto eval = EvaluationQueries(queries, contexts, settings);
  const auto raters = ctx.options().raters.empty() ? ctx.config().judges : ctx.options().raters;
  if (raters.empty()) throw Error(ErrorCode::kConfigError, "no raters configured");
  const auto pairs = ctx.Pairs();
  for (const auto& pair : pairs) {
    for (const auto& r : raters) {
      if (r == pair.candidate_a || r == pair.candidate_b) {
        throw Error(ErrorCode::kSelfPreference,
                    "rater " + r + " is a candidate of pair " + pair.label);
      }
    }
  }
  ModelAccess models{ctx.gateway(), ctx.prompts()};
  const auto& config = ctx.config();

  Tallies tallies{{"judgments", 0}, {"unparsed_verdicts", 0}, {"constraint_counts", 0},
                  {"constraint_parse_failures", 0}, {"constraint_out_of_range", 0},
                  {"justifications_labelled", 0}};
  std::vector<JudgmentRecord> fresh;
  std::vector<ConstraintCount> fresh_counts;
  for (const auto& pair : pairs) {
    for (auto setting : settings) {
      auto battery = JudgeBattery(eval, pair, setting, generations, contexts, raters, ctx.seed(),
                                  models);
      tallies["judgments"] += static_cast<int>(battery.records.size());
      tallies["unparsed_verdicts"] += battery.unparsed;
      fresh.insert(fresh.end(), battery.records.begin(), battery.records.end());
      if (!config.constraint_judge.empty() && !contexts.empty()) {
        auto counts = CountConstraintsBattery(eval, pair, setting, generations, contexts,
                                              config.constraint_judge, models);
        tallies["constraint_counts"] += static_cast<int>(counts.counts.size());
        tallies["constraint_parse_failures"] += counts.parse_failures;
        tallies["constraint_out_of_range"] += counts.out_of_range;
        fresh_counts.insert(fresh_counts.end(), counts.counts.begin(), counts.counts.end());
      }
    }
  }
  auto rerun = [&](const std::string& a, const std::string& b, EvaluationSetting s) {
    return std::any_of(pairs.begin(), pairs.end(),
                       [&](const ModelPair& p) { return SamePair(a, b, p); }) &&
           std::find(settings.begin(), settings.end(), s) != settings.end();
  };

  auto judgments = LoadIfPresent<JudgmentRecord>(ctx.store(), kinds::kJudgments, &tallies);
  std::erase_if(judgments, [&](const JudgmentRecord& j) {
    return j.rater_kind == RaterKind::kAutorater && rerun(j.candidate_a, j.candidate_b, j.setting);
  });
  judgments.insert(judgments.end(), fresh.begin(), fresh.end());
  ctx.store().Rewrite(kinds::kJudgments, judgments);

  auto counts = LoadIfPresent<ConstraintCount>(ctx.store(), kinds::kConstraints, &tallies);
  std::erase_if(counts, [&](const ConstraintCount& c) {
    return rerun(c.candidate_a, c.candidate_b, c.setting);
  });
  counts.insert(counts.end(), fresh_counts.begin(), fresh_counts.end());
  ctx.store().Rewrite(kinds::kConstraints, counts);

  if (!config.justification_judge.empty()) {
    auto labels = ParallelMap(fresh.size(), ctx.gateway().max_concurrency(), [&](std::size_t i) {
      const auto& j = fresh[i];
      return JustificationLabel{
          j.task_id, j.rater_id, j.rater_kind, j.setting,
          ClassifyJustification(j.justification, config.justification_judge, models)};
    });
    std::set<std::pair<std::string, std::string>> replaced;
    for (const auto& l : labels) replaced.insert({l.task_id, l.rater_id});
    auto existing =
        LoadIfPresent<JustificationLabel>(ctx.store(), kinds::kJustificationClasses, &tallies);
    std::erase_if(existing, [&](const JustificationLabel& l) {
      return replaced.count({l.task_id, l.rater_id}) > 0;
    });
    existing.insert(existing.end(), labels.begin(), labels.end());
    tallies["justifications_labelled"] = static_cast<int>(labels.size());
    ctx.store().Rewrite(kinds::kJustificationClasses, existing);
  }
  return tallies;
}

AnalysisInputs GatherAnalysisInputs(RunContext& ctx) {
  auto& store = ctx.store();
  AnalysisInputs in;
  Tallies tallies;
  in.judgments = store.Load<JudgmentRecord>(kinds::kJudgments).records;
  in.queries = LoadIfPresent<Query>(store, kinds::kQueries, &tallies);
  for (auto& c : LoadIfPresent<Classification>(store, kinds::kClassifications, &tallies)) {
    in.query_types[c.query_id] = std::move(c.query_types);
  }
  in.constraints = LoadIfPresent<ConstraintCount>(store, kinds::kConstraints, &tallies);
  in.justification_labels =
      LoadIfPresent<JustificationLabel>(store, kinds::kJustificationClasses, &tallies);
  in.ratings = LoadIfPresent<RelevanceRating>(store, kinds::kRatings, &tallies);
  for (const auto& a : ctx.Attributes()) in.attribute_values[a.name] = a.followup.answer_choices;
  if (store.Has(kinds::kAnnotationEvents)) {
    int skips = 0;
    for (const auto& e : store.LoadJson(kinds::kAnnotationEvents).records) {
      skips += e.value("event", "") == "skip";
    }
    tallies["annotation.skips"] = skips;
  }
  if (store.HasFile(kTalliesFile)) {
    const auto stages = Json::parse(store.ReadFile(kTalliesFile));
    for (auto it = stages.begin(); it != stages.end(); ++it) {
      // Analysis stages are excluded so re-running them cannot feed back.
      if (it.key() == "analyze" || it.key() == "report" || it.key() == "serve-annotation") continue;
      for (auto t = it->begin(); t != it->end(); ++t) {
        tallies[it.key() + "." + t.key()] = t->get<int>();
      }
    }
  }
  in.tallies = std::move(tallies);
  return in;
}

Tallies StageAnalyze(RunContext& ctx) {
  auto& store = ctx.store();
  if (!store.Has(kinds::kJudgments)) {
    throw Error(ErrorCode::kMissingArtifact, std::string(kinds::kJudgments) + ".jsonl");
  }
  Tallies tallies{{"justifications_labelled", 0}};
  const auto& judge = ctx.config().justification_judge;
  if (!judge.empty()) {
    // Label judgments that arrived after the judge stage (human ones).
    const auto judgments = store.Load<JudgmentRecord>(kinds::kJudgments).records;
    auto labels = LoadIfPresent<JustificationLabel>(store, kinds::kJustificationClasses, nullptr);
    std::set<std::pair<std::string, std::string>> have;
    for (const auto& l : labels) have.insert({l.task_id, l.rater_id});
    std::vector<const JudgmentRecord*> todo;
    for (const auto& j : judgments) {
      if (!have.count({j.task_id, j.rater_id})) todo.push_back(&j);
    }
    if (!todo.empty()) {
      ModelAccess models{ctx.gateway(), ctx.prompts()};
      auto fresh = ParallelMap(todo.size(), ctx.gateway().max_concurrency(), [&](std::size_t i) {
        const auto& j = *todo[i];
        return JustificationLabel{j.task_id, j.rater_id, j.rater_kind, j.setting,
                                  ClassifyJustification(j.justification, judge, models)};
      });
      labels.insert(labels.end(), fresh.begin(), fresh.end());
      store.Rewrite(kinds::kJustificationClasses, labels);
      tallies["justifications_labelled"] = static_cast<int>(fresh.size());
    }
  }
  AnalysisOptions options;
  options.min_constraint_diff = ctx.options().min_constraint_diff;
  const auto analysis = Analyze(GatherAnalysisInputs(ctx), options);
  store.WriteFile(kAnalysisFile, AnalysisToJson(analysis).dump(2) + "\n");
  tallies["agreement_rows"] = static_cast<int>(analysis.agreement.size());
  return tallies;
}

Tallies StageReport(RunContext& ctx) {
  auto& store = ctx.store();
  if (!store.Has(kinds::kJudgments)) {
    throw Error(ErrorCode::kMissingArtifact, std::string(kinds::kJudgments) + ".jsonl");
  }
  AnalysisOptions options;
  options.min_constraint_diff = ctx.options().min_constraint_diff;
  if (store.HasFile(kAnalysisFile) && options.min_constraint_diff == 0) {
    const auto previous = Json::parse(store.ReadFile(kAnalysisFile));
    options.min_constraint_diff = previous.at("options").value("min_constraint_diff", 0);
  }
  const auto analysis = Analyze(GatherAnalysisInputs(ctx), options);
  auto report = AnalysisToJson(analysis);
  const auto manifest = store.LoadManifest();
  report["run"] = Json{{"run_id", manifest.run_id},
                       {"seed", manifest.seed},
                       {"config_digest", manifest.config_digest},
                       {"prompt_catalog_version", manifest.prompt_catalog_version}};
  const auto errors = SchemaErrors(report, Json::parse(ReportSchemaText()));
  if (!errors.empty()) {
    throw Error(ErrorCode::kValidationError, "report violates schema: " + errors.front());
  }
  store.WriteFile("report.json", report.dump(2) + "\n");
  store.WriteFile("report.md", RenderReportMarkdown(analysis));
  store.WriteFile("figures/bias.csv", BiasCsv(analysis));
  store.WriteFile("figures/sensitivity.csv", SensitivityCsv(analysis));
  store.WriteFile("figures/win_rates.csv", WinRatesCsv(analysis));
  return {{"agreement_rows", static_cast<int>(analysis.agreement.size())},
          {"bias_entries", static_cast<int>(analysis.bias.size())}};
}

namespace {

std::vector<ContextualAttribute> SelectedAttributes(RunContext& ctx) {
  const auto all = ctx.Attributes();
  if (!ctx.options().attribute || ctx.options().attribute->empty()) return all;
  return {FindAttribute(all, *ctx.options().attribute)};
}

Tallies RunRatingStage(RunContext& ctx, ResponseMode mode) {
  const auto& config = ctx.config();
  RequireModel(config.rating_judge, "rating_judge");
  RequireModel(config.bias_candidate, "bias_candidate");
  const auto queries = EnsureQueries(ctx);
  const auto attributes = SelectedAttributes(ctx);
  ModelAccess models{ctx.gateway(), ctx.prompts()};
  Tallies tallies{{"filter_passed", 0}, {"filter_rejected", 0}, {"filter_parse_failures", 0},
                  {"queries_rated", 0}, {"rating_failures", 0}, {"ratings", 0}};
  std::vector<RelevanceRating> fresh;
  for (const auto& attribute : attributes) {
    auto filtered = FilterQueriesForAttribute(queries, attribute, config.rating_judge,
                                              config.filter_cap, ctx.seed(), models);
    tallies["filter_passed"] += filtered.passed;
    tallies["filter_rejected"] += filtered.rejected;
    tallies["filter_parse_failures"] += filtered.parse_failures;
    const auto& retained = filtered.retained;
    struct Rated {
      std::vector<RelevanceRating> ratings;
      int failures = 0;
    };
    auto rated = ParallelMap(retained.size(), ctx.gateway().max_concurrency(), [&](std::size_t i) {
      Rated out;
      const auto& q = retained[i];
      auto rate = [&](const std::string& response) {
        return RateRelevance(q, attribute.name, attribute.followup, response, mode,
                             config.rating_judge, models);
      };
      try {
        if (mode == ResponseMode::kDefault) {
          const auto response = GenerateResponse(q, config.bias_candidate,
                                                 GenerationMode::kContextAgnostic, nullptr,
                                                 models, ctx.now());
          out.ratings = rate(response.text);
          return out;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kParseFailure && e.code() != ErrorCode::kPartialRatings &&
            e.code() != ErrorCode::kEmptyResponse) {
          throw;
        }
        Log(LogLevel::kWarning, e.what());
        ++out.failures;
        return out;
      }
      for (const auto& value : attribute.followup.answer_choices) {
        try {
          const SampledContext adapted{q.id, {QAPair{attribute.followup.question, value}}, 0};
          const auto response = GenerateResponse(q, config.bias_candidate,
                                                 GenerationMode::kContextAware, &adapted, models,
                                                 ctx.now());
          for (auto& r : rate(response.text)) {
            if (r.attribute_value == value) out.ratings.push_back(std::move(r));
          }
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kParseFailure && e.code() != ErrorCode::kPartialRatings &&
              e.code() != ErrorCode::kEmptyResponse) {
            throw;
          }
          Log(LogLevel::kWarning, e.what());
          ++out.failures;
        }
      }
      return out;
    });
    for (auto& r : rated) {
      tallies["rating_failures"] += r.failures;
      if (!r.ratings.empty()) ++tallies["queries_rated"];
      fresh.insert(fresh.end(), r.ratings.begin(), r.ratings.end());
    }
  }
  std::set<std::string> names;
  for (const auto& a : attributes) names.insert(a.name);
  auto ratings = LoadIfPresent<RelevanceRating>(ctx.store(), kinds::kRatings, &tallies);
  std::erase_if(ratings, [&](const RelevanceRating& r) {
    return r.response_mode == mode && names.count(r.attribute) > 0;
  });
  ratings.insert(ratings.end(), fresh.begin(), fresh.end());
  tallies["ratings"] = static_cast<int>(fresh.size());
  ctx.store().Rewrite(kinds::kRatings, ratings);
  return tallies;
}

}  // namespace

Tallies StageBias(RunContext& ctx) { return RunRatingStage(ctx, ResponseMode::kDefault); }

Tallies StageSensitivity(RunContext& ctx) { return RunRatingStage(ctx, ResponseMode::kAdapted); }

Tallies StageServeAnnotation(RunContext& ctx) {
  const auto generations = RequireGenerations(ctx.store());
  const auto queries = EnsureQueries(ctx);
  const auto contexts = LoadSampledContexts(ctx.store());
  const auto& a = ctx.config().annotation;
  auto tasks = BuildAnnotationTasks(queries, ctx.Pairs(), ctx.Settings(), generations, contexts);
  AnnotationOptions options;
  options.judgments_per_task = a.judgments_per_task;
  options.quota = a.quota;
  options.lease = std::chrono::minutes(a.lease_minutes);
  options.starve_after_skips = a.starve_after_skips;
  options.seed = ctx.seed();
  const auto n_tasks = static_cast<int>(tasks.size());
  AnnotationService service(std::move(tasks), options, &ctx.store(),
                            std::chrono::system_clock::now, ctx.now());
  ServerOptions server_options;
  server_options.host = a.host;
  server_options.port = a.port;
  server_options.static_dir = a.static_dir;
  if (!a.token_env.empty()) {
    const char* token = std::getenv(a.token_env.c_str());
    if (token == nullptr || *token == '\0') {
      throw Error(ErrorCode::kCredentialMissing, "annotation token variable " + a.token_env);
    }
    server_options.token = token;
  }
  AnnotationServer server(service, server_options);
  Log(LogLevel::kInfo, "serving " + std::to_string(n_tasks) + " tasks on " + a.host + ":" +
                           std::to_string(a.port));
  server.Run();
  return {{"tasks", n_tasks}};
}

}  // namespace ctxeval
