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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <boost/math/distributions/students_t.hpp>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ctxeval/analytics/schema.h"
#include "ctxeval/analytics/stats.h"
#include "ctxeval/cli/cli.h"
#include "ctxeval/core/error.h"
#include "ctxeval/judging/judging.h"
#include "ctxeval/judging/parse.h"
#include "testing/util.h"

namespace ctxeval {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

// Collects failure reasons for one criterion.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  std::string Summary() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < failures_.size() && i < 3; ++i) {
      out << (i ? "; " : "") << failures_[i];
    }
    if (failures_.size() > 3) out << "; +" << failures_.size() - 3 << " more";
    return out.str();
  }

 private:
  std::vector<std::string> failures_;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool Near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

VoteMatrix Matrix(const std::vector<std::vector<Verdict>>& items) {
  std::map<std::string, std::vector<Verdict>> votes;
  for (std::size_t i = 0; i < items.size(); ++i) votes["item" + std::to_string(100 + i)] = items[i];
  return BuildVoteMatrix(votes, static_cast<int>(items.front().size()));
}

// Ordered rater pairs that agree, and chance agreement from pooled shares.
double BruteForceKappa(const std::vector<std::vector<int>>& labels) {
  const double n_items = static_cast<double>(labels.size());
  const double raters = static_cast<double>(labels.front().size());
  double p_bar = 0.0;
  std::vector<double> share(3, 0.0);
  for (const auto& item : labels) {
    int agree = 0;
    for (std::size_t i = 0; i < item.size(); ++i) {
      share[item[i]] += 1.0;
      for (std::size_t k = 0; k < item.size(); ++k) {
        if (i != k && item[i] == item[k]) ++agree;
      }
    }
    p_bar += agree / (raters * (raters - 1.0));
  }
  p_bar /= n_items;
  double p_e = 0.0;
  for (double s : share) p_e += (s / (n_items * raters)) * (s / (n_items * raters));
  return (p_bar - p_e) / (1.0 - p_e);
}

std::vector<std::string> CliArgs(const fs::path& config, const std::string& run_id,
                                  std::vector<std::string> rest) {
  std::vector<std::string> args{"--config", config.string(), "--run-id", run_id,
                                "--deterministic"};
  args.insert(args.end(), rest.begin(), rest.end());
  return args;
}

// Runs stages in order; every one must exit 0 and report zero network calls.
void RunStages(Check& c, const fs::path& config, const std::string& run_id,
               const std::vector<std::string>& stages) {
  for (const auto& stage : stages) {
    const auto r = testing::Cli(CliArgs(config, run_id, {stage}));
    c.Expect(r.code == kExitOk, stage + " exited " + std::to_string(r.code) + ": " + r.err);
    c.Expect(r.err.find(stage + ".network_calls = 0") != std::string::npos,
             stage + " made network calls");
  }
}

void StatisticsOracles(Check& c) {
  const auto start = Clock::now();
  c.Expect(FleissKappa(Matrix({{Verdict::kA, Verdict::kA}, {Verdict::kA, Verdict::kB}})) ==
               -1.0 / 3.0,
           "Fleiss hand case");
  testing::Gen gen(1234);
  int checked = 0;
  while (checked < 100) {
    const int raters = gen.Int(3, 7);
    const int items = gen.Int(5, 50);
    std::vector<std::vector<int>> labels(items, std::vector<int>(raters));
    std::map<std::string, std::vector<Verdict>> votes;
    std::set<int> seen;
    for (int i = 0; i < items; ++i) {
      for (int r = 0; r < raters; ++r) {
        labels[i][r] = gen.Int(0, 2);
        seen.insert(labels[i][r]);
        votes["i" + std::to_string(1000 + i)].push_back(static_cast<Verdict>(labels[i][r]));
      }
    }
    if (seen.size() < 2) continue;
    const double kappa = FleissKappa(BuildVoteMatrix(votes, raters));
    c.Expect(Near(kappa, BruteForceKappa(labels), 1e-9),
             "Fleiss matrix " + std::to_string(checked));
    ++checked;
  }

  const std::vector<double> d = {0.2, -0.1, 0.3, 0.0, 0.1};
  const auto frozen = PairedTTest(d, std::vector<double>(d.size(), 0.0));
  c.Expect(Near(frozen.t, 1.4142135623730951, 1e-12) && frozen.df == 4 &&
               Near(frozen.p_two_sided, 0.23019964108049873, 1e-9),
           "frozen t-test");
  testing::Gen tgen(99);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = tgen.Int(3, 40);
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = tgen.Uniform() * 100.0;
      y[i] = x[i] + (tgen.Uniform() - 0.45) * 20.0;
    }
    const auto r = PairedTTest(x, y);
    boost::math::students_t dist(n - 1);
    const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(r.t)));
    c.Expect(Near(r.p_two_sided, p, 1e-6), "t-test p vs reference, trial " + std::to_string(trial));
  }
  c.Expect(Seconds(start) < 10.0, "oracle suite took over 10 s");
}

void FlipFixture(Check& c) {
  const auto start = Clock::now();
  testing::TempDir dir;
  const auto config = testing::CopyFixture("flip100", dir.path());
  RunStages(c, config, "flip", {"classify", "gen-context", "generate", "judge", "analyze"});
  if (!c.ok()) return;
  const auto expected = Json::parse(testing::ReadText(dir.path() / "expected.json"));
  const auto analysis =
      Json::parse(testing::ReadText(dir.path() / "runs" / "flip" / "analysis.json"));
  int matched = 0;
  for (const auto& w : analysis.at("win_rates")) {
    const std::string setting = w.at("setting");
    if (!expected.contains(setting) || w.at("rater_kind") != "Autorater") continue;
    const auto& e = expected[setting];
    c.Expect(w.at("count_a") == e.at("a") && w.at("count_b") == e.at("b") &&
                 w.at("count_tie") == e.at("tie"),
             setting + " win rates " + w.dump());
    ++matched;
  }
  c.Expect(matched == 2, "expected two settings in analysis");
  c.Expect(Seconds(start) < 60.0, "flip fixture took over 60 s");
}

GenerationRecord Gen(const std::string& qid, const std::string& model, const std::string& text) {
  return GenerationRecord{qid, model, GenerationMode::kContextAgnostic, std::nullopt, text, {}};
}

JudgeTask TaskFor(int i, const std::string& rater, std::uint64_t seed) {
  const Query q{"q" + std::to_string(i), "Query " + std::to_string(i), "t", {}};
  return MakeJudgeTask(q, EvaluationSetting::kNoCtxGenNoCtxEval, Gen(q.id, "alpha", "ALPHA text"),
                       Gen(q.id, "beta", "BETA text"), nullptr, rater, seed);
}

void OrderDebias(Check& c) {
  testing::MockModels first(MockScript().SetDefault(R"(**output: {"judgement": "Response 1"}**)"),
                            {"j"}, 8);
  int a = 0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    a += JudgePair(TaskFor(i, "j", 2024), first.access()).canonical_verdict == Verdict::kA;
  }
  const double share = a / static_cast<double>(n);
  c.Expect(std::fabs(share - 0.5) <= 0.047, "A share " + std::to_string(share));

  MockScript script;
  script.AddHandler([](const ChatRequest& r) -> std::optional<std::string> {
    const auto q = r.prompt.find("Query: Query ");
    const int i = std::stoi(r.prompt.substr(q + 13));
    const bool first_is_alpha = r.prompt.find("Response 1: ALPHA") != std::string::npos;
    return std::string(R"(**output: {"judgement": ")") +
           ((i % 2 == 0) == first_is_alpha ? "Response 1" : "Response 2") + "\"}**";
  });
  testing::MockModels keyed(std::move(script), {"j"});
  for (int i = 0; i < 200; ++i) {
    auto task = TaskFor(i, "j", 5);
    task.presented_first = Position::kA;
    const auto ab = JudgePair(task, keyed.access()).canonical_verdict;
    task.presented_first = Position::kB;
    const auto ba = JudgePair(task, keyed.access()).canonical_verdict;
    c.Expect(ab == ba && ab == (i % 2 == 0 ? Verdict::kA : Verdict::kB),
             "order changed verdict on query " + std::to_string(i));
  }
}

void ParserCorpus(Check& c) {
  const auto corpus = Json::parse(testing::ReadText(testing::FixtureDir() / "parser_corpus.json"));
  c.Expect(corpus.size() == 40, "corpus size");
  int correct = 0;
  for (const auto& item : corpus) {
    const auto got = ParseVerdict(item.at("text").get<std::string>());
    const auto want = ParseEnum<RawVerdict>(item.at("label").get<std::string>());
    if (got == want) {
      ++correct;
    } else {
      c.Expect(got == RawVerdict::kUnparsed, "wrong verdict for " + item.at("text").dump());
    }
  }
  c.Expect(correct >= 38, std::to_string(correct) + "/40 correct");
}

void ContextPipeline(Check& c) {
  testing::TempDir dir;
  const auto config = testing::CopyFixture("pipeline20", dir.path());
  RunStages(c, config, "ctx1", {"classify", "gen-context"});
  RunStages(c, config, "ctx2", {"classify", "gen-context"});
  if (!c.ok()) return;
  const auto one = testing::ReadText(dir.path() / "runs" / "ctx1" / "contexts.jsonl");
  const auto two = testing::ReadText(dir.path() / "runs" / "ctx2" / "contexts.jsonl");
  c.Expect(one == two, "contexts.jsonl differs between runs");
  bool saw_p07 = false;
  for (const auto& ctx : testing::ReadJsonl(dir.path() / "runs" / "ctx1" / "contexts.jsonl")) {
    const auto& followups = ctx.at("followups");
    c.Expect(followups.size() <= 10, "more than 10 followups");
    for (const auto& f : followups) {
      for (const auto& v : f.at("jury_votes")) {
        c.Expect(v.at("vote").get<bool>(), "retained followup with a No vote");
      }
    }
    if (ctx.at("query_id") != "p07") continue;
    saw_p07 = followups.size() == 2;
    for (const auto& f : followups) {
      c.Expect(f.at("question") != "How long should the answer be?",
               "followup with a dissenting juror retained");
    }
  }
  c.Expect(saw_p07, "p07 should keep exactly two followups");
}

void SensitivityBias(Check& c) {
  c.Expect(MaxDifference({5, 5, 3, 3, 2}) == 3, "max diff of [5,5,3,3,2]");
  c.Expect(MaxDifference({4, 4, 4, 4, 4}) == 0, "max diff of [4,4,4,4,4]");
  const auto dir = testing::FixtureDir() / "sensitivity50";
  const auto expected = Json::parse(testing::ReadText(dir / "expected.json"));
  std::vector<RelevanceRating> ratings;
  for (const auto& j : testing::ReadJsonl(dir / "ratings.jsonl")) {
    ratings.push_back(j.get<RelevanceRating>());
  }
  const auto h = SensitivityHistograms(
      ratings, {{"Expertise", expected.at("values").get<std::vector<std::string>>()}});
  if (h.size() != 1) {
    c.Expect(false, "expected one histogram");
    return;
  }
  c.Expect(h[0].n_cells == expected.at("n_cells"), "n_cells");
  c.Expect(h[0].n_excluded == expected.at("n_excluded"), "n_excluded");
  for (int d = 0; d <= kMaxRatingSpread; ++d) {
    c.Expect(h[0].counts[d] == expected.at("counts")[d], "count at " + std::to_string(d));
    c.Expect(Near(h[0].pct[d], expected.at("pct")[d].get<double>(), 1e-9),
             "pct at " + std::to_string(d));
  }
}

double Round2(double x) { return std::round(x * 100.0) / 100.0; }

struct PipelineRun {
  testing::TempDir dir;
  fs::path config;
  fs::path run;
  double seconds = 0.0;
  Check check;
};

void RunPipeline(PipelineRun& p) {
  const auto start = Clock::now();
  p.config = testing::CopyFixture("pipeline20", p.dir.path());
  p.run = p.dir.path() / "runs" / "full";
  RunStages(p.check, p.config, "full",
            {"classify", "gen-context", "generate", "judge", "analyze", "report"});
  p.seconds = Seconds(start);
}

void AgreementAndReport(Check& c, const PipelineRun& p) {
  constexpr Verdict A = Verdict::kA, B = Verdict::kB, T = Verdict::kTie;
  const auto one = ComputeAgreement(Matrix({{A, A, B}}));
  c.Expect(Round2(*one.with_ties) == 66.67, "[A,A,B] agreement");
  const auto tie = ComputeAgreement(Matrix({{A, T, A}}));
  c.Expect(Round2(*tie.with_ties) == 66.67 && *tie.without_ties == 100.0, "[A,T,A] agreement");
  const auto two = ComputeAgreement(Matrix({{A, A, A}, {B, B, A}}));
  c.Expect(Round2(*two.with_ties) == 83.33, "two-item agreement");

  if (!p.check.ok()) {
    c.Expect(false, "pipeline failed: " + p.check.Summary());
    return;
  }
  const auto schema = Json::parse(testing::ReadText(testing::DocsDir() / "report.schema.json"));
  const auto report = Json::parse(testing::ReadText(p.run / "report.json"));
  for (const auto& e : SchemaErrors(report, schema)) c.Expect(false, "schema: " + e);

  const auto before = testing::ReadText(p.run / "analysis.json");
  const auto r = testing::Cli(CliArgs(p.config, "full", {"analyze"}));
  c.Expect(r.code == kExitOk, "re-run of analyze failed");
  c.Expect(testing::ReadText(p.run / "analysis.json") == before, "analysis.json not byte-stable");
}

void PipelineIntegrity(Check& c, const PipelineRun& p) {
  testing::MockModels models(MockScript().SetDefault("x"), {"alpha", "beta", "j"});
  const std::vector<Query> queries = {Query{"q0", "Query 0", "t", {}}};
  const std::vector<GenerationRecord> gens = {Gen("q0", "alpha", "A"), Gen("q0", "beta", "B")};
  try {
    JudgeBattery(queries, ModelPair{"alpha", "beta", "ab"}, EvaluationSetting::kNoCtxGenNoCtxEval,
                 gens, {}, {"j", "beta"}, 1, models.access());
    c.Expect(false, "candidate rater accepted");
  } catch (const Error& e) {
    c.Expect(e.code() == ErrorCode::kSelfPreference, std::string("wrong error: ") + e.what());
  }
  c.Expect(models.backend->calls() == 0, "guard issued backend calls");

  testing::TempDir fresh;
  const auto config = testing::CopyFixture("pipeline20", fresh.path());
  const auto early = testing::Cli(CliArgs(config, "early", {"judge"}));
  c.Expect(early.code == kExitFailure && early.err.find("MissingArtifact") != std::string::npos &&
               early.err.find("generations.jsonl") != std::string::npos,
           "judge before generate: " + early.err);

  if (!p.check.ok()) {
    c.Expect(false, "pipeline failed: " + p.check.Summary());
    return;
  }
  const auto self = testing::Cli(CliArgs(p.config, "full", {"judge", "--raters", "alpha"}));
  c.Expect(self.code == kExitFailure && self.err.find("SelfPreference") != std::string::npos,
           "CLI self-preference: " + self.err);
  c.Expect(p.seconds < 300.0, "full pipeline took " + std::to_string(p.seconds) + " s");
}

}  // namespace
}  // namespace ctxeval

int main() {
  using namespace ctxeval;
  PipelineRun pipeline;
  bool pipeline_ran = false;
  auto ensure_pipeline = [&] {
    if (!pipeline_ran) RunPipeline(pipeline);
    pipeline_ran = true;
  };

  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"statistics oracles (Fleiss, paired t-test)", StatisticsOracles},
      {"flip fixture win rates via CLI", FlipFixture},
      {"position debiasing and order invariance", OrderDebias},
      {"verdict parser corpus", ParserCorpus},
      {"context generation determinism and jury filter", ContextPipeline},
      {"sensitivity and bias statistics", SensitivityBias},
      {"agreement examples, report schema, byte-stable analyze",
       [&](Check& c) {
         ensure_pipeline();
         AgreementAndReport(c, pipeline);
       }},
      {"pipeline integrity (guards, offline, runtime)",
       [&](Check& c) {
         ensure_pipeline();
         PipelineIntegrity(c, pipeline);
       }},
  };

  int failed = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Check c;
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.Expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (c.ok() ? "PASS" : "FAIL") << " [" << index << "] " << name;
    if (!c.ok()) {
      std::cout << ": " << c.Summary();
      ++failed;
    }
    std::cout << "\n";
  }
  return failed == 0 ? 0 : 1;
}
