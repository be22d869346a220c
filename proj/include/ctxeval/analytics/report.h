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

#ifndef CTXEVAL_ANALYTICS_REPORT_H_
#define CTXEVAL_ANALYTICS_REPORT_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctxeval/analytics/stats.h"
#include "ctxeval/core/json.h"
#include "ctxeval/core/types.h"
#include "ctxeval/judging/judging.h"

namespace ctxeval {

inline constexpr const char* kReportVersion = "ctxeval-report/1";
inline constexpr double kSignificanceLevel = 0.05;

struct AnalysisInputs {
  std::vector<Query> queries;
  std::map<std::string, QueryTypeSet> query_types;  // by query id
  std::vector<JudgmentRecord> judgments;
  std::vector<ConstraintCount> constraints;
  std::vector<JustificationLabel> justification_labels;
  std::vector<RelevanceRating> ratings;
  // Expected values per attribute for sensitivity cells.
  std::map<std::string, std::vector<std::string>> attribute_values;
  // Counts surfaced verbatim in the report (skips, parse failures, ...).
  std::map<std::string, int> tallies;
};

struct AnalysisOptions {
  // Agreement rows keep only queries whose constraint counts for the pair
  // and setting differ by at least this much. 0 disables the filter.
  int min_constraint_diff = 0;
  EvaluationSetting baseline = EvaluationSetting::kNoCtxGenNoCtxEval;
};

struct AgreementRow {
  std::string candidate_a;
  std::string candidate_b;
  EvaluationSetting setting = EvaluationSetting::kNoCtxGenNoCtxEval;
  RaterKind rater_kind = RaterKind::kAutorater;
  int raters_per_item = 0;
  int n_tasks = 0;
  int n_incomplete = 0;    // tasks lacking a full set of valid votes
  int n_filtered_out = 0;  // tasks removed by the constraint-difference filter
  int unparsed_votes = 0;
  AgreementPercentages agreement;
  std::optional<double> fleiss_kappa;
  std::optional<TTestResult> vs_baseline;
  int n_paired = 0;
  bool significant = false;
};

struct WinRateRow {
  std::string candidate_a;
  std::string candidate_b;
  EvaluationSetting setting = EvaluationSetting::kNoCtxGenNoCtxEval;
  RaterKind rater_kind = RaterKind::kAutorater;
  std::optional<WinRateSummary> summary;  // absent when no task has a majority
  int n_tasks = 0;
};

struct ConstraintRow {
  std::string candidate_a;
  std::string candidate_b;
  EvaluationSetting setting = EvaluationSetting::kNoCtxGenNoCtxEval;
  ConstraintSummary summary;
};

struct JustificationRow {
  RaterKind rater_kind = RaterKind::kAutorater;
  EvaluationSetting setting = EvaluationSetting::kNoCtxGenNoCtxEval;
  ClassShares shares;
};

struct Analysis {
  AnalysisOptions options;
  int n_queries = 0;
  int n_classified = 0;
  std::map<std::string, int> query_type_counts;
  std::vector<AgreementRow> agreement;
  std::vector<WinRateRow> win_rates;
  std::vector<ConstraintRow> constraints;
  std::vector<JustificationRow> justifications;
  std::vector<BiasEntry> bias;
  std::vector<SensitivityHistogram> sensitivity;
  std::map<std::string, int> tallies;
};

// Pure and deterministic: equal inputs give equal output regardless of record
// order within each group.
Analysis Analyze(const AnalysisInputs& inputs, const AnalysisOptions& options = {});

Json AnalysisToJson(const Analysis& analysis);
std::string RenderReportMarkdown(const Analysis& analysis);
// figures/bias.csv: attribute,attribute_value,mean_rating,count
std::string BiasCsv(const Analysis& analysis);
// figures/sensitivity.csv: attribute,max_diff,count,percent
std::string SensitivityCsv(const Analysis& analysis);
// figures/win_rates.csv: candidate_a,candidate_b,setting,rater_kind,pct_a,pct_b,pct_tie,n_included,n_no_majority
std::string WinRatesCsv(const Analysis& analysis);

}  // namespace ctxeval

#endif  // CTXEVAL_ANALYTICS_REPORT_H_
