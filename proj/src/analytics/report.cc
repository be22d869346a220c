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

#include "ctxeval/analytics/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <tuple>

namespace ctxeval {
namespace {

using GroupKey = std::tuple<std::string, std::string, EvaluationSetting, RaterKind>;

struct TaskVotes {
  std::string query_id;
  std::vector<Verdict> votes;  // valid votes only
  int records = 0;
};

std::string Fixed(double v, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, v);
  return buffer;
}

std::string Pct(const std::optional<double>& v) { return v ? Fixed(*v, 2) : "n/a"; }

std::string CsvField(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Json NullableNumber(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

// Agreement share per query for the items of one group that have a majority.
std::map<std::string, double> SharesByQuery(const VoteMatrix& m,
                                            const std::map<std::string, TaskVotes>& tasks) {
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (auto share = AgreementShare(m.counts[i])) out[tasks.at(m.items[i]).query_id] = *share;
  }
  return out;
}

struct GroupAnalysis {
  AgreementRow row;
  std::map<std::string, double> shares;
};

}  // namespace

Analysis Analyze(const AnalysisInputs& inputs, const AnalysisOptions& options) {
  Analysis out;
  out.options = options;
  out.tallies = inputs.tallies;
  out.n_queries = static_cast<int>(inputs.queries.size());
  for (auto t : AllEnumValues<QueryType>()) out.query_type_counts[std::string(EnumName(t))] = 0;
  for (const auto& [qid, types] : inputs.query_types) {
    ++out.n_classified;
    for (auto t : types) ++out.query_type_counts[std::string(EnumName(t))];
  }

  // (task_id, model_id) -> satisfied
  std::map<std::pair<std::string, std::string>, int> counts_by_task;
  for (const auto& c : inputs.constraints) counts_by_task[{c.task_id, c.model_id}] = c.satisfied;

  std::map<GroupKey, std::map<std::string, TaskVotes>> groups;
  for (const auto& j : inputs.judgments) {
    auto& task = groups[{j.candidate_a, j.candidate_b, j.setting, j.rater_kind}][j.task_id];
    task.query_id = j.query_id;
    ++task.records;
    if (j.canonical_verdict != Verdict::kInvalid) task.votes.push_back(j.canonical_verdict);
  }

  std::map<GroupKey, GroupAnalysis> analyzed;
  int total_unparsed = 0;
  for (const auto& [key, tasks] : groups) {
    const auto& [a, b, setting, kind] = key;
    GroupAnalysis g;
    auto& row = g.row;
    row.candidate_a = a;
    row.candidate_b = b;
    row.setting = setting;
    row.rater_kind = kind;
    row.n_tasks = static_cast<int>(tasks.size());

    WinRateRow win;
    win.candidate_a = a;
    win.candidate_b = b;
    win.setting = setting;
    win.rater_kind = kind;
    win.n_tasks = row.n_tasks;
    std::vector<Majority> majorities;
    std::map<std::string, std::vector<Verdict>> votes;
    for (const auto& [task_id, t] : tasks) {
      row.raters_per_item = std::max(row.raters_per_item, t.records);
      row.unparsed_votes += t.records - static_cast<int>(t.votes.size());
      majorities.push_back(t.votes.empty() ? Majority::kNoMajority : MajorityVote(t.votes));
      if (options.min_constraint_diff > 0) {
        auto ca = counts_by_task.find({task_id, a});
        auto cb = counts_by_task.find({task_id, b});
        if (ca == counts_by_task.end() || cb == counts_by_task.end() ||
            std::abs(ca->second - cb->second) < options.min_constraint_diff) {
          ++row.n_filtered_out;
          continue;
        }
      }
      votes[task_id] = t.votes;
    }
    total_unparsed += row.unparsed_votes;
    try {
      win.summary = WinRates(majorities);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyAfterExclusion) throw;
    }
    out.win_rates.push_back(win);

    const auto matrix = BuildVoteMatrix(votes, row.raters_per_item, &row.n_incomplete);
    if (row.raters_per_item >= 2 && matrix.size() > 0) {
      row.agreement = ComputeAgreement(matrix);
      try {
        row.fleiss_kappa = FleissKappa(matrix);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kUndefined) throw;
      }
      g.shares = SharesByQuery(matrix, tasks);
    }
    analyzed.emplace(key, std::move(g));
  }

  for (auto& [key, g] : analyzed) {
    const auto& [a, b, setting, kind] = key;
    if (setting != options.baseline) {
      auto base = analyzed.find({a, b, options.baseline, kind});
      if (base != analyzed.end()) {
        std::vector<double> x;
        std::vector<double> y;
        for (const auto& [query, share] : g.shares) {
          auto it = base->second.shares.find(query);
          if (it == base->second.shares.end()) continue;
          x.push_back(share);
          y.push_back(it->second);
        }
        g.row.n_paired = static_cast<int>(x.size());
        if (x.size() >= 2) {
          g.row.vs_baseline = PairedTTest(x, y);
          g.row.significant = g.row.vs_baseline->p_two_sided < kSignificanceLevel;
        }
      }
    }
    out.agreement.push_back(g.row);
  }
  out.tallies["unparsed_verdicts"] = total_unparsed;

  // Constraint summaries per (pair, setting).
  std::map<std::tuple<std::string, std::string, EvaluationSetting>,
           std::map<std::string, std::pair<std::optional<int>, std::optional<int>>>>
      by_pair;
  for (const auto& c : inputs.constraints) {
    auto& cell = by_pair[{c.candidate_a, c.candidate_b, c.setting}][c.task_id];
    (c.model_id == c.candidate_a ? cell.first : cell.second) = c.satisfied;
  }
  for (const auto& [key, tasks] : by_pair) {
    std::vector<std::pair<int, int>> pairs;
    int unpaired = 0;
    for (const auto& [task, cell] : tasks) {
      if (cell.first && cell.second) {
        pairs.emplace_back(*cell.first, *cell.second);
      } else {
        ++unpaired;
      }
    }
    if (pairs.empty()) continue;
    ConstraintRow row;
    std::tie(row.candidate_a, row.candidate_b, row.setting) = key;
    row.summary = SummarizeConstraints(pairs);
    row.summary.n_unpaired = unpaired;
    out.constraints.push_back(row);
  }

  std::map<std::pair<RaterKind, EvaluationSetting>, std::vector<JustificationClass>> strata;
  for (const auto& l : inputs.justification_labels) {
    strata[{l.rater_kind, l.setting}].push_back(l.justification_class);
  }
  for (const auto& [key, classes] : strata) {
    if (classes.empty()) continue;
    out.justifications.push_back(JustificationRow{key.first, key.second, ShareOfClasses(classes)});
  }

  auto ratings = inputs.ratings;
  std::stable_sort(ratings.begin(), ratings.end(), [](const auto& l, const auto& r) {
    return std::tie(l.attribute, l.query_id) < std::tie(r.attribute, r.query_id);
  });
  out.bias = BiasProfile(ratings);
  // Present values in the attribute's declared order when known.
  std::stable_sort(out.bias.begin(), out.bias.end(), [&](const BiasEntry& l, const BiasEntry& r) {
    if (l.attribute != r.attribute) return l.attribute < r.attribute;
    auto it = inputs.attribute_values.find(l.attribute);
    if (it == inputs.attribute_values.end()) return l.attribute_value < r.attribute_value;
    const auto& order = it->second;
    return std::find(order.begin(), order.end(), l.attribute_value) <
           std::find(order.begin(), order.end(), r.attribute_value);
  });
  out.sensitivity = SensitivityHistograms(ratings, inputs.attribute_values);
  return out;
}

Json AnalysisToJson(const Analysis& analysis) {
  Json agreement = Json::array();
  for (const auto& r : analysis.agreement) {
    Json t = nullptr;
    if (r.vs_baseline) {
      t = Json{{"t", NullableNumber(r.vs_baseline->t)},
               {"df", r.vs_baseline->df},
               {"p_two_sided", r.vs_baseline->p_two_sided},
               {"degenerate", r.vs_baseline->degenerate}};
    }
    agreement.push_back(Json{{"candidate_a", r.candidate_a},
                             {"candidate_b", r.candidate_b},
                             {"setting", EnumName(r.setting)},
                             {"rater_kind", EnumName(r.rater_kind)},
                             {"raters_per_item", r.raters_per_item},
                             {"n_tasks", r.n_tasks},
                             {"n_items", r.agreement.n_with_majority},
                             {"n_no_majority", r.agreement.n_no_majority},
                             {"n_incomplete", r.n_incomplete},
                             {"n_filtered_out", r.n_filtered_out},
                             {"n_dropped_without_ties", r.agreement.n_dropped_without_ties},
                             {"unparsed_votes", r.unparsed_votes},
                             {"agreement_with_ties", NullableNumber(r.agreement.with_ties)},
                             {"agreement_without_ties", NullableNumber(r.agreement.without_ties)},
                             {"fleiss_kappa", NullableNumber(r.fleiss_kappa)},
                             {"t_test_vs_baseline", t},
                             {"n_paired", r.n_paired},
                             {"significant", r.significant}});
  }
  Json wins = Json::array();
  for (const auto& w : analysis.win_rates) {
    Json row{{"candidate_a", w.candidate_a},
             {"candidate_b", w.candidate_b},
             {"setting", EnumName(w.setting)},
             {"rater_kind", EnumName(w.rater_kind)},
             {"n_tasks", w.n_tasks}};
    if (w.summary) {
      row["pct_a"] = w.summary->pct_a;
      row["pct_b"] = w.summary->pct_b;
      row["pct_tie"] = w.summary->pct_tie;
      row["count_a"] = w.summary->count_a;
      row["count_b"] = w.summary->count_b;
      row["count_tie"] = w.summary->count_tie;
      row["n_included"] = w.summary->n_included;
      row["n_no_majority"] = w.summary->n_no_majority;
    } else {
      for (const char* k : {"pct_a", "pct_b", "pct_tie"}) row[k] = nullptr;
      for (const char* k : {"count_a", "count_b", "count_tie", "n_included"}) row[k] = 0;
      row["n_no_majority"] = w.n_tasks;
    }
    wins.push_back(row);
  }
  Json constraints = Json::array();
  for (const auto& c : analysis.constraints) {
    constraints.push_back(Json{{"candidate_a", c.candidate_a},
                               {"candidate_b", c.candidate_b},
                               {"setting", EnumName(c.setting)},
                               {"mean_a", c.summary.mean_a},
                               {"mean_b", c.summary.mean_b},
                               {"mean_abs_diff", c.summary.mean_abs_diff},
                               {"n_queries", c.summary.n_queries},
                               {"n_unpaired", c.summary.n_unpaired}});
  }
  Json justifications = Json::array();
  for (const auto& j : analysis.justifications) {
    justifications.push_back(Json{{"rater_kind", EnumName(j.rater_kind)},
                                  {"setting", EnumName(j.setting)},
                                  {"pct_surface", j.shares.pct_surface},
                                  {"pct_content", j.shares.pct_content},
                                  {"pct_unknown", j.shares.pct_unknown},
                                  {"n", j.shares.n}});
  }
  Json bias = Json::array();
  for (const auto& b : analysis.bias) {
    bias.push_back(Json{{"attribute", b.attribute},
                        {"attribute_value", b.attribute_value},
                        {"mean_rating", b.mean_rating},
                        {"count", b.count}});
  }
  Json sensitivity = Json::array();
  for (const auto& s : analysis.sensitivity) {
    sensitivity.push_back(Json{{"attribute", s.attribute},
                               {"counts", s.counts},
                               {"pct", s.pct},
                               {"n_cells", s.n_cells},
                               {"n_excluded", s.n_excluded}});
  }
  return Json{
      {"report_version", kReportVersion},
      {"definitions",
       {{"agreement_with_ties",
         "mean over items with a plurality majority of the share of votes matching it"},
        {"agreement_without_ties",
         "same share after deleting Tie votes; items left with fewer than two votes or no "
         "majority drop out"},
        {"fleiss_kappa", "Fleiss' kappa over categories A, B, Tie with a fixed rater count"},
        {"t_test_vs_baseline",
         "paired t-test on per-query agreement shares against the baseline setting, same pair "
         "and rater kind"},
        {"significance_level", kSignificanceLevel}}},
      {"options",
       {{"min_constraint_diff", analysis.options.min_constraint_diff},
        {"baseline_setting", EnumName(analysis.options.baseline)}}},
      {"queries",
       {{"n_queries", analysis.n_queries},
        {"n_classified", analysis.n_classified},
        {"query_types", analysis.query_type_counts}}},
      {"agreement", agreement},
      {"win_rates", wins},
      {"constraints", constraints},
      {"justifications", justifications},
      {"bias", bias},
      {"sensitivity", sensitivity},
      {"tallies", analysis.tallies}};
}

std::string RenderReportMarkdown(const Analysis& analysis) {
  std::ostringstream md;
  md << "# Evaluation report\n\n";
  md << "Queries: " << analysis.n_queries << " (" << analysis.n_classified << " classified)\n\n";
  if (analysis.n_classified > 0) {
    md << "## Query types\n\n| Type | Queries | % |\n|---|---:|---:|\n";
    for (const auto& [type, n] : analysis.query_type_counts) {
      md << "| " << type << " | " << n << " | " << Fixed(100.0 * n / analysis.n_classified, 2)
         << " |\n";
    }
    md << "\n";
  }

  md << "## Agreement\n\n";
  md << "Agreement % is the mean share of votes matching the item's plurality majority; the "
        "value in parentheses recomputes it after deleting Tie votes. "
        "`*` marks p < 0.05 in a paired t-test against "
     << EnumName(analysis.options.baseline) << ".";
  if (analysis.options.min_constraint_diff > 0) {
    md << " Only queries whose constraint counts differ by at least "
       << analysis.options.min_constraint_diff << " are included.";
  }
  md << "\n\n| Pair | Setting | Raters | Agreement % w/ ties (w/o ties) | Fleiss' kappa | p | "
        "Items | No majority | Incomplete | Filtered | Unparsed |\n"
        "|---|---|---|---:|---:|---:|---:|---:|---:|---:|---:|\n";
  for (const auto& r : analysis.agreement) {
    md << "| " << r.candidate_a << " vs " << r.candidate_b << " | " << EnumName(r.setting) << " | "
       << EnumName(r.rater_kind) << " x" << r.raters_per_item << " | "
       << Pct(r.agreement.with_ties) << (r.significant ? "*" : "") << " ("
       << Pct(r.agreement.without_ties) << ") | "
       << (r.fleiss_kappa ? Fixed(*r.fleiss_kappa, 3) : "n/a") << " | "
       << (r.vs_baseline ? Fixed(r.vs_baseline->p_two_sided, 4) : "-") << " | "
       << r.agreement.n_with_majority << " | " << r.agreement.n_no_majority << " | "
       << r.n_incomplete << " | " << r.n_filtered_out << " | " << r.unparsed_votes << " |\n";
  }

  md << "\n## Win rates\n\nMajority verdict per task; tasks without a majority are excluded.\n\n"
        "| Pair | Setting | Raters | A % | B % | Tie % | Included | No majority |\n"
        "|---|---|---|---:|---:|---:|---:|---:|\n";
  for (const auto& w : analysis.win_rates) {
    md << "| " << w.candidate_a << " vs " << w.candidate_b << " | " << EnumName(w.setting)
       << " | " << EnumName(w.rater_kind) << " | ";
    if (w.summary) {
      md << Fixed(w.summary->pct_a, 2) << " | " << Fixed(w.summary->pct_b, 2) << " | "
         << Fixed(w.summary->pct_tie, 2) << " | " << w.summary->n_included << " | "
         << w.summary->n_no_majority << " |\n";
    } else {
      md << "n/a | n/a | n/a | 0 | " << w.n_tasks << " |\n";
    }
  }

  if (!analysis.constraints.empty()) {
    md << "\n## Constraints satisfied\n\n"
          "|Avg Diff.| is the mean per-query absolute difference.\n\n"
          "| Pair | Setting | Avg A | Avg B | |Avg Diff.| | Queries | Unpaired |\n"
          "|---|---|---:|---:|---:|---:|---:|\n";
    for (const auto& c : analysis.constraints) {
      md << "| " << c.candidate_a << " vs " << c.candidate_b << " | " << EnumName(c.setting)
         << " | " << Fixed(c.summary.mean_a, 2) << " | " << Fixed(c.summary.mean_b, 2) << " | "
         << Fixed(c.summary.mean_abs_diff, 2) << " | " << c.summary.n_queries << " | "
         << c.summary.n_unpaired << " |\n";
    }
  }

  if (!analysis.justifications.empty()) {
    md << "\n## Justification criteria\n\n"
          "| Raters | Setting | Surface % | Content % | Unknown % | n |\n"
          "|---|---|---:|---:|---:|---:|\n";
    for (const auto& j : analysis.justifications) {
      md << "| " << EnumName(j.rater_kind) << " | " << EnumName(j.setting) << " | "
         << Fixed(j.shares.pct_surface, 2) << " | " << Fixed(j.shares.pct_content, 2) << " | "
         << Fixed(j.shares.pct_unknown, 2) << " | " << j.shares.n << " |\n";
    }
  }

  if (!analysis.bias.empty()) {
    md << "\n## Default response ratings\n\n| Attribute | Value | Mean rating | n |\n"
          "|---|---|---:|---:|\n";
    for (const auto& b : analysis.bias) {
      md << "| " << b.attribute << " | " << b.attribute_value << " | " << Fixed(b.mean_rating, 2)
         << " | " << b.count << " |\n";
    }
  }

  if (!analysis.sensitivity.empty()) {
    md << "\n## Sensitivity (max rating difference across values)\n\n"
          "| Attribute | 0 | 1 | 2 | 3 | 4 | Cells | Excluded |\n"
          "|---|---:|---:|---:|---:|---:|---:|---:|\n";
    for (const auto& s : analysis.sensitivity) {
      md << "| " << s.attribute;
      for (double p : s.pct) md << " | " << Fixed(p, 2);
      md << " | " << s.n_cells << " | " << s.n_excluded << " |\n";
    }
  }

  md << "\n## Tallies\n\n";
  if (analysis.tallies.empty()) md << "None.\n";
  for (const auto& [name, n] : analysis.tallies) md << "- " << name << ": " << n << "\n";
  return md.str();
}

std::string BiasCsv(const Analysis& analysis) {
  std::string out = "attribute,attribute_value,mean_rating,count\n";
  for (const auto& b : analysis.bias) {
    out += CsvField(b.attribute) + "," + CsvField(b.attribute_value) + "," +
           Fixed(b.mean_rating, 6) + "," + std::to_string(b.count) + "\n";
  }
  return out;
}

std::string SensitivityCsv(const Analysis& analysis) {
  std::string out = "attribute,max_diff,count,percent\n";
  for (const auto& s : analysis.sensitivity) {
    for (int d = 0; d <= kMaxRatingSpread; ++d) {
      out += CsvField(s.attribute) + "," + std::to_string(d) + "," + std::to_string(s.counts[d]) +
             "," + Fixed(s.pct[d], 6) + "\n";
    }
  }
  return out;
}

std::string WinRatesCsv(const Analysis& analysis) {
  std::string out =
      "candidate_a,candidate_b,setting,rater_kind,pct_a,pct_b,pct_tie,n_included,n_no_majority\n";
  for (const auto& w : analysis.win_rates) {
    out += CsvField(w.candidate_a) + "," + CsvField(w.candidate_b) + "," +
           std::string(EnumName(w.setting)) + "," + std::string(EnumName(w.rater_kind)) + ",";
    if (w.summary) {
      out += Fixed(w.summary->pct_a, 6) + "," + Fixed(w.summary->pct_b, 6) + "," +
             Fixed(w.summary->pct_tie, 6) + "," + std::to_string(w.summary->n_included) + "," +
             std::to_string(w.summary->n_no_majority) + "\n";
    } else {
      out += ",,,0," + std::to_string(w.n_tasks) + "\n";
    }
  }
  return out;
}

}  // namespace ctxeval
