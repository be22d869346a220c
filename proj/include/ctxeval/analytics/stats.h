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

#ifndef CTXEVAL_ANALYTICS_STATS_H_
#define CTXEVAL_ANALYTICS_STATS_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctxeval/core/types.h"

namespace ctxeval {

enum class Majority { kA, kB, kTie, kNoMajority };

std::string_view MajorityName(Majority m);

// Strict plurality over {A, B, Tie}. Invalid votes are a precondition
// violation; an empty list throws EmptyVotes.
Majority MajorityVote(const std::vector<Verdict>& votes);

// Vote counts per category, indexed A, B, Tie.
using CategoryCounts = std::array<int, 3>;

CategoryCounts CountVotes(const std::vector<Verdict>& votes);
Majority MajorityOf(const CategoryCounts& counts);

struct VoteMatrix {
  std::vector<std::string> items;
  std::vector<CategoryCounts> counts;  // parallel to items

  std::size_t size() const { return items.size(); }
};

// Admits only items whose valid (non-Invalid) vote count equals
// `raters_per_item`; the rest are counted in *excluded.
VoteMatrix BuildVoteMatrix(const std::map<std::string, std::vector<Verdict>>& votes,
                           int raters_per_item, int* excluded = nullptr);

struct AgreementPercentages {
  std::optional<double> with_ties;     // absent when no item has a majority
  std::optional<double> without_ties;  // absent when nothing survives tie removal
  int n_with_majority = 0;
  int n_no_majority = 0;
  int n_dropped_without_ties = 0;  // items that drop out once Tie votes go
};

// Mean over items with a majority of (votes matching the majority / votes),
// in percent. Without ties, Tie votes are deleted first and items left with
// fewer than two votes or no majority drop out.
AgreementPercentages ComputeAgreement(const VoteMatrix& m);

// Per-item share of votes matching the majority, or nullopt without one.
std::optional<double> AgreementShare(const CategoryCounts& counts);

// Fleiss' kappa over {A, B, Tie}. Throws HeterogeneousRaters when items have
// different vote totals, Precondition for fewer than two raters or no items,
// and Undefined when every vote shares one category but agreement is not
// perfect (impossible for valid input, kept for completeness).
double FleissKappa(const VoteMatrix& m);

struct TTestResult {
  double t = 0.0;
  int df = 0;
  double p_two_sided = 1.0;
  bool degenerate = false;  // zero variance with nonzero mean difference
};

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double RegularizedIncompleteBeta(double a, double b, double x);

// Two-sided tail probability of Student's t with `df` degrees of freedom.
double StudentTTwoSidedP(double t, double df);

// Paired t-test on x - y. Throws PairingError on a length mismatch and
// Precondition for fewer than two pairs.
TTestResult PairedTTest(const std::vector<double>& x, const std::vector<double>& y);

struct WinRateSummary {
  double pct_a = 0.0;
  double pct_b = 0.0;
  double pct_tie = 0.0;
  int count_a = 0;
  int count_b = 0;
  int count_tie = 0;
  int n_included = 0;
  int n_no_majority = 0;
};

// Throws EmptyAfterExclusion when every item lacks a majority (or there are
// no items).
WinRateSummary WinRates(const std::vector<Majority>& majorities);

struct ConstraintSummary {
  double mean_a = 0.0;
  double mean_b = 0.0;
  double mean_abs_diff = 0.0;
  int n_queries = 0;
  int n_unpaired = 0;
};

// Per-query (count_a, count_b). mean_abs_diff is the mean of |a - b| per
// query, not |mean_a - mean_b|.
ConstraintSummary SummarizeConstraints(const std::vector<std::pair<int, int>>& pairs);

struct ClassShares {
  double pct_surface = 0.0;
  double pct_content = 0.0;
  double pct_unknown = 0.0;
  int n = 0;
};

// Percentages over the given classes; n = 0 gives all zeros.
ClassShares ShareOfClasses(const std::vector<JustificationClass>& classes);

struct BiasEntry {
  std::string attribute;
  std::string attribute_value;
  double mean_rating = 0.0;
  int count = 0;

  bool operator==(const BiasEntry&) const = default;
};

// Mean Default-mode rating per (attribute, value), in order of first
// appearance. Adapted ratings are ignored.
std::vector<BiasEntry> BiasProfile(const std::vector<RelevanceRating>& ratings);

inline constexpr int kMaxRatingSpread = 4;

// max - min; Precondition on an empty list.
int MaxDifference(const std::vector<int>& ratings);

struct SensitivityHistogram {
  std::string attribute;
  std::array<int, kMaxRatingSpread + 1> counts{};
  std::array<double, kMaxRatingSpread + 1> pct{};
  int n_cells = 0;
  int n_excluded = 0;  // cells missing a value or rating one value twice
};

// Adapted-mode ratings grouped into (query, attribute) cells. A cell counts
// only when it holds exactly one rating per expected value. Expected values
// default to every value seen for the attribute. Attributes are returned in
// name order.
std::vector<SensitivityHistogram> SensitivityHistograms(
    const std::vector<RelevanceRating>& ratings,
    const std::map<std::string, std::vector<std::string>>& expected_values = {});

}  // namespace ctxeval

#endif  // CTXEVAL_ANALYTICS_STATS_H_
