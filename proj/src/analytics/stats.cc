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

#include "ctxeval/analytics/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace ctxeval {
namespace {

int Index(Verdict v) {
  switch (v) {
    case Verdict::kA: return 0;
    case Verdict::kB: return 1;
    case Verdict::kTie: return 2;
    case Verdict::kInvalid: break;
  }
  throw Error(ErrorCode::kPrecondition, "Invalid votes must be filtered before tallying");
}

int Total(const CategoryCounts& c) { return c[0] + c[1] + c[2]; }

// Lentz's method for the continued fraction of I_x(a, b).
double BetaContinuedFraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEpsilon = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) break;
  }
  return h;
}

}  // namespace

std::string_view MajorityName(Majority m) {
  switch (m) {
    case Majority::kA: return "A";
    case Majority::kB: return "B";
    case Majority::kTie: return "Tie";
    case Majority::kNoMajority: return "NoMajority";
  }
  return "?";
}

CategoryCounts CountVotes(const std::vector<Verdict>& votes) {
  CategoryCounts counts{};
  for (auto v : votes) ++counts[Index(v)];
  return counts;
}

Majority MajorityOf(const CategoryCounts& counts) {
  const int best = *std::max_element(counts.begin(), counts.end());
  if (best == 0) throw Error(ErrorCode::kEmptyVotes, "no votes");
  if (std::count(counts.begin(), counts.end(), best) > 1) return Majority::kNoMajority;
  constexpr Majority kByIndex[] = {Majority::kA, Majority::kB, Majority::kTie};
  return kByIndex[std::find(counts.begin(), counts.end(), best) - counts.begin()];
}

Majority MajorityVote(const std::vector<Verdict>& votes) {
  if (votes.empty()) throw Error(ErrorCode::kEmptyVotes, "majority of an empty vote list");
  return MajorityOf(CountVotes(votes));
}

VoteMatrix BuildVoteMatrix(const std::map<std::string, std::vector<Verdict>>& votes,
                           int raters_per_item, int* excluded) {
  VoteMatrix m;
  int dropped = 0;
  for (const auto& [item, item_votes] : votes) {
    std::vector<Verdict> valid;
    for (auto v : item_votes) {
      if (v != Verdict::kInvalid) valid.push_back(v);
    }
    if (static_cast<int>(valid.size()) != raters_per_item) {
      ++dropped;
      continue;
    }
    m.items.push_back(item);
    m.counts.push_back(CountVotes(valid));
  }
  if (excluded != nullptr) *excluded = dropped;
  return m;
}

std::optional<double> AgreementShare(const CategoryCounts& counts) {
  const auto majority = MajorityOf(counts);
  if (majority == Majority::kNoMajority) return std::nullopt;
  return static_cast<double>(*std::max_element(counts.begin(), counts.end())) / Total(counts);
}

AgreementPercentages ComputeAgreement(const VoteMatrix& m) {
  AgreementPercentages out;
  double with_sum = 0.0;
  double without_sum = 0.0;
  int without_n = 0;
  for (const auto& counts : m.counts) {
    if (Total(counts) < 2) {
      throw Error(ErrorCode::kPrecondition, "agreement needs at least two votes per item");
    }
    if (auto share = AgreementShare(counts)) {
      with_sum += *share;
      ++out.n_with_majority;
    } else {
      ++out.n_no_majority;
    }
    const CategoryCounts no_ties{counts[0], counts[1], 0};
    if (Total(no_ties) < 2 || counts[0] == counts[1]) {
      ++out.n_dropped_without_ties;
      continue;
    }
    without_sum += static_cast<double>(std::max(counts[0], counts[1])) / Total(no_ties);
    ++without_n;
  }
  if (out.n_with_majority > 0) out.with_ties = 100.0 * with_sum / out.n_with_majority;
  if (without_n > 0) out.without_ties = 100.0 * without_sum / without_n;
  return out;
}

double FleissKappa(const VoteMatrix& m) {
  if (m.counts.empty()) throw Error(ErrorCode::kPrecondition, "kappa over no items");
  const int r = Total(m.counts.front());
  for (const auto& c : m.counts) {
    if (Total(c) != r) {
      throw Error(ErrorCode::kHeterogeneousRaters,
                  "items have " + std::to_string(r) + " and " + std::to_string(Total(c)) +
                      " votes");
    }
  }
  if (r < 2) throw Error(ErrorCode::kPrecondition, "kappa needs at least two raters");
  const double n = static_cast<double>(m.counts.size());
  double p_bar = 0.0;
  std::array<double, 3> column{};
  for (const auto& c : m.counts) {
    double agreeing = 0.0;
    for (int j = 0; j < 3; ++j) {
      agreeing += static_cast<double>(c[j]) * (c[j] - 1);
      column[j] += c[j];
    }
    p_bar += agreeing / (static_cast<double>(r) * (r - 1));
  }
  p_bar /= n;
  double p_e = 0.0;
  for (double col : column) {
    const double p = col / (n * r);
    p_e += p * p;
  }
  if (1.0 - p_e <= 0.0) {
    if (p_bar == 1.0) return 1.0;
    throw Error(ErrorCode::kUndefined, "kappa undefined: chance agreement is 1");
  }
  return (p_bar - p_e) / (1.0 - p_e);
}

double RegularizedIncompleteBeta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * BetaContinuedFraction(a, b, x) / a;
  return 1.0 - front * BetaContinuedFraction(b, a, 1.0 - x) / b;
}

double StudentTTwoSidedP(double t, double df) {
  if (std::isinf(t)) return 0.0;
  return RegularizedIncompleteBeta(df / 2.0, 0.5, df / (df + t * t));
}

TTestResult PairedTTest(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kPairingError, std::to_string(x.size()) + " vs " +
                                              std::to_string(y.size()) + " observations");
  }
  if (x.size() < 2) throw Error(ErrorCode::kPrecondition, "paired t-test needs two pairs");
  const std::size_t n = x.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = x[i] - y[i];
  const double mean = std::accumulate(d.begin(), d.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : d) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1));
  TTestResult out;
  out.df = static_cast<int>(n) - 1;
  // Differences that are equal up to rounding count as zero variance.
  const double scale = std::max(1.0, std::fabs(mean));
  if (sd <= 1e-12 * scale) {
    if (std::fabs(mean) <= 1e-15) {
      out.t = 0.0;
      out.p_two_sided = 1.0;
    } else {
      out.t = mean > 0 ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity();
      out.p_two_sided = 0.0;
      out.degenerate = true;
    }
    return out;
  }
  out.t = mean / (sd / std::sqrt(static_cast<double>(n)));
  out.p_two_sided = StudentTTwoSidedP(out.t, out.df);
  return out;
}

WinRateSummary WinRates(const std::vector<Majority>& majorities) {
  WinRateSummary out;
  for (auto m : majorities) {
    switch (m) {
      case Majority::kA: ++out.count_a; break;
      case Majority::kB: ++out.count_b; break;
      case Majority::kTie: ++out.count_tie; break;
      case Majority::kNoMajority: ++out.n_no_majority; break;
    }
  }
  out.n_included = out.count_a + out.count_b + out.count_tie;
  if (out.n_included == 0) {
    throw Error(ErrorCode::kEmptyAfterExclusion,
                std::to_string(out.n_no_majority) + " items, none with a majority");
  }
  out.pct_a = 100.0 * out.count_a / out.n_included;
  out.pct_b = 100.0 * out.count_b / out.n_included;
  out.pct_tie = 100.0 * out.count_tie / out.n_included;
  return out;
}

ConstraintSummary SummarizeConstraints(const std::vector<std::pair<int, int>>& pairs) {
  if (pairs.empty()) throw Error(ErrorCode::kEmptyAfterExclusion, "no paired constraint counts");
  ConstraintSummary out;
  double sum_a = 0.0;
  double sum_b = 0.0;
  double sum_diff = 0.0;
  for (const auto& [a, b] : pairs) {
    sum_a += a;
    sum_b += b;
    sum_diff += std::abs(a - b);
  }
  out.n_queries = static_cast<int>(pairs.size());
  out.mean_a = sum_a / out.n_queries;
  out.mean_b = sum_b / out.n_queries;
  out.mean_abs_diff = sum_diff / out.n_queries;
  return out;
}

ClassShares ShareOfClasses(const std::vector<JustificationClass>& classes) {
  ClassShares out;
  out.n = static_cast<int>(classes.size());
  if (out.n == 0) return out;
  int surface = 0;
  int content = 0;
  for (auto c : classes) {
    if (c == JustificationClass::kSurface) ++surface;
    if (c == JustificationClass::kContent) ++content;
  }
  out.pct_surface = 100.0 * surface / out.n;
  out.pct_content = 100.0 * content / out.n;
  out.pct_unknown = 100.0 * (out.n - surface - content) / out.n;
  return out;
}

std::vector<BiasEntry> BiasProfile(const std::vector<RelevanceRating>& ratings) {
  std::vector<BiasEntry> out;
  std::vector<double> sums;
  for (const auto& r : ratings) {
    if (r.response_mode != ResponseMode::kDefault) continue;
    if (r.rating < 1 || r.rating > 5) {
      throw Error(ErrorCode::kPrecondition, "rating outside 1..5 in bias profile");
    }
    auto it = std::find_if(out.begin(), out.end(), [&](const BiasEntry& e) {
      return e.attribute == r.attribute && e.attribute_value == r.attribute_value;
    });
    if (it == out.end()) {
      out.push_back(BiasEntry{r.attribute, r.attribute_value, 0.0, 0});
      sums.push_back(0.0);
      it = out.end() - 1;
    }
    sums[it - out.begin()] += r.rating;
    ++it->count;
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].mean_rating = sums[i] / out[i].count;
  return out;
}

int MaxDifference(const std::vector<int>& ratings) {
  if (ratings.empty()) throw Error(ErrorCode::kPrecondition, "max difference of no ratings");
  const auto [lo, hi] = std::minmax_element(ratings.begin(), ratings.end());
  return *hi - *lo;
}

std::vector<SensitivityHistogram> SensitivityHistograms(
    const std::vector<RelevanceRating>& ratings,
    const std::map<std::string, std::vector<std::string>>& expected_values) {
  // attribute -> query -> value -> ratings
  std::map<std::string, std::map<std::string, std::map<std::string, std::vector<int>>>> cells;
  std::map<std::string, std::set<std::string>> seen_values;
  for (const auto& r : ratings) {
    if (r.response_mode != ResponseMode::kAdapted) continue;
    cells[r.attribute][r.query_id][r.attribute_value].push_back(r.rating);
    seen_values[r.attribute].insert(r.attribute_value);
  }
  std::vector<SensitivityHistogram> out;
  for (const auto& [attribute, by_query] : cells) {
    std::set<std::string> expected;
    if (auto it = expected_values.find(attribute); it != expected_values.end()) {
      expected.insert(it->second.begin(), it->second.end());
    } else {
      expected = seen_values[attribute];
    }
    SensitivityHistogram h;
    h.attribute = attribute;
    for (const auto& [query, by_value] : by_query) {
      bool complete = by_value.size() == expected.size();
      std::vector<int> cell;
      for (const auto& [value, values_ratings] : by_value) {
        if (!expected.count(value) || values_ratings.size() != 1) complete = false;
        cell.push_back(values_ratings.front());
      }
      if (!complete) {
        ++h.n_excluded;
        continue;
      }
      const int diff = MaxDifference(cell);
      if (diff > kMaxRatingSpread) {
        throw Error(ErrorCode::kPrecondition, "rating spread above 4 in " + attribute);
      }
      ++h.counts[diff];
      ++h.n_cells;
    }
    if (h.n_cells > 0) {
      for (int i = 0; i <= kMaxRatingSpread; ++i) h.pct[i] = 100.0 * h.counts[i] / h.n_cells;
    }
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace ctxeval
