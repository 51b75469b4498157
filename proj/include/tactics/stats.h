// Copyright 2026 The Tactics Authors.
//
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

#ifndef TACTICS_STATS_H_
#define TACTICS_STATS_H_

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tactics/tactic.h"

namespace tactics {

// Sample mean and standard deviation (n - 1 denominator). With a single
// observation sd is 0 and `degenerate` is set.
struct MeanSd {
  double mean = 0;
  double sd = 0;
  std::size_t n = 0;
  bool degenerate = false;
};

MeanSd Summarize(std::span<const double> values);

struct Descriptives {
  std::optional<MeanSd> word_count;  // absent if no response carried text
  MeanSd total_tactics;              // collapsed sequence length
  MeanSd unique_tactics;             // distinct letters per sequence
};

struct SizedSequence {
  std::optional<std::size_t> word_count;
  TacticSequence sequence;
};

// Throws Error{kEmptyGroup}.
Descriptives ComputeDescriptives(std::span<const SizedSequence> group);

// Share of responses containing each tactic at least once, in taxonomy order.
using PrevalenceVector = std::array<double, kNumTactics>;

// Throws Error{kEmptyGroup}.
PrevalenceVector Prevalence(std::span<const TacticSequence> group);

// 1-based ranks; tied values share the mean of the ranks they span.
std::vector<double> AverageRanks(std::span<const double> values);

// Pearson correlation. Throws Error{kZeroVariance} if either side is
// constant, Error{kInvalidConfig} on length mismatch or fewer than 2 values.
double PearsonCorrelation(std::span<const double> a, std::span<const double> b);

// Spearman rank correlation: Pearson on average ranks.
double SpearmanCorrelation(std::span<const double> a, std::span<const double> b);

// Binary presence/absence ratings, raters x items. Absent entries are
// nullopt.
using RatingMatrix = std::vector<std::vector<std::optional<int>>>;

struct AlphaResult {
  double alpha = 0;
  // True when every pairable value is identical, so expected disagreement is
  // zero; alpha is reported as 1.
  bool degenerate = false;
  std::size_t pairable_values = 0;
};

// Krippendorff's alpha for nominal data. Items with fewer than two ratings
// are ignored. Throws Error{kInsufficientRatings} with fewer than two raters
// or no pairable item.
AlphaResult KrippendorffAlpha(const RatingMatrix& ratings);

// One row of the IRR CSV: rater,item_id,tactic,present.
struct RatingRecord {
  std::string rater;
  std::string item;
  Tactic tactic;
  int present;
};

// Throws Error{kMalformedRecord} naming the line.
std::vector<RatingRecord> ReadRatingsCsv(std::istream& in, std::string_view source_name = "<input>");

struct IrrReport {
  std::map<Tactic, AlphaResult> per_tactic;  // tactics with pairable items
  std::vector<Tactic> skipped;               // tactics without
  double mean_alpha = 0;
};

// One alpha per tactic over items (e.g. sentences); unrated (rater, item,
// tactic) cells are absent. Mean over tactics that could be computed.
// Throws Error{kInsufficientRatings} if no tactic could be computed.
IrrReport ComputeIrr(std::span<const RatingRecord> records);

}  // namespace tactics

#endif  // TACTICS_STATS_H_
