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

#ifndef TACTICS_COVERAGE_H_
#define TACTICS_COVERAGE_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tactics/pattern.h"
#include "tactics/tactic.h"

namespace tactics {

using Fraction = boost::multiprecision::cpp_rational;

// "num/den" in lowest terms, or "num" when the denominator is 1.
std::string FractionText(const Fraction& f);
double ToDouble(const Fraction& f);

// Match outcomes for one group of sequences.
//
// Matched lengths are summed per sequence length, so the within-coverage
// sum  sum_i len_i / n_i  equals  sum_n L_n / n  and does not depend on the
// order in which sequences were added.
class CoverageTally {
 public:
  // `count` identical sequences with the same outcome.
  void Add(std::size_t sequence_length, const MatchResult& r, std::size_t count = 1);
  void Merge(const CoverageTally& other);

  std::size_t group_size() const { return group_size_; }
  std::size_t matched_count() const { return matched_count_; }

  // Exact values. Across throws Error{kEmptyGroup}; Within throws
  // Error{kNoMatches} when nothing matched.
  Fraction Across() const;
  Fraction Within() const;

  // Floating-point values for the search loop. WithinApprox() is 0 when
  // nothing matched.
  double AcrossApprox() const;
  double WithinApprox() const;

 private:
  std::size_t group_size_ = 0;
  std::size_t matched_count_ = 0;
  // An empty sequence matched with length 0 counts as fully covered.
  std::size_t matched_empty_ = 0;
  // matched_length_[n] = total matched letters over matched sequences of
  // length n.
  std::vector<std::size_t> matched_length_;
};

CoverageTally Tally(const Pattern& p, std::span<const TacticSequence> group);
CoverageTally Tally(const CompoundPattern& p, std::span<const TacticSequence> group);

// Fraction of the group whose sequence is matched. Empty sequences count in
// the denominator. Throws Error{kEmptyGroup}.
Fraction AcrossCoverage(const CompoundPattern& p, std::span<const TacticSequence> group);
Fraction AcrossCoverage(const Pattern& p, std::span<const TacticSequence> group);

// Mean of match length / sequence length over matched sequences. Throws
// Error{kNoMatches} (or kEmptyGroup).
Fraction WithinCoverage(const CompoundPattern& p, std::span<const TacticSequence> group);
Fraction WithinCoverage(const Pattern& p, std::span<const TacticSequence> group);

// Harmonic mean of across and within; 0 if either is 0.
double Objective(double across, double within);

enum class GroupBy { kWriter, kStudy, kNone };

GroupBy ParseGroupBy(const std::string& text);

// A named group of encoded responses. `study` is absent when studies are
// pooled; `source` is "all" when sources are pooled.
struct ResponseGroup {
  std::optional<int> study;
  std::string source;
  std::vector<EncodedResponse> records;

  std::string Label() const;
  std::vector<TacticSequence> Sequences() const;
};

// Groups in order of first appearance.
std::vector<ResponseGroup> GroupResponses(const std::vector<EncodedResponse>& records,
                                          GroupBy by);

struct CoverageCell {
  Fraction across;
  std::optional<Fraction> within;  // absent when nothing matched
  std::size_t matched_count = 0;
  std::size_t group_size = 0;
};

// Rows follow the ladder: row k evaluates BuildCompound(ladder[0..k]).
// In independent mode each row is its own pattern and nothing is compounded.
struct CoverageReport {
  std::vector<std::string> pattern_texts;   // rendered ladder[k]
  std::vector<std::string> compound_texts;  // what row k actually tested
  std::vector<ResponseGroup> groups;        // records dropped; labels kept
  std::vector<std::vector<CoverageCell>> cells;  // [row][group]
};

// Throws Error{kNotNested} or Error{kEmptyGroup}. Checks that across is
// nonincreasing down every column and throws std::logic_error otherwise.
CoverageReport CoverageTable(std::span<const Pattern> ladder,
                             const std::vector<ResponseGroup>& groups);

// Each compound evaluated on its own.
CoverageReport IndependentCoverage(std::span<const CompoundPattern> patterns,
                                   const std::vector<ResponseGroup>& groups);

// Serializers. Percentages carry one decimal; JSON also carries the exact
// fractions as "num/den" strings.
void WriteReportCsv(std::ostream& out, const CoverageReport& report);
void WriteReportJson(std::ostream& out, const CoverageReport& report);
void WriteReportMarkdown(std::ostream& out, const CoverageReport& report);

std::string FormatPercent(const Fraction& f);

}  // namespace tactics

#endif  // TACTICS_COVERAGE_H_
