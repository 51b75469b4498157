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

#include "tactics/coverage.h"

#include <stdexcept>

namespace tactics {

std::string FractionText(const Fraction& f) {
  const auto num = boost::multiprecision::numerator(f);
  const auto den = boost::multiprecision::denominator(f);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double ToDouble(const Fraction& f) { return f.convert_to<double>(); }

void CoverageTally::Add(std::size_t sequence_length, const MatchResult& r,
                        std::size_t count) {
  group_size_ += count;
  if (!r.matched) return;
  matched_count_ += count;
  if (sequence_length == 0) {
    matched_empty_ += count;
    return;
  }
  if (matched_length_.size() <= sequence_length) {
    matched_length_.resize(sequence_length + 1, 0);
  }
  matched_length_[sequence_length] += r.length * count;
}

void CoverageTally::Merge(const CoverageTally& other) {
  group_size_ += other.group_size_;
  matched_count_ += other.matched_count_;
  matched_empty_ += other.matched_empty_;
  if (matched_length_.size() < other.matched_length_.size()) {
    matched_length_.resize(other.matched_length_.size(), 0);
  }
  for (std::size_t n = 0; n < other.matched_length_.size(); ++n) {
    matched_length_[n] += other.matched_length_[n];
  }
}

Fraction CoverageTally::Across() const {
  if (group_size_ == 0) throw Error(ErrorCode::kEmptyGroup, "coverage of an empty group");
  return Fraction(matched_count_, group_size_);
}

Fraction CoverageTally::Within() const {
  if (group_size_ == 0) throw Error(ErrorCode::kEmptyGroup, "coverage of an empty group");
  if (matched_count_ == 0) {
    throw Error(ErrorCode::kNoMatches, "within-coverage undefined: no sequence matched");
  }
  Fraction sum(matched_empty_);
  for (std::size_t n = 1; n < matched_length_.size(); ++n) {
    if (matched_length_[n] != 0) sum += Fraction(matched_length_[n], n);
  }
  return sum / matched_count_;
}

double CoverageTally::AcrossApprox() const {
  if (group_size_ == 0) return 0.0;
  return static_cast<double>(matched_count_) / static_cast<double>(group_size_);
}

double CoverageTally::WithinApprox() const {
  if (matched_count_ == 0) return 0.0;
  double sum = static_cast<double>(matched_empty_);
  for (std::size_t n = 1; n < matched_length_.size(); ++n) {
    sum += static_cast<double>(matched_length_[n]) / static_cast<double>(n);
  }
  return sum / static_cast<double>(matched_count_);
}

namespace {

template <typename P>
CoverageTally TallyImpl(const P& p, std::span<const TacticSequence> group) {
  CoverageTally t;
  for (const auto& s : group) t.Add(s.size(), MatchPrefix(p, s));
  return t;
}

void RequireNonEmpty(std::span<const TacticSequence> group) {
  if (group.empty()) throw Error(ErrorCode::kEmptyGroup, "coverage of an empty group");
}

}  // namespace

CoverageTally Tally(const Pattern& p, std::span<const TacticSequence> group) {
  return TallyImpl(p, group);
}

CoverageTally Tally(const CompoundPattern& p, std::span<const TacticSequence> group) {
  return TallyImpl(p, group);
}

Fraction AcrossCoverage(const CompoundPattern& p, std::span<const TacticSequence> group) {
  RequireNonEmpty(group);
  return Tally(p, group).Across();
}

Fraction AcrossCoverage(const Pattern& p, std::span<const TacticSequence> group) {
  RequireNonEmpty(group);
  return Tally(p, group).Across();
}

Fraction WithinCoverage(const CompoundPattern& p, std::span<const TacticSequence> group) {
  RequireNonEmpty(group);
  return Tally(p, group).Within();
}

Fraction WithinCoverage(const Pattern& p, std::span<const TacticSequence> group) {
  RequireNonEmpty(group);
  return Tally(p, group).Within();
}

double Objective(double across, double within) {
  if (across <= 0.0 || within <= 0.0) return 0.0;
  return 2.0 * across * within / (across + within);
}

GroupBy ParseGroupBy(const std::string& text) {
  if (text == "writer") return GroupBy::kWriter;
  if (text == "study") return GroupBy::kStudy;
  if (text == "none") return GroupBy::kNone;
  throw Error(ErrorCode::kInvalidConfig,
              "--group-by must be writer, study or none, got \"" + text + "\"");
}

std::string ResponseGroup::Label() const {
  std::string study_label = study ? "study" + std::to_string(*study) : "all";
  return study_label + "/" + source;
}

std::vector<TacticSequence> ResponseGroup::Sequences() const {
  std::vector<TacticSequence> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.sequence);
  return out;
}

std::vector<ResponseGroup> GroupResponses(const std::vector<EncodedResponse>& records,
                                          GroupBy by) {
  std::vector<ResponseGroup> groups;
  for (const auto& r : records) {
    std::optional<int> study;
    std::string source = "all";
    if (by != GroupBy::kNone) study = r.writer.study;
    if (by == GroupBy::kWriter) source = r.writer.source;
    ResponseGroup* target = nullptr;
    for (auto& g : groups) {
      if (g.study == study && g.source == source) {
        target = &g;
        break;
      }
    }
    if (target == nullptr) {
      groups.push_back({study, source, {}});
      target = &groups.back();
    }
    target->records.push_back(r);
  }
  return groups;
}

namespace {

CoverageCell MakeCell(const CoverageTally& t) {
  CoverageCell c;
  c.group_size = t.group_size();
  c.matched_count = t.matched_count();
  c.across = t.Across();
  if (t.matched_count() > 0) c.within = t.Within();
  return c;
}

std::vector<ResponseGroup> LabelsOnly(const std::vector<ResponseGroup>& groups) {
  std::vector<ResponseGroup> out;
  for (const auto& g : groups) out.push_back({g.study, g.source, {}});
  return out;
}

void CheckGroups(const std::vector<ResponseGroup>& groups) {
  if (groups.empty()) throw Error(ErrorCode::kEmptyGroup, "corpus has no responses");
  for (const auto& g : groups) {
    if (g.records.empty()) {
      throw Error(ErrorCode::kEmptyGroup, "group " + g.Label() + " is empty");
    }
  }
}

}  // namespace

CoverageReport CoverageTable(std::span<const Pattern> ladder,
                             const std::vector<ResponseGroup>& groups) {
  CheckGroups(groups);
  if (ladder.empty()) throw Error(ErrorCode::kNotNested, "empty pattern ladder");
  CheckNested(ladder);
  CoverageReport report;
  report.groups = LabelsOnly(groups);
  std::vector<std::vector<TacticSequence>> sequences;
  for (const auto& g : groups) sequences.push_back(g.Sequences());

  for (std::size_t k = 0; k < ladder.size(); ++k) {
    const CompoundPattern compound = BuildCompound(ladder.subspan(0, k + 1));
    report.pattern_texts.push_back(ladder[k].Render());
    report.compound_texts.push_back(compound.Render());
    std::vector<CoverageCell> row;
    for (const auto& seqs : sequences) row.push_back(MakeCell(Tally(compound, seqs)));
    report.cells.push_back(std::move(row));
  }

  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t k = 1; k < report.cells.size(); ++k) {
      if (report.cells[k][g].across > report.cells[k - 1][g].across) {
        throw std::logic_error("across-coverage increased down the ladder for group " +
                               groups[g].Label());
      }
    }
  }
  return report;
}

CoverageReport IndependentCoverage(std::span<const CompoundPattern> patterns,
                                   const std::vector<ResponseGroup>& groups) {
  CheckGroups(groups);
  CoverageReport report;
  report.groups = LabelsOnly(groups);
  std::vector<std::vector<TacticSequence>> sequences;
  for (const auto& g : groups) sequences.push_back(g.Sequences());
  for (const auto& p : patterns) {
    report.pattern_texts.push_back(p.Render());
    report.compound_texts.push_back(p.Render());
    std::vector<CoverageCell> row;
    for (const auto& seqs : sequences) row.push_back(MakeCell(Tally(p, seqs)));
    report.cells.push_back(std::move(row));
  }
  return report;
}

}  // namespace tactics
