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

#include "tactics/fixtures.h"

#include <sstream>

#include "tactics/corpus_io.h"
#include "tactics/encoder.h"

#ifndef TACTICS_FIXTURE_DIR
#define TACTICS_FIXTURE_DIR "fixtures"
#endif

namespace tactics {

std::vector<Pattern> Table3Ladder() {
  static constexpr const char* kLadder[] = {
      "^X?[PV]+[XE]?[AIP]+",
      "^X?[PV]+[XE]?[AIP]+[VXER]+",
      "^X?[PV]+[XE]?[AIP]+[VXER]+[AIP]+",
      "^X?[PV]+[XE]?[AIP]+[VXER]+[AIP]+[VXER]+",
      "^X?[PV]+[XE]?[AIP]+[VXER]+[AIP]+[VXER]+[AIP]+",
  };
  std::vector<Pattern> out;
  for (const char* text : kLadder) out.push_back(ParsePattern(text));
  return out;
}

std::string FixtureDir() { return TACTICS_FIXTURE_DIR; }

Corpus FixtureCorpus() { return LoadCorpus(FixtureDir() + "/corpus.jsonl"); }

CoverageReport OracleCoverageTable(std::span<const Pattern> ladder,
                                   const std::vector<ResponseGroup>& groups) {
  CoverageReport report;
  for (const auto& g : groups) report.groups.push_back({g.study, g.source, {}});
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    // Row k: ladder[k] | ladder[k-1]$ | ... | ladder[0]$.
    CompoundPattern compound;
    compound.alternatives.push_back(ladder[k]);
    for (std::size_t j = k; j-- > 0;) {
      Pattern p = ladder[j];
      p.anchored_end = true;
      compound.alternatives.push_back(p);
    }
    report.pattern_texts.push_back(ladder[k].Render());
    report.compound_texts.push_back(compound.Render());
    std::vector<CoverageCell> row;
    for (const auto& g : groups) {
      CoverageCell cell;
      Fraction within_sum = 0;
      for (const auto& r : g.records) {
        const auto& s = r.sequence;
        const MatchResult m = OracleMatch(compound, s.letters(), 64);
        ++cell.group_size;
        if (!m.matched) continue;
        ++cell.matched_count;
        within_sum += s.empty() ? Fraction(1) : Fraction(m.length, s.size());
      }
      cell.across = Fraction(cell.matched_count, cell.group_size);
      if (cell.matched_count > 0) cell.within = within_sum / cell.matched_count;
      row.push_back(std::move(cell));
    }
    report.cells.push_back(std::move(row));
  }
  return report;
}

std::string RegenerateExpectedCoverage(const std::string& fixture_dir) {
  const Corpus corpus = LoadCorpus(fixture_dir + "/corpus.jsonl");
  std::vector<Pattern> ladder;
  for (const auto& c : LoadPatternFile(fixture_dir + "/table3.pat")) {
    ladder.push_back(c.alternatives.at(0));
  }
  const auto groups = GroupResponses(EncodeCorpus(corpus), GroupBy::kWriter);
  std::ostringstream out;
  WriteReportJson(out, OracleCoverageTable(ladder, groups));
  return out.str();
}

}  // namespace tactics
