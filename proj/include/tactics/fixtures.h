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

#ifndef TACTICS_FIXTURES_H_
#define TACTICS_FIXTURES_H_

#include <span>
#include <string>
#include <vector>

#include "tactics/coverage.h"
#include "tactics/pattern.h"
#include "tactics/tactic.h"

namespace tactics {

// The five nested candidate templates, pattern 1 first.
std::vector<Pattern> Table3Ladder();

// Directory holding corpus.jsonl, table3.pat and expected_coverage.json.
std::string FixtureDir();

Corpus FixtureCorpus();

// Ladder coverage computed only from OracleMatch and direct per-sequence
// sums; shares no evaluation code with CoverageTable. Same report shape.
CoverageReport OracleCoverageTable(std::span<const Pattern> ladder,
                                   const std::vector<ResponseGroup>& groups);

// The contents expected_coverage.json should have: the oracle report for the
// fixture corpus and ladder file, grouped by writer, as report JSON.
std::string RegenerateExpectedCoverage(const std::string& fixture_dir);

}  // namespace tactics

#endif  // TACTICS_FIXTURES_H_
