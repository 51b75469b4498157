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

// Brute-force reference matcher. Deliberately shares nothing with the
// reachability matcher: it walks every derivation (every choice of repeat
// count for every atom) and records where each one ends.

#include <set>

#include "tactics/pattern.h"

namespace tactics {
namespace {

bool InSet(const std::string& set_letters, char c) {
  for (char s : set_letters) {
    if (s == c) return true;
  }
  return false;
}

void Derive(const Pattern& p, std::size_t atom, std::string_view s,
            std::size_t pos, std::set<std::size_t>* ends) {
  if (atom == p.atoms.size()) {
    ends->insert(pos);
    return;
  }
  const Atom& a = p.atoms[atom];
  std::size_t min_reps = 1;
  std::size_t max_reps = 1;
  switch (a.quantifier()) {
    case Quantifier::kOne: break;
    case Quantifier::kOptional: min_reps = 0; break;
    case Quantifier::kOnePlus: max_reps = s.size() - pos; break;
  }
  for (std::size_t reps = min_reps; reps <= max_reps; ++reps) {
    if (pos + reps > s.size()) break;
    bool ok = true;
    for (std::size_t i = 0; i < reps; ++i) {
      if (!InSet(a.letters(), s[pos + i])) {
        ok = false;
        break;
      }
    }
    if (ok) Derive(p, atom + 1, s, pos + reps, ends);
  }
}

MatchResult OracleOne(const Pattern& p, std::string_view s) {
  std::set<std::size_t> ends;
  Derive(p, 0, s, 0, &ends);
  if (p.anchored_end) {
    if (ends.count(s.size())) return {true, s.size(), 0};
    return {};
  }
  if (ends.empty()) return {};
  return {true, *ends.rbegin(), 0};
}

void CheckBound(std::string_view s, std::size_t bound) {
  if (s.size() > bound) {
    throw Error(ErrorCode::kOracleBoundExceeded,
                "oracle input length " + std::to_string(s.size()) +
                    " exceeds bound " + std::to_string(bound));
  }
}

}  // namespace

MatchResult OracleMatch(const Pattern& p, std::string_view letters,
                        std::size_t bound) {
  CheckBound(letters, bound);
  return OracleOne(p, letters);
}

MatchResult OracleMatch(const CompoundPattern& p, std::string_view letters,
                        std::size_t bound) {
  CheckBound(letters, bound);
  MatchResult best;
  for (std::size_t k = 0; k < p.alternatives.size(); ++k) {
    MatchResult r = OracleOne(p.alternatives[k], letters);
    if (!r.matched) continue;
    if (!best.matched || r.length > best.length) best = {true, r.length, k};
  }
  return best;
}

}  // namespace tactics
