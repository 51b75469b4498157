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

#include <algorithm>
#include <vector>

#include "tactics/pattern.h"

namespace tactics {
namespace {

// Positions reachable after consuming each atom in turn. reach[i] is true if
// some derivation of the atoms seen so far consumes exactly letters[0, i).
// Each step is a forward sweep, so a '+' run is absorbed in one pass.
std::vector<char> ReachableEnds(const Pattern& p, std::string_view letters) {
  const std::size_t n = letters.size();
  std::vector<char> reach(n + 1, 0);
  std::vector<char> next(n + 1, 0);
  reach[0] = 1;
  for (const Atom& atom : p.atoms) {
    std::fill(next.begin(), next.end(), 0);
    bool any = false;
    switch (atom.quantifier()) {
      case Quantifier::kOptional:
        for (std::size_t i = 0; i <= n; ++i) {
          if (!reach[i]) continue;
          next[i] = 1;
          if (i < n && atom.Admits(letters[i])) next[i + 1] = 1;
        }
        break;
      case Quantifier::kOne:
        for (std::size_t i = 0; i < n; ++i) {
          if (reach[i] && atom.Admits(letters[i])) next[i + 1] = 1;
        }
        break;
      case Quantifier::kOnePlus: {
        // `open` is true while a run of admitted letters that began at a
        // reachable position is still going.
        bool open = false;
        for (std::size_t i = 0; i < n; ++i) {
          open = (open || reach[i]) && atom.Admits(letters[i]);
          if (open) next[i + 1] = 1;
        }
        break;
      }
    }
    for (char c : next) any |= c != 0;
    reach.swap(next);
    if (!any) break;
  }
  return reach;
}

}  // namespace

MatchResult MatchPrefix(const Pattern& p, std::string_view letters) {
  const auto reach = ReachableEnds(p, letters);
  const std::size_t n = letters.size();
  if (p.anchored_end) {
    if (reach[n]) return {true, n, 0};
    return {};
  }
  for (std::size_t i = n + 1; i-- > 0;) {
    if (reach[i]) return {true, i, 0};
  }
  return {};
}

MatchResult MatchPrefix(const CompoundPattern& p, std::string_view letters) {
  MatchResult best;
  for (std::size_t k = 0; k < p.alternatives.size(); ++k) {
    MatchResult r = MatchPrefix(p.alternatives[k], letters);
    if (r.matched && (!best.matched || r.length > best.length)) {
      best = {true, r.length, k};
    }
  }
  return best;
}

}  // namespace tactics
