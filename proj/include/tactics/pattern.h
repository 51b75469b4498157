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

#ifndef TACTICS_PATTERN_H_
#define TACTICS_PATTERN_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tactics/errors.h"
#include "tactics/tactic.h"

namespace tactics {

// Restricted regular expressions over tactic letters.
//
// Notation:
//   compound := pattern ('|' pattern)*
//   pattern  := '^'? atom+ '$'?
//   atom     := set quant?
//   set      := LETTER | '[' LETTER+ ']'
//   quant    := '?' | '+'
// ASCII whitespace between tokens is ignored. There is no '*', no wildcard,
// no bounded repetition, no grouping and no negation.
//
// Every pattern is matched against a prefix of the sequence starting at
// position 0, whether or not '^' is written. '$' requires the whole
// sequence to be consumed.

enum class Quantifier : std::uint8_t { kOne, kOptional, kOnePlus };

// Bit i is set for the tactic with taxonomy index i.
using TacticMask = std::uint16_t;

TacticMask MaskOf(std::string_view letters);

class Atom {
 public:
  // `letters` is kept in the order written so rendering round-trips.
  // Throws Error{kSyntaxError} for an empty set or unknown letter.
  Atom(std::string letters, Quantifier quantifier, bool bracketed = false);

  const std::string& letters() const { return letters_; }
  TacticMask mask() const { return mask_; }
  Quantifier quantifier() const { return quantifier_; }
  bool bracketed() const { return bracketed_; }

  bool Admits(char letter) const;

  std::string Render() const;

  // Same letter set and quantifier, regardless of spelling.
  bool EquivalentTo(const Atom& other) const {
    return mask_ == other.mask_ && quantifier_ == other.quantifier_;
  }

 private:
  std::string letters_;
  TacticMask mask_;
  Quantifier quantifier_;
  bool bracketed_;
};

struct Pattern {
  bool anchored_start = true;
  std::vector<Atom> atoms;
  bool anchored_end = false;

  // Canonical text: no whitespace, e.g. "^X?[PV]+[XE]?[AIP]+".
  std::string Render() const;

  // True if this pattern's atoms start with all of `prefix`'s atoms and add
  // at least one more.
  bool Extends(const Pattern& prefix) const;
};

// Alternatives tried independently; the longest successful match wins.
struct CompoundPattern {
  std::vector<Pattern> alternatives;

  CompoundPattern() = default;
  explicit CompoundPattern(std::vector<Pattern> alts)
      : alternatives(std::move(alts)) {}
  explicit CompoundPattern(Pattern p) { alternatives.push_back(std::move(p)); }

  std::string Render() const;
};

struct MatchResult {
  bool matched = false;
  std::size_t length = 0;  // letters consumed; 0 when unmatched
  // Index of the first alternative achieving `length`. Always 0 for a plain
  // pattern that matched.
  std::optional<std::size_t> alternative;

  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

// Throws SyntaxError. ParsePattern rejects '|'.
Pattern ParsePattern(std::string_view text);
CompoundPattern ParseCompound(std::string_view text);

// Sum over atoms of 0 for '?' and 1 otherwise.
std::size_t MinMatchLength(const Pattern& p);

// Longest anchored prefix match. `letters` may contain repeated neighbours;
// every character must be an alphabet code (others never match).
MatchResult MatchPrefix(const Pattern& p, std::string_view letters);
MatchResult MatchPrefix(const CompoundPattern& p, std::string_view letters);
inline MatchResult MatchPrefix(const Pattern& p, const TacticSequence& s) {
  return MatchPrefix(p, s.letters());
}
inline MatchResult MatchPrefix(const CompoundPattern& p, const TacticSequence& s) {
  return MatchPrefix(p, s.letters());
}

// Builds "Pk | P(k-1)$ | ... | P1$" from a nested ladder P1..Pk. Throws
// Error{kNotNested} if some pattern does not extend its predecessor.
CompoundPattern BuildCompound(std::span<const Pattern> ladder);

// Throws Error{kNotNested} naming the first offending index.
void CheckNested(std::span<const Pattern> ladder);

inline constexpr std::size_t kDefaultOracleBound = 12;

// Reference matcher: enumerates every derivation explicitly. Same contract as
// MatchPrefix. Throws Error{kOracleBoundExceeded} if the input is longer than
// `bound`.
MatchResult OracleMatch(const Pattern& p, std::string_view letters,
                        std::size_t bound = kDefaultOracleBound);
MatchResult OracleMatch(const CompoundPattern& p, std::string_view letters,
                        std::size_t bound = kDefaultOracleBound);

// Pattern files hold one compound per line; '#' starts a comment and blank
// lines are skipped. Syntax errors report the line number.
std::vector<CompoundPattern> ReadPatternFile(std::istream& in,
                                             std::string_view source_name = "<input>");
std::vector<CompoundPattern> LoadPatternFile(const std::string& path);

}  // namespace tactics

#endif  // TACTICS_PATTERN_H_
