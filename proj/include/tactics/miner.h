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

#ifndef TACTICS_MINER_H_
#define TACTICS_MINER_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tactics/pattern.h"
#include "tactics/tactic.h"

namespace tactics {

enum class CandidateMode { kExhaustiveSubsets, kAdjacencyClusters };

struct MinerConfig {
  std::size_t beam_width = 10;
  std::size_t max_atoms = 8;
  std::size_t max_set_size = 4;
  bool allow_optional = true;
  bool allow_one_plus = true;
  // Tactics present in fewer than this fraction of responses are left out
  // of the candidate alphabet.
  double min_tactic_prevalence = 0.05;
  CandidateMode candidate_mode = CandidateMode::kExhaustiveSubsets;
  // Share of all bigrams a letter pair must reach to be clustered. Only used
  // by kAdjacencyClusters. Experimental.
  double adjacency_threshold = 0.1;
  // Stop after this many steps without improving the best objective.
  std::size_t patience = 2;
  // Reserved for candidate sampling; the search itself is deterministic.
  std::uint64_t seed = 0;
  // Search starts from this prefix instead of the bare '^'.
  std::optional<Pattern> seed_pattern;
  // Threads used to score candidates; 0 means all CPUs.
  std::size_t jobs = 1;

  // Throws Error{kInvalidConfig}.
  void Validate() const;
};

// Reads MinerConfig keys from a JSON object. Unknown keys are rejected.
MinerConfig MinerConfigFromJson(const std::string& json_text, MinerConfig base = {});

// counts[i][j] = number of times tactic i is immediately followed by tactic j.
using BigramMatrix = std::array<std::array<std::size_t, kNumTactics>, kNumTactics>;

BigramMatrix AdjacencyStats(std::span<const TacticSequence> group);

// Letters (taxonomy order) present in at least `min_prevalence` of the group.
std::string PrevalentAlphabet(std::span<const TacticSequence> group, double min_prevalence);

// Candidate atoms over `alphabet` (taxonomy-ordered letters), in canonical
// order: by set size, then set letters, then '?' before '+'.
std::vector<Atom> GenerateCandidates(std::string_view alphabet, const MinerConfig& cfg,
                                     const BigramMatrix& stats);

struct ScoredPattern {
  Pattern pattern;
  std::string text;
  double across = 0;
  double within = 0;
  double objective = 0;
};

struct MinedLadder {
  std::vector<Pattern> patterns;        // nested; each adds one atom
  std::vector<double> objective_trace;  // objective of patterns[i]
  std::vector<std::vector<ScoredPattern>> frontier_log;  // beam after each step
  std::string alphabet;                 // candidate alphabet used
  std::size_t candidate_count = 0;
};

// Greedy beam search over one-atom extensions, scored by Objective(). Ties
// are broken by ascending pattern text. The ladder is the chain of prefixes
// of the best-scoring pattern seen at any step whose minimum match length is
// at least 1. Throws Error{kEmptyGroup}.
MinedLadder BeamSearch(std::span<const TacticSequence> group, const MinerConfig& cfg);

inline constexpr std::size_t kDefaultSearchBound = 1'000'000;

// Scores every pattern of up to cfg.max_atoms candidate atoms and returns the
// best one under the same tie-break. Throws Error{kSearchSpaceTooLarge} or
// Error{kInvalidConfig} when max_atoms is 0.
ScoredPattern ExhaustiveSearch(std::span<const TacticSequence> group, const MinerConfig& cfg,
                               std::size_t bound = kDefaultSearchBound);

ScoredPattern Score(const Pattern& p, std::span<const TacticSequence> group);

// Orders by objective (descending), then text (ascending).
bool BetterThan(const ScoredPattern& a, const ScoredPattern& b);

std::string MinedLadderJson(const MinedLadder& ladder, const std::string& group_label);

}  // namespace tactics

#endif  // TACTICS_MINER_H_
