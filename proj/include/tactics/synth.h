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

#ifndef TACTICS_SYNTH_H_
#define TACTICS_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tactics/pattern.h"
#include "tactics/tactic.h"

namespace tactics {

// Portable random draws on top of mt19937_64. The standard distributions
// are implementation-defined, so they are not used where output must be
// reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }
  // Uniform in [0, n). n must be > 0.
  std::size_t Below(std::size_t n);
  // Uniform in [0, 1).
  double Unit();
  bool Bernoulli(double p) { return Unit() < p; }

 private:
  std::mt19937_64 engine_;
};

// Deterministic seed derivation for per-item streams.
std::uint64_t SplitMix64(std::uint64_t x);

struct NoiseConfig {
  // Probability that a sample gets a letter prepended from outside the
  // pattern's opening set, so the anchored match fails.
  double prefix_noise_prob = 0.0;
  // Appended tail length L has P(L = k) = (1 - q) q^k for q = this value.
  double tail_continue_prob = 0.0;
  // Upper bound on letters drawn for a '+' atom.
  std::size_t max_repeat = 4;
  std::uint64_t seed = 0;

  // Throws Error{kInvalidConfig}.
  void Validate() const;
};

// Draws one derivation of `p`: '?' atoms are taken with probability 1/2,
// '+' atoms draw 1..max_repeat letters. Letters never repeat their
// predecessor, so the result is already collapsed and fully matched by `p`.
// Throws Error{kUnsatisfiablePattern} if no collapsed derivation could be
// drawn (e.g. "^P+P+").
TacticSequence SampleFromPattern(const Pattern& p, Rng& rng, std::size_t max_repeat = 4);

// Letters that can start a non-empty match of `p`: the union of the sets of
// every atom up to and including the first non-optional one.
TacticMask OpeningSet(const Pattern& p);

// n planted samples, each possibly prefixed by noise and extended by a random
// tail. Sample i uses its own stream seeded from (noise.seed, i).
std::vector<TacticSequence> GenerateSequences(const Pattern& p, const NoiseConfig& noise,
                                              std::size_t n);

// Same sequences wrapped as pre-encoded records with ids "synth-000001", ...
std::vector<EncodedResponse> GenerateCorpus(const Pattern& p, const NoiseConfig& noise,
                                            std::size_t n, const WriterClass& writer);

}  // namespace tactics

#endif  // TACTICS_SYNTH_H_
