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

#include "tactics/synth.h"

#include <cstdio>

namespace tactics {

std::size_t Rng::Below(std::size_t n) {
  // Rejection sampling removes modulo bias.
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

double Rng::Unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

void NoiseConfig::Validate() const {
  if (prefix_noise_prob < 0.0 || prefix_noise_prob > 1.0) {
    throw Error(ErrorCode::kInvalidConfig, "prefix_noise_prob must be in [0, 1]");
  }
  if (tail_continue_prob < 0.0 || tail_continue_prob >= 1.0) {
    throw Error(ErrorCode::kInvalidConfig, "tail_continue_prob must be in [0, 1)");
  }
  if (max_repeat < 1) throw Error(ErrorCode::kInvalidConfig, "max_repeat must be >= 1");
}

namespace {

constexpr int kMaxAttempts = 64;

// Letters of `mask` other than `avoid`.
std::string Admissible(TacticMask mask, char avoid) {
  std::string out;
  for (std::size_t i = 0; i < kNumTactics; ++i) {
    if (((mask >> i) & 1u) && kAlphabet[i] != avoid) out.push_back(kAlphabet[i]);
  }
  return out;
}

bool TrySample(const Pattern& p, Rng& rng, std::size_t max_repeat, std::string* out) {
  out->clear();
  for (const Atom& atom : p.atoms) {
    std::size_t reps = 1;
    bool required = true;
    switch (atom.quantifier()) {
      case Quantifier::kOne: break;
      case Quantifier::kOptional:
        required = false;
        if (!rng.Bernoulli(0.5)) reps = 0;
        break;
      case Quantifier::kOnePlus:
        reps = 1 + rng.Below(max_repeat);
        break;
    }
    for (std::size_t r = 0; r < reps; ++r) {
      const char prev = out->empty() ? '\0' : out->back();
      const std::string choices = Admissible(atom.mask(), prev);
      if (choices.empty()) {
        // A repeat that would duplicate the previous letter collapses into
        // it; only the first letter of a required atom is mandatory.
        if (r == 0 && required) return false;
        break;
      }
      out->push_back(choices[rng.Below(choices.size())]);
    }
  }
  return true;
}

}  // namespace

TacticSequence SampleFromPattern(const Pattern& p, Rng& rng, std::size_t max_repeat) {
  if (max_repeat < 1) throw Error(ErrorCode::kInvalidConfig, "max_repeat must be >= 1");
  std::string letters;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    if (TrySample(p, rng, max_repeat, &letters)) {
      return TacticSequence::FromCollapsed(letters);
    }
  }
  throw Error(ErrorCode::kUnsatisfiablePattern,
              "cannot draw a collapsed sequence from " + p.Render());
}

TacticMask OpeningSet(const Pattern& p) {
  TacticMask mask = 0;
  for (const Atom& atom : p.atoms) {
    mask = static_cast<TacticMask>(mask | atom.mask());
    if (atom.quantifier() != Quantifier::kOptional) return mask;
  }
  // Every atom is optional: the empty derivation matches anything.
  return static_cast<TacticMask>((1u << kNumTactics) - 1);
}

std::vector<TacticSequence> GenerateSequences(const Pattern& p, const NoiseConfig& noise,
                                              std::size_t n) {
  noise.Validate();
  const TacticMask opening = OpeningSet(p);
  const TacticMask outside =
      static_cast<TacticMask>(~opening & ((1u << kNumTactics) - 1));
  if (noise.prefix_noise_prob > 0.0 && outside == 0) {
    throw Error(ErrorCode::kUnsatisfiablePattern,
                "prefix noise cannot break a match of " + p.Render() +
                    ": every letter can open it");
  }
  const std::string noise_letters = Admissible(outside, '\0');

  std::vector<TacticSequence> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(SplitMix64(noise.seed ^ SplitMix64(i)));
    std::string letters(SampleFromPattern(p, rng, noise.max_repeat).letters());
    if (noise.prefix_noise_prob > 0.0 && rng.Bernoulli(noise.prefix_noise_prob)) {
      letters.insert(letters.begin(), noise_letters[rng.Below(noise_letters.size())]);
    }
    while (noise.tail_continue_prob > 0.0 && rng.Bernoulli(noise.tail_continue_prob)) {
      const char prev = letters.empty() ? '\0' : letters.back();
      const std::string choices = Admissible(static_cast<TacticMask>((1u << kNumTactics) - 1), prev);
      letters.push_back(choices[rng.Below(choices.size())]);
    }
    out.push_back(ParseSequence(letters).sequence);
  }
  return out;
}

std::vector<EncodedResponse> GenerateCorpus(const Pattern& p, const NoiseConfig& noise,
                                            std::size_t n, const WriterClass& writer) {
  auto sequences = GenerateSequences(p, noise, n);
  std::vector<EncodedResponse> out;
  out.reserve(n);
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    char id[32];
    std::snprintf(id, sizeof(id), "synth-%06zu", i + 1);
    out.push_back({id, writer, std::move(sequences[i]), std::nullopt});
  }
  return out;
}

}  // namespace tactics
