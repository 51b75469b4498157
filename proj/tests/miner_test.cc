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

#include "tactics/miner.h"

#include <gtest/gtest.h>

#include "tactics/coverage.h"
#include "tactics/synth.h"

namespace tactics {
namespace {

std::vector<TacticSequence> Seqs(std::initializer_list<const char*> raw) {
  std::vector<TacticSequence> out;
  for (const char* r : raw) out.push_back(ParseSequence(r).sequence);
  return out;
}

std::size_t Idx(char c) { return TacticIndex(TacticFromLetter(c)); }

TEST(AdjacencyTest, Counts) {
  auto m = AdjacencyStats(Seqs({"PV", "PV"}));
  EXPECT_EQ(m[Idx('P')][Idx('V')], 2u);
  std::size_t total = 0;
  for (const auto& row : m) {
    for (auto v : row) total += v;
  }
  EXPECT_EQ(total, 2u);

  m = AdjacencyStats(Seqs({""}));
  for (const auto& row : m) {
    for (auto v : row) EXPECT_EQ(v, 0u);
  }

  m = AdjacencyStats(Seqs({"PVP"}));
  EXPECT_EQ(m[Idx('P')][Idx('V')], 1u);
  EXPECT_EQ(m[Idx('V')][Idx('P')], 1u);
}

TEST(AlphabetTest, PrevalenceFilter) {
  const auto group = Seqs({"PV", "PA", "P", "PQ"});
  EXPECT_EQ(PrevalentAlphabet(group, 0.0), "VPAQ");
  EXPECT_EQ(PrevalentAlphabet(group, 0.5), "P");
}

TEST(CandidatesTest, Counts) {
  MinerConfig cfg;
  cfg.max_set_size = 2;
  EXPECT_EQ(GenerateCandidates("VPA", cfg, {}).size(), 12u);

  cfg.allow_optional = false;
  const auto single = GenerateCandidates("P", cfg, {});
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].Render(), "P+");

  cfg.max_set_size = 4;
  EXPECT_EQ(GenerateCandidates("VIPA", cfg, {}).size(), 15u);
  cfg.allow_optional = true;
  EXPECT_EQ(GenerateCandidates("VIPA", cfg, {}).size(), 30u);
}

TEST(CandidatesTest, CanonicalOrder) {
  MinerConfig cfg;
  cfg.max_set_size = 2;
  const auto c = GenerateCandidates("VPA", cfg, {});
  std::vector<std::string> texts;
  for (const auto& a : c) texts.push_back(a.Render());
  const std::vector<std::string> expected = {"V?",     "V+",     "P?",     "P+",
                                             "A?",     "A+",     "[VP]?",  "[VP]+",
                                             "[VA]?",  "[VA]+",  "[PA]?",  "[PA]+"};
  EXPECT_EQ(texts, expected);
}

TEST(CandidatesTest, AdjacencyClustersFollowBigrams) {
  MinerConfig cfg;
  cfg.candidate_mode = CandidateMode::kAdjacencyClusters;
  cfg.allow_optional = false;
  cfg.max_set_size = 3;
  // P and V alternate constantly; Q never touches them.
  const auto group = Seqs({"PVPV", "VPVP", "PVP", "QX", "XQ"});
  const auto c = GenerateCandidates(PrevalentAlphabet(group, 0.0), cfg, AdjacencyStats(group));
  bool has_pv = false, has_pq = false;
  for (const auto& a : c) {
    if (a.mask() == MaskOf("PV")) has_pv = true;
    if ((a.mask() & MaskOf("P")) && (a.mask() & MaskOf("Q"))) has_pq = true;
  }
  EXPECT_TRUE(has_pv);
  EXPECT_FALSE(has_pq);
}

TEST(BeamSearchTest, TwoLetterAlphabetOneAtom) {
  MinerConfig cfg;
  cfg.max_atoms = 1;
  const auto ladder = BeamSearch(Seqs({"PV", "VP", "PVP"}), cfg);
  ASSERT_EQ(ladder.patterns.size(), 1u);
  const Atom& atom = ladder.patterns[0].atoms[0];
  EXPECT_EQ(atom.mask(), MaskOf("PV"));
  EXPECT_EQ(atom.quantifier(), Quantifier::kOnePlus);
  EXPECT_DOUBLE_EQ(ladder.objective_trace[0], 1.0);
}

TEST(BeamSearchTest, IdenticalSingleLetters) {
  const auto ladder = BeamSearch(Seqs({"A", "A", "A", "A", "A"}), MinerConfig{});
  ASSERT_FALSE(ladder.patterns.empty());
  const std::string best = ladder.patterns.back().Render();
  EXPECT_TRUE(best == "^A" || best == "^A+") << best;
  EXPECT_DOUBLE_EQ(ladder.objective_trace.back(), 1.0);
}

TEST(BeamSearchTest, LadderIsNestedWithTrace) {
  Rng rng(4);
  std::vector<TacticSequence> group;
  for (int i = 0; i < 60; ++i) {
    std::string s;
    for (std::size_t j = 0, n = 1 + rng.Below(7); j < n; ++j) s.push_back("PVAIQ"[rng.Below(5)]);
    group.push_back(ParseSequence(s).sequence);
  }
  MinerConfig cfg;
  cfg.max_atoms = 4;
  const auto ladder = BeamSearch(group, cfg);
  ASSERT_FALSE(ladder.patterns.empty());
  EXPECT_NO_THROW(CheckNested(ladder.patterns));
  ASSERT_EQ(ladder.objective_trace.size(), ladder.patterns.size());
  for (std::size_t i = 0; i < ladder.patterns.size(); ++i) {
    EXPECT_DOUBLE_EQ(ladder.objective_trace[i], Score(ladder.patterns[i], group).objective);
  }
  EXPECT_LE(ladder.patterns.back().atoms.size(), 4u);
}

TEST(BeamSearchTest, RecoversPlantedObjective) {
  const Pattern planted = ParsePattern("^X?[PV]+[XE]?[AIP]+");
  NoiseConfig noise;
  noise.seed = 7;
  const auto group = GenerateSequences(planted, noise, 100);
  const double bar = Score(planted, group).objective;
  EXPECT_DOUBLE_EQ(bar, 1.0);
  MinerConfig cfg;
  cfg.max_atoms = 4;
  const auto ladder = BeamSearch(group, cfg);
  EXPECT_GE(ladder.objective_trace.back(), bar);
}

TEST(BeamSearchTest, DeterministicAcrossThreadCounts) {
  NoiseConfig noise;
  noise.seed = 3;
  noise.prefix_noise_prob = 0.2;
  noise.tail_continue_prob = 0.3;
  const auto group = GenerateSequences(ParsePattern("^[PV]+A?[IQ]+"), noise, 300);
  MinerConfig cfg;
  cfg.max_atoms = 4;
  cfg.jobs = 1;
  const std::string one = MinedLadderJson(BeamSearch(group, cfg), "g");
  cfg.jobs = 4;
  EXPECT_EQ(MinedLadderJson(BeamSearch(group, cfg), "g"), one);
  EXPECT_EQ(MinedLadderJson(BeamSearch(group, cfg), "g"), one);
}

TEST(BeamSearchTest, SeedPatternIsKept) {
  MinerConfig cfg;
  cfg.max_atoms = 3;
  cfg.seed_pattern = ParsePattern("^Q");
  const auto ladder = BeamSearch(Seqs({"QPV", "QP", "QVA"}), cfg);
  ASSERT_FALSE(ladder.patterns.empty());
  EXPECT_EQ(ladder.patterns.back().atoms[0].Render(), "Q");
}

TEST(BeamSearchTest, EmptyGroup) {
  try {
    BeamSearch({}, MinerConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyGroup);
  }
}

TEST(ExhaustiveTest, Examples) {
  MinerConfig cfg;
  cfg.max_atoms = 0;
  try {
    ExhaustiveSearch(Seqs({"P"}), cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidConfig);
  }
  cfg.max_atoms = 2;
  const auto best = ExhaustiveSearch(Seqs({"P"}), cfg);
  EXPECT_TRUE(best.text == "^P" || best.text == "^P+") << best.text;
  EXPECT_DOUBLE_EQ(best.objective, 1.0);
}

TEST(ExhaustiveTest, SearchSpaceBound) {
  MinerConfig cfg;
  cfg.max_atoms = 6;
  try {
    ExhaustiveSearch(Seqs({"PVAIQX"}), cfg, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSearchSpaceTooLarge);
  }
}

TEST(ExhaustiveTest, BeamWithFullWidthMatchesOptimum) {
  const auto group = Seqs({"PVA", "PA", "VAP", "AV", "PVPA", "Q"});
  MinerConfig cfg;
  cfg.max_atoms = 2;
  cfg.max_set_size = 3;
  cfg.beam_width = 1000;
  cfg.patience = 10;
  const auto best = ExhaustiveSearch(group, cfg);
  const auto ladder = BeamSearch(group, cfg);
  EXPECT_DOUBLE_EQ(ladder.objective_trace.back(), best.objective);
}

TEST(ConfigTest, JsonKeys) {
  const auto cfg = MinerConfigFromJson(
      R"({"beam_width": 5, "max_atoms": 3, "max_set_size": 2, "allowed_quantifiers": ["+"],
          "min_tactic_prevalence": 0.1, "candidate_mode": "AdjacencyClusters",
          "tie_break": "canonical", "seed": 9, "patience": 3, "seed_pattern": "^P"})");
  EXPECT_EQ(cfg.beam_width, 5u);
  EXPECT_EQ(cfg.max_atoms, 3u);
  EXPECT_FALSE(cfg.allow_optional);
  EXPECT_TRUE(cfg.allow_one_plus);
  EXPECT_EQ(cfg.candidate_mode, CandidateMode::kAdjacencyClusters);
  EXPECT_EQ(cfg.seed, 9u);
  ASSERT_TRUE(cfg.seed_pattern);
  EXPECT_EQ(cfg.seed_pattern->Render(), "^P");
}

TEST(ConfigTest, Rejections) {
  for (const char* bad : {R"({"beam": 5})", R"({"allowed_quantifiers": ["*"]})",
                          R"({"beam_width": "wide"})", "[1]", "{",
                          R"({"tie_break": "random"})"}) {
    try {
      MinerConfigFromJson(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidConfig) << bad;
    }
  }
  MinerConfig cfg;
  cfg.beam_width = 0;
  EXPECT_THROW(cfg.Validate(), Error);
}

}  // namespace
}  // namespace tactics
