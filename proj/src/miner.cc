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

#include <algorithm>
#include <map>
#include <utility>

#include "json.hpp"
#include "tactics/coverage.h"
#include "tactics/parallel.h"

namespace tactics {

void MinerConfig::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidConfig, "miner config: " + what);
  };
  if (beam_width < 1) fail("beam_width must be >= 1");
  if (max_atoms < 1) fail("max_atoms must be >= 1");
  if (max_set_size < 1 || max_set_size > kNumTactics) fail("max_set_size must be in [1, 10]");
  if (!allow_optional && !allow_one_plus) fail("allowed_quantifiers is empty");
  if (min_tactic_prevalence < 0.0 || min_tactic_prevalence > 1.0) {
    fail("min_tactic_prevalence must be in [0, 1]");
  }
  if (adjacency_threshold < 0.0 || adjacency_threshold > 1.0) {
    fail("adjacency_threshold must be in [0, 1]");
  }
  if (patience < 1) fail("patience must be >= 1");
  if (seed_pattern && seed_pattern->atoms.size() >= max_atoms) {
    fail("seed_pattern already has max_atoms atoms");
  }
}

MinerConfig MinerConfigFromJson(const std::string& json_text, MinerConfig cfg) {
  using json = nlohmann::json;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("miner config: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kInvalidConfig, "miner config must be an object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "beam_width") {
        cfg.beam_width = value.get<std::size_t>();
      } else if (key == "max_atoms") {
        cfg.max_atoms = value.get<std::size_t>();
      } else if (key == "max_set_size") {
        cfg.max_set_size = value.get<std::size_t>();
      } else if (key == "allowed_quantifiers") {
        cfg.allow_optional = cfg.allow_one_plus = false;
        for (const auto& q : value) {
          const auto s = q.get<std::string>();
          if (s == "?" || s == "Optional") {
            cfg.allow_optional = true;
          } else if (s == "+" || s == "OnePlus") {
            cfg.allow_one_plus = true;
          } else {
            throw Error(ErrorCode::kInvalidConfig, "unknown quantifier \"" + s + "\"");
          }
        }
      } else if (key == "min_tactic_prevalence") {
        cfg.min_tactic_prevalence = value.get<double>();
      } else if (key == "candidate_mode") {
        const auto s = value.get<std::string>();
        if (s == "ExhaustiveSubsets") {
          cfg.candidate_mode = CandidateMode::kExhaustiveSubsets;
        } else if (s == "AdjacencyClusters") {
          cfg.candidate_mode = CandidateMode::kAdjacencyClusters;
        } else {
          throw Error(ErrorCode::kInvalidConfig, "unknown candidate_mode \"" + s + "\"");
        }
      } else if (key == "tie_break") {
        if (value.get<std::string>() != "canonical") {
          throw Error(ErrorCode::kInvalidConfig, "tie_break must be \"canonical\"");
        }
      } else if (key == "seed") {
        cfg.seed = value.get<std::uint64_t>();
      } else if (key == "adjacency_threshold") {
        cfg.adjacency_threshold = value.get<double>();
      } else if (key == "patience") {
        cfg.patience = value.get<std::size_t>();
      } else if (key == "seed_pattern") {
        cfg.seed_pattern = ParsePattern(value.get<std::string>());
      } else {
        throw Error(ErrorCode::kInvalidConfig, "unknown miner config key \"" + key + "\"");
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("miner config: ") + e.what());
  }
  return cfg;
}

BigramMatrix AdjacencyStats(std::span<const TacticSequence> group) {
  BigramMatrix m{};
  for (const auto& s : group) {
    for (std::size_t i = 1; i < s.size(); ++i) {
      ++m[TacticIndex(s[i - 1])][TacticIndex(s[i])];
    }
  }
  return m;
}

std::string PrevalentAlphabet(std::span<const TacticSequence> group, double min_prevalence) {
  std::string out;
  if (group.empty()) return out;
  for (Tactic t : kAllTactics) {
    std::size_t present = 0;
    for (const auto& s : group) present += s.Contains(t) ? 1 : 0;
    const double share = static_cast<double>(present) / static_cast<double>(group.size());
    if (present > 0 && share >= min_prevalence) out.push_back(TacticCode(t));
  }
  return out;
}

namespace {

// Letters of `mask` in taxonomy order.
std::string LettersOf(TacticMask mask) {
  std::string out;
  for (std::size_t i = 0; i < kNumTactics; ++i) {
    if ((mask >> i) & 1u) out.push_back(kAlphabet[i]);
  }
  return out;
}

bool CanonicalSetLess(TacticMask a, TacticMask b) {
  const auto la = LettersOf(a);
  const auto lb = LettersOf(b);
  if (la.size() != lb.size()) return la.size() < lb.size();
  // Compare by taxonomy index, not ASCII.
  for (std::size_t i = 0; i < la.size(); ++i) {
    const auto ia = kAlphabet.find(la[i]);
    const auto ib = kAlphabet.find(lb[i]);
    if (ia != ib) return ia < ib;
  }
  return false;
}

std::vector<TacticMask> ExhaustiveSets(TacticMask universe, std::size_t max_size) {
  std::vector<TacticMask> out;
  for (unsigned m = 1; m < (1u << kNumTactics); ++m) {
    if ((m & ~static_cast<unsigned>(universe)) != 0) continue;
    if (static_cast<std::size_t>(__builtin_popcount(m)) > max_size) continue;
    out.push_back(static_cast<TacticMask>(m));
  }
  return out;
}

// Singletons plus, for each seed letter, the cluster grown by repeatedly
// adding the outside letter with the strongest link to any member while that
// link reaches the threshold. Every intermediate cluster is kept.
std::vector<TacticMask> AdjacencySets(std::string_view alphabet, std::size_t max_size,
                                      double threshold, const BigramMatrix& stats) {
  std::size_t total = 0;
  for (const auto& row : stats) {
    for (std::size_t c : row) total += c;
  }
  auto affinity = [&](std::size_t i, std::size_t j) {
    if (total == 0) return 0.0;
    return static_cast<double>(stats[i][j] + stats[j][i]) / static_cast<double>(total);
  };
  std::vector<std::size_t> idx;
  for (char c : alphabet) idx.push_back(kAlphabet.find(c));

  std::vector<TacticMask> out;
  auto add = [&](TacticMask m) {
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  };
  for (std::size_t seed : idx) {
    TacticMask cluster = static_cast<TacticMask>(1u << seed);
    add(cluster);
    while (static_cast<std::size_t>(__builtin_popcount(cluster)) < max_size) {
      double best = -1.0;
      std::size_t pick = kNumTactics;
      for (std::size_t cand : idx) {
        if ((cluster >> cand) & 1u) continue;
        double link = 0.0;
        for (std::size_t member : idx) {
          if ((cluster >> member) & 1u) link = std::max(link, affinity(member, cand));
        }
        if (link > best) {
          best = link;
          pick = cand;
        }
      }
      if (pick == kNumTactics || best < threshold || best <= 0.0) break;
      cluster = static_cast<TacticMask>(cluster | (1u << pick));
      add(cluster);
    }
  }
  return out;
}

}  // namespace

std::vector<Atom> GenerateCandidates(std::string_view alphabet, const MinerConfig& cfg,
                                     const BigramMatrix& stats) {
  std::vector<TacticMask> sets;
  if (cfg.candidate_mode == CandidateMode::kExhaustiveSubsets) {
    sets = ExhaustiveSets(MaskOf(alphabet), cfg.max_set_size);
  } else {
    sets = AdjacencySets(alphabet, cfg.max_set_size, cfg.adjacency_threshold, stats);
  }
  std::sort(sets.begin(), sets.end(), CanonicalSetLess);
  std::vector<Atom> out;
  for (TacticMask m : sets) {
    if (cfg.allow_optional) out.emplace_back(LettersOf(m), Quantifier::kOptional);
    if (cfg.allow_one_plus) out.emplace_back(LettersOf(m), Quantifier::kOnePlus);
  }
  return out;
}

bool BetterThan(const ScoredPattern& a, const ScoredPattern& b) {
  if (a.objective != b.objective) return a.objective > b.objective;
  return a.text < b.text;
}

namespace {

// Identical sequences are scored once and weighted.
struct WeightedGroup {
  std::vector<TacticSequence> sequences;
  std::vector<std::size_t> weights;
};

WeightedGroup Deduplicate(std::span<const TacticSequence> group) {
  std::map<TacticSequence, std::size_t> counts;
  for (const auto& s : group) ++counts[s];
  WeightedGroup out;
  for (const auto& [s, n] : counts) {
    out.sequences.push_back(s);
    out.weights.push_back(n);
  }
  return out;
}

ScoredPattern ScoreWeighted(Pattern p, const WeightedGroup& group) {
  CoverageTally tally;
  for (std::size_t i = 0; i < group.sequences.size(); ++i) {
    const auto& s = group.sequences[i];
    const MatchResult r = MatchPrefix(p, s);
    tally.Add(s.size(), r, group.weights[i]);
  }
  ScoredPattern out;
  out.text = p.Render();
  out.pattern = std::move(p);
  out.across = tally.AcrossApprox();
  out.within = tally.WithinApprox();
  out.objective = Objective(out.across, out.within);
  return out;
}

Pattern Extend(const Pattern& base, const Atom& atom) {
  Pattern p = base;
  p.anchored_start = true;
  p.atoms.push_back(atom);
  return p;
}

}  // namespace

ScoredPattern Score(const Pattern& p, std::span<const TacticSequence> group) {
  return ScoreWeighted(p, Deduplicate(group));
}

MinedLadder BeamSearch(std::span<const TacticSequence> group, const MinerConfig& cfg) {
  cfg.Validate();
  if (group.empty()) throw Error(ErrorCode::kEmptyGroup, "cannot mine an empty group");
  const WeightedGroup weighted = Deduplicate(group);

  MinedLadder out;
  out.alphabet = PrevalentAlphabet(group, cfg.min_tactic_prevalence);
  const auto candidates = GenerateCandidates(out.alphabet, cfg, AdjacencyStats(group));
  out.candidate_count = candidates.size();

  Pattern start;
  if (cfg.seed_pattern) start = *cfg.seed_pattern;
  start.anchored_start = true;
  start.anchored_end = false;

  std::optional<ScoredPattern> best;
  if (!start.atoms.empty() && MinMatchLength(start) >= 1) {
    best = ScoreWeighted(start, weighted);
  }

  std::vector<Pattern> beam = {start};
  std::size_t stale = 0;
  for (std::size_t atoms = start.atoms.size(); atoms < cfg.max_atoms && !candidates.empty();
       ++atoms) {
    std::vector<Pattern> extensions;
    extensions.reserve(beam.size() * candidates.size());
    for (const auto& b : beam) {
      for (const auto& a : candidates) extensions.push_back(Extend(b, a));
    }
    std::vector<ScoredPattern> scored(extensions.size());
    ParallelFor(extensions.size(), cfg.jobs, [&](std::size_t i) {
      scored[i] = ScoreWeighted(std::move(extensions[i]), weighted);
    });
    std::sort(scored.begin(), scored.end(), BetterThan);

    const ScoredPattern* step_best = nullptr;
    for (const auto& s : scored) {
      if (MinMatchLength(s.pattern) >= 1) {
        step_best = &s;
        break;
      }
    }
    const double before = best ? best->objective : -1.0;
    if (step_best && (!best || BetterThan(*step_best, *best))) best = *step_best;
    if (best && best->objective > before) {
      stale = 0;
    } else {
      ++stale;
    }

    if (scored.size() > cfg.beam_width) scored.resize(cfg.beam_width);
    beam.clear();
    for (const auto& s : scored) beam.push_back(s.pattern);
    out.frontier_log.push_back(std::move(scored));
    if (stale >= cfg.patience) break;
  }

  if (best) {
    for (std::size_t k = 1; k <= best->pattern.atoms.size(); ++k) {
      Pattern prefix = best->pattern;
      prefix.atoms.erase(prefix.atoms.begin() + static_cast<std::ptrdiff_t>(k),
                         prefix.atoms.end());
      out.objective_trace.push_back(ScoreWeighted(prefix, weighted).objective);
      out.patterns.push_back(std::move(prefix));
    }
  }
  return out;
}

ScoredPattern ExhaustiveSearch(std::span<const TacticSequence> group, const MinerConfig& cfg,
                               std::size_t bound) {
  if (cfg.max_atoms == 0) {
    throw Error(ErrorCode::kInvalidConfig, "exhaustive search needs max_atoms >= 1");
  }
  cfg.Validate();
  if (group.empty()) throw Error(ErrorCode::kEmptyGroup, "cannot mine an empty group");
  const WeightedGroup weighted = Deduplicate(group);
  const auto alphabet = PrevalentAlphabet(group, cfg.min_tactic_prevalence);
  const auto candidates = GenerateCandidates(alphabet, cfg, AdjacencyStats(group));

  Pattern start;
  if (cfg.seed_pattern) start = *cfg.seed_pattern;
  start.anchored_start = true;
  start.anchored_end = false;
  const std::size_t depth =
      cfg.max_atoms > start.atoms.size() ? cfg.max_atoms - start.atoms.size() : 0;

  double space = 0;
  double layer = 1;
  for (std::size_t k = 1; k <= depth; ++k) {
    layer *= static_cast<double>(candidates.size());
    space += layer;
  }
  if (space > static_cast<double>(bound)) {
    throw Error(ErrorCode::kSearchSpaceTooLarge,
                "exhaustive search space of " + std::to_string(static_cast<long long>(space)) +
                    " patterns exceeds bound " + std::to_string(bound));
  }

  std::optional<ScoredPattern> best;
  std::vector<Pattern> frontier = {start};
  for (std::size_t k = 1; k <= depth; ++k) {
    std::vector<Pattern> next;
    for (const auto& b : frontier) {
      for (const auto& a : candidates) {
        Pattern p = Extend(b, a);
        if (MinMatchLength(p) >= 1) {
          ScoredPattern s = ScoreWeighted(p, weighted);
          if (!best || BetterThan(s, *best)) best = std::move(s);
        }
        next.push_back(std::move(p));
      }
    }
    frontier = std::move(next);
  }
  if (!best) {
    throw Error(ErrorCode::kNoMatches, "no candidate pattern has minimum match length >= 1");
  }
  return *best;
}

std::string MinedLadderJson(const MinedLadder& ladder, const std::string& group_label) {
  using ordered_json = nlohmann::ordered_json;
  auto scored_json = [](const ScoredPattern& s) {
    ordered_json j;
    j["pattern"] = s.text;
    j["across"] = s.across;
    j["within"] = s.within;
    j["objective"] = s.objective;
    return j;
  };
  ordered_json doc;
  doc["group"] = group_label;
  doc["alphabet"] = ladder.alphabet;
  doc["candidate_count"] = ladder.candidate_count;
  ordered_json patterns = ordered_json::array();
  for (std::size_t i = 0; i < ladder.patterns.size(); ++i) {
    ordered_json p;
    p["pattern"] = ladder.patterns[i].Render();
    p["atoms"] = ladder.patterns[i].atoms.size();
    p["objective"] = ladder.objective_trace[i];
    patterns.push_back(std::move(p));
  }
  doc["ladder"] = std::move(patterns);
  doc["best"] = ladder.patterns.empty() ? ordered_json(nullptr)
                                        : ordered_json(ladder.patterns.back().Render());
  ordered_json frontier = ordered_json::array();
  for (const auto& step : ladder.frontier_log) {
    ordered_json beam = ordered_json::array();
    for (const auto& s : step) beam.push_back(scored_json(s));
    frontier.push_back(std::move(beam));
  }
  doc["frontier_log"] = std::move(frontier);
  return doc.dump(2);
}

}  // namespace tactics
