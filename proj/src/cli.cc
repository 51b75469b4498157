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

#include "tactics/cli.h"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tactics/corpus_io.h"
#include "tactics/coverage.h"
#include "tactics/encoder.h"
#include "tactics/gateway.h"
#include "tactics/miner.h"
#include "tactics/parallel.h"
#include "tactics/pattern.h"
#include "tactics/stats.h"
#include "tactics/synth.h"

namespace tactics {
namespace {

using ordered_json = nlohmann::ordered_json;

enum class Format { kJson, kCsv, kMd };

// Flags shared by the subcommands. Each subcommand registers the subset it
// accepts.
struct Options {
  std::string corpus;
  std::string patterns;
  std::string group_by;
  std::string out;
  std::string format = "json";
  std::optional<std::size_t> beam;
  std::optional<std::size_t> max_atoms;
  std::optional<std::size_t> max_set_size;
  std::uint64_t seed = kDefaultSeed;
  std::size_t jobs = 0;
  std::string config;
  std::string prompt;
  bool mock = false;

  // Extras.
  std::string pattern;
  std::size_t n = 1000;
  double noise = 0;
  double tail = 0;
  std::size_t max_repeat = 4;
  std::string seed_pattern;
  std::string candidate_mode;
  int study = 1;
  std::string source;
  bool pearson = false;
  bool independent = false;
  std::string ratings;
};

Format ParseFormat(const std::string& s) {
  if (s == "csv") return Format::kCsv;
  if (s == "md") return Format::kMd;
  return Format::kJson;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Buffers the whole output so a failed run never leaves a partial file.
void Emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIoError, "cannot write " + o.out);
  f << text;
  if (!f) throw Error(ErrorCode::kIoError, "write failed for " + o.out);
}

std::vector<EncodedResponse> LoadEncoded(const std::string& path) {
  return EncodeCorpus(LoadCorpus(path));
}

std::vector<ResponseGroup> LoadGroups(const Options& o, const std::string& default_group_by) {
  const auto records = LoadEncoded(o.corpus);
  if (records.empty()) {
    throw Error(ErrorCode::kEmptyGroup, "corpus " + o.corpus + " has no responses");
  }
  return GroupResponses(records, ParseGroupBy(o.group_by.empty() ? default_group_by : o.group_by));
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string Num(double v) {
  // Shortest round-trip text, same as the JSON output.
  return ordered_json(v).dump();
}

// ---- encode ----

std::string RunEncode(const Options& o) {
  const auto records = LoadEncoded(o.corpus);
  std::ostringstream ss;
  switch (ParseFormat(o.format)) {
    case Format::kJson:
      WriteEncodedJsonl(ss, records);
      break;
    case Format::kCsv:
      ss << "id,writer_study,writer_source,sequence,word_count\n";
      for (const auto& r : records) {
        ss << CsvField(r.id) << ',' << r.writer.study << ',' << CsvField(r.writer.source) << ','
           << r.sequence.str() << ',' << (r.word_count ? std::to_string(*r.word_count) : "")
           << '\n';
      }
      break;
    case Format::kMd:
      ss << "| id | writer | sequence |\n|---|---|---|\n";
      for (const auto& r : records) {
        ss << "| " << r.id << " | " << r.writer.Label() << " | `" << r.sequence.str() << "` |\n";
      }
      break;
  }
  return ss.str();
}

// ---- stats ----

ordered_json MeanSdJson(const MeanSd& m) {
  return ordered_json{{"mean", m.mean}, {"sd", m.sd}, {"n", m.n}, {"degenerate", m.degenerate}};
}

struct GroupStats {
  std::string label;
  std::size_t size = 0;
  Descriptives descriptives;
  PrevalenceVector prevalence{};
};

struct Correlation {
  std::string a, b;
  std::optional<double> spearman;
  std::optional<double> pearson;
  std::string note;
};

std::string RunStats(const Options& o) {
  const auto groups = LoadGroups(o, "writer");
  std::vector<GroupStats> stats;
  for (const auto& g : groups) {
    GroupStats s;
    s.label = g.Label();
    s.size = g.records.size();
    std::vector<SizedSequence> sized;
    for (const auto& r : g.records) sized.push_back({r.word_count, r.sequence});
    s.descriptives = ComputeDescriptives(sized);
    s.prevalence = Prevalence(g.Sequences());
    stats.push_back(std::move(s));
  }
  std::vector<Correlation> corr;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    for (std::size_t j = i + 1; j < stats.size(); ++j) {
      Correlation c{stats[i].label, stats[j].label, std::nullopt, std::nullopt, ""};
      try {
        c.spearman = SpearmanCorrelation(stats[i].prevalence, stats[j].prevalence);
        if (o.pearson) c.pearson = PearsonCorrelation(stats[i].prevalence, stats[j].prevalence);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kZeroVariance) throw;
        c.note = "ZeroVariance: a prevalence vector is constant";
      }
      corr.push_back(std::move(c));
    }
  }

  std::ostringstream ss;
  const Format fmt = ParseFormat(o.format);
  if (fmt == Format::kJson) {
    ordered_json doc;
    ordered_json gs = ordered_json::array();
    for (const auto& s : stats) {
      ordered_json d;
      d["word_count"] = s.descriptives.word_count ? MeanSdJson(*s.descriptives.word_count)
                                                  : ordered_json(nullptr);
      d["total_tactics"] = MeanSdJson(s.descriptives.total_tactics);
      d["unique_tactics"] = MeanSdJson(s.descriptives.unique_tactics);
      ordered_json prev;
      for (Tactic t : kAllTactics) prev[std::string(1, TacticCode(t))] = s.prevalence[TacticIndex(t)];
      gs.push_back(ordered_json{
          {"group", s.label}, {"size", s.size}, {"descriptives", d}, {"prevalence", prev}});
    }
    doc["groups"] = gs;
    ordered_json cs = ordered_json::array();
    for (const auto& c : corr) {
      ordered_json j{{"a", c.a}, {"b", c.b}};
      j["spearman"] = c.spearman ? ordered_json(*c.spearman) : ordered_json(nullptr);
      if (o.pearson) j["pearson"] = c.pearson ? ordered_json(*c.pearson) : ordered_json(nullptr);
      if (!c.note.empty()) j["note"] = c.note;
      cs.push_back(std::move(j));
    }
    doc["correlations"] = cs;
    ss << doc.dump(2) << '\n';
  } else if (fmt == Format::kCsv) {
    ss << "group,metric,value\n";
    for (const auto& s : stats) {
      auto row = [&](const std::string& metric, const std::string& value) {
        ss << CsvField(s.label) << ',' << metric << ',' << value << '\n';
      };
      row("size", std::to_string(s.size));
      auto mean_sd = [&](const std::string& name, const std::optional<MeanSd>& m) {
        row(name + "_mean", m ? Num(m->mean) : "");
        row(name + "_sd", m ? Num(m->sd) : "");
      };
      mean_sd("word_count", s.descriptives.word_count);
      mean_sd("total_tactics", s.descriptives.total_tactics);
      mean_sd("unique_tactics", s.descriptives.unique_tactics);
      for (Tactic t : kAllTactics) {
        row(std::string("prevalence_") + TacticCode(t), Num(s.prevalence[TacticIndex(t)]));
      }
    }
    for (const auto& c : corr) {
      const std::string label = CsvField(c.a + "~" + c.b);
      ss << label << ",spearman," << (c.spearman ? Num(*c.spearman) : "") << '\n';
      if (o.pearson) ss << label << ",pearson," << (c.pearson ? Num(*c.pearson) : "") << '\n';
    }
  } else {
    ss << "| Group | n | Word count | Total tactics | Unique tactics |\n|---|---:|---|---|---|\n";
    auto cell = [](const std::optional<MeanSd>& m) {
      if (!m) return std::string("-");
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.2f (%.2f)", m->mean, m->sd);
      return std::string(buf);
    };
    for (const auto& s : stats) {
      ss << "| " << s.label << " | " << s.size << " | " << cell(s.descriptives.word_count) << " | "
         << cell(s.descriptives.total_tactics) << " | " << cell(s.descriptives.unique_tactics)
         << " |\n";
    }
    ss << "\n| Tactic |";
    for (const auto& s : stats) ss << ' ' << s.label << " |";
    ss << "\n|---|";
    for (std::size_t i = 0; i < stats.size(); ++i) ss << "---:|";
    ss << '\n';
    for (Tactic t : kAllTactics) {
      ss << "| " << TacticName(t) << " |";
      for (const auto& s : stats) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", s.prevalence[TacticIndex(t)]);
        ss << ' ' << buf << " |";
      }
      ss << '\n';
    }
    if (!corr.empty()) {
      ss << "\n| Pair | Spearman |" << (o.pearson ? " Pearson |" : "") << "\n|---|---:|"
         << (o.pearson ? "---:|" : "") << '\n';
      for (const auto& c : corr) {
        ss << "| " << c.a << " vs " << c.b << " | " << (c.spearman ? Num(*c.spearman) : "-")
           << " |";
        if (o.pearson) ss << ' ' << (c.pearson ? Num(*c.pearson) : "-") << " |";
        ss << '\n';
      }
    }
  }
  return ss.str();
}

// ---- match ----

std::string RunMatch(const Options& o) {
  const auto compounds = LoadPatternFile(o.patterns);
  const auto groups = LoadGroups(o, "writer");
  CoverageReport report;
  if (o.independent) {
    report = IndependentCoverage(compounds, groups);
  } else {
    std::vector<Pattern> ladder;
    for (std::size_t i = 0; i < compounds.size(); ++i) {
      if (compounds[i].alternatives.size() != 1) {
        throw Error(ErrorCode::kNotNested,
                    o.patterns + ": entry " + std::to_string(i + 1) +
                        " is a compound; ladders need plain patterns (or use --independent)");
      }
      ladder.push_back(compounds[i].alternatives[0]);
    }
    report = CoverageTable(ladder, groups);
  }
  std::ostringstream ss;
  switch (ParseFormat(o.format)) {
    case Format::kJson: WriteReportJson(ss, report); break;
    case Format::kCsv: WriteReportCsv(ss, report); break;
    case Format::kMd: WriteReportMarkdown(ss, report); break;
  }
  return ss.str();
}

// ---- mine ----

MinerConfig BuildMinerConfig(const Options& o) {
  MinerConfig cfg;
  if (!o.config.empty()) cfg = MinerConfigFromJson(ReadFile(o.config), cfg);
  if (o.beam) cfg.beam_width = *o.beam;
  if (o.max_atoms) cfg.max_atoms = *o.max_atoms;
  if (o.max_set_size) cfg.max_set_size = *o.max_set_size;
  if (!o.seed_pattern.empty()) cfg.seed_pattern = ParsePattern(o.seed_pattern);
  if (o.candidate_mode == "exhaustive") cfg.candidate_mode = CandidateMode::kExhaustiveSubsets;
  if (o.candidate_mode == "adjacency") cfg.candidate_mode = CandidateMode::kAdjacencyClusters;
  cfg.seed = o.seed;
  cfg.jobs = o.jobs;
  cfg.Validate();
  return cfg;
}

std::string RunMine(const Options& o) {
  const MinerConfig cfg = BuildMinerConfig(o);
  const auto groups = LoadGroups(o, "none");
  std::vector<std::pair<std::string, MinedLadder>> results;
  for (const auto& g : groups) results.emplace_back(g.Label(), BeamSearch(g.Sequences(), cfg));

  std::ostringstream ss;
  const Format fmt = ParseFormat(o.format);
  if (fmt == Format::kJson) {
    if (results.size() == 1) {
      ss << MinedLadderJson(results[0].second, results[0].first) << '\n';
    } else {
      ordered_json all = ordered_json::array();
      for (const auto& [label, ladder] : results) {
        all.push_back(ordered_json::parse(MinedLadderJson(ladder, label)));
      }
      ss << all.dump(2) << '\n';
    }
  } else if (fmt == Format::kCsv) {
    ss << "group,step,pattern,atoms,objective\n";
    for (const auto& [label, ladder] : results) {
      for (std::size_t i = 0; i < ladder.patterns.size(); ++i) {
        ss << CsvField(label) << ',' << (i + 1) << ',' << ladder.patterns[i].Render() << ','
           << ladder.patterns[i].atoms.size() << ',' << Num(ladder.objective_trace[i]) << '\n';
      }
    }
  } else {
    for (const auto& [label, ladder] : results) {
      ss << "### " << label << "\n\n| Step | Pattern | Objective |\n|---:|---|---:|\n";
      for (std::size_t i = 0; i < ladder.patterns.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", ladder.objective_trace[i]);
        ss << "| " << (i + 1) << " | `" << ladder.patterns[i].Render() << "` | " << buf << " |\n";
      }
      ss << '\n';
    }
  }
  return ss.str();
}

// ---- synth ----

std::string RunSynth(const Options& o) {
  if (o.n < 1) throw Error(ErrorCode::kInvalidConfig, "--n must be >= 1");
  const Pattern p = ParsePattern(o.pattern);
  NoiseConfig noise;
  noise.prefix_noise_prob = o.noise;
  noise.tail_continue_prob = o.tail;
  noise.max_repeat = o.max_repeat;
  noise.seed = o.seed;
  WriterClass writer{o.study, o.source.empty() ? "synth" : o.source};
  writer.Validate();
  const auto records = GenerateCorpus(p, noise, o.n, writer);
  std::ostringstream ss;
  if (ParseFormat(o.format) == Format::kCsv) {
    ss << "id,sequence\n";
    for (const auto& r : records) ss << r.id << ',' << r.sequence.str() << '\n';
  } else {
    WriteEncodedJsonl(ss, records);
  }
  return ss.str();
}

// ---- tag / respond ----

GatewayConfig BuildGatewayConfig(const Options& o) {
  GatewayConfig cfg;
  if (!o.config.empty()) cfg = GatewayConfigFromJson(ReadFile(o.config), cfg);
  if (!o.prompt.empty()) cfg.prompt_template_path = o.prompt;
  cfg.Validate();
  return cfg;
}

// Prefixes a per-record failure with its id, keeping the code.
[[noreturn]] void RethrowForRecord(const std::string& id, const Error& e) {
  throw Error(e.code(), "response \"" + id + "\": " + e.what());
}

std::string RunTag(const Options& o) {
  const Corpus corpus = LoadCorpus(o.corpus);
  for (const auto& entry : corpus.entries()) {
    if (!entry.annotated) {
      throw Error(ErrorCode::kMalformedRecord,
                  "response \"" + entry.id() + "\" has no text to tag");
    }
  }
  auto transport = o.mock ? MakeMockTaggerTransport() : std::make_shared<HttpTransport>();
  Gateway gateway(BuildGatewayConfig(o), transport);
  std::vector<AnnotatedResponse> tagged(corpus.size());
  ParallelFor(corpus.size(), o.jobs, [&](std::size_t i) {
    const auto& r = *corpus.entries()[i].annotated;
    try {
      tagged[i] = gateway.TagResponse(r.id, r.writer, r.text);
    } catch (const Error& e) {
      RethrowForRecord(r.id, e);
    }
  });
  std::ostringstream ss;
  WriteAnnotatedJsonl(ss, tagged);
  return ss.str();
}

struct Post {
  std::string id;
  std::string text;
};

// Posts are JSONL records {"id": str, "post": str}.
std::vector<Post> LoadPosts(const std::string& path) {
  std::istringstream in(ReadFile(path));
  std::vector<Post> posts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path + ":" + std::to_string(lineno) + ": ";
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const ordered_json::parse_error& e) {
      throw Error(ErrorCode::kMalformedRecord, where + "invalid JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string() || !j.contains("post") ||
        !j["post"].is_string()) {
      throw Error(ErrorCode::kMalformedRecord, where + "post records need string \"id\" and \"post\"");
    }
    posts.push_back({j["id"].get<std::string>(), j["post"].get<std::string>()});
  }
  return posts;
}

std::string RunRespond(const Options& o, std::ostream& err) {
  const auto posts = LoadPosts(o.corpus);
  auto transport = o.mock ? MakeMockGeneratorTransport() : std::make_shared<HttpTransport>();
  const GatewayConfig cfg = BuildGatewayConfig(o);
  WriterClass writer{o.study, o.source.empty() ? cfg.model_name : o.source};
  writer.Validate();
  Gateway gateway(cfg, transport);
  std::vector<GeneratedResponse> replies(posts.size());
  ParallelFor(posts.size(), o.jobs, [&](std::size_t i) {
    try {
      replies[i] = gateway.GenerateEmpathicResponse(posts[i].text);
    } catch (const Error& e) {
      RethrowForRecord(posts[i].id, e);
    }
  });
  std::ostringstream ss;
  for (std::size_t i = 0; i < posts.size(); ++i) {
    if (replies[i].word_limit_warning) {
      err << "response \"" << posts[i].id << "\": " << *replies[i].word_limit_warning << '\n';
    }
    ordered_json j;
    j["id"] = posts[i].id;
    j["writer"] = ordered_json{{"study", writer.study}, {"source", writer.source}};
    j["text"] = replies[i].text;
    j["spans"] = ordered_json::array();
    ss << j.dump() << '\n';
  }
  return ss.str();
}

// ---- irr ----

std::string RunIrr(const Options& o) {
  std::istringstream in(ReadFile(o.ratings));
  const auto records = ReadRatingsCsv(in, o.ratings);
  const IrrReport report = ComputeIrr(records);
  std::ostringstream ss;
  const Format fmt = ParseFormat(o.format);
  if (fmt == Format::kJson) {
    ordered_json per = ordered_json::object();
    for (const auto& [t, a] : report.per_tactic) {
      per[std::string(1, TacticCode(t))] = ordered_json{
          {"alpha", a.alpha}, {"degenerate", a.degenerate}, {"pairable_values", a.pairable_values}};
    }
    ordered_json skipped = ordered_json::array();
    for (Tactic t : report.skipped) skipped.push_back(std::string(1, TacticCode(t)));
    ss << ordered_json{{"per_tactic", per}, {"skipped", skipped}, {"mean_alpha", report.mean_alpha}}
              .dump(2)
       << '\n';
  } else if (fmt == Format::kCsv) {
    ss << "tactic,alpha,degenerate,pairable_values\n";
    for (const auto& [t, a] : report.per_tactic) {
      ss << TacticCode(t) << ',' << Num(a.alpha) << ',' << (a.degenerate ? 1 : 0) << ','
         << a.pairable_values << '\n';
    }
    ss << "mean," << Num(report.mean_alpha) << ",,\n";
  } else {
    ss << "| Tactic | Alpha |\n|---|---:|\n";
    for (const auto& [t, a] : report.per_tactic) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.3f", a.alpha);
      ss << "| " << TacticName(t) << " | " << buf << " |\n";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", report.mean_alpha);
    ss << "| Mean | " << buf << " |\n";
  }
  return ss.str();
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kTransportError: return kExitTransport;
    case ErrorCode::kInvalidConfig: return kExitUsage;
    default: return kExitData;
  }
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Analyze empathic tactic sequences in support responses.", "tactics"};
  app.require_subcommand(1, 1);

  const std::vector<std::string> formats = {"json", "csv", "md"};
  const std::vector<std::string> group_bys = {"writer", "study", "none"};
  auto add_corpus = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("--corpus", o.corpus, what)->required();
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output file (default stdout)");
    sub->add_option("--format", o.format, "Serialization")->check(CLI::IsMember(formats));
  };
  auto add_group = [&](CLI::App* sub) {
    sub->add_option("--group-by", o.group_by, "Grouping of responses")
        ->check(CLI::IsMember(group_bys));
  };
  auto add_jobs = [&](CLI::App* sub) {
    sub->add_option("--jobs", o.jobs, "Worker threads (0 = all CPUs)");
  };
  auto add_gateway = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Gateway config JSON");
    sub->add_option("--prompt", o.prompt, "Prompt template file");
    sub->add_flag("--mock", o.mock, "Use the offline mock transport");
    sub->add_option("--seed", o.seed, "Accepted for uniformity; unused");
  };

  CLI::App* encode = app.add_subcommand("encode", "Reduce span annotations to sequences");
  add_corpus(encode, "Corpus JSONL");
  add_out(encode);

  CLI::App* stats = app.add_subcommand("stats", "Descriptives, prevalence and correlations");
  add_corpus(stats, "Corpus JSONL");
  add_group(stats);
  add_out(stats);
  stats->add_flag("--pearson", o.pearson, "Also report Pearson on prevalence values");

  CLI::App* match = app.add_subcommand("match", "Coverage of a pattern ladder");
  add_corpus(match, "Corpus JSONL");
  match->add_option("--patterns", o.patterns, "Pattern file, one per line")->required();
  add_group(match);
  add_out(match);
  match->add_flag("--independent", o.independent, "Evaluate each line on its own");

  CLI::App* mine = app.add_subcommand("mine", "Beam search for a template ladder");
  add_corpus(mine, "Corpus JSONL");
  add_group(mine);
  add_out(mine);
  add_jobs(mine);
  mine->add_option("--beam", o.beam, "Beam width");
  mine->add_option("--max-atoms", o.max_atoms, "Maximum pattern atoms");
  mine->add_option("--max-set-size", o.max_set_size, "Maximum letters per atom set");
  mine->add_option("--seed", o.seed, "Random seed");
  mine->add_option("--config", o.config, "Miner config JSON");
  mine->add_option("--seed-pattern", o.seed_pattern, "Start the search from this prefix");
  mine->add_option("--candidate-mode", o.candidate_mode, "exhaustive or adjacency")
      ->check(CLI::IsMember({"exhaustive", "adjacency"}));

  CLI::App* synth = app.add_subcommand("synth", "Generate a planted corpus");
  synth->add_option("--pattern", o.pattern, "Generating pattern")->required();
  synth->add_option("--n", o.n, "Number of sequences");
  synth->add_option("--noise", o.noise, "Prefix noise probability");
  synth->add_option("--tail", o.tail, "Tail continuation probability");
  synth->add_option("--max-repeat", o.max_repeat, "Letters per '+' atom, at most");
  synth->add_option("--seed", o.seed, "Random seed");
  synth->add_option("--study", o.study, "Writer study");
  synth->add_option("--source", o.source, "Writer source");
  add_out(synth);

  CLI::App* tag = app.add_subcommand("tag", "Tag responses through the model gateway");
  add_corpus(tag, "Corpus JSONL with text");
  add_out(tag);
  add_jobs(tag);
  add_gateway(tag);

  CLI::App* respond = app.add_subcommand("respond", "Generate responses to posts");
  add_corpus(respond, "Posts JSONL {id, post}");
  add_out(respond);
  add_jobs(respond);
  add_gateway(respond);
  respond->add_option("--study", o.study, "Writer study for the output records");
  respond->add_option("--source", o.source, "Writer source (default: model name)");

  CLI::App* irr = app.add_subcommand("irr", "Krippendorff's alpha from a ratings CSV");
  irr->add_option("--ratings", o.ratings, "CSV rater,item_id,tactic,present")->required();
  add_out(irr);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::string text;
    if (encode->parsed()) text = RunEncode(o);
    if (stats->parsed()) text = RunStats(o);
    if (match->parsed()) text = RunMatch(o);
    if (mine->parsed()) text = RunMine(o);
    if (synth->parsed()) text = RunSynth(o);
    if (tag->parsed()) text = RunTag(o);
    if (respond->parsed()) text = RunRespond(o, err);
    if (irr->parsed()) text = RunIrr(o);
    Emit(o, out, text);
  } catch (const Error& e) {
    err << "error [" << ErrorCodeName(e.code()) << "]: " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace tactics
