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

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace tactics {
namespace {

using nlohmann::json;

const std::string kFixtures = std::string(TACTICS_SOURCE_DIR) + "/fixtures/";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Temp(const std::string& name, const std::string& content = "") {
  const std::string path = ::testing::TempDir() + "/" + name;
  if (!content.empty()) std::ofstream(path, std::ios::binary) << content;
  return path;
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(Cli({}).code, kExitUsage);
  EXPECT_EQ(Cli({"bogus"}).code, kExitUsage);
  EXPECT_EQ(Cli({"match", "--corpus", kFixtures + "corpus.jsonl"}).code, kExitUsage);
  EXPECT_EQ(Cli({"encode", "--corpus", kFixtures + "corpus.jsonl", "--format", "xml"}).code,
            kExitUsage);
  EXPECT_EQ(Cli({"--help"}).code, kExitOk);
}

TEST(CliTest, EncodeFixture) {
  const auto r = Cli({"encode", "--corpus", kFixtures + "corpus.jsonl"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::vector<json> rows;
  while (std::getline(lines, line)) rows.push_back(json::parse(line));
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_EQ(rows[0]["id"], "h01");
  EXPECT_EQ(rows[0]["sequence"], "PVAIV");
  EXPECT_EQ(rows[5]["sequence"], "");

  const auto csv = Cli({"encode", "--corpus", kFixtures + "corpus.jsonl", "--format", "csv"});
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "id,writer_study,writer_source,sequence,word_count");
}

TEST(CliTest, MatchEqualsFrozenFixture) {
  const auto r = Cli({"match", "--corpus", kFixtures + "corpus.jsonl", "--patterns",
                      kFixtures + "table3.pat"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(json::parse(r.out), json::parse(Slurp(kFixtures + "expected_coverage.json")));
}

TEST(CliTest, MatchRejectsCompoundLineUnlessIndependent) {
  const std::string pats = Temp("compound.pat", "^[PV]+A|^[PV]+$\n");
  const auto r = Cli({"match", "--corpus", kFixtures + "corpus.jsonl", "--patterns", pats});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("--independent"), std::string::npos);
  EXPECT_EQ(Cli({"match", "--corpus", kFixtures + "corpus.jsonl", "--patterns", pats,
                 "--independent", "--format", "csv"})
                .code,
            kExitOk);
}

TEST(CliTest, MatchSyntaxErrorExitCode) {
  const std::string pats = Temp("bad.pat", "^[PV+\n");
  const auto r = Cli({"match", "--corpus", kFixtures + "corpus.jsonl", "--patterns", pats});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("SyntaxError"), std::string::npos) << r.err;
}

TEST(CliTest, StatsFormats) {
  const auto r = Cli({"stats", "--corpus", kFixtures + "corpus.jsonl", "--pearson"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  ASSERT_EQ(j["groups"].size(), 2u);
  EXPECT_EQ(j["groups"][0]["size"], 6);
  EXPECT_TRUE(j["correlations"][0].contains("spearman"));
  EXPECT_TRUE(j["correlations"][0].contains("pearson"));
  for (const char* fmt : {"csv", "md"}) {
    const auto f = Cli({"stats", "--corpus", kFixtures + "corpus.jsonl", "--format", fmt});
    EXPECT_EQ(f.code, kExitOk);
    EXPECT_FALSE(f.out.empty());
  }
}

TEST(CliTest, EmptyCorpus) {
  const std::string empty = Temp("empty.jsonl", "\n");
  const auto r = Cli({"stats", "--corpus", empty});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("EmptyGroup"), std::string::npos);
}

TEST(CliTest, SynthAndMineAreDeterministic) {
  const std::string a = Temp("synth_a.jsonl"), b = Temp("synth_b.jsonl");
  const std::vector<std::string> base = {"synth", "--pattern", "^X?[PV]+[XE]?[AIP]+", "--n", "200",
                                         "--noise", "0.1", "--tail", "0.3", "--seed", "5"};
  auto args = base;
  args.insert(args.end(), {"--out", a});
  ASSERT_EQ(Cli(args).code, kExitOk);
  args = base;
  args.insert(args.end(), {"--out", b});
  ASSERT_EQ(Cli(args).code, kExitOk);
  EXPECT_FALSE(Slurp(a).empty());
  EXPECT_EQ(Slurp(a), Slurp(b));

  const auto m1 = Cli({"mine", "--corpus", a, "--max-atoms", "4", "--jobs", "1"});
  const auto m2 = Cli({"mine", "--corpus", a, "--max-atoms", "4", "--jobs", "3"});
  ASSERT_EQ(m1.code, kExitOk) << m1.err;
  EXPECT_EQ(m1.out, m2.out);
  const json j = json::parse(m1.out);
  EXPECT_FALSE(j["ladder"].empty());
}

TEST(CliTest, MineConfigFileAndFlags) {
  const std::string corpus = Temp("mine_corpus.jsonl");
  ASSERT_EQ(Cli({"synth", "--pattern", "^[PV]+A", "--n", "50", "--out", corpus}).code, kExitOk);
  const std::string cfg = Temp("miner.json", R"({"max_atoms": 1, "beam_width": 3})");
  const auto r = Cli({"mine", "--corpus", corpus, "--config", cfg, "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  // One atom allowed: header plus a single step.
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 2);
  const std::string bad = Temp("bad_miner.json", R"({"beam": 3})");
  EXPECT_EQ(Cli({"mine", "--corpus", corpus, "--config", bad}).code, kExitUsage);
}

TEST(CliTest, TagAndRespondWithMock) {
  const std::string posts =
      Temp("posts.jsonl", "{\"id\":\"p1\",\"post\":\"I failed my exam.\"}\n"
                          "{\"id\":\"p2\",\"post\":\"My dog died.\"}\n");
  const std::string replies = Temp("replies.jsonl");
  const auto r = Cli({"respond", "--corpus", posts, "--mock", "--out", replies});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto t = Cli({"tag", "--corpus", replies, "--mock", "--jobs", "2"});
  ASSERT_EQ(t.code, kExitOk) << t.err;
  std::istringstream lines(t.out);
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    const json j = json::parse(line);
    EXPECT_FALSE(j["spans"].empty());
    ++n;
  }
  EXPECT_EQ(n, 2u);
}

TEST(CliTest, TransportFailureExitCode) {
  const std::string posts = Temp("posts1.jsonl", "{\"id\":\"p1\",\"post\":\"Hello.\"}\n");
  const std::string cfg = Temp(
      "gw.json", R"({"base_url":"http://127.0.0.1:9/v1","max_retries":0,"timeout":2})");
  const auto r = Cli({"respond", "--corpus", posts, "--config", cfg});
  EXPECT_EQ(r.code, kExitTransport);
  EXPECT_NE(r.err.find("TransportError"), std::string::npos) << r.err;
}

TEST(CliTest, Irr) {
  const std::string csv = Temp("ratings.csv",
                               "rater,item_id,tactic,present\n"
                               "a,1,P,1\nb,1,P,1\na,2,P,0\nb,2,P,0\n");
  const auto r = Cli({"irr", "--ratings", csv});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("\"P\""), std::string::npos);
}

}  // namespace
}  // namespace tactics
