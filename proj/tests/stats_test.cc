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

#include "tactics/stats.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

namespace tactics {
namespace {

TacticSequence Seq(const char* s) { return ParseSequence(s).sequence; }

TEST(SummarizeTest, MeanAndSampleSd) {
  const std::vector<double> v = {2, 4, 4, 4, 5, 5, 7, 9};
  const auto s = Summarize(v);
  EXPECT_DOUBLE_EQ(s.mean, 5.0);
  EXPECT_NEAR(s.sd, std::sqrt(32.0 / 7.0), 1e-12);
  EXPECT_EQ(s.n, 8u);
  EXPECT_FALSE(s.degenerate);
}

TEST(DescriptivesTest, Example) {
  const std::vector<SizedSequence> group = {{10, Seq("PVAP")}, {20, Seq("QXQ")}};
  const auto d = ComputeDescriptives(group);
  ASSERT_TRUE(d.word_count);
  EXPECT_DOUBLE_EQ(d.word_count->mean, 15.0);
  EXPECT_DOUBLE_EQ(d.total_tactics.mean, 3.5);
  EXPECT_DOUBLE_EQ(d.unique_tactics.mean, 2.5);
  EXPECT_NEAR(d.total_tactics.sd, std::sqrt(0.5), 1e-12);
}

TEST(DescriptivesTest, SingleResponseIsDegenerate) {
  const std::vector<SizedSequence> group = {{std::nullopt, Seq("PV")}};
  const auto d = ComputeDescriptives(group);
  EXPECT_FALSE(d.word_count);
  EXPECT_TRUE(d.total_tactics.degenerate);
  EXPECT_EQ(d.total_tactics.sd, 0.0);
}

TEST(DescriptivesTest, EmptyGroup) {
  try {
    ComputeDescriptives({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyGroup);
  }
}

TEST(PrevalenceTest, Examples) {
  const std::vector<TacticSequence> group = {Seq("PVA"), Seq("QPV"), Seq("PVAIV"), Seq("")};
  const auto p = Prevalence(group);
  EXPECT_DOUBLE_EQ(p[TacticIndex(Tactic::kParaphrasing)], 0.75);
  EXPECT_DOUBLE_EQ(p[TacticIndex(Tactic::kAdvice)], 0.5);
  EXPECT_DOUBLE_EQ(p[TacticIndex(Tactic::kQuestioning)], 0.25);
  EXPECT_DOUBLE_EQ(p[TacticIndex(Tactic::kSelfDisclosure)], 0.0);
  EXPECT_THROW(Prevalence({}), Error);
}

TEST(RankTest, TiesShareAverage) {
  const std::vector<double> v = {10, 20, 20, 5};
  EXPECT_EQ(AverageRanks(v), (std::vector<double>{2, 3.5, 3.5, 1}));
}

TEST(CorrelationTest, SpearmanExamples) {
  const std::vector<double> a = {1, 2, 3, 4, 5};
  const std::vector<double> rev = {5, 4, 3, 2, 1};
  EXPECT_DOUBLE_EQ(SpearmanCorrelation(a, a), 1.0);
  EXPECT_DOUBLE_EQ(SpearmanCorrelation(a, rev), -1.0);
  EXPECT_NEAR(SpearmanCorrelation(std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 2}), 0.5,
              1e-12);
  // Monotone transform leaves Spearman at 1 but not Pearson.
  const std::vector<double> cubes = {1, 8, 27, 64, 125};
  EXPECT_DOUBLE_EQ(SpearmanCorrelation(a, cubes), 1.0);
  EXPECT_LT(PearsonCorrelation(a, cubes), 1.0);
}

TEST(CorrelationTest, SpearmanWithTies) {
  EXPECT_NEAR(SpearmanCorrelation(std::vector<double>{1, 2, 2, 3}, std::vector<double>{1, 2, 3, 4}),
              3.0 / std::sqrt(10.0), 1e-12);
}

TEST(CorrelationTest, Errors) {
  const std::vector<double> flat = {1, 1, 1};
  const std::vector<double> up = {1, 2, 3};
  try {
    SpearmanCorrelation(flat, up);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroVariance);
  }
  EXPECT_THROW(PearsonCorrelation(up, std::vector<double>{1, 2}), Error);
}

RatingMatrix Matrix(std::vector<std::vector<int>> rows) {
  RatingMatrix m;
  for (const auto& r : rows) {
    std::vector<std::optional<int>> row;
    for (int v : r) row.push_back(v < 0 ? std::nullopt : std::optional<int>(v));
    m.push_back(row);
  }
  return m;
}

TEST(AlphaTest, Examples) {
  EXPECT_DOUBLE_EQ(KrippendorffAlpha(Matrix({{1, 0, 1, 0}, {1, 0, 1, 0}})).alpha, 1.0);
  EXPECT_NEAR(KrippendorffAlpha(Matrix({{1, 1, 0, 0}, {0, 0, 1, 1}})).alpha, -0.75, 1e-12);
  EXPECT_NEAR(KrippendorffAlpha(Matrix({{1, 1, 0, 0, 1}, {1, 0, 0, 0, 1}})).alpha, 0.64, 1e-12);
}

TEST(AlphaTest, MissingAndDegenerate) {
  // Item 3 has one rating and is ignored.
  const auto a = KrippendorffAlpha(Matrix({{1, 0, 1}, {1, 0, -1}}));
  EXPECT_DOUBLE_EQ(a.alpha, 1.0);
  EXPECT_EQ(a.pairable_values, 4u);
  const auto same = KrippendorffAlpha(Matrix({{1, 1}, {1, 1}}));
  EXPECT_TRUE(same.degenerate);
  EXPECT_DOUBLE_EQ(same.alpha, 1.0);
  for (const auto& bad : {Matrix({{1, 0}}), Matrix({{1, -1}, {-1, 0}})}) {
    try {
      KrippendorffAlpha(bad);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInsufficientRatings);
    }
  }
}

TEST(AlphaTest, PermutationInvariance) {
  std::mt19937 gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t raters = 2 + gen() % 3, items = 3 + gen() % 10;
    RatingMatrix m(raters, std::vector<std::optional<int>>(items));
    for (auto& row : m) {
      for (auto& cell : row) {
        if (gen() % 5) cell = static_cast<int>(gen() % 2);
      }
    }
    double base;
    try {
      base = KrippendorffAlpha(m).alpha;
    } catch (const Error&) {
      continue;
    }
    auto shuffled = m;
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    std::vector<std::size_t> order(items);
    for (std::size_t i = 0; i < items; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), gen);
    for (auto& row : shuffled) {
      auto copy = row;
      for (std::size_t i = 0; i < items; ++i) row[i] = copy[order[i]];
    }
    EXPECT_NEAR(KrippendorffAlpha(shuffled).alpha, base, 1e-12);
  }
}

TEST(IrrTest, CsvAndPerTactic) {
  std::istringstream in(
      "rater,item_id,tactic,present\n"
      "r1,s1,P,1\nr2,s1,P,1\n"
      "r1,s2,P,0\nr2,s2,P,0\n"
      "r1,s1,Advice,1\nr2,s1,Advice,0\n"
      "r1,s2,A,0\nr2,s2,A,1\n"
      "r1,s3,Q,1\n");
  const auto records = ReadRatingsCsv(in, "irr.csv");
  ASSERT_EQ(records.size(), 9u);
  EXPECT_EQ(records[4].tactic, Tactic::kAdvice);
  const auto report = ComputeIrr(records);
  ASSERT_EQ(report.per_tactic.size(), 2u);
  EXPECT_DOUBLE_EQ(report.per_tactic.at(Tactic::kParaphrasing).alpha, 1.0);
  // Two items, total disagreement: 1 - 1 / (2*2*2 / (4*3)).
  EXPECT_NEAR(report.per_tactic.at(Tactic::kAdvice).alpha, -0.5, 1e-12);
  EXPECT_NEAR(report.mean_alpha, 0.25, 1e-12);
  EXPECT_NE(std::find(report.skipped.begin(), report.skipped.end(), Tactic::kQuestioning),
            report.skipped.end());
}

TEST(IrrTest, CsvErrorsNameLine) {
  for (const char* bad : {"r1,s1,P\n", "r1,s1,Z,1\n", "r1,s1,P,2\n"}) {
    std::istringstream in(std::string("rater,item_id,tactic,present\n") + bad);
    try {
      ReadRatingsCsv(in, "irr.csv");
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kMalformedRecord);
      EXPECT_NE(std::string(e.what()).find("irr.csv:2"), std::string::npos);
    }
  }
}

}  // namespace
}  // namespace tactics
