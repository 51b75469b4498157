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

#include "tactics/gateway.h"

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "tactics/encoder.h"

namespace tactics {
namespace {

using nlohmann::json;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::kIoError;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string Words(std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += i ? " word" : "word";
  return s;
}

struct Fixture {
  std::shared_ptr<ScriptedTransport> transport = std::make_shared<ScriptedTransport>();
  std::shared_ptr<RecordingSleeper> sleeper = std::make_shared<RecordingSleeper>();
  Gateway Make(GatewayConfig cfg = {}) { return Gateway(cfg, transport, sleeper); }
};

TEST(ResolveTest, QuoteToCodePointSpan) {
  const std::string text = "I'm so sorry. That sounds hard.";
  const auto spans = ResolveTagReply(
      R"([{"quote":"I'm so sorry.","tactic":"X"},{"quote":"That sounds hard.","tactic":"Validation"}])",
      text);
  ASSERT_EQ(spans.size(), 2u);
  EXPECT_EQ(spans[0], (Span{0, 13, Tactic::kEmotionalExpression}));
  EXPECT_EQ(spans[1], (Span{14, 31, Tactic::kValidation}));
}

TEST(ResolveTest, OffsetsCountCodePoints) {
  const std::string text = "Caf\xC3\xA9 time. You could rest.";
  const auto spans = ResolveTagReply(R"([{"quote":"You could rest.","tactic":"A"}])", text);
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].start, 11u);
  EXPECT_EQ(spans[0].end, 26u);
}

TEST(ResolveTest, RepeatedQuoteAdvances) {
  const std::string text = "Okay. Okay.";
  const auto spans = ResolveTagReply(
      R"([{"quote":"Okay.","tactic":"P"},{"quote":"Okay.","tactic":"V"}])", text);
  ASSERT_EQ(spans.size(), 2u);
  EXPECT_EQ(spans[1].start, 6u);
}

TEST(ResolveTest, CodeFenceIsStripped) {
  const auto spans =
      ResolveTagReply("```json\n[{\"quote\":\"Hi.\",\"tactic\":\"P\"}]\n```", "Hi.");
  EXPECT_EQ(spans.size(), 1u);
}

TEST(ResolveTest, Errors) {
  EXPECT_EQ(CodeOf([] { ResolveTagReply("Sure! Here are the tactics.", "Hi."); }),
            ErrorCode::kMalformedModelOutput);
  EXPECT_EQ(CodeOf([] { ResolveTagReply(R"([{"quote":"Hi.","tactic":"Z"}])", "Hi."); }),
            ErrorCode::kMalformedModelOutput);
  EXPECT_EQ(CodeOf([] { ResolveTagReply(R"({"quote":"Hi.","tactic":"P"})", "Hi."); }),
            ErrorCode::kMalformedModelOutput);
  EXPECT_EQ(CodeOf([] { ResolveTagReply(R"([{"quote":"absent","tactic":"P"}])", "Hi."); }),
            ErrorCode::kUnresolvedQuote);
}

TEST(GatewayTest, TagResponseBuildsRequest) {
  Fixture f;
  f.transport->ReplyContent(R"([{"quote":"I'm so sorry.","tactic":"X"}])");
  GatewayConfig cfg;
  cfg.base_url = "http://example.invalid/v1/";
  cfg.model_name = "tagger-1";
  const auto r = f.Make(cfg).TagResponse("r1", {1, "human"}, "I'm so sorry. Hang in there.");
  EXPECT_EQ(EncodeResponse(r).str(), "X");
  const auto reqs = f.transport->requests();
  ASSERT_EQ(reqs.size(), 1u);
  EXPECT_EQ(reqs[0].url, "http://example.invalid/v1/chat/completions");
  const json body = json::parse(reqs[0].body);
  EXPECT_EQ(body["model"], "tagger-1");
  const std::string prompt = body["messages"][0]["content"];
  EXPECT_NE(prompt.find("I'm so sorry. Hang in there."), std::string::npos);
  EXPECT_EQ(prompt.find("{response}"), std::string::npos);
}

TEST(GatewayTest, RetriesWithExponentialBackoff) {
  Fixture f;
  f.transport->Fail();
  f.transport->Reply(503, "busy");
  f.transport->Reply(429, "slow down");
  f.transport->ReplyContent("done");
  EXPECT_EQ(f.Make().Complete("hi"), "done");
  EXPECT_EQ(f.sleeper->delays(), (std::vector<double>{1, 2, 4}));
  EXPECT_EQ(f.transport->calls(), 4u);
}

TEST(GatewayTest, GivesUpAfterMaxRetries) {
  Fixture f;
  for (int i = 0; i < 4; ++i) f.transport->Reply(500, "");
  f.transport->ReplyContent("too late");
  GatewayConfig cfg;
  cfg.backoff_base_seconds = 0.5;
  EXPECT_EQ(CodeOf([&] { f.Make(cfg).Complete("hi"); }), ErrorCode::kTransportError);
  EXPECT_EQ(f.transport->calls(), 4u);
  EXPECT_EQ(f.sleeper->delays(), (std::vector<double>{0.5, 1, 2}));
}

TEST(GatewayTest, ClientErrorsAreNotRetried) {
  Fixture f;
  f.transport->Reply(401, "no");
  EXPECT_EQ(CodeOf([&] { f.Make().Complete("hi"); }), ErrorCode::kTransportError);
  EXPECT_EQ(f.transport->calls(), 1u);
  EXPECT_TRUE(f.sleeper->delays().empty());
}

TEST(GatewayTest, MalformedBody) {
  Fixture f;
  f.transport->Reply(200, "<html>");
  EXPECT_EQ(CodeOf([&] { f.Make().Complete("hi"); }), ErrorCode::kMalformedModelOutput);
  f.transport->Reply(200, R"({"choices":[]})");
  EXPECT_EQ(CodeOf([&] { f.Make().Complete("hi"); }), ErrorCode::kMalformedModelOutput);
}

TEST(GatewayTest, WordLimits) {
  Fixture f;
  f.transport->ReplyContent(Words(120));
  f.transport->ReplyContent(Words(40));
  f.transport->ReplyContent("  \n");
  auto gw = f.Make();
  const auto ok = gw.GenerateEmpathicResponse("I lost my job.");
  EXPECT_EQ(ok.word_count, 120u);
  EXPECT_FALSE(ok.word_limit_warning);
  const auto short_reply = gw.GenerateEmpathicResponse("I lost my job.");
  EXPECT_EQ(short_reply.word_count, 40u);
  ASSERT_TRUE(short_reply.word_limit_warning);
  EXPECT_NE(short_reply.word_limit_warning->find("40"), std::string::npos);
  EXPECT_EQ(CodeOf([&] { gw.GenerateEmpathicResponse("I lost my job."); }),
            ErrorCode::kEmptyReply);
  const std::string prompt = json::parse(f.transport->requests()[0].body)["messages"][0]["content"];
  EXPECT_EQ(prompt, FillTemplate(DefaultGenerationTemplate(), "{post}", "I lost my job."));
}

TEST(GatewayTest, TemplateFromFile) {
  const std::string path = ::testing::TempDir() + "/tag_template.txt";
  std::ofstream(path) << "Tag this: {response}";
  Fixture f;
  f.transport->ReplyContent("[]");
  GatewayConfig cfg;
  cfg.prompt_template_path = path;
  f.Make(cfg).TagResponse("r", {1, "human"}, "Hello.");
  EXPECT_EQ(json::parse(f.transport->requests()[0].body)["messages"][0]["content"],
            "Tag this: Hello.");

  std::ofstream(path) << "No placeholder";
  Fixture g;
  EXPECT_EQ(CodeOf([&] { g.Make(cfg).TagResponse("r", {1, "human"}, "Hello."); }),
            ErrorCode::kInvalidConfig);
}

TEST(TemplateTest, EmbeddedCopiesMatchFiles) {
  const std::string dir = std::string(TACTICS_SOURCE_DIR) + "/prompts/";
  EXPECT_EQ(DefaultTaggingTemplate(), ReadFile(dir + "tag.txt"));
  EXPECT_EQ(DefaultGenerationTemplate(), ReadFile(dir + "respond.txt"));
  EXPECT_NE(DefaultTaggingTemplate().find("{response}"), std::string::npos);
  EXPECT_NE(DefaultGenerationTemplate().find("{post}"), std::string::npos);
  EXPECT_NE(DefaultGenerationTemplate().find("minimum 100 words to maximum 150 words"),
            std::string::npos);
}

TEST(ConfigTest, JsonAndValidation) {
  const auto cfg = GatewayConfigFromJson(
      R"({"base_url":"https://h/v1","model_name":"m","timeout":5,"max_retries":1,"backoff_base":0.25,"requests_per_minute":30})");
  EXPECT_EQ(cfg.base_url, "https://h/v1");
  EXPECT_EQ(cfg.max_retries, 1);
  EXPECT_DOUBLE_EQ(cfg.backoff_base_seconds, 0.25);
  EXPECT_EQ(CodeOf([] { GatewayConfigFromJson(R"({"retries":2})"); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(CodeOf([] { GatewayConfigFromJson(R"({"max_retries":-1})"); }),
            ErrorCode::kInvalidConfig);
}

TEST(RateLimiterTest, SpacesRequests) {
  auto sleeper = std::make_shared<RecordingSleeper>();
  RateLimiter limiter(60, sleeper);
  limiter.Acquire();
  limiter.Acquire();
  limiter.Acquire();
  const auto d = sleeper->delays();
  ASSERT_EQ(d.size(), 2u);
  // Recorded sleeps do not advance the clock, so waits accumulate.
  EXPECT_NEAR(d[0], 1.0, 0.05);
  EXPECT_NEAR(d[1], 2.0, 0.05);
}

TEST(MockTest, TaggerOutputValidatesAndNoNetwork) {
  const std::size_t before = HttpTransport::RequestCount();
  Gateway gw(GatewayConfig{}, MakeMockTaggerTransport());
  const auto r = gw.TagResponse(
      "m1", {2, "gpt4"},
      "I'm so sorry to hear that. It makes sense you feel lost. You could call a friend. "
      "How are you sleeping?");
  EXPECT_TRUE(ValidateAnnotations(r).empty());
  EXPECT_EQ(EncodeResponse(r).str(), "XVAQ");

  Gateway gen(GatewayConfig{}, MakeMockGeneratorTransport());
  const auto reply = gen.GenerateEmpathicResponse("Rough week.");
  EXPECT_FALSE(reply.word_limit_warning);
  EXPECT_EQ(HttpTransport::RequestCount(), before);
  EXPECT_EQ(before, 0u);
}

TEST(HttpTransportTest, UnreachableHostIsTransportError) {
  // Loopback port 9 (discard) is closed in the sandbox; nothing leaves the host.
  GatewayConfig cfg;
  cfg.base_url = "http://127.0.0.1:9/v1";
  cfg.max_retries = 0;
  cfg.timeout_seconds = 2;
  Gateway gw(cfg, std::make_shared<HttpTransport>());
  EXPECT_EQ(CodeOf([&] { gw.Complete("hi"); }), ErrorCode::kTransportError);
}

}  // namespace
}  // namespace tactics
