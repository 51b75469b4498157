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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "tactics/encoder.h"
#include "tactics/utf8.h"

namespace tactics {

using nlohmann::json;

void GatewayConfig::Validate() const {
  if (base_url.empty()) throw Error(ErrorCode::kInvalidConfig, "base_url must not be empty");
  if (!(timeout_seconds > 0)) throw Error(ErrorCode::kInvalidConfig, "timeout must be > 0");
  if (max_retries < 0) throw Error(ErrorCode::kInvalidConfig, "max_retries must be >= 0");
  if (backoff_base_seconds < 0) {
    throw Error(ErrorCode::kInvalidConfig, "backoff_base must be >= 0");
  }
  if (requests_per_minute < 0) {
    throw Error(ErrorCode::kInvalidConfig, "requests_per_minute must be >= 0");
  }
}

GatewayConfig GatewayConfigFromJson(const std::string& json_text, GatewayConfig cfg) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("gateway config: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kInvalidConfig, "gateway config must be an object");
  for (const auto& [key, value] : j.items()) {
    auto bad = [&key = key](const char* want) {
      throw Error(ErrorCode::kInvalidConfig, "gateway config key \"" + key + "\" must be " + want);
    };
    if (key == "base_url" || key == "model_name" || key == "api_key_env" ||
        key == "prompt_template_path") {
      if (!value.is_string()) bad("a string");
      const auto v = value.get<std::string>();
      if (key == "base_url") cfg.base_url = v;
      if (key == "model_name") cfg.model_name = v;
      if (key == "api_key_env") cfg.api_key_env = v;
      if (key == "prompt_template_path") cfg.prompt_template_path = v;
    } else if (key == "timeout" || key == "backoff_base" || key == "requests_per_minute") {
      if (!value.is_number()) bad("a number");
      const double v = value.get<double>();
      if (key == "timeout") cfg.timeout_seconds = v;
      if (key == "backoff_base") cfg.backoff_base_seconds = v;
      if (key == "requests_per_minute") cfg.requests_per_minute = v;
    } else if (key == "max_retries") {
      if (!value.is_number_integer()) bad("an integer");
      cfg.max_retries = value.get<int>();
    } else {
      throw Error(ErrorCode::kInvalidConfig, "unknown gateway config key \"" + key + "\"");
    }
  }
  cfg.Validate();
  return cfg;
}

// ---- ScriptedTransport ----

void ScriptedTransport::Reply(int status, std::string body) {
  std::lock_guard<std::mutex> lock(mu_);
  script_.push_back({HttpResponse{status, std::move(body)}});
}

void ScriptedTransport::ReplyContent(const std::string& content) {
  Reply(200, ChatCompletionBody(content));
}

void ScriptedTransport::Fail() {
  std::lock_guard<std::mutex> lock(mu_);
  script_.push_back({std::nullopt});
}

HttpResponse ScriptedTransport::Post(const HttpRequest& request) {
  std::function<HttpResponse(const HttpRequest&)> handler;
  Step step;
  {
    std::lock_guard<std::mutex> lock(mu_);
    requests_.push_back(request);
    if (script_.empty()) {
      if (!handler_) throw Error(ErrorCode::kTransportError, "scripted transport exhausted");
      handler = handler_;
    } else {
      step = std::move(script_.front());
      script_.pop_front();
    }
  }
  if (handler) return handler(request);
  if (!step.response) throw Error(ErrorCode::kTransportError, "scripted connection failure");
  return *step.response;
}

std::vector<HttpRequest> ScriptedTransport::requests() const {
  std::lock_guard<std::mutex> lock(mu_);
  return requests_;
}

std::size_t ScriptedTransport::calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return requests_.size();
}

std::string ChatCompletionBody(const std::string& content) {
  json body = {{"object", "chat.completion"},
               {"choices",
                json::array({{{"index", 0},
                              {"message", {{"role", "assistant"}, {"content", content}}},
                              {"finish_reason", "stop"}}})}};
  return body.dump();
}

// ---- Sleepers and rate limiting ----

void Sleeper::Sleep(double seconds) {
  if (seconds > 0) std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
}

void RecordingSleeper::Sleep(double seconds) {
  std::lock_guard<std::mutex> lock(mu_);
  delays_.push_back(seconds);
}

std::vector<double> RecordingSleeper::delays() const {
  std::lock_guard<std::mutex> lock(mu_);
  return delays_;
}

RateLimiter::RateLimiter(double requests_per_minute, std::shared_ptr<Sleeper> sleeper)
    : interval_seconds_(requests_per_minute > 0 ? 60.0 / requests_per_minute : 0.0),
      sleeper_(std::move(sleeper)),
      next_slot_(Clock::now()) {}

void RateLimiter::Acquire() {
  if (interval_seconds_ <= 0) return;
  double wait = 0;
  {
    // Reserve a slot under the lock, then wait for it outside.
    std::lock_guard<std::mutex> lock(mu_);
    const auto now = Clock::now();
    const auto slot = std::max(now, next_slot_);
    next_slot_ = slot + std::chrono::duration_cast<Clock::duration>(
                            std::chrono::duration<double>(interval_seconds_));
    wait = std::chrono::duration<double>(slot - now).count();
  }
  if (wait > 0) sleeper_->Sleep(wait);
}

// ---- Templates ----

std::string FillTemplate(std::string templ, const std::string& placeholder,
                         const std::string& value) {
  std::size_t pos = 0;
  while ((pos = templ.find(placeholder, pos)) != std::string::npos) {
    templ.replace(pos, placeholder.size(), value);
    pos += value.size();
  }
  return templ;
}

// ---- Tag reply parsing ----

namespace {

std::string StripCodeFence(const std::string& reply) {
  const auto b = reply.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = reply.find_last_not_of(" \t\r\n");
  std::string s = reply.substr(b, e - b + 1);
  if (s.rfind("```", 0) != 0) return s;
  const auto first_nl = s.find('\n');
  if (first_nl == std::string::npos) return "";
  s = s.substr(first_nl + 1);
  const auto close = s.rfind("```");
  if (close != std::string::npos) s = s.substr(0, close);
  return s;
}

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedModelOutput, "malformed tagger output: " + what);
}

}  // namespace

std::vector<Span> ResolveTagReply(const std::string& reply, const std::string& text) {
  json parsed;
  try {
    parsed = json::parse(StripCodeFence(reply));
  } catch (const json::parse_error&) {
    Malformed("reply is not JSON");
  }
  if (!parsed.is_array()) Malformed("expected a JSON array");

  std::vector<Span> spans;
  std::size_t cursor = 0;  // byte offset
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    const json& item = parsed[i];
    const std::string where = "item " + std::to_string(i);
    if (!item.is_object()) Malformed(where + " is not an object");
    auto q = item.find("quote");
    auto t = item.find("tactic");
    if (q == item.end() || !q->is_string()) Malformed(where + " lacks a string \"quote\"");
    if (t == item.end() || !t->is_string()) Malformed(where + " lacks a string \"tactic\"");
    const std::string quote = q->get<std::string>();
    if (quote.empty()) Malformed(where + " has an empty quote");
    const auto tactic = TryTacticFromLabel(t->get<std::string>());
    if (!tactic) Malformed(where + " has unknown tactic \"" + t->get<std::string>() + "\"");

    const std::size_t at = text.find(quote, cursor);
    if (at == std::string::npos) {
      throw Error(ErrorCode::kUnresolvedQuote,
                  "quote not found in response text: \"" + quote + "\"");
    }
    const std::size_t start = utf8::Length(std::string_view(text).substr(0, at));
    spans.push_back({start, start + utf8::Length(quote), *tactic});
    cursor = at + quote.size();
  }
  return spans;
}

// ---- Gateway ----

Gateway::Gateway(GatewayConfig cfg, std::shared_ptr<Transport> transport,
                 std::shared_ptr<Sleeper> sleeper)
    : cfg_(std::move(cfg)),
      transport_(std::move(transport)),
      sleeper_(std::move(sleeper)),
      limiter_(cfg_.requests_per_minute, sleeper_) {
  cfg_.Validate();
}

std::string Gateway::Complete(const std::string& user_content) {
  HttpRequest req;
  std::string base = cfg_.base_url;
  while (!base.empty() && base.back() == '/') base.pop_back();
  req.url = base + "/chat/completions";
  req.timeout_seconds = cfg_.timeout_seconds;
  req.headers.emplace_back("Content-Type", "application/json");
  if (const char* key = std::getenv(cfg_.api_key_env.c_str()); key && *key) {
    req.headers.emplace_back("Authorization", std::string("Bearer ") + key);
  }
  req.body = json{{"model", cfg_.model_name},
                  {"messages", json::array({{{"role", "user"}, {"content", user_content}}})},
                  {"temperature", 0}}
                 .dump();

  std::string last_failure;
  for (int attempt = 0;; ++attempt) {
    limiter_.Acquire();
    std::optional<HttpResponse> resp;
    try {
      resp = transport_->Post(req);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kTransportError) throw;
      last_failure = e.what();
    }
    if (resp) {
      if (resp->status >= 200 && resp->status < 300) {
        json body;
        try {
          body = json::parse(resp->body);
        } catch (const json::parse_error&) {
          Malformed("response body is not JSON");
        }
        const json* content = nullptr;
        if (body.is_object() && body.contains("choices") && body["choices"].is_array() &&
            !body["choices"].empty()) {
          const json& choice = body["choices"][0];
          if (choice.is_object() && choice.contains("message") &&
              choice["message"].is_object() && choice["message"].contains("content")) {
            content = &choice["message"]["content"];
          }
        }
        if (!content) Malformed("response lacks choices[0].message.content");
        if (content->is_null()) return "";
        if (!content->is_string()) Malformed("message content is not a string");
        return content->get<std::string>();
      }
      last_failure = "HTTP " + std::to_string(resp->status);
      if (resp->status != 429 && resp->status < 500) {
        throw Error(ErrorCode::kTransportError, req.url + ": " + last_failure);
      }
    }
    if (attempt >= cfg_.max_retries) {
      throw Error(ErrorCode::kTransportError,
                  req.url + ": giving up after " + std::to_string(attempt + 1) +
                      " attempt(s): " + last_failure);
    }
    sleeper_->Sleep(cfg_.backoff_base_seconds * std::ldexp(1.0, attempt));
  }
}

const std::string& Gateway::Template(bool tagging) {
  if (cfg_.prompt_template_path.empty()) {
    return tagging ? DefaultTaggingTemplate() : DefaultGenerationTemplate();
  }
  std::call_once(template_once_, [&] {
    std::ifstream in(cfg_.prompt_template_path, std::ios::binary);
    if (!in) {
      throw Error(ErrorCode::kIoError,
                  "cannot read prompt template " + cfg_.prompt_template_path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    loaded_template_ = ss.str();
  });
  return loaded_template_;
}

AnnotatedResponse Gateway::TagResponse(const std::string& id, const WriterClass& writer,
                                       const std::string& text) {
  const std::string& templ = Template(true);
  if (templ.find("{response}") == std::string::npos) {
    throw Error(ErrorCode::kInvalidConfig, "tagging template lacks the {response} placeholder");
  }
  const std::string reply = Complete(FillTemplate(templ, "{response}", text));
  AnnotatedResponse r = MakeResponse(id, writer, text, ResolveTagReply(reply, text));
  const auto violations = ValidateAnnotations(r);
  if (!violations.empty()) {
    std::string msg = "response \"" + id + "\": resolved quotes are invalid:";
    for (const auto& v : violations) msg += " " + v.Describe() + ";";
    throw Error(ErrorCode::kOverlapAfterResolution, msg);
  }
  return r;
}

GeneratedResponse Gateway::GenerateEmpathicResponse(const std::string& post_text) {
  const std::string& templ = Template(false);
  std::string prompt = templ.find("{post}") == std::string::npos
                           ? templ + "\n\n" + post_text
                           : FillTemplate(templ, "{post}", post_text);
  GeneratedResponse out;
  out.text = Complete(prompt);
  if (out.text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw Error(ErrorCode::kEmptyReply, "model returned an empty reply");
  }
  out.word_count = CountWords(out.text);
  if (out.word_count < kMinReplyWords || out.word_count > kMaxReplyWords) {
    out.word_limit_warning = "WordLimitWarning: reply has " + std::to_string(out.word_count) +
                             " words, outside [" + std::to_string(kMinReplyWords) + ", " +
                             std::to_string(kMaxReplyWords) + "]";
  }
  return out;
}

// ---- Offline mocks ----

namespace {

std::string LastUserContent(const HttpRequest& req) {
  const json body = json::parse(req.body);
  return body["messages"].back()["content"].get<std::string>();
}

bool ContainsAny(const std::string& haystack, std::initializer_list<const char*> needles) {
  for (const char* n : needles) {
    if (haystack.find(n) != std::string::npos) return true;
  }
  return false;
}

char GuessTactic(const std::string& sentence) {
  std::string s;
  for (char c : sentence) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s.find('?') != std::string::npos) return 'Q';
  if (ContainsAny(s, {"i'm so sorry", "i am sorry", "i'm sorry", "heartbreaking"})) return 'X';
  if (ContainsAny(s, {"i remember", "when i was", "i went through", "i've been"})) return 'S';
  if (ContainsAny(s, {"you could", "you might", "try ", "consider", "you should"})) return 'A';
  if (ContainsAny(s, {"i can help", "happy to help", "reach out to me"})) return 'T';
  if (ContainsAny(s, {"makes sense", "understandable", "valid", "normal to"})) return 'V';
  if (ContainsAny(s, {"you are strong", "you can do", "capable", "proud of you"})) return 'E';
  if (ContainsAny(s, {"another way", "on the bright side", "opportunity"})) return 'R';
  if (ContainsAny(s, {"research", "studies", "it is common", "many people"})) return 'I';
  return 'P';
}

// Sentences of `text`, as trimmed byte substrings in order.
std::vector<std::string> Sentences(const std::string& text) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  auto flush = [&](std::size_t end) {
    const auto b = text.find_first_not_of(" \t\r\n", begin);
    if (b != std::string::npos && b < end) {
      const auto e = text.find_last_not_of(" \t\r\n", end - 1);
      out.push_back(text.substr(b, e - b + 1));
    }
    begin = end;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '.' || text[i] == '!' || text[i] == '?') flush(i + 1);
  }
  flush(text.size());
  return out;
}

HttpResponse MockTag(const HttpRequest& req) {
  const std::string content = LastUserContent(req);
  const auto open = content.rfind("<<<\n");
  const auto close = content.rfind("\n>>>");
  json reply = json::array();
  if (open != std::string::npos && close != std::string::npos && close >= open + 4) {
    const std::string text = content.substr(open + 4, close - open - 4);
    for (const auto& sentence : Sentences(text)) {
      reply.push_back({{"quote", sentence}, {"tactic", std::string(1, GuessTactic(sentence))}});
    }
  }
  return {200, ChatCompletionBody(reply.dump())};
}

constexpr const char* kMockReply =
    "I'm so sorry you are going through this. It sounds like the last few weeks have "
    "worn you down, and feeling this tired and alone makes complete sense. Many people "
    "in a similar spot describe the same mix of worry and frustration, so you are not "
    "strange for feeling it. You have already taken a brave step by writing this out "
    "and asking for support. If it feels manageable, you could try setting aside a "
    "small part of each day for something that restores you, even a short walk or a "
    "call with a friend. It might also help to talk with someone you trust about what "
    "has been weighing on you. What has helped you get through hard stretches before? "
    "Whatever you decide, please be gentle with yourself. You deserve care too, and "
    "things can ease with time.";

}  // namespace

std::shared_ptr<Transport> MakeMockTaggerTransport() {
  return std::make_shared<ScriptedTransport>(MockTag);
}

std::shared_ptr<Transport> MakeMockGeneratorTransport() {
  return std::make_shared<ScriptedTransport>(
      [](const HttpRequest&) { return HttpResponse{200, ChatCompletionBody(kMockReply)}; });
}

}  // namespace tactics
