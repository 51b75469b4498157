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

#ifndef TACTICS_GATEWAY_H_
#define TACTICS_GATEWAY_H_

#include <chrono>
#include <cstddef>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tactics/tactic.h"

namespace tactics {

// Client for a chat-completions style model endpoint, used to tag responses
// with tactics and to generate responses to support-seeking posts.

struct GatewayConfig {
  std::string base_url = "http://localhost:8000/v1";
  std::string model_name = "default";
  std::string api_key_env = "EMPATHY_GATEWAY_API_KEY";
  double timeout_seconds = 60;
  int max_retries = 3;
  double backoff_base_seconds = 1.0;
  // Empty means the built-in template for the operation.
  std::string prompt_template_path;
  // 0 disables rate limiting.
  double requests_per_minute = 0;

  // Throws Error{kInvalidConfig}.
  void Validate() const;
};

// Reads GatewayConfig keys (base_url, model_name, api_key_env, timeout,
// max_retries, backoff_base, prompt_template_path, requests_per_minute) from
// a JSON object. Unknown keys are rejected with Error{kInvalidConfig}.
GatewayConfig GatewayConfigFromJson(const std::string& json_text, GatewayConfig base = {});

struct HttpRequest {
  std::string url;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;
  double timeout_seconds = 60;
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

// Connection-level failures are thrown as Error{kTransportError}; HTTP error
// statuses are returned.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpResponse Post(const HttpRequest& request) = 0;
};

// Real HTTP(S) transport.
class HttpTransport : public Transport {
 public:
  HttpResponse Post(const HttpRequest& request) override;

  // Requests attempted by any HttpTransport in this process.
  static std::size_t RequestCount();
};

// Replays a fixed script of outcomes and records every request. Thread-safe.
class ScriptedTransport : public Transport {
 public:
  struct Step {
    std::optional<HttpResponse> response;  // nullopt = connection failure
  };

  ScriptedTransport() = default;
  explicit ScriptedTransport(std::function<HttpResponse(const HttpRequest&)> handler)
      : handler_(std::move(handler)) {}

  void Reply(int status, std::string body);
  // Reply 200 with a chat-completions body whose message content is `content`.
  void ReplyContent(const std::string& content);
  void Fail();

  HttpResponse Post(const HttpRequest& request) override;

  std::vector<HttpRequest> requests() const;
  std::size_t calls() const;

 private:
  mutable std::mutex mu_;
  std::deque<Step> script_;
  std::function<HttpResponse(const HttpRequest&)> handler_;
  std::vector<HttpRequest> requests_;
};

// Builds a chat-completions reply body carrying `content`.
std::string ChatCompletionBody(const std::string& content);

class Sleeper {
 public:
  virtual ~Sleeper() = default;
  virtual void Sleep(double seconds);
};

// Records requested delays instead of sleeping.
class RecordingSleeper : public Sleeper {
 public:
  void Sleep(double seconds) override;
  std::vector<double> delays() const;

 private:
  mutable std::mutex mu_;
  std::vector<double> delays_;
};

// Token bucket: a burst of one request, refilled at requests_per_minute.
// Acquire() blocks the calling thread only.
class RateLimiter {
 public:
  using Clock = std::chrono::steady_clock;

  RateLimiter(double requests_per_minute, std::shared_ptr<Sleeper> sleeper);

  void Acquire();

 private:
  double interval_seconds_;
  std::shared_ptr<Sleeper> sleeper_;
  std::mutex mu_;
  Clock::time_point next_slot_;
};

struct GeneratedResponse {
  std::string text;
  std::size_t word_count = 0;
  // Set when word_count falls outside [100, 150].
  std::optional<std::string> word_limit_warning;
};

inline constexpr std::size_t kMinReplyWords = 100;
inline constexpr std::size_t kMaxReplyWords = 150;

// Built-in templates. The tagging template contains {response}; the
// generation template contains {post}.
const std::string& DefaultTaggingTemplate();
const std::string& DefaultGenerationTemplate();

// Substitutes every occurrence of `placeholder`.
std::string FillTemplate(std::string templ, const std::string& placeholder,
                         const std::string& value);

// Parses a model reply as a JSON array of {"quote", "tactic"} and resolves
// each quote to the first occurrence at or after the previous quote's end.
// Throws MalformedModelOutput, UnresolvedQuote or OverlapAfterResolution
// (all as Error with the matching code).
std::vector<Span> ResolveTagReply(const std::string& reply, const std::string& text);

class Gateway {
 public:
  Gateway(GatewayConfig cfg, std::shared_ptr<Transport> transport,
          std::shared_ptr<Sleeper> sleeper = std::make_shared<Sleeper>());

  // Sends one user message and returns the reply content. Retries transport
  // failures, 429 and 5xx up to max_retries times with delays
  // backoff_base * 2^i. Throws Error{kTransportError}.
  std::string Complete(const std::string& user_content);

  AnnotatedResponse TagResponse(const std::string& id, const WriterClass& writer,
                                const std::string& text);

  // Throws Error{kEmptyReply} for a blank reply.
  GeneratedResponse GenerateEmpathicResponse(const std::string& post_text);

  const GatewayConfig& config() const { return cfg_; }

 private:
  const std::string& Template(bool tagging);

  GatewayConfig cfg_;
  std::shared_ptr<Transport> transport_;
  std::shared_ptr<Sleeper> sleeper_;
  RateLimiter limiter_;
  std::once_flag template_once_;
  std::string loaded_template_;
};

// Offline stand-ins used by `--mock`. The tagger labels each sentence by
// simple keyword rules; the generator returns a fixed reply within the word
// limits.
std::shared_ptr<Transport> MakeMockTaggerTransport();
std::shared_ptr<Transport> MakeMockGeneratorTransport();

}  // namespace tactics

#endif  // TACTICS_GATEWAY_H_
