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

#include <atomic>

#include "httplib.h"
#include "tactics/gateway.h"

namespace tactics {

namespace {

std::atomic<std::size_t> g_request_count{0};

}  // namespace

std::size_t HttpTransport::RequestCount() { return g_request_count.load(); }

HttpResponse HttpTransport::Post(const HttpRequest& request) {
  ++g_request_count;
  // Split "scheme://host[:port]/path" into the client origin and the path.
  const auto scheme_end = request.url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::kTransportError, "invalid URL " + request.url);
  }
  const auto path_begin = request.url.find('/', scheme_end + 3);
  const std::string origin = request.url.substr(0, path_begin);
  const std::string path =
      path_begin == std::string::npos ? "/" : request.url.substr(path_begin);

  httplib::Client client(origin);
  if (!client.is_valid()) {
    throw Error(ErrorCode::kTransportError, "unsupported URL " + request.url);
  }
  const auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::duration<double>(request.timeout_seconds));
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  httplib::Headers headers;
  std::string content_type = "application/json";
  for (const auto& [k, v] : request.headers) {
    if (k == "Content-Type") {
      content_type = v;
    } else {
      headers.emplace(k, v);
    }
  }
  auto res = client.Post(path, headers, request.body, content_type);
  if (!res) {
    throw Error(ErrorCode::kTransportError,
                request.url + ": " + httplib::to_string(res.error()));
  }
  return {res->status, res->body};
}

}  // namespace tactics
