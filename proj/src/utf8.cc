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

#include "tactics/utf8.h"

#include <algorithm>

namespace tactics::utf8 {
namespace {

// Width of the scalar starting at `lead`; 1 for stray or invalid bytes.
std::size_t SequenceWidth(std::string_view text, std::size_t pos) {
  const auto lead = static_cast<unsigned char>(text[pos]);
  std::size_t width = 1;
  if (lead >= 0xF0 && lead <= 0xF4) {
    width = 4;
  } else if (lead >= 0xE0) {
    width = lead <= 0xEF ? 3 : 1;
  } else if (lead >= 0xC2) {
    width = 2;
  }
  if (pos + width > text.size()) return 1;
  for (std::size_t i = 1; i < width; ++i) {
    if ((static_cast<unsigned char>(text[pos + i]) & 0xC0) != 0x80) return 1;
  }
  return width;
}

}  // namespace

std::vector<std::size_t> Boundaries(std::string_view text) {
  std::vector<std::size_t> out;
  out.reserve(text.size() + 1);
  std::size_t pos = 0;
  while (pos < text.size()) {
    out.push_back(pos);
    pos += SequenceWidth(text, pos);
  }
  out.push_back(text.size());
  return out;
}

std::size_t Length(std::string_view text) {
  return Boundaries(text).size() - 1;
}

std::string Slice(std::string_view text, std::size_t start, std::size_t end) {
  const auto b = Boundaries(text);
  const std::size_t n = b.size() - 1;
  start = std::min(start, n);
  end = std::clamp(end, start, n);
  return std::string(text.substr(b[start], b[end] - b[start]));
}

}  // namespace tactics::utf8
