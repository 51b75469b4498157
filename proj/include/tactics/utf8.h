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

#ifndef TACTICS_UTF8_H_
#define TACTICS_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tactics::utf8 {

// Number of Unicode scalar values in `text`. Invalid bytes count as one
// scalar each.
std::size_t Length(std::string_view text);

// Byte offset of every scalar boundary, including the end: result has
// Length(text) + 1 entries.
std::vector<std::size_t> Boundaries(std::string_view text);

// Substring by scalar offsets [start, end). Offsets are clamped.
std::string Slice(std::string_view text, std::size_t start, std::size_t end);

}  // namespace tactics::utf8

#endif  // TACTICS_UTF8_H_
