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

#ifndef TACTICS_ENCODER_H_
#define TACTICS_ENCODER_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tactics/errors.h"
#include "tactics/tactic.h"

namespace tactics {

// One problem with a response's span list. `first` indexes the offending
// span; `second` is the other member of an overlapping pair.
struct Violation {
  enum class Kind { kOutOfBounds, kEmptySpan, kOverlap };

  Kind kind;
  std::size_t first = 0;
  std::optional<std::size_t> second;

  std::string Describe() const;

  friend bool operator==(const Violation&, const Violation&) = default;
};

class InvalidAnnotations : public Error {
 public:
  InvalidAnnotations(std::string id, std::vector<Violation> violations);

  const std::string& id() const { return id_; }
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::string id_;
  std::vector<Violation> violations_;
};

// Empty iff every span is inside the text, non-empty, and no two spans
// overlap. Offsets are in Unicode scalar values.
std::vector<Violation> ValidateAnnotations(const AnnotatedResponse& r);

// Orders spans by start offset and collapses repeated neighbouring tactics.
// Untagged text between spans does not break adjacency.
TacticSequence EncodeResponse(const AnnotatedResponse& r);

// Encodes every entry in corpus order. Pre-encoded entries pass through.
// Throws InvalidAnnotations naming the first bad response id.
std::vector<EncodedResponse> EncodeCorpus(const Corpus& c);

}  // namespace tactics

#endif  // TACTICS_ENCODER_H_
