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

#include "tactics/encoder.h"

#include <algorithm>
#include <numeric>

#include "tactics/utf8.h"

namespace tactics {

std::string Violation::Describe() const {
  switch (kind) {
    case Kind::kOutOfBounds:
      return "span " + std::to_string(first) + " is out of bounds";
    case Kind::kEmptySpan:
      return "span " + std::to_string(first) + " has start >= end";
    case Kind::kOverlap:
      return "span " + std::to_string(first) + " overlaps span " +
             std::to_string(second.value_or(0));
  }
  return "unknown violation";
}

namespace {

std::string JoinViolations(const std::vector<Violation>& violations) {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.Describe();
  }
  return out;
}

}  // namespace

InvalidAnnotations::InvalidAnnotations(std::string id,
                                       std::vector<Violation> violations)
    : Error(ErrorCode::kInvalidAnnotations,
            "response \"" + id + "\": " + JoinViolations(violations)),
      id_(std::move(id)),
      violations_(std::move(violations)) {}

std::vector<Violation> ValidateAnnotations(const AnnotatedResponse& r) {
  std::vector<Violation> out;
  const std::size_t length = utf8::Length(r.text);
  const auto& spans = r.spans;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (spans[i].start >= spans[i].end) {
      out.push_back({Violation::Kind::kEmptySpan, i, std::nullopt});
    } else if (spans[i].end > length) {
      out.push_back({Violation::Kind::kOutOfBounds, i, std::nullopt});
    }
  }
  for (std::size_t i = 0; i < spans.size(); ++i) {
    for (std::size_t j = i + 1; j < spans.size(); ++j) {
      if (spans[i].start < spans[j].end && spans[j].start < spans[i].end) {
        out.push_back({Violation::Kind::kOverlap, i, j});
      }
    }
  }
  return out;
}

TacticSequence EncodeResponse(const AnnotatedResponse& r) {
  auto violations = ValidateAnnotations(r);
  if (!violations.empty()) throw InvalidAnnotations(r.id, std::move(violations));

  std::vector<std::size_t> order(r.spans.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return r.spans[a].start < r.spans[b].start;
  });
  std::vector<Tactic> tactics;
  tactics.reserve(order.size());
  for (std::size_t i : order) tactics.push_back(r.spans[i].tactic);
  return TacticSequence::FromTactics(tactics);
}

std::vector<EncodedResponse> EncodeCorpus(const Corpus& c) {
  std::vector<EncodedResponse> out;
  out.reserve(c.size());
  for (const auto& entry : c.entries()) {
    if (entry.encoded) {
      out.push_back(*entry.encoded);
      continue;
    }
    const auto& r = *entry.annotated;
    out.push_back({r.id, r.writer, EncodeResponse(r), r.word_count});
  }
  return out;
}

}  // namespace tactics
