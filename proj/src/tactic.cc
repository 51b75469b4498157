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

#include "tactics/tactic.h"

#include <algorithm>
#include <cctype>

namespace tactics {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownTacticLetter: return "UnknownTacticLetter";
    case ErrorCode::kInvalidAnnotations: return "InvalidAnnotations";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kNotNested: return "NotNested";
    case ErrorCode::kOracleBoundExceeded: return "OracleBoundExceeded";
    case ErrorCode::kEmptyGroup: return "EmptyGroup";
    case ErrorCode::kNoMatches: return "NoMatches";
    case ErrorCode::kZeroVariance: return "ZeroVariance";
    case ErrorCode::kInsufficientRatings: return "InsufficientRatings";
    case ErrorCode::kSearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::kUnsatisfiablePattern: return "UnsatisfiablePattern";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kTransportError: return "TransportError";
    case ErrorCode::kMalformedModelOutput: return "MalformedModelOutput";
    case ErrorCode::kUnresolvedQuote: return "UnresolvedQuote";
    case ErrorCode::kOverlapAfterResolution: return "OverlapAfterResolution";
    case ErrorCode::kEmptyReply: return "EmptyReply";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

UnknownTacticLetter::UnknownTacticLetter(char letter, std::size_t position)
    : Error(ErrorCode::kUnknownTacticLetter,
            "unknown tactic letter '" + std::string(1, letter) +
                "' at position " + std::to_string(position)),
      letter_(letter),
      position_(position) {}

SyntaxError::SyntaxError(const std::string& message, std::size_t column)
    : Error(ErrorCode::kSyntaxError,
            message + " at column " + std::to_string(column)),
      detail_(message),
      column_(column) {}

namespace {

constexpr std::array<std::string_view, kNumTactics> kNames = {
    "EmotionalExpression", "Empowerment",    "Validation", "Information",
    "Paraphrasing",        "Reappraisal",    "SelfDisclosure",
    "Advice",              "Assistance",     "Questioning",
};

std::string NormalizeLabel(std::string_view label) {
  std::string out;
  for (char c : label) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

}  // namespace

std::string_view TacticName(Tactic t) { return kNames[TacticIndex(t)]; }

std::optional<Tactic> TryTacticFromLetter(char letter) {
  auto pos = kAlphabet.find(letter);
  if (pos == std::string_view::npos) return std::nullopt;
  return kAllTactics[pos];
}

Tactic TacticFromLetter(char letter) {
  auto t = TryTacticFromLetter(letter);
  if (!t) throw UnknownTacticLetter(letter, 0);
  return *t;
}

std::optional<Tactic> TryTacticFromLabel(std::string_view label) {
  if (label.size() == 1) return TryTacticFromLetter(label[0]);
  const std::string norm = NormalizeLabel(label);
  for (Tactic t : kAllTactics) {
    if (NormalizeLabel(TacticName(t)) == norm) return t;
  }
  return std::nullopt;
}

TacticSequence TacticSequence::FromCollapsed(std::string letters) {
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (!TryTacticFromLetter(letters[i])) {
      throw UnknownTacticLetter(letters[i], i);
    }
    if (i > 0 && letters[i] == letters[i - 1]) {
      throw Error(ErrorCode::kMalformedRecord,
                  "sequence \"" + letters + "\" repeats '" +
                      std::string(1, letters[i]) + "' at position " +
                      std::to_string(i));
    }
  }
  return TacticSequence(std::move(letters));
}

TacticSequence TacticSequence::FromTactics(const std::vector<Tactic>& tactics) {
  std::string letters;
  for (Tactic t : tactics) {
    char c = TacticCode(t);
    if (letters.empty() || letters.back() != c) letters.push_back(c);
  }
  return TacticSequence(std::move(letters));
}

Tactic TacticSequence::operator[](std::size_t i) const {
  return *TryTacticFromLetter(letters_.at(i));
}

bool TacticSequence::Contains(Tactic t) const {
  return letters_.find(TacticCode(t)) != std::string::npos;
}

ParsedSequence ParseSequence(std::string_view raw) {
  ParsedSequence out;
  std::string letters;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    char c = raw[i];
    if (IsAsciiSpace(c)) continue;
    if (!TryTacticFromLetter(c)) throw UnknownTacticLetter(c, i);
    if (!letters.empty() && letters.back() == c) {
      out.collapsed = true;
      continue;
    }
    letters.push_back(c);
  }
  out.sequence = TacticSequence::FromCollapsed(std::move(letters));
  return out;
}

void WriterClass::Validate() const {
  if (study != 1 && study != 2) {
    throw Error(ErrorCode::kMalformedRecord,
                "writer study must be 1 or 2, got " + std::to_string(study));
  }
  if (source.empty()) {
    throw Error(ErrorCode::kMalformedRecord, "writer source is empty");
  }
}

std::string WriterClass::Label() const {
  return "study" + std::to_string(study) + "/" + source;
}

std::size_t CountWords(std::string_view text) {
  std::size_t count = 0;
  bool in_word = false;
  for (char c : text) {
    if (IsAsciiSpace(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++count;
    }
  }
  return count;
}

AnnotatedResponse MakeResponse(std::string id, WriterClass writer,
                               std::string text, std::vector<Span> spans) {
  AnnotatedResponse r;
  r.id = std::move(id);
  r.writer = std::move(writer);
  r.word_count = CountWords(text);
  r.text = std::move(text);
  r.spans = std::move(spans);
  return r;
}

const std::string& Corpus::Entry::id() const {
  return annotated ? annotated->id : encoded->id;
}

const WriterClass& Corpus::Entry::writer() const {
  return annotated ? annotated->writer : encoded->writer;
}

void Corpus::CheckId(const std::string& id) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it != ids_.end() && *it == id) {
    throw Error(ErrorCode::kDuplicateId, "duplicate response id \"" + id + "\"");
  }
  ids_.insert(it, id);
}

void Corpus::Add(AnnotatedResponse response) {
  CheckId(response.id);
  Entry e;
  e.annotated = std::move(response);
  entries_.push_back(std::move(e));
}

void Corpus::Add(EncodedResponse response) {
  CheckId(response.id);
  Entry e;
  e.encoded = std::move(response);
  entries_.push_back(std::move(e));
}

}  // namespace tactics
