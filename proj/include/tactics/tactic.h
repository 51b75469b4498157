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

#ifndef TACTICS_TACTIC_H_
#define TACTICS_TACTIC_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tactics/errors.h"

namespace tactics {

// The ten empathic tactics, in taxonomy order. Each has a fixed one-letter
// code used by sequences and pattern notation.
enum class Tactic : std::uint8_t {
  kEmotionalExpression,  // X
  kEmpowerment,          // E
  kValidation,           // V
  kInformation,          // I
  kParaphrasing,         // P
  kReappraisal,          // R
  kSelfDisclosure,       // S
  kAdvice,               // A
  kAssistance,           // T
  kQuestioning,          // Q
};

inline constexpr std::size_t kNumTactics = 10;

inline constexpr std::array<Tactic, kNumTactics> kAllTactics = {
    Tactic::kEmotionalExpression, Tactic::kEmpowerment,
    Tactic::kValidation,          Tactic::kInformation,
    Tactic::kParaphrasing,        Tactic::kReappraisal,
    Tactic::kSelfDisclosure,      Tactic::kAdvice,
    Tactic::kAssistance,          Tactic::kQuestioning,
};

// Letter codes in taxonomy order.
inline constexpr std::string_view kAlphabet = "XEVIPRSATQ";

inline constexpr std::size_t TacticIndex(Tactic t) {
  return static_cast<std::size_t>(t);
}

inline constexpr char TacticCode(Tactic t) { return kAlphabet[TacticIndex(t)]; }

std::string_view TacticName(Tactic t);

// Returns nullopt for characters outside the alphabet.
std::optional<Tactic> TryTacticFromLetter(char letter);

// Throws UnknownTacticLetter for characters outside the alphabet.
Tactic TacticFromLetter(char letter);

// Accepts a letter code or a case-insensitive tactic name such as
// "Paraphrasing" or "emotional expression".
std::optional<Tactic> TryTacticFromLabel(std::string_view label);

// Ordered tactic letters with no two equal neighbours. The empty sequence is
// valid and stands for a response in which nothing was tagged.
class TacticSequence {
 public:
  TacticSequence() = default;

  // `letters` must already be collapsed and use only alphabet codes;
  // otherwise throws (UnknownTacticLetter or Error{kMalformedRecord}).
  static TacticSequence FromCollapsed(std::string letters);

  // Collapses consecutive duplicates.
  static TacticSequence FromTactics(const std::vector<Tactic>& tactics);

  std::string_view letters() const { return letters_; }
  const std::string& str() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Tactic operator[](std::size_t i) const;

  bool Contains(Tactic t) const;

  friend bool operator==(const TacticSequence&, const TacticSequence&) = default;
  friend auto operator<=>(const TacticSequence&, const TacticSequence&) = default;

 private:
  explicit TacticSequence(std::string letters) : letters_(std::move(letters)) {}

  std::string letters_;
};

struct ParsedSequence {
  TacticSequence sequence;
  bool collapsed = false;  // true if any duplicate run was merged
};

// Parses a raw letter string, ignoring ASCII whitespace and collapsing runs
// of identical letters. Throws UnknownTacticLetter with the character offset
// of the first invalid character.
ParsedSequence ParseSequence(std::string_view raw);

// Which writer produced a response: study number and a free-form source label
// such as "human" or "gpt4-turbo".
struct WriterClass {
  int study = 1;
  std::string source;

  // Throws Error{kMalformedRecord} unless study is 1 or 2 and source is
  // non-empty.
  void Validate() const;

  std::string Label() const;

  friend bool operator==(const WriterClass&, const WriterClass&) = default;
  friend auto operator<=>(const WriterClass&, const WriterClass&) = default;
};

// Half-open range of Unicode scalar values in the response text.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;
  Tactic tactic = Tactic::kEmotionalExpression;

  friend bool operator==(const Span&, const Span&) = default;
};

struct AnnotatedResponse {
  std::string id;
  WriterClass writer;
  std::string text;
  std::size_t word_count = 0;
  std::vector<Span> spans;
};

// Builds a response and fills in word_count from the text.
AnnotatedResponse MakeResponse(std::string id, WriterClass writer,
                               std::string text, std::vector<Span> spans);

// Number of whitespace-delimited tokens.
std::size_t CountWords(std::string_view text);

// A response that is already reduced to its tactic sequence. word_count is
// absent when the record carried no text.
struct EncodedResponse {
  std::string id;
  WriterClass writer;
  TacticSequence sequence;
  std::optional<std::size_t> word_count;
};

// A corpus holds span-annotated and pre-encoded records side by side, in file
// order. Ids are unique.
class Corpus {
 public:
  struct Entry {
    std::optional<AnnotatedResponse> annotated;
    std::optional<EncodedResponse> encoded;

    const std::string& id() const;
    const WriterClass& writer() const;
  };

  // Throw Error{kDuplicateId} if the id is already present.
  void Add(AnnotatedResponse response);
  void Add(EncodedResponse response);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  void CheckId(const std::string& id);

  std::vector<Entry> entries_;
  std::vector<std::string> ids_;  // sorted, for duplicate detection
};

}  // namespace tactics

#endif  // TACTICS_TACTIC_H_
