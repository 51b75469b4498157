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

#include "tactics/pattern.h"

#include <cctype>
#include <fstream>
#include <istream>

namespace tactics {

TacticMask MaskOf(std::string_view letters) {
  TacticMask mask = 0;
  for (char c : letters) {
    auto t = TryTacticFromLetter(c);
    if (t) mask |= static_cast<TacticMask>(1u << TacticIndex(*t));
  }
  return mask;
}

Atom::Atom(std::string letters, Quantifier quantifier, bool bracketed)
    : letters_(std::move(letters)),
      mask_(0),
      quantifier_(quantifier),
      bracketed_(bracketed || letters_.size() > 1) {
  if (letters_.empty()) throw SyntaxError("empty match set", 0);
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (!TryTacticFromLetter(letters_[i])) {
      throw SyntaxError("unknown tactic letter '" + std::string(1, letters_[i]) + "'", i);
    }
  }
  mask_ = MaskOf(letters_);
}

bool Atom::Admits(char letter) const {
  auto t = TryTacticFromLetter(letter);
  return t && (mask_ >> TacticIndex(*t)) & 1u;
}

std::string Atom::Render() const {
  std::string out = bracketed_ ? "[" + letters_ + "]" : letters_;
  switch (quantifier_) {
    case Quantifier::kOne: break;
    case Quantifier::kOptional: out += '?'; break;
    case Quantifier::kOnePlus: out += '+'; break;
  }
  return out;
}

std::string Pattern::Render() const {
  std::string out = anchored_start ? "^" : "";
  for (const auto& a : atoms) out += a.Render();
  if (anchored_end) out += '$';
  return out;
}

bool Pattern::Extends(const Pattern& prefix) const {
  if (atoms.size() <= prefix.atoms.size()) return false;
  for (std::size_t i = 0; i < prefix.atoms.size(); ++i) {
    if (!atoms[i].EquivalentTo(prefix.atoms[i])) return false;
  }
  return true;
}

std::string CompoundPattern::Render() const {
  std::string out;
  for (std::size_t i = 0; i < alternatives.size(); ++i) {
    if (i > 0) out += '|';
    out += alternatives[i].Render();
  }
  return out;
}

namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  CompoundPattern ParseCompound() {
    CompoundPattern out;
    out.alternatives.push_back(ParseOne());
    SkipSpace();
    while (pos_ < text_.size() && text_[pos_] == '|') {
      ++pos_;
      out.alternatives.push_back(ParseOne());
      SkipSpace();
    }
    if (pos_ < text_.size()) Unexpected();
    return out;
  }

 private:
  void SkipSpace() {
    while (pos_ < text_.size() && IsSpace(text_[pos_])) ++pos_;
  }

  [[noreturn]] void Unexpected() {
    const char c = text_[pos_];
    switch (c) {
      case '*':
        throw SyntaxError("'*' is not supported; use '?' or '+'", pos_);
      case '.':
        throw SyntaxError("wildcards are not supported", pos_);
      case '{':
        throw SyntaxError("bounded repetition is not supported", pos_);
      case '(':
      case ')':
        throw SyntaxError("groups are not supported", pos_);
      case '?':
      case '+':
        throw SyntaxError("quantifier without a preceding match set", pos_);
      case '^':
        throw SyntaxError("'^' is only allowed at the start of a pattern", pos_);
      case '$':
        throw SyntaxError("'$' is only allowed at the end of a pattern", pos_);
      case ']':
        throw SyntaxError("unbalanced ']'", pos_);
      default:
        break;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      throw SyntaxError("unknown tactic letter '" + std::string(1, c) + "'", pos_);
    }
    throw SyntaxError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  Pattern ParseOne() {
    Pattern p;
    SkipSpace();
    p.anchored_start = false;
    if (pos_ < text_.size() && text_[pos_] == '^') {
      p.anchored_start = true;
      ++pos_;
    }
    const std::size_t begin = pos_;
    for (;;) {
      SkipSpace();
      if (pos_ >= text_.size()) break;
      const char c = text_[pos_];
      if (c == '|' ) break;
      if (c == '$') {
        const std::size_t dollar = pos_;
        p.anchored_end = true;
        ++pos_;
        SkipSpace();
        if (pos_ < text_.size() && text_[pos_] != '|') {
          throw SyntaxError("'$' is only allowed at the end of a pattern", dollar);
        }
        break;
      }
      p.atoms.push_back(ParseAtom());
    }
    if (p.atoms.empty()) throw SyntaxError("pattern has no match sets", begin);
    return p;
  }

  Atom ParseAtom() {
    const std::size_t start = pos_;
    std::string letters;
    bool bracketed = false;
    if (text_[pos_] == '[') {
      bracketed = true;
      ++pos_;
      for (;;) {
        SkipSpace();
        if (pos_ >= text_.size()) throw SyntaxError("unclosed '['", start);
        const char c = text_[pos_];
        if (c == ']') break;
        if (c == '^') throw SyntaxError("negated match sets are not supported", pos_);
        if (!TryTacticFromLetter(c)) {
          if (std::isalpha(static_cast<unsigned char>(c))) {
            throw SyntaxError("unknown tactic letter '" + std::string(1, c) + "'", pos_);
          }
          throw SyntaxError("unexpected character '" + std::string(1, c) + "' in match set",
                            pos_);
        }
        letters.push_back(c);
        ++pos_;
      }
      if (letters.empty()) throw SyntaxError("empty match set", start);
      ++pos_;  // ']'
    } else if (TryTacticFromLetter(text_[pos_])) {
      letters.push_back(text_[pos_]);
      ++pos_;
    } else {
      Unexpected();
    }
    SkipSpace();
    Quantifier q = Quantifier::kOne;
    if (pos_ < text_.size()) {
      if (text_[pos_] == '?') {
        q = Quantifier::kOptional;
        ++pos_;
      } else if (text_[pos_] == '+') {
        q = Quantifier::kOnePlus;
        ++pos_;
      } else if (text_[pos_] == '*') {
        Unexpected();
      }
    }
    return Atom(std::move(letters), q, bracketed);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

CompoundPattern ParseCompound(std::string_view text) {
  return Parser(text).ParseCompound();
}

Pattern ParsePattern(std::string_view text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '|') {
      throw SyntaxError("alternation is not allowed in a single pattern", i);
    }
  }
  return std::move(ParseCompound(text).alternatives.front());
}

std::size_t MinMatchLength(const Pattern& p) {
  std::size_t n = 0;
  for (const auto& a : p.atoms) {
    if (a.quantifier() != Quantifier::kOptional) ++n;
  }
  return n;
}

void CheckNested(std::span<const Pattern> ladder) {
  for (std::size_t k = 1; k < ladder.size(); ++k) {
    if (ladder[k].anchored_start != ladder[k - 1].anchored_start ||
        !ladder[k].Extends(ladder[k - 1])) {
      throw Error(ErrorCode::kNotNested,
                  "pattern " + std::to_string(k + 1) + " (" + ladder[k].Render() +
                      ") does not extend pattern " + std::to_string(k) + " (" +
                      ladder[k - 1].Render() + ")");
    }
  }
}

CompoundPattern BuildCompound(std::span<const Pattern> ladder) {
  if (ladder.empty()) throw Error(ErrorCode::kNotNested, "empty pattern ladder");
  CheckNested(ladder);
  CompoundPattern out;
  out.alternatives.push_back(ladder.back());
  for (std::size_t k = ladder.size() - 1; k-- > 0;) {
    Pattern p = ladder[k];
    p.anchored_end = true;
    out.alternatives.push_back(std::move(p));
  }
  return out;
}

std::vector<CompoundPattern> ReadPatternFile(std::istream& in,
                                             std::string_view source_name) {
  std::vector<CompoundPattern> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    try {
      out.push_back(ParseCompound(line));
    } catch (const SyntaxError& e) {
      throw SyntaxError(std::string(source_name) + ":" + std::to_string(lineno) +
                            ": " + e.detail(),
                        e.column());
    }
  }
  return out;
}

std::vector<CompoundPattern> LoadPatternFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open pattern file " + path);
  return ReadPatternFile(in, path);
}

}  // namespace tactics
