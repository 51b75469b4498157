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

#include "tactics/corpus_io.h"

#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"

namespace tactics {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void Fail(std::string_view source, std::size_t line,
                       const std::string& id, const std::string& what,
                       ErrorCode code = ErrorCode::kMalformedRecord) {
  std::string msg = std::string(source) + ":" + std::to_string(line);
  if (!id.empty()) msg += " (id \"" + id + "\")";
  msg += ": " + what;
  throw Error(code, msg);
}

WriterClass ParseWriter(const json& j) {
  if (!j.is_object() || !j.contains("study") || !j.contains("source") ||
      !j["study"].is_number_integer() || !j["source"].is_string()) {
    throw Error(ErrorCode::kMalformedRecord,
                "writer must be {\"study\": int, \"source\": str}");
  }
  WriterClass w{j["study"].get<int>(), j["source"].get<std::string>()};
  w.Validate();
  return w;
}

Span ParseSpan(const json& j) {
  if (!j.is_object() || !j.contains("start") || !j.contains("end") ||
      !j.contains("tactic") || !j["start"].is_number_unsigned() ||
      !j["end"].is_number_unsigned() || !j["tactic"].is_string()) {
    throw Error(ErrorCode::kMalformedRecord,
                "span must be {\"start\": uint, \"end\": uint, \"tactic\": str}");
  }
  const auto letter = j["tactic"].get<std::string>();
  if (letter.size() != 1) {
    throw Error(ErrorCode::kUnknownTacticLetter,
                "span tactic must be a single letter, got \"" + letter + "\"");
  }
  return Span{j["start"].get<std::size_t>(), j["end"].get<std::size_t>(),
              TacticFromLetter(letter[0])};
}

ordered_json WriterJson(const WriterClass& w) {
  return ordered_json{{"study", w.study}, {"source", w.source}};
}

std::string Dump(const ordered_json& j) {
  return j.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

}  // namespace

Corpus ReadCorpus(std::istream& in, std::string_view source_name) {
  Corpus corpus;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      Fail(source_name, lineno, "", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) Fail(source_name, lineno, "", "record is not an object");
    if (!j.contains("id") || !j["id"].is_string()) {
      Fail(source_name, lineno, "", "missing string field \"id\"");
    }
    const auto id = j["id"].get<std::string>();
    try {
      if (!j.contains("writer")) throw Error(ErrorCode::kMalformedRecord, "missing \"writer\"");
      WriterClass writer = ParseWriter(j["writer"]);
      const bool has_spans = j.contains("spans");
      const bool has_sequence = j.contains("sequence");
      if (has_spans && has_sequence) {
        throw Error(ErrorCode::kMalformedRecord,
                    "record has both \"spans\" and \"sequence\"");
      }
      if (has_sequence) {
        if (!j["sequence"].is_string()) {
          throw Error(ErrorCode::kMalformedRecord, "\"sequence\" must be a string");
        }
        EncodedResponse r;
        r.id = id;
        r.writer = std::move(writer);
        r.sequence = ParseSequence(j["sequence"].get<std::string>()).sequence;
        if (j.contains("word_count")) {
          if (!j["word_count"].is_number_unsigned()) {
            throw Error(ErrorCode::kMalformedRecord, "\"word_count\" must be a uint");
          }
          r.word_count = j["word_count"].get<std::size_t>();
        } else if (j.contains("text") && j["text"].is_string()) {
          r.word_count = CountWords(j["text"].get<std::string>());
        }
        corpus.Add(std::move(r));
        continue;
      }
      if (!j.contains("text") || !j["text"].is_string()) {
        throw Error(ErrorCode::kMalformedRecord,
                    "record needs \"sequence\" or \"text\" with \"spans\"");
      }
      std::vector<Span> spans;
      if (has_spans) {
        if (!j["spans"].is_array()) {
          throw Error(ErrorCode::kMalformedRecord, "\"spans\" must be an array");
        }
        for (const auto& s : j["spans"]) spans.push_back(ParseSpan(s));
      }
      corpus.Add(MakeResponse(id, std::move(writer), j["text"].get<std::string>(),
                              std::move(spans)));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kMalformedRecord ||
          e.code() == ErrorCode::kUnknownTacticLetter ||
          e.code() == ErrorCode::kDuplicateId) {
        Fail(source_name, lineno, id, e.what(), e.code());
      }
      throw;
    } catch (const json::exception& e) {
      Fail(source_name, lineno, id, e.what());
    }
  }
  return corpus;
}

Corpus LoadCorpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open corpus file " + path);
  return ReadCorpus(in, path);
}

std::string ToJsonLine(const AnnotatedResponse& r) {
  ordered_json spans = ordered_json::array();
  for (const auto& s : r.spans) {
    spans.push_back({{"start", s.start},
                     {"end", s.end},
                     {"tactic", std::string(1, TacticCode(s.tactic))}});
  }
  ordered_json j = {{"id", r.id},
            {"writer", WriterJson(r.writer)},
            {"text", r.text},
            {"spans", std::move(spans)}};
  return Dump(j);
}

std::string ToJsonLine(const EncodedResponse& r) {
  ordered_json j = {{"id", r.id},
            {"writer", WriterJson(r.writer)},
            {"sequence", r.sequence.str()}};
  if (r.word_count) j["word_count"] = *r.word_count;
  return Dump(j);
}

void WriteEncodedJsonl(std::ostream& out,
                       const std::vector<EncodedResponse>& records) {
  for (const auto& r : records) out << ToJsonLine(r) << '\n';
}

void WriteAnnotatedJsonl(std::ostream& out,
                         const std::vector<AnnotatedResponse>& records) {
  for (const auto& r : records) out << ToJsonLine(r) << '\n';
}

}  // namespace tactics
