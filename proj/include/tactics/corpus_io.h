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

#ifndef TACTICS_CORPUS_IO_H_
#define TACTICS_CORPUS_IO_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tactics/tactic.h"

namespace tactics {

// Corpus JSONL. Each non-blank line is one of
//   {"id": str, "writer": {"study": int, "source": str}, "text": str,
//    "spans": [{"start": int, "end": int, "tactic": "P"}, ...]}
//   {"id": str, "writer": {...}, "sequence": "XPVA"}
// A pre-encoded record may also carry "text" or "word_count". A record with
// both "spans" and "sequence" is rejected. Errors name the line and id.
Corpus ReadCorpus(std::istream& in, std::string_view source_name = "<input>");
Corpus LoadCorpus(const std::string& path);

std::string ToJsonLine(const AnnotatedResponse& r);
std::string ToJsonLine(const EncodedResponse& r);

void WriteEncodedJsonl(std::ostream& out,
                       const std::vector<EncodedResponse>& records);
void WriteAnnotatedJsonl(std::ostream& out,
                         const std::vector<AnnotatedResponse>& records);

}  // namespace tactics

#endif  // TACTICS_CORPUS_IO_H_
