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

#ifndef TACTICS_ERRORS_H_
#define TACTICS_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tactics {

// Every failure raised by the library carries one of these codes. The CLI
// maps them onto process exit statuses.
enum class ErrorCode {
  kUnknownTacticLetter,
  kInvalidAnnotations,
  kDuplicateId,
  kMalformedRecord,
  kSyntaxError,
  kNotNested,
  kOracleBoundExceeded,
  kEmptyGroup,
  kNoMatches,
  kZeroVariance,
  kInsufficientRatings,
  kSearchSpaceTooLarge,
  kUnsatisfiablePattern,
  kInvalidConfig,
  kTransportError,
  kMalformedModelOutput,
  kUnresolvedQuote,
  kOverlapAfterResolution,
  kEmptyReply,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class UnknownTacticLetter : public Error {
 public:
  UnknownTacticLetter(char letter, std::size_t position);

  char letter() const { return letter_; }
  std::size_t position() const { return position_; }

 private:
  char letter_;
  std::size_t position_;
};

// Pattern text that does not conform to the notation grammar. `column` is
// zero-based.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t column);

  std::size_t column() const { return column_; }
  // Message without the column suffix.
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  std::size_t column_;
};

}  // namespace tactics

#endif  // TACTICS_ERRORS_H_
