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

#ifndef TACTICS_CLI_H_
#define TACTICS_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace tactics {

// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitTransport = 3;

// Seed used when --seed is not given.
inline constexpr std::uint64_t kDefaultSeed = 42;

// Runs one subcommand. `args` excludes the program name. Output goes to
// --out when given, otherwise to `out`; diagnostics go to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tactics

#endif  // TACTICS_CLI_H_
