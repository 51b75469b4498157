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

// Recomputes fixtures/expected_coverage.json from the brute-force oracle.
//
//   regen_fixtures [--check] [FIXTURE_DIR]
//
// With --check the file is compared instead of written; exit 1 on drift.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "tactics/fixtures.h"

int main(int argc, char** argv) {
  bool check = false;
  std::string dir = tactics::FixtureDir();
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--check") {
      check = true;
    } else {
      dir = arg;
    }
  }
  const std::string path = dir + "/expected_coverage.json";
  std::string expected;
  try {
    expected = tactics::RegenerateExpectedCoverage(dir);
  } catch (const std::exception& e) {
    std::cerr << "regen_fixtures: " << e.what() << '\n';
    return 2;
  }
  if (check) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream current;
    current << in.rdbuf();
    if (!in || current.str() != expected) {
      std::cerr << path << " is out of date; run regen_fixtures\n";
      return 1;
    }
    std::cout << path << " is up to date\n";
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  out << expected;
  if (!out) {
    std::cerr << "cannot write " << path << '\n';
    return 2;
  }
  std::cout << "wrote " << path << '\n';
  return 0;
}
