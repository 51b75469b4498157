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

#include <cstdio>
#include <ostream>

#include "json.hpp"
#include "tactics/coverage.h"

namespace tactics {
namespace {

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string EscapePipes(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string StudyText(const ResponseGroup& g) {
  return g.study ? std::to_string(*g.study) : "all";
}

}  // namespace

std::string FormatPercent(const Fraction& f) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", ToDouble(f) * 100.0);
  return buf;
}

void WriteReportCsv(std::ostream& out, const CoverageReport& report) {
  out << "pattern_index,pattern_text,writer_study,writer_source,group_size,"
         "matched_count,across_pct,within_pct\n";
  for (std::size_t k = 0; k < report.cells.size(); ++k) {
    for (std::size_t g = 0; g < report.groups.size(); ++g) {
      const auto& cell = report.cells[k][g];
      out << (k + 1) << ',' << CsvField(report.pattern_texts[k]) << ','
          << StudyText(report.groups[g]) << ',' << CsvField(report.groups[g].source)
          << ',' << cell.group_size << ',' << cell.matched_count << ','
          << FormatPercent(cell.across) << ','
          << (cell.within ? FormatPercent(*cell.within) : "") << '\n';
    }
  }
}

void WriteReportJson(std::ostream& out, const CoverageReport& report) {
  using ordered_json = nlohmann::ordered_json;
  ordered_json rows = ordered_json::array();
  for (std::size_t k = 0; k < report.cells.size(); ++k) {
    for (std::size_t g = 0; g < report.groups.size(); ++g) {
      const auto& cell = report.cells[k][g];
      const auto& group = report.groups[g];
      ordered_json j;
      j["pattern_index"] = k + 1;
      j["pattern_text"] = report.pattern_texts[k];
      j["compound_text"] = report.compound_texts[k];
      j["writer_study"] = group.study ? ordered_json(*group.study) : ordered_json(nullptr);
      j["writer_source"] = group.source;
      j["group_size"] = cell.group_size;
      j["matched_count"] = cell.matched_count;
      j["across_pct"] = std::stod(FormatPercent(cell.across));
      j["within_pct"] = cell.within ? ordered_json(std::stod(FormatPercent(*cell.within)))
                                    : ordered_json(nullptr);
      j["across"] = FractionText(cell.across);
      j["within"] = cell.within ? ordered_json(FractionText(*cell.within))
                                : ordered_json(nullptr);
      rows.push_back(std::move(j));
    }
  }
  ordered_json doc;
  doc["ladder"] = report.pattern_texts;
  doc["cells"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

// Table-3 layout: one block per pattern, an Across and a Within line, one
// column per group.
void WriteReportMarkdown(std::ostream& out, const CoverageReport& report) {
  out << "| Pattern | |";
  for (const auto& g : report.groups) out << ' ' << g.Label() << " |";
  out << "\n|---|---|";
  for (std::size_t g = 0; g < report.groups.size(); ++g) out << "---:|";
  out << '\n';
  for (std::size_t k = 0; k < report.cells.size(); ++k) {
    out << "| " << (k + 1) << ": `" << EscapePipes(report.compound_texts[k])
        << "` | Across |";
    for (const auto& cell : report.cells[k]) out << ' ' << FormatPercent(cell.across) << " |";
    out << "\n| | Within |";
    for (const auto& cell : report.cells[k]) {
      out << ' ' << (cell.within ? FormatPercent(*cell.within) : "-") << " |";
    }
    out << '\n';
  }
}

}  // namespace tactics
