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

#include "tactics/stats.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <set>

namespace tactics {

MeanSd Summarize(std::span<const double> values) {
  MeanSd out;
  out.n = values.size();
  if (values.empty()) return out;
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(out.n);
  if (out.n == 1) {
    out.degenerate = true;
    return out;
  }
  double ss = 0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.sd = std::sqrt(ss / static_cast<double>(out.n - 1));
  return out;
}

Descriptives ComputeDescriptives(std::span<const SizedSequence> group) {
  if (group.empty()) throw Error(ErrorCode::kEmptyGroup, "descriptives of an empty group");
  std::vector<double> words, total, unique;
  for (const auto& r : group) {
    if (r.word_count) words.push_back(static_cast<double>(*r.word_count));
    total.push_back(static_cast<double>(r.sequence.size()));
    const std::set<char> distinct(r.sequence.letters().begin(), r.sequence.letters().end());
    unique.push_back(static_cast<double>(distinct.size()));
  }
  Descriptives d;
  if (!words.empty()) d.word_count = Summarize(words);
  d.total_tactics = Summarize(total);
  d.unique_tactics = Summarize(unique);
  return d;
}

PrevalenceVector Prevalence(std::span<const TacticSequence> group) {
  if (group.empty()) throw Error(ErrorCode::kEmptyGroup, "prevalence of an empty group");
  PrevalenceVector out{};
  for (Tactic t : kAllTactics) {
    std::size_t present = 0;
    for (const auto& s : group) present += s.Contains(t) ? 1 : 0;
    out[TacticIndex(t)] = static_cast<double>(present) / static_cast<double>(group.size());
  }
  return out;
}

std::vector<double> AverageRanks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double PearsonCorrelation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw Error(ErrorCode::kInvalidConfig, "correlation needs two equal-length vectors of >= 2");
  }
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0 || sbb == 0) {
    throw Error(ErrorCode::kZeroVariance, "correlation undefined: a vector is constant");
  }
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

double SpearmanCorrelation(std::span<const double> a, std::span<const double> b) {
  const auto ra = AverageRanks(a);
  const auto rb = AverageRanks(b);
  return PearsonCorrelation(ra, rb);
}

// Coincidence-matrix form: every ordered pair of values within an item adds
// 1 / (m_u - 1) to o[c][k]; alpha = 1 - (n - 1) * sum_{c!=k} o[c][k] /
// sum_{c!=k} n_c n_k.
AlphaResult KrippendorffAlpha(const RatingMatrix& ratings) {
  if (ratings.size() < 2) {
    throw Error(ErrorCode::kInsufficientRatings, "Krippendorff's alpha needs >= 2 raters");
  }
  std::size_t items = 0;
  for (const auto& row : ratings) items = std::max(items, row.size());

  std::map<int, std::map<int, double>> coincidence;
  for (std::size_t u = 0; u < items; ++u) {
    std::vector<int> values;
    for (const auto& row : ratings) {
      if (u < row.size() && row[u]) values.push_back(*row[u]);
    }
    const std::size_t m = values.size();
    if (m < 2) continue;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (i != j) coincidence[values[i]][values[j]] += 1.0 / static_cast<double>(m - 1);
      }
    }
  }
  if (coincidence.empty()) {
    throw Error(ErrorCode::kInsufficientRatings, "no item has two or more ratings");
  }
  std::map<int, double> marginal;
  double n = 0, observed = 0;
  for (const auto& [c, row] : coincidence) {
    for (const auto& [k, o] : row) {
      marginal[c] += o;
      n += o;
      if (c != k) observed += o;
    }
  }
  double expected = 0;
  for (const auto& [c, nc] : marginal) {
    for (const auto& [k, nk] : marginal) {
      if (c != k) expected += nc * nk;
    }
  }
  AlphaResult out;
  out.pairable_values = static_cast<std::size_t>(std::llround(n));
  if (expected == 0) {
    out.alpha = 1.0;
    out.degenerate = true;
    return out;
  }
  out.alpha = 1.0 - (n - 1.0) * observed / expected;
  return out;
}

namespace {

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  out.push_back(std::move(field));
  return out;
}

std::string Trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<RatingRecord> ReadRatingsCsv(std::istream& in, std::string_view source_name) {
  std::vector<RatingRecord> out;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::kMalformedRecord,
                std::string(source_name) + ":" + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (Trim(line).empty()) continue;
    auto fields = SplitCsvLine(line);
    for (auto& f : fields) f = Trim(f);
    if (lineno == 1 && fields.size() >= 1 && fields[0] == "rater") continue;
    if (fields.size() != 4) fail("expected 4 fields: rater,item_id,tactic,present");
    auto tactic = TryTacticFromLabel(fields[2]);
    if (!tactic) fail("unknown tactic \"" + fields[2] + "\"");
    if (fields[3] != "0" && fields[3] != "1") fail("present must be 0 or 1");
    out.push_back({fields[0], fields[1], *tactic, fields[3] == "1" ? 1 : 0});
  }
  return out;
}

IrrReport ComputeIrr(std::span<const RatingRecord> records) {
  std::vector<std::string> raters, items;
  for (const auto& r : records) {
    raters.push_back(r.rater);
    items.push_back(r.item);
  }
  std::sort(raters.begin(), raters.end());
  raters.erase(std::unique(raters.begin(), raters.end()), raters.end());
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  auto index_of = [](const std::vector<std::string>& v, const std::string& key) {
    return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), key) - v.begin());
  };

  IrrReport report;
  double sum = 0;
  for (Tactic t : kAllTactics) {
    RatingMatrix m(raters.size(), std::vector<std::optional<int>>(items.size()));
    bool any = false;
    for (const auto& r : records) {
      if (r.tactic != t) continue;
      m[index_of(raters, r.rater)][index_of(items, r.item)] = r.present;
      any = true;
    }
    if (!any) {
      report.skipped.push_back(t);
      continue;
    }
    try {
      const AlphaResult a = KrippendorffAlpha(m);
      report.per_tactic[t] = a;
      sum += a.alpha;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInsufficientRatings) throw;
      report.skipped.push_back(t);
    }
  }
  if (report.per_tactic.empty()) {
    throw Error(ErrorCode::kInsufficientRatings, "no tactic has pairable ratings");
  }
  report.mean_alpha = sum / static_cast<double>(report.per_tactic.size());
  return report;
}

}  // namespace tactics
