// Copyright 2026 The mtstreams Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Aggregates over campaign results: status classification, suspect
// summary per (technique, mode), failure-count histogram, per-test failure
// frequency, and the registry of Good statuses. Everything here is computed
// from per-status outcomes, which can come from an in-memory campaign or
// from a results JSONL file.

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mtstreams/campaign.hpp"
#include "mtstreams/digest.hpp"
#include "mtstreams/error.hpp"

namespace mts::report {

struct ResultRecord {
  std::string technique;
  std::uint64_t index = 0;
  std::string mode;
  std::string test_id;
  std::vector<std::pair<std::string, double>> p_values;
  std::string verdict;
  std::uint64_t draws = 0;
};

inline std::vector<ResultRecord> parse_results_jsonl(std::string_view text) {
  std::vector<ResultRecord> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      ResultRecord r;
      r.technique = j.at("technique").get<std::string>();
      r.index = j.at("index").get<std::uint64_t>();
      r.mode = j.at("mode").get<std::string>();
      r.test_id = j.at("test_id").get<std::string>();
      for (const auto& [k, v] : j.at("p_values").items()) r.p_values.emplace_back(k, v.get<double>());
      r.verdict = j.at("verdict").get<std::string>();
      r.draws = j.at("draws").get<std::uint64_t>();
      if (r.verdict != "pass" && r.verdict != "fail") throw ParseError("verdict must be pass or fail");
      if (!stats::parse_mode(r.mode)) throw ParseError("mode must be int or real");
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("results line " + std::to_string(line_no) + ": " + e.what());
    } catch (const ParseError& e) {
      throw ParseError("results line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

// One (status, mode) pair reduced to what classification needs.
struct StatusOutcome {
  std::string technique;
  std::uint64_t index = 0;
  std::string mode;
  std::set<std::string> failed;
  std::size_t tests = 0;

  auto key() const { return std::tie(technique, index, mode); }
};

inline std::vector<StatusOutcome> outcomes_from_records(const std::vector<ResultRecord>& records) {
  std::map<std::tuple<std::string, std::uint64_t, std::string>, StatusOutcome> by_key;
  for (const auto& r : records) {
    auto& o = by_key[{r.technique, r.index, r.mode}];
    o.technique = r.technique;
    o.index = r.index;
    o.mode = r.mode;
    ++o.tests;
    if (r.verdict == "fail") o.failed.insert(r.test_id);
  }
  std::vector<StatusOutcome> out;
  for (auto& [k, o] : by_key) out.push_back(std::move(o));
  return out;
}

inline std::vector<StatusOutcome> outcomes_from_campaign(const campaign::CampaignReport& report) {
  std::vector<StatusOutcome> out;
  for (const auto& s : report.reports) {
    StatusOutcome o{s.technique, s.index, std::string(stats::mode_name(s.mode)), {}, s.results.size()};
    o.failed.insert(s.failed_ids.begin(), s.failed_ids.end());
    out.push_back(std::move(o));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.key() < b.key(); });
  return out;
}

enum class Classification { Good, Suspect };

constexpr std::string_view classification_name(Classification c) noexcept {
  return c == Classification::Good ? "good" : "suspect";
}

// Throws ConfigError when an expected id is not among `battery_ids`.
inline void check_expected(const std::set<std::string>& expected, const std::set<std::string>& battery_ids) {
  for (const auto& id : expected)
    if (!battery_ids.contains(id)) throw ConfigError("expected-failure id '" + id + "' is not in the battery");
}

// Good iff every failed id is expected.
inline Classification classify_status(const std::set<std::string>& failed, const std::set<std::string>& expected) {
  return std::includes(expected.begin(), expected.end(), failed.begin(), failed.end()) ? Classification::Good
                                                                                       : Classification::Suspect;
}

struct SummaryRow {
  std::string technique;
  std::string mode;
  std::uint64_t statuses = 0;
  std::uint64_t suspect = 0;
  double percent() const noexcept { return statuses ? 100.0 * static_cast<double>(suspect) / static_cast<double>(statuses) : 0.0; }
};

struct HistogramRow {
  std::string technique;
  std::string mode;
  std::size_t n_failed = 0;  // all failed tests of a Suspect status, expected ones included
  std::uint64_t statuses = 0;
};

struct PerTestRow {
  std::string test_id;
  std::string technique;
  std::string mode;
  std::uint64_t failures = 0;
  std::uint64_t statuses = 0;
  double fraction() const noexcept { return statuses ? static_cast<double>(failures) / static_cast<double>(statuses) : 0.0; }
};

struct Tables {
  std::vector<SummaryRow> summary;
  std::vector<HistogramRow> histogram;
  std::vector<PerTestRow> per_test;
};

inline std::vector<SummaryRow> technique_summary(const std::vector<StatusOutcome>& outcomes,
                                                 const std::set<std::string>& expected) {
  std::map<std::pair<std::string, std::string>, SummaryRow> rows;
  for (const auto& o : outcomes) {
    auto& row = rows[{o.technique, o.mode}];
    row.technique = o.technique;
    row.mode = o.mode;
    ++row.statuses;
    if (classify_status(o.failed, expected) == Classification::Suspect) ++row.suspect;
  }
  std::vector<SummaryRow> out;
  for (auto& [k, r] : rows) out.push_back(std::move(r));
  return out;
}

// Over Suspect statuses only: how many tests each one failed.
inline std::vector<HistogramRow> failure_histogram(const std::vector<StatusOutcome>& outcomes,
                                                   const std::set<std::string>& expected) {
  std::map<std::tuple<std::string, std::string, std::size_t>, std::uint64_t> cells;
  for (const auto& o : outcomes)
    if (classify_status(o.failed, expected) == Classification::Suspect) ++cells[{o.technique, o.mode, o.failed.size()}];
  std::vector<HistogramRow> out;
  for (const auto& [k, n] : cells) out.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), n});
  return out;
}

// Per test id and (technique, mode): fraction of statuses failing it.
// Tests are ordered by total failures, descending, then by id.
inline std::vector<PerTestRow> per_test_frequency(const std::vector<StatusOutcome>& outcomes,
                                                  const std::vector<std::string>& test_ids) {
  std::map<std::pair<std::string, std::string>, std::uint64_t> group_sizes;
  for (const auto& o : outcomes) ++group_sizes[{o.technique, o.mode}];
  std::map<std::string, std::uint64_t> totals;
  std::map<std::tuple<std::string, std::string, std::string>, std::uint64_t> fails;
  for (const auto& id : test_ids) totals[id] = 0;
  for (const auto& o : outcomes)
    for (const auto& id : o.failed) {
      ++totals[id];
      ++fails[{id, o.technique, o.mode}];
    }
  std::vector<std::pair<std::string, std::uint64_t>> order(totals.begin(), totals.end());
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<PerTestRow> out;
  for (const auto& [id, total] : order)
    for (const auto& [group, size] : group_sizes) {
      auto it = fails.find({id, group.first, group.second});
      out.push_back({id, group.first, group.second, it == fails.end() ? 0 : it->second, size});
    }
  return out;
}

inline Tables build_tables(const std::vector<StatusOutcome>& outcomes, const std::vector<std::string>& test_ids,
                           const std::set<std::string>& expected) {
  return {technique_summary(outcomes, expected), failure_histogram(outcomes, expected),
          per_test_frequency(outcomes, test_ids)};
}

// ---------------------------------------------------------------------------
// Rendering. All three formats print numbers through the same helpers.

enum class Table { Summary, Histogram, PerTest };
enum class Format { Markdown, Csv, Json };

inline std::string percent_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string fraction_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

inline std::vector<std::vector<std::string>> table_cells(const Tables& t, Table which) {
  std::vector<std::vector<std::string>> rows;
  switch (which) {
    case Table::Summary:
      rows.push_back({"technique", "mode", "suspect", "statuses", "percent"});
      for (const auto& r : t.summary)
        rows.push_back({r.technique, r.mode, std::to_string(r.suspect), std::to_string(r.statuses), percent_text(r.percent())});
      break;
    case Table::Histogram:
      rows.push_back({"technique", "mode", "n_failed", "statuses"});
      for (const auto& r : t.histogram)
        rows.push_back({r.technique, r.mode, std::to_string(r.n_failed), std::to_string(r.statuses)});
      break;
    case Table::PerTest:
      rows.push_back({"test_id", "technique", "mode", "failures", "statuses", "fraction"});
      for (const auto& r : t.per_test)
        rows.push_back({r.test_id, r.technique, r.mode, std::to_string(r.failures), std::to_string(r.statuses),
                        fraction_text(r.fraction())});
      break;
  }
  return rows;
}

inline std::string_view table_title(Table which) noexcept {
  switch (which) {
    case Table::Summary: return "Statuses failing beyond the expected tests";
    case Table::Histogram: return "Number of failed tests among suspect statuses";
    case Table::PerTest: return "Failure frequency per test";
  }
  return "";
}

inline std::string render_markdown(const Tables& t, const std::vector<Table>& which) {
  std::string out;
  for (Table w : which) {
    const auto rows = table_cells(t, w);
    out += "## " + std::string(table_title(w)) + "\n\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out += '|';
      for (const auto& c : rows[i]) out += ' ' + c + " |";
      out += '\n';
      if (i == 0) {
        out += '|';
        for (std::size_t c = 0; c < rows[i].size(); ++c) out += "---|";
        out += '\n';
      }
    }
    out += '\n';
  }
  return out;
}

inline std::string render_csv(const Tables& t, const std::vector<Table>& which) {
  std::string out;
  bool first = true;
  for (Table w : which) {
    if (!first) out += '\n';
    first = false;
    for (const auto& row : table_cells(t, w)) {
      for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + row[c];
      out += '\n';
    }
  }
  return out;
}

inline nlohmann::json tables_json(const Tables& t, const std::vector<Table>& which) {
  nlohmann::json j = nlohmann::json::object();
  for (Table w : which) {
    nlohmann::json rows = nlohmann::json::array();
    switch (w) {
      case Table::Summary:
        for (const auto& r : t.summary)
          rows.push_back({{"technique", r.technique}, {"mode", r.mode}, {"statuses", r.statuses},
                          {"suspect", r.suspect}, {"percent", r.percent()}});
        j["summary"] = rows;
        break;
      case Table::Histogram:
        for (const auto& r : t.histogram)
          rows.push_back({{"technique", r.technique}, {"mode", r.mode}, {"n_failed", r.n_failed}, {"statuses", r.statuses}});
        j["histogram"] = rows;
        break;
      case Table::PerTest:
        for (const auto& r : t.per_test)
          rows.push_back({{"test_id", r.test_id}, {"technique", r.technique}, {"mode", r.mode},
                          {"failures", r.failures}, {"statuses", r.statuses}, {"fraction", r.fraction()}});
        j["pertest"] = rows;
        break;
    }
  }
  return j;
}

// ---------------------------------------------------------------------------
// Registry of Good statuses.

struct RegistryEntry {
  std::string technique;
  std::uint64_t index = 0;
  std::string sha256;

  friend bool operator==(const RegistryEntry&, const RegistryEntry&) = default;
};

struct QualityRegistry {
  std::string fingerprint;
  std::vector<std::string> expected_failures;  // sorted
  std::vector<std::string> modes;
  std::vector<RegistryEntry> entries;
};

// A status enters the registry when it is Good in every requested mode.
// `checksums` maps (technique, index) to the status file digest.
inline QualityRegistry build_registry(const std::vector<StatusOutcome>& outcomes, const std::set<std::string>& expected,
                                      const std::vector<std::string>& modes,
                                      const std::map<std::pair<std::string, std::uint64_t>, std::string>& checksums,
                                      std::string fingerprint) {
  QualityRegistry reg;
  reg.fingerprint = std::move(fingerprint);
  reg.expected_failures.assign(expected.begin(), expected.end());
  reg.modes = modes;
  std::map<std::pair<std::string, std::uint64_t>, std::set<std::string>> good_modes;
  std::set<std::pair<std::string, std::uint64_t>> seen;
  for (const auto& o : outcomes) {
    seen.insert({o.technique, o.index});
    if (classify_status(o.failed, expected) == Classification::Good) good_modes[{o.technique, o.index}].insert(o.mode);
  }
  for (const auto& key : seen) {
    const auto& good = good_modes[key];
    if (!std::all_of(modes.begin(), modes.end(), [&](const std::string& m) { return good.contains(m); })) continue;
    auto it = checksums.find(key);
    if (it == checksums.end())
      throw ConfigError("no checksum for status " + key.first + " " + std::to_string(key.second));
    reg.entries.push_back({key.first, key.second, it->second});
  }
  return reg;
}

inline std::string registry_text(const QualityRegistry& reg) {
  std::string out = "# mtstreams quality registry v1\n# fingerprint " + reg.fingerprint + "\n# expected-fail";
  for (const auto& id : reg.expected_failures) out += ' ' + id;
  out += "\n# modes";
  for (const auto& m : reg.modes) out += ' ' + m;
  out += '\n';
  for (const auto& e : reg.entries) out += e.technique + ' ' + std::to_string(e.index) + ' ' + e.sha256 + '\n';
  return out;
}

inline nlohmann::json registry_json(const QualityRegistry& reg) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : reg.entries) entries.push_back({{"technique", e.technique}, {"index", e.index}, {"sha256", e.sha256}});
  return {{"fingerprint", reg.fingerprint},
          {"expected_failures", reg.expected_failures},
          {"modes", reg.modes},
          {"entries", entries}};
}

// ---------------------------------------------------------------------------
// Loading a results file together with its optional meta sidecar.

struct LoadedResults {
  std::vector<ResultRecord> records;
  std::optional<nlohmann::json> meta;

  std::vector<std::string> test_ids() const {
    if (meta) {
      std::vector<std::string> ids;
      for (const auto& t : meta->at("battery").at("tests")) ids.push_back(t.at("id").get<std::string>());
      return ids;
    }
    std::set<std::string> ids;
    for (const auto& r : records) ids.insert(r.test_id);
    return {ids.begin(), ids.end()};
  }

  std::vector<std::string> modes() const {
    if (meta) return meta->at("modes").get<std::vector<std::string>>();
    std::set<std::string> m;
    for (const auto& r : records) m.insert(r.mode);
    return {m.begin(), m.end()};
  }

  std::string fingerprint() const { return meta ? meta->at("fingerprint").get<std::string>() : std::string("unknown"); }

  std::map<std::pair<std::string, std::uint64_t>, std::string> checksums() const {
    std::map<std::pair<std::string, std::uint64_t>, std::string> out;
    if (meta)
      for (const auto& s : meta->at("statuses"))
        out[{s.at("technique").get<std::string>(), s.at("index").get<std::uint64_t>()}] = s.at("sha256").get<std::string>();
    return out;
  }
};

inline LoadedResults load_results(const std::filesystem::path& path) {
  LoadedResults out;
  out.records = parse_results_jsonl(read_file_bytes(path));
  const auto meta_path = campaign::meta_path_for(path);
  std::error_code ec;
  if (std::filesystem::exists(meta_path, ec)) {
    try {
      out.meta = nlohmann::json::parse(read_file_bytes(meta_path));
      (void)out.test_ids();
      (void)out.modes();
      (void)out.checksums();
      (void)out.fingerprint();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(meta_path.string() + ": " + e.what());
    }
  }
  return out;
}

}  // namespace mts::report
