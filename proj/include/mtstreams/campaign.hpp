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

// Battery campaigns over sets of statuses.
//
// A campaign is the product (status x mode); every unit is a pure function
// of its inputs, workers pull units from a shared counter, and the merge
// sorts by (technique, index, mode), so the worker count never reaches the
// output bytes.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "mtstreams/digest.hpp"
#include "mtstreams/error.hpp"
#include "mtstreams/mt19937.hpp"
#include "mtstreams/partition.hpp"
#include "mtstreams/stats/battery.hpp"
#include "mtstreams/status_io.hpp"

#ifndef MTSTREAMS_VERSION
#define MTSTREAMS_VERSION "1.0.0"
#endif

namespace mts::campaign {

using stats::Battery;
using stats::Mode;
using stats::TestResult;
using stats::Verdict;

inline constexpr std::string_view kToolVersion = "mtstreams " MTSTREAMS_VERSION;

struct StatusInput {
  std::string technique;  // "split", "random", "indexed", or "external"
  std::uint64_t index = 0;
  MtState state;
  std::string file;       // file name only, never a full path
  std::string sha256;     // of the status file bytes
};

struct StatusReport {
  std::string technique;
  std::uint64_t index = 0;
  Mode mode = Mode::Int;
  std::vector<TestResult> results;      // battery order
  std::vector<std::string> failed_ids;  // battery order

  std::size_t n_failed() const noexcept { return failed_ids.size(); }
  friend bool operator==(const StatusReport&, const StatusReport&) = default;
};

// Every test starts from the beginning of the status on its own view.
inline StatusReport run_battery_on_status(const MtState& state, Mode mode, const Battery& battery, double threshold) {
  StatusReport report;
  report.mode = mode;
  for (const auto& def : battery.tests) {
    TestResult r = stats::run_test(def, state, mode, threshold);
    if (r.verdict == Verdict::Fail) report.failed_ids.push_back(def.id);
    report.results.push_back(std::move(r));
  }
  return report;
}

struct CampaignConfig {
  Battery battery = stats::mini_crush_v1();
  std::vector<Mode> modes{Mode::Int};
  double threshold = stats::kDefaultThreshold;
  unsigned jobs = 1;
};

// Battery hash, threshold, mode set and tool version, hashed together.
inline std::string campaign_fingerprint(const CampaignConfig& config) {
  char eps[40];
  std::snprintf(eps, sizeof eps, "%.17g", config.threshold);
  std::string text = std::string(kToolVersion) + "\nbattery " + stats::battery_hash(config.battery) + "\nthreshold " + eps + "\nmodes";
  for (Mode m : config.modes) text += " " + std::string(stats::mode_name(m));
  return sha256_hex(text + "\n");
}

struct CampaignReport {
  CampaignConfig config;
  std::string fingerprint;
  std::vector<StatusInput> statuses;   // sorted by (technique, index)
  std::vector<StatusReport> reports;   // sorted by (technique, index, mode)
};

inline void sort_inputs(std::vector<StatusInput>& inputs) {
  std::sort(inputs.begin(), inputs.end(), [](const StatusInput& a, const StatusInput& b) {
    return std::tie(a.technique, a.index) < std::tie(b.technique, b.index);
  });
  for (std::size_t i = 1; i < inputs.size(); ++i)
    if (inputs[i].technique == inputs[i - 1].technique && inputs[i].index == inputs[i - 1].index)
      throw ConfigError("duplicate status " + inputs[i].technique + " " + std::to_string(inputs[i].index));
}

inline CampaignReport run_campaign(const CampaignConfig& config, std::vector<StatusInput> inputs) {
  stats::validate(config.battery);
  if (config.modes.empty()) throw ConfigError("campaign needs at least one mode");
  if (config.jobs == 0) throw ConfigError("campaign needs at least one worker");
  CampaignReport out;
  out.config = config;
  std::sort(out.config.modes.begin(), out.config.modes.end());
  out.config.modes.erase(std::unique(out.config.modes.begin(), out.config.modes.end()), out.config.modes.end());
  out.fingerprint = campaign_fingerprint(out.config);
  sort_inputs(inputs);
  out.statuses = std::move(inputs);

  struct Unit {
    std::size_t status;
    Mode mode;
  };
  std::vector<Unit> units;
  for (std::size_t s = 0; s < out.statuses.size(); ++s)
    for (Mode m : out.config.modes) units.push_back({s, m});

  std::vector<StatusReport> reports(units.size());
  std::vector<std::exception_ptr> errors(units.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < units.size();) {
      const auto& in = out.statuses[units[i].status];
      try {
        reports[i] = run_battery_on_status(in.state, units[i].mode, out.config.battery, out.config.threshold);
        reports[i].technique = in.technique;
        reports[i].index = in.index;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const unsigned extra = std::min<std::size_t>(config.jobs, std::max<std::size_t>(units.size(), 1)) - 1;
    for (unsigned j = 0; j < extra; ++j) pool.emplace_back(work);
    work();
  }
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (!errors[i]) continue;
    const auto& in = out.statuses[units[i].status];
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw ConfigError(in.technique + " " + std::to_string(in.index) + " (" + std::string(stats::mode_name(units[i].mode)) +
                        "): " + e.what());
    }
  }
  // Units were laid out in (technique, index, mode) order already.
  out.reports = std::move(reports);
  return out;
}

// ---------------------------------------------------------------------------
// Inputs

// Reads one status file; technique and index come from the
// `<technique>_<index>.mts` name, or ("external", fallback_index).
inline StatusInput load_status_file(const std::filesystem::path& path, std::uint64_t fallback_index = 0) {
  const std::string bytes = read_file_bytes(path);
  StatusInput in{"external", fallback_index, init_genrand(0), path.filename().string(), sha256_hex(bytes)};
  try {
    in.state = parse_status(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (auto parsed = parse_status_filename(in.file)) {
    in.technique = std::string(technique_name(parsed->first));
    in.index = parsed->second;
  }
  return in;
}

// All `*.mts` files of `dir` in name order. With `skip_unreadable`, files
// that fail to load are reported through `skipped` instead of aborting.
inline std::vector<StatusInput> load_status_dir(const std::filesystem::path& dir, bool skip_unreadable = false,
                                                std::vector<std::string>* skipped = nullptr) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw IoError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (std::filesystem::directory_iterator it(dir, ec), end; it != end; it.increment(ec)) {
    if (ec) throw IoError("cannot list " + dir.string() + ": " + ec.message());
    if (it->path().extension() == ".mts") files.push_back(it->path());
  }
  if (ec) throw IoError("cannot list " + dir.string() + ": " + ec.message());
  std::sort(files.begin(), files.end());
  std::vector<StatusInput> inputs;
  std::uint64_t external = 0;
  for (const auto& f : files) {
    try {
      StatusInput in = load_status_file(f, external);
      if (in.technique == "external") ++external;
      inputs.push_back(std::move(in));
    } catch (const Error& e) {
      if (!skip_unreadable) throw;
      if (skipped) skipped->push_back(e.what());
    }
  }
  return inputs;
}

inline std::vector<StatusInput> inputs_from_set(const StatusSet& set) {
  std::vector<StatusInput> inputs;
  for (const auto& [index, state] : set.statuses)
    inputs.push_back({std::string(technique_name(set.technique())), index, state,
                      status_filename(set.technique(), index), sha256_hex(serialize_status(state))});
  return inputs;
}

// ---------------------------------------------------------------------------
// Output

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON Lines, one record per (status, mode, test), sorted by
// (technique, index, mode, test_id).
inline std::string results_jsonl(const CampaignReport& report) {
  struct Line {
    const StatusReport* status;
    const TestResult* result;
  };
  std::vector<Line> lines;
  for (const auto& s : report.reports)
    for (const auto& r : s.results) lines.push_back({&s, &r});
  std::stable_sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    return std::tie(a.status->technique, a.status->index, a.status->mode, a.result->id) <
           std::tie(b.status->technique, b.status->index, b.status->mode, b.result->id);
  });
  std::string out;
  for (const auto& [s, r] : lines) {
    out += "{\"technique\":" + nlohmann::json(s->technique).dump() + ",\"index\":" + std::to_string(s->index) +
           ",\"mode\":\"" + std::string(stats::mode_name(s->mode)) + "\",\"test_id\":" + nlohmann::json(r->id).dump() +
           ",\"p_values\":{";
    for (std::size_t k = 0; k < r->sub.size(); ++k) {
      if (k) out += ',';
      out += nlohmann::json(r->sub[k].name).dump() + ':' + format_double(r->sub[k].p_value);
    }
    out += "},\"verdict\":\"" + std::string(stats::verdict_name(r->verdict)) + "\",\"draws\":" + std::to_string(r->draws) + "}\n";
  }
  return out;
}

// Sidecar describing the campaign: fingerprint, battery, threshold, modes
// and the status files with their checksums. Worker count is left out.
inline nlohmann::json campaign_meta(const CampaignReport& report) {
  nlohmann::json statuses = nlohmann::json::array();
  for (const auto& s : report.statuses)
    statuses.push_back({{"technique", s.technique}, {"index", s.index}, {"file", s.file}, {"sha256", s.sha256}});
  nlohmann::json modes = nlohmann::json::array();
  for (Mode m : report.config.modes) modes.push_back(stats::mode_name(m));
  return {{"tool", kToolVersion},
          {"fingerprint", report.fingerprint},
          {"battery", stats::battery_to_json(report.config.battery)},
          {"battery_hash", stats::battery_hash(report.config.battery)},
          {"threshold", report.config.threshold},
          {"modes", modes},
          {"statuses", statuses}};
}

inline std::filesystem::path meta_path_for(const std::filesystem::path& results) {
  return std::filesystem::path(results.string() + ".meta.json");
}

// Writes `results` (JSONL) and `results.meta.json`.
inline void write_campaign(const CampaignReport& report, const std::filesystem::path& results) {
  if (results.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(results.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + results.parent_path().string() + ": " + ec.message());
  }
  write_file_bytes(results, results_jsonl(report));
  write_file_bytes(meta_path_for(results), campaign_meta(report).dump(2) + "\n");
}

}  // namespace mts::campaign
