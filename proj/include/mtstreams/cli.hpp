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

// The `mtstreams` command line: gen, test, report, registry, verify.
//
// Exit codes: 0 success, 1 usage, 2 I/O or parse error, 3 strict-mode
// quality failure or verify difference.

#include <algorithm>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "mtstreams/campaign.hpp"
#include "mtstreams/error.hpp"
#include "mtstreams/partition.hpp"
#include "mtstreams/report.hpp"
#include "mtstreams/stats/battery.hpp"

namespace mts::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitQuality = 3;

namespace detail {

inline std::set<std::string> split_ids(const std::string& text) {
  std::set<std::string> ids;
  std::stringstream in(text);
  for (std::string id; std::getline(in, id, ',');)
    if (!id.empty()) ids.insert(id);
  return ids;
}

inline std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? std::string(1, sep) : "") + parts[i];
  return out;
}

inline std::string default_expected() { return join(stats::default_expected_failures(), ','); }

inline unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

struct GenArgs {
  std::string technique;
  std::uint64_t count = 0;
  std::optional<std::uint32_t> seed;
  std::optional<std::uint64_t> spacing;
  bool lenient = false;
  std::string out;
};

inline int run_gen(const GenArgs& a, std::ostream& out) {
  const auto t = parse_technique(a.technique);
  if (!t) throw ConfigError("unknown technique '" + a.technique + "'");
  if (a.spacing && *t != Technique::SequenceSplitting) throw ConfigError("--spacing applies to --technique split only");
  if (a.lenient && *t != Technique::SequenceSplitting) throw ConfigError("--lenient applies to --technique split only");
  const std::uint32_t seed = a.seed.value_or(*t == Technique::IndexedSequence ? 0u : 5489u);
  StatusSet set;
  switch (*t) {
    case Technique::SequenceSplitting:
      set = generate_sequence_splitting(seed, a.spacing.value_or(kDefaultSplitSpacing), a.count, !a.lenient);
      break;
    case Technique::RandomSpacing: set = generate_random_spacing(seed, a.count); break;
    case Technique::IndexedSequence: set = generate_indexed(seed, a.count); break;
  }
  const WrittenSet written = write_status_set(set, a.out);
  out << provenance_line(set.provenance).substr(2) << "\n";
  out << "fingerprint " << written.fingerprint << "\n";
  return kExitOk;
}

struct TestArgs {
  std::string dir;
  std::vector<std::string> status_files;
  std::string battery = std::string(stats::kMiniCrushName);
  std::string mode = "int";
  double threshold = stats::kDefaultThreshold;
  unsigned jobs = default_jobs();
  std::string out;
  bool strict = false;
  std::string expected = default_expected();
  bool skip_unreadable = false;
};

inline int run_test(const TestArgs& a, std::ostream& out, std::ostream& err) {
  campaign::CampaignConfig config;
  config.battery = stats::load_battery(a.battery);
  if (a.mode == "both") config.modes = {stats::Mode::Int, stats::Mode::Real};
  else if (auto m = stats::parse_mode(a.mode)) config.modes = {*m};
  else throw ConfigError("--mode must be int, real or both");
  if (!(a.threshold > 0.0 && a.threshold < 0.5)) throw ConfigError("--threshold must lie in (0, 0.5)");
  config.threshold = a.threshold;
  config.jobs = a.jobs;
  const auto expected = split_ids(a.expected);
  const auto ids = config.battery.ids();
  report::check_expected(expected, {ids.begin(), ids.end()});

  std::vector<campaign::StatusInput> inputs;
  std::vector<std::string> skipped;
  if (!a.dir.empty()) inputs = campaign::load_status_dir(a.dir, a.skip_unreadable, &skipped);
  std::uint64_t external = 0;
  for (const auto& f : a.status_files) {
    try {
      auto in = campaign::load_status_file(f, external);
      if (in.technique == "external") ++external;
      inputs.push_back(std::move(in));
    } catch (const Error& e) {
      if (!a.skip_unreadable) throw;
      skipped.push_back(e.what());
    }
  }
  for (const auto& s : skipped) err << "skipped: " << s << "\n";
  if (inputs.empty()) err << "warning: no status files found\n";

  const auto result = campaign::run_campaign(config, std::move(inputs));
  campaign::write_campaign(result, a.out);

  std::size_t suspect = 0;
  for (const auto& o : report::outcomes_from_campaign(result))
    if (report::classify_status(o.failed, expected) == report::Classification::Suspect) ++suspect;
  out << "statuses " << result.statuses.size() << " modes " << result.config.modes.size() << " suspect " << suspect
      << "\n";
  out << "fingerprint " << result.fingerprint << "\n";
  return a.strict && suspect > 0 ? kExitQuality : kExitOk;
}

// Expected ids are checked against the campaign battery when it is known.
inline std::set<std::string> checked_expected(const report::LoadedResults& loaded, const std::string& text) {
  const auto expected = split_ids(text);
  const auto ids = loaded.test_ids();
  if (loaded.meta || !ids.empty()) report::check_expected(expected, {ids.begin(), ids.end()});
  return expected;
}

struct ReportArgs {
  std::string results;
  std::vector<std::string> tables{"summary", "histogram", "pertest"};
  std::string format = "md";
  std::string expected = default_expected();
  std::string out;
};

inline int run_report(const ReportArgs& a, std::ostream& out) {
  std::vector<report::Table> which;
  for (const auto& name : a.tables) {
    if (name == "summary") which.push_back(report::Table::Summary);
    else if (name == "histogram") which.push_back(report::Table::Histogram);
    else if (name == "pertest") which.push_back(report::Table::PerTest);
    else throw ConfigError("unknown table '" + name + "'");
  }
  const auto loaded = report::load_results(a.results);
  const auto expected = checked_expected(loaded, a.expected);
  const auto tables = report::build_tables(report::outcomes_from_records(loaded.records), loaded.test_ids(), expected);
  std::string text;
  if (a.format == "md") {
    text = report::render_markdown(tables, which);
  } else if (a.format == "csv") {
    text = report::render_csv(tables, which);
  } else if (a.format == "json") {
    auto j = report::tables_json(tables, which);
    j["fingerprint"] = loaded.fingerprint();
    j["expected_fail"] = std::vector<std::string>(expected.begin(), expected.end());
    text = j.dump(2) + "\n";
  } else {
    throw ConfigError("--format must be md, csv or json");
  }
  if (a.out.empty()) out << text;
  else write_file_bytes(a.out, text);
  return kExitOk;
}

struct RegistryArgs {
  std::string results;
  std::string expected = default_expected();
  std::string out;
};

inline int run_registry(const RegistryArgs& a, std::ostream& out) {
  const auto loaded = report::load_results(a.results);
  const auto expected = checked_expected(loaded, a.expected);
  const auto reg = report::build_registry(report::outcomes_from_records(loaded.records), expected, loaded.modes(),
                                          loaded.checksums(), loaded.fingerprint());
  write_file_bytes(a.out, report::registry_text(reg));
  write_file_bytes(a.out + ".json", report::registry_json(reg).dump(2) + "\n");
  out << "registry " << reg.entries.size() << " statuses\n";
  return kExitOk;
}

inline int run_verify(const std::vector<std::string>& dirs, std::ostream& out) {
  const auto r = verify_sets(dirs.at(0), dirs.at(1));
  for (const auto& f : r.differing) out << "differ: " << f << "\n";
  for (const auto& f : r.only_in_a) out << "only in " << dirs[0] << ": " << f << "\n";
  for (const auto& f : r.only_in_b) out << "only in " << dirs[1] << ": " << f << "\n";
  if (!r.same()) return kExitQuality;
  out << "identical: " << r.identical.size() << " files\n";
  return kExitOk;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parallel MT19937 stream statuses: generation, testing, reports."};
  app.name("mtstreams");
  app.set_version_flag("--version", std::string(campaign::kToolVersion));
  app.require_subcommand(1);

  detail::GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a set of statuses and its manifest.");
  g->add_option("--technique", gen.technique, "split, random or indexed")
      ->required()
      ->check(CLI::IsMember({"split", "random", "indexed"}));
  g->add_option("--count", gen.count, "Number of statuses")->required()->check(CLI::PositiveNumber);
  g->add_option("--seed", gen.seed, "Indexed: first seed (default 0). Split/random: base seed (default 5489)");
  g->add_option("--spacing", gen.spacing, "Draws between consecutive split statuses (default 1000000)");
  g->add_flag("--lenient", gen.lenient, "Split: allow --spacing 0");
  g->add_option("--out", gen.out, "Output directory")->required();

  detail::TestArgs test;
  auto* t = app.add_subcommand("test", "Run a battery over statuses and write JSONL results.");
  auto* dir_opt = t->add_option("--dir", test.dir, "Directory of *.mts status files");
  auto* status_opt = t->add_option("--status", test.status_files, "Status file (repeatable)");
  dir_opt->excludes(status_opt);
  status_opt->excludes(dir_opt);
  t->add_option("--battery", test.battery, "Built-in battery name or JSON file")->capture_default_str();
  t->add_option("--mode", test.mode, "int, real or both")
      ->capture_default_str()
      ->check(CLI::IsMember({"int", "real", "both"}));
  t->add_option("--threshold", test.threshold, "Two-sided failure threshold")->default_str("1e-10");
  t->add_option("--jobs", test.jobs, "Worker threads (default: logical cores)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  t->add_option("--out", test.out, "Results file; a .meta.json sidecar is written next to it")->required();
  t->add_flag("--strict", test.strict, "Exit 3 when any status is Suspect");
  t->add_option("--expected-fail", test.expected, "Comma-separated test ids allowed to fail")->capture_default_str();
  t->add_flag("--skip-unreadable", test.skip_unreadable, "Warn and skip status files that fail to load");

  detail::ReportArgs rep;
  auto* r = app.add_subcommand("report", "Render summary, histogram and per-test tables from results.");
  r->add_option("--results", rep.results, "Results file written by `test`")->required();
  r->add_option("--tables", rep.tables, "summary, histogram, pertest (comma-separated or repeated)")
      ->capture_default_str()
      ->delimiter(',');
  r->add_option("--format", rep.format, "md, csv or json")->capture_default_str()->check(CLI::IsMember({"md", "csv", "json"}));
  r->add_option("--expected-fail", rep.expected, "Comma-separated test ids allowed to fail")->capture_default_str();
  r->add_option("--out", rep.out, "Write to this file instead of stdout");

  detail::RegistryArgs regargs;
  auto* reg = app.add_subcommand("registry", "Write the registry of statuses Good in every mode.");
  reg->add_option("--results", regargs.results, "Results file written by `test`")->required();
  reg->add_option("--expected-fail", regargs.expected, "Comma-separated test ids allowed to fail")->capture_default_str();
  reg->add_option("--out", regargs.out, "Registry text file; JSON goes to <out>.json")->required();

  std::vector<std::string> dirs;
  auto* v = app.add_subcommand("verify", "Byte comparison of two status directories.");
  v->add_option("--dir", dirs, "Directory (give twice)")->required()->expected(2)->allow_extra_args(false);

  app.footer("Defaults: battery mini-crush-v1, threshold 1e-10, expected failures " + detail::default_expected() + ".");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*g) return detail::run_gen(gen, out);
    if (*t) {
      if (test.dir.empty() && test.status_files.empty()) throw ConfigError("test needs --dir or --status");
      return detail::run_test(test, out, err);
    }
    if (*r) return detail::run_report(rep, out);
    if (*reg) return detail::run_registry(regargs, out);
    if (*v) {
      if (dirs.size() != 2) throw ConfigError("verify needs exactly two --dir options");
      return detail::run_verify(dirs, out);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace mts::cli
