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

// Stream partitioning for MT19937: building sets of generator statuses by
// sequence splitting, random spacing, or indexed seeding, writing them to
// disk with a manifest, and comparing two written sets byte by byte.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtstreams/digest.hpp"
#include "mtstreams/error.hpp"
#include "mtstreams/mt19937.hpp"
#include "mtstreams/status_io.hpp"

namespace mts {

enum class Technique { SequenceSplitting, RandomSpacing, IndexedSequence };

constexpr std::string_view technique_name(Technique t) noexcept {
  switch (t) {
    case Technique::SequenceSplitting: return "split";
    case Technique::RandomSpacing: return "random";
    case Technique::IndexedSequence: return "indexed";
  }
  return "?";
}

inline std::optional<Technique> parse_technique(std::string_view name) noexcept {
  if (name == "split") return Technique::SequenceSplitting;
  if (name == "random") return Technique::RandomSpacing;
  if (name == "indexed") return Technique::IndexedSequence;
  return std::nullopt;
}

// Default spacing for sequence splitting at desk scale. Full-scale
// campaigns space statuses by 10^12 draws.
inline constexpr std::uint64_t kDefaultSplitSpacing = 1'000'000;

struct Provenance {
  Technique technique = Technique::IndexedSequence;
  std::uint32_t seed = 0;        // base seed (split), master seed (random), start (indexed)
  std::uint64_t spacing = 0;     // split only
  std::uint64_t count = 0;
  std::uint64_t discarded = 0;   // random only: all-zero candidates thrown away
};

struct IndexedStatus {
  std::uint64_t index = 0;
  MtState state;
};

struct StatusSet {
  Provenance provenance;
  std::vector<IndexedStatus> statuses;

  Technique technique() const noexcept { return provenance.technique; }
};

// Status i is init_genrand(base_seed) advanced by i * spacing draws.
// spacing == 0 is rejected unless `strict` is false.
inline StatusSet generate_sequence_splitting(std::uint32_t base_seed, std::uint64_t spacing,
                                             std::uint64_t count, bool strict = true) {
  if (count == 0) throw ConfigError("sequence splitting: count must be positive");
  if (strict && spacing == 0)
    throw ConfigError("sequence splitting: spacing 0 makes every status identical");
  if (spacing != 0 && count - 1 > std::numeric_limits<std::uint64_t>::max() / spacing)
    throw ConfigError("sequence splitting: spacing * count overflows the draw counter");
  StatusSet set{{Technique::SequenceSplitting, base_seed, spacing, count, 0}, {}};
  set.statuses.reserve(count);
  MtState s = init_genrand(base_seed);
  for (std::uint64_t i = 0; i < count; ++i) {
    if (i > 0) advance(s, spacing);
    set.statuses.push_back({i, s});
  }
  return set;
}

// One master stream fills 624 words per status, in order; mti is set to 624
// so the first draw from each status starts with a full twist.
inline StatusSet generate_random_spacing(std::uint32_t master_seed, std::uint64_t count) {
  if (count == 0) throw ConfigError("random spacing: count must be positive");
  StatusSet set{{Technique::RandomSpacing, master_seed, 0, count, 0}, {}};
  set.statuses.reserve(count);
  MtState master = init_genrand(master_seed);
  for (std::uint64_t i = 0; i < count;) {
    StateWords words;
    for (auto& w : words) w = next_u32(master);
    if (std::all_of(words.begin(), words.end(), [](std::uint32_t w) { return w == 0; })) {
      ++set.provenance.discarded;
      continue;
    }
    set.statuses.push_back({i, MtState(words, kStateWords)});
    ++i;
  }
  return set;
}

inline StatusSet generate_indexed(std::uint32_t start, std::uint64_t count) {
  if (count == 0) throw ConfigError("indexed: count must be positive");
  if (count - 1 > 0xFFFFFFFFull - start)
    throw ConfigError("indexed: start + count - 1 exceeds the 32-bit seed range");
  StatusSet set{{Technique::IndexedSequence, start, 0, count, 0}, {}};
  set.statuses.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i)
    set.statuses.push_back({i, init_genrand(static_cast<std::uint32_t>(start + i))});
  return set;
}

inline StatusSet regenerate(const Provenance& p) {
  switch (p.technique) {
    case Technique::SequenceSplitting: return generate_sequence_splitting(p.seed, p.spacing, p.count, false);
    case Technique::RandomSpacing: return generate_random_spacing(p.seed, p.count);
    case Technique::IndexedSequence: return generate_indexed(p.seed, p.count);
  }
  throw ConfigError("unknown technique");
}

// `<technique>_<index, 5 digits>.mts`
inline std::string status_filename(Technique t, std::uint64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_%05llu.mts", static_cast<unsigned long long>(index));
  return std::string(technique_name(t)) + buf;
}

// Inverse of status_filename; nullopt for names outside the convention.
inline std::optional<std::pair<Technique, std::uint64_t>> parse_status_filename(std::string_view name) {
  constexpr std::string_view ext = ".mts";
  if (name.size() <= ext.size() || name.substr(name.size() - ext.size()) != ext) return std::nullopt;
  name.remove_suffix(ext.size());
  const auto us = name.rfind('_');
  if (us == std::string_view::npos) return std::nullopt;
  auto t = parse_technique(name.substr(0, us));
  const auto digits = name.substr(us + 1);
  if (!t || digits.size() < 5) return std::nullopt;
  std::uint64_t idx = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') return std::nullopt;
    idx = idx * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return std::pair{*t, idx};
}

inline constexpr std::string_view kManifestName = "manifest.txt";

inline std::string provenance_line(const Provenance& p) {
  std::string line = "# technique=" + std::string(technique_name(p.technique)) +
                     " seed=" + std::to_string(p.seed);
  if (p.technique == Technique::SequenceSplitting) line += " spacing=" + std::to_string(p.spacing);
  line += " count=" + std::to_string(p.count);
  if (p.technique == Technique::RandomSpacing) line += " discarded=" + std::to_string(p.discarded);
  return line;
}

struct WrittenSet {
  std::filesystem::path manifest;
  std::string fingerprint;  // SHA-256 of the manifest bytes
};

// Writes one status file per entry plus `manifest.txt`
// (`filename sha256 technique index` per line under a provenance header).
inline WrittenSet write_status_set(const StatusSet& set, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
  std::string manifest = "# mtstreams status manifest v1\n" + provenance_line(set.provenance) + "\n";
  for (const auto& [index, state] : set.statuses) {
    const std::string name = status_filename(set.technique(), index);
    const std::string bytes = serialize_status(state);
    write_file_bytes(dir / name, bytes);
    manifest += name + ' ' + sha256_hex(bytes) + ' ' + std::string(technique_name(set.technique())) +
                ' ' + std::to_string(index) + '\n';
  }
  const auto manifest_path = dir / kManifestName;
  write_file_bytes(manifest_path, manifest);
  return {manifest_path, sha256_hex(manifest)};
}

struct VerifyReport {
  std::vector<std::string> identical;
  std::vector<std::string> differing;
  std::vector<std::string> only_in_a;
  std::vector<std::string> only_in_b;

  bool same() const noexcept { return differing.empty() && only_in_a.empty() && only_in_b.empty(); }
};

namespace detail {

inline std::map<std::string, std::filesystem::path> list_regular_files(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw IoError("not a directory: " + dir.string());
  std::map<std::string, std::filesystem::path> files;
  std::filesystem::recursive_directory_iterator it(dir, ec), end;
  if (ec) throw IoError("cannot list " + dir.string() + ": " + ec.message());
  for (; it != end; it.increment(ec)) {
    if (ec) throw IoError("cannot list " + dir.string() + ": " + ec.message());
    if (it->is_regular_file())
      files.emplace(std::filesystem::relative(it->path(), dir).generic_string(), it->path());
  }
  return files;
}

}  // namespace detail

// Recursive byte comparison of two directories, like `diff -r`.
inline VerifyReport verify_sets(const std::filesystem::path& dir_a, const std::filesystem::path& dir_b) {
  const auto a = detail::list_regular_files(dir_a);
  const auto b = detail::list_regular_files(dir_b);
  VerifyReport report;
  for (const auto& [rel, path] : a) {
    auto other = b.find(rel);
    if (other == b.end()) {
      report.only_in_a.push_back(rel);
    } else if (read_file_bytes(path) == read_file_bytes(other->second)) {
      report.identical.push_back(rel);
    } else {
      report.differing.push_back(rel);
    }
  }
  for (const auto& [rel, path] : b)
    if (!a.contains(rel)) report.only_in_b.push_back(rel);
  return report;
}

// Birthday-style probability that some pair among `streams` substreams of
// `length` draws, started at uniform random points of a cycle of length
// 2^period_log2, overlaps:  1 - exp(-k(k-1)L / 2^period_log2).
// Valid in the sparse regime kL << period; evaluated on a log scale.
inline double overlap_probability(int period_log2, std::uint64_t streams, std::uint64_t length) {
  if (period_log2 < 0) throw ConfigError("overlap_probability: period_log2 must be nonnegative");
  if (streams <= 1 || length == 0) return 0.0;
  const long double log_ratio = std::log(static_cast<long double>(streams)) +
                                std::log(static_cast<long double>(streams - 1)) +
                                std::log(static_cast<long double>(length)) -
                                static_cast<long double>(period_log2) * std::log(2.0L);
  const long double ratio = std::exp(log_ratio);
  const long double p = -std::expm1(-ratio);
  return static_cast<double>(std::clamp(p, 0.0L, 1.0L));
}

}  // namespace mts
