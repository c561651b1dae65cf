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

// Test definitions, batteries, and their JSON form:
//
//   {"name": "...", "threshold": 1e-10,
//    "tests": [{"id": "...", "family": "LinearComp", "params": {...}}, ...]}
//
// Families and their params (missing keys take the defaults below):
//   LinearComp        n_bits, bit_offset
//   CollisionOver     n, d, t
//   ClosePairs        n, t
//   RandomWalk1       walks, steps
//   SerialUniformity  n, cells

#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "mtstreams/digest.hpp"
#include "mtstreams/error.hpp"
#include "mtstreams/mt19937.hpp"
#include "mtstreams/stats/close_pairs.hpp"
#include "mtstreams/stats/collision_over.hpp"
#include "mtstreams/stats/linear_comp.hpp"
#include "mtstreams/stats/pvalues.hpp"
#include "mtstreams/stats/random_walk.hpp"
#include "mtstreams/stats/serial_uniformity.hpp"
#include "mtstreams/stats/stream_view.hpp"
#include "mtstreams/stats/test_result.hpp"

namespace mts::stats {

enum class Family { LinearComp, CollisionOver, ClosePairs, RandomWalk1, SerialUniformity };

using TestParams = std::variant<LinearCompParams, CollisionOverParams, ClosePairsParams, RandomWalkParams, SerialParams>;

constexpr std::string_view family_name(Family f) noexcept {
  switch (f) {
    case Family::LinearComp: return "LinearComp";
    case Family::CollisionOver: return "CollisionOver";
    case Family::ClosePairs: return "ClosePairs";
    case Family::RandomWalk1: return "RandomWalk1";
    case Family::SerialUniformity: return "SerialUniformity";
  }
  return "?";
}

enum class Consumes { Bits, Uniforms };

struct TestDefinition {
  std::string id;
  TestParams params;

  Family family() const noexcept { return static_cast<Family>(params.index()); }
  Consumes consumes() const noexcept {
    switch (family()) {
      case Family::LinearComp:
      case Family::RandomWalk1: return Consumes::Bits;
      default: return Consumes::Uniforms;
    }
  }

  friend bool operator==(const TestDefinition&, const TestDefinition&) = default;
};

// Draws a definition consumes from its view, from the family's parameters.
inline std::uint64_t expected_draws(const TestDefinition& def) {
  return std::visit(
      [](const auto& p) -> std::uint64_t {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, LinearCompParams>) return p.n_bits;
        else if constexpr (std::is_same_v<P, CollisionOverParams>) return p.n + p.t - 1;
        else if constexpr (std::is_same_v<P, ClosePairsParams>) return p.n * p.t;
        else if constexpr (std::is_same_v<P, RandomWalkParams>) return (p.walks * p.steps + 31) / 32;
        else return p.n;
      },
      def.params);
}

inline void validate(const TestDefinition& def) {
  if (def.id.empty()) throw ConfigError("test definition with empty id");
  try {
    std::visit([](const auto& p) { validate(p); }, def.params);
  } catch (const ConfigError& e) {
    throw ConfigError(def.id + ": " + e.what());
  }
}

struct Battery {
  std::string name;
  double threshold = kDefaultThreshold;
  std::vector<TestDefinition> tests;

  std::vector<std::string> ids() const {
    std::vector<std::string> out;
    for (const auto& t : tests) out.push_back(t.id);
    return out;
  }
};

inline void validate(const Battery& b) {
  if (!(b.threshold > 0.0 && b.threshold < 0.5)) throw ConfigError("battery threshold must lie in (0, 0.5)");
  std::set<std::string> seen;
  for (const auto& t : b.tests) {
    validate(t);
    if (!seen.insert(t.id).second) throw ConfigError("duplicate test id in battery: " + t.id);
  }
}

inline constexpr std::string_view kMiniCrushName = "mini-crush-v1";

// Built-in desk-scale battery. Order is part of its identity.
inline Battery mini_crush_v1() {
  Battery b;
  b.name = std::string(kMiniCrushName);
  b.threshold = kDefaultThreshold;
  b.tests = {
      {"linearcomp.r0", LinearCompParams{50000, 0}},
      {"linearcomp.r29", LinearCompParams{50000, 29}},
      {"collisionover.a", CollisionOverParams{1u << 14, 2048, 2}},
      {"collisionover.b", CollisionOverParams{1u << 13, 32, 4}},
      {"closepairs.a", ClosePairsParams{1u << 13, 2}},
      {"closepairs.b", ClosePairsParams{1u << 12, 3}},
      {"randomwalk.a", RandomWalkParams{10000, 128}},
      {"randomwalk.b", RandomWalkParams{10000, 1024}},
      {"serial.a", SerialParams{1'000'000, 1024}},
  };
  return b;
}

// The two LinearComp entries every MT status is expected to fail.
inline std::vector<std::string> default_expected_failures() { return {"linearcomp.r0", "linearcomp.r29"}; }

namespace detail {

using nlohmann::json;

template <typename T>
T take(const json& params, std::set<std::string>& used, const char* key, T fallback) {
  used.insert(key);
  if (!params.contains(key)) return fallback;
  const auto& v = params.at(key);
  if (!v.is_number_unsigned()) throw ConfigError(std::string("param '") + key + "' must be a nonnegative integer");
  return v.get<T>();
}

inline TestParams params_from_json(std::string_view family, const json& p) {
  if (!p.is_object()) throw ConfigError("params must be an object");
  std::set<std::string> used;
  TestParams out;
  if (family == "LinearComp") {
    LinearCompParams d;
    out = LinearCompParams{take(p, used, "n_bits", d.n_bits), take(p, used, "bit_offset", d.bit_offset)};
  } else if (family == "CollisionOver") {
    CollisionOverParams d;
    out = CollisionOverParams{take(p, used, "n", d.n), take(p, used, "d", d.d), take(p, used, "t", d.t)};
  } else if (family == "ClosePairs") {
    ClosePairsParams d;
    out = ClosePairsParams{take(p, used, "n", d.n), take(p, used, "t", d.t)};
  } else if (family == "RandomWalk1") {
    RandomWalkParams d;
    out = RandomWalkParams{take(p, used, "walks", d.walks), take(p, used, "steps", d.steps)};
  } else if (family == "SerialUniformity") {
    SerialParams d;
    out = SerialParams{take(p, used, "n", d.n), take(p, used, "cells", d.cells)};
  } else {
    throw ConfigError("unknown test family '" + std::string(family) + "'");
  }
  for (const auto& [key, value] : p.items())
    if (!used.contains(key)) throw ConfigError("unknown param '" + key + "' for family " + std::string(family));
  return out;
}

inline json params_to_json(const TestParams& params) {
  return std::visit(
      [](const auto& p) -> json {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, LinearCompParams>) return {{"n_bits", p.n_bits}, {"bit_offset", p.bit_offset}};
        else if constexpr (std::is_same_v<P, CollisionOverParams>) return {{"n", p.n}, {"d", p.d}, {"t", p.t}};
        else if constexpr (std::is_same_v<P, ClosePairsParams>) return {{"n", p.n}, {"t", p.t}};
        else if constexpr (std::is_same_v<P, RandomWalkParams>) return {{"walks", p.walks}, {"steps", p.steps}};
        else return {{"n", p.n}, {"cells", p.cells}};
      },
      params);
}

}  // namespace detail

inline nlohmann::json battery_to_json(const Battery& b) {
  nlohmann::json tests = nlohmann::json::array();
  for (const auto& t : b.tests)
    tests.push_back({{"id", t.id}, {"family", family_name(t.family())}, {"params", detail::params_to_json(t.params)}});
  return {{"name", b.name}, {"threshold", b.threshold}, {"tests", tests}};
}

inline Battery battery_from_json(const nlohmann::json& j) {
  try {
    Battery b;
    b.name = j.at("name").get<std::string>();
    b.threshold = j.contains("threshold") ? j.at("threshold").get<double>() : kDefaultThreshold;
    for (const auto& t : j.at("tests")) {
      const auto family = t.at("family").get<std::string>();
      b.tests.push_back({t.at("id").get<std::string>(),
                         detail::params_from_json(family, t.contains("params") ? t.at("params") : nlohmann::json::object())});
    }
    validate(b);
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("battery definition: ") + e.what());
  }
}

// Built-in name or path to a JSON battery file.
inline Battery load_battery(const std::string& name_or_path) {
  if (name_or_path == kMiniCrushName) return mini_crush_v1();
  const std::string text = read_file_bytes(name_or_path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(name_or_path + ": " + e.what());
  }
  return battery_from_json(j);
}

inline std::string battery_hash(const Battery& b) { return sha256_hex(battery_to_json(b).dump()); }

// Runs one definition on an arbitrary draw source and applies the verdict.
template <DrawSource S>
TestResult run_test(const TestDefinition& def, S& source, double threshold) {
  validate(def);
  TestResult r = std::visit(
      [&](const auto& p) -> TestResult {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, LinearCompParams>) return linear_comp_test(source, p, def.id);
        else if constexpr (std::is_same_v<P, CollisionOverParams>) return collision_over_test(source, p, def.id);
        else if constexpr (std::is_same_v<P, ClosePairsParams>) return close_pairs_test(source, p, def.id);
        else if constexpr (std::is_same_v<P, RandomWalkParams>) return random_walk_test(source, p, def.id);
        else return serial_uniformity_test(source, p, def.id);
      },
      def.params);
  r.decide(threshold);
  return r;
}

// Runs one definition on a fresh view of `state`.
inline TestResult run_test(const TestDefinition& def, const MtState& state, Mode mode, double threshold) {
  StreamView view(state, mode);
  return run_test(def, view, threshold);
}

}  // namespace mts::stats
