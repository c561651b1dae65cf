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

// Published outcome of a full-scale TestU01 BigCrush campaign over 4096 MT
// statuses per technique (106 tests each, threshold 1e-10, statuses spaced
// by 10^12 draws for sequence splitting). Kept for side-by-side display
// only: the desk battery is a different, much smaller battery, so nothing
// compares desk results against these numbers.

#include <array>
#include <cstdint>
#include <string_view>

namespace mts::fullscale {

inline constexpr std::uint32_t kStatusesPerTechnique = 4096;
inline constexpr std::uint32_t kBigCrushTests = 106;

struct SuspectCount {
  std::string_view technique;
  std::string_view mode;
  std::uint32_t suspect;
  double percent;  // as printed
};

// Statuses failing more than the two LinearComp tests.
inline constexpr std::array<SuspectCount, 6> kSuspect{{
    {"random", "int", 1185, 28.93},
    {"random", "real", 1185, 28.93},
    {"split", "int", 1156, 28.22},
    {"split", "real", 1156, 28.22},
    {"indexed", "int", 1139, 27.8},
    {"indexed", "real", 1128, 27.53},
}};

struct HistogramCell {
  std::string_view technique;
  std::string_view mode;
  std::uint32_t n_failed;  // including the two LinearComp failures
  std::uint32_t statuses;
};

// Only the printed cells; a few n_failed = 6 cells were left blank.
inline constexpr std::array<HistogramCell, 20> kHistogram{{
    {"indexed", "int", 3, 964}, {"indexed", "int", 4, 156}, {"indexed", "int", 5, 18}, {"indexed", "int", 6, 1},
    {"indexed", "real", 3, 951}, {"indexed", "real", 4, 158}, {"indexed", "real", 5, 19},
    {"split", "int", 3, 971}, {"split", "int", 4, 164}, {"split", "int", 5, 21},
    {"split", "real", 3, 971}, {"split", "real", 4, 161}, {"split", "real", 5, 24},
    {"random", "int", 3, 990}, {"random", "int", 4, 172}, {"random", "int", 5, 21}, {"random", "int", 6, 2},
    {"random", "real", 3, 987}, {"random", "real", 4, 175}, {"random", "real", 5, 21},
}};

// Largest per-test failure percentages, real-number pathway.
struct PerTestPercent {
  std::string_view test;
  double indexed;
  double random;
  double split;
};

inline constexpr std::array<PerTestPercent, 12> kPerTestReal{{
    {"11:CollisionOver", 1.51, 1.42, 1.39},
    {"74:RandomWalk1", 1.44, 0.95, 0.9},
    {"12:CollisionOver", 1.27, 1.68, 1.66},
    {"24:ClosePairs", 1.17, 0.88, 1.0},
    {"76:RandomWalk1", 1.12, 1.05, 1.12},
    {"25:ClosePairs", 1.03, 1.07, 1.07},
    {"22:ClosePairs", 1.03, 1.05, 1.22},
    {"79:RandomWalk1", 1.0, 0.93, 1.0},
    {"75:RandomWalk1", 0.93, 1.03, 0.98},
    {"78:RandomWalk1", 0.93, 1.07, 1.15},
    {"23:ClosePairs", 0.9, 1.2, 0.78},
    {"77:RandomWalk1", 0.88, 1.17, 1.0},
}};

}  // namespace mts::fullscale
