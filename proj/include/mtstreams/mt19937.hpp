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

// Bit-exact 32-bit Mersenne Twister (MT19937) with the 2002 `init_genrand`
// seeding. The generator status is a plain value type: 624 words plus an
// index, copyable across threads, comparable, and serializable by
// status_io.hpp.

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>

#include "mtstreams/error.hpp"

namespace mts {

inline constexpr std::size_t kStateWords = 624;
inline constexpr std::size_t kShiftWords = 397;
inline constexpr std::uint32_t kMatrixA = 0x9908B0DFu;
inline constexpr std::uint32_t kUpperMask = 0x80000000u;
inline constexpr std::uint32_t kLowerMask = 0x7FFFFFFFu;
inline constexpr std::uint32_t kInitMultiplier = 1812433253u;
// Bytes of word payload in one status: 624 * 4.
inline constexpr std::size_t kStatePayloadBytes = kStateWords * sizeof(std::uint32_t);

using StateWords = std::array<std::uint32_t, kStateWords>;

class MtState {
 public:
  // Throws ConfigError when `words` is all zero (period-1 fixed point) or
  // `index` exceeds 624.
  MtState(const StateWords& words, std::uint32_t index) : mt_(words), mti_(index) {
    if (index > kStateWords) throw ConfigError("MtState: index must lie in [0, 624]");
    if (std::all_of(words.begin(), words.end(), [](std::uint32_t w) { return w == 0; }))
      throw ConfigError("MtState: the all-zero state is rejected");
  }

  const StateWords& words() const noexcept { return mt_; }
  std::uint32_t index() const noexcept { return mti_; }

  friend bool operator==(const MtState&, const MtState&) = default;

 private:
  friend MtState init_genrand(std::uint32_t seed) noexcept;
  friend void twist(MtState& state) noexcept;
  friend std::uint32_t next_u32(MtState& state) noexcept;
  friend void advance(MtState& state, std::uint64_t draws) noexcept;

  MtState() = default;

  StateWords mt_{};
  std::uint32_t mti_ = 0;
};

// Canonical 2002 initialization. Any seed is valid: mt[1] = seed-derived + 1
// keeps the state non-zero even for seed 0.
inline MtState init_genrand(std::uint32_t seed) noexcept {
  MtState s;
  s.mt_[0] = seed;
  for (std::uint32_t i = 1; i < kStateWords; ++i) {
    const std::uint32_t prev = s.mt_[i - 1];
    s.mt_[i] = kInitMultiplier * (prev ^ (prev >> 30)) + i;
  }
  s.mti_ = kStateWords;
  return s;
}

namespace detail {

constexpr std::uint32_t mix(std::uint32_t upper, std::uint32_t lower, std::uint32_t shifted) noexcept {
  const std::uint32_t y = (upper & kUpperMask) | (lower & kLowerMask);
  return shifted ^ (y >> 1) ^ ((y & 1u) ? kMatrixA : 0u);
}

}  // namespace detail

// Regenerates all 624 words; leaves the index at 0.
inline void twist(MtState& state) noexcept {
  auto& mt = state.mt_;
  std::size_t k = 0;
  for (; k < kStateWords - kShiftWords; ++k)
    mt[k] = detail::mix(mt[k], mt[k + 1], mt[k + kShiftWords]);
  for (; k < kStateWords - 1; ++k)
    mt[k] = detail::mix(mt[k], mt[k + 1], mt[k + kShiftWords - kStateWords]);
  mt[kStateWords - 1] = detail::mix(mt[kStateWords - 1], mt[0], mt[kShiftWords - 1]);
  state.mti_ = 0;
}

inline MtState twisted(MtState state) noexcept {
  twist(state);
  return state;
}

constexpr std::uint32_t temper(std::uint32_t y) noexcept {
  y ^= y >> 11;
  y ^= (y << 7) & 0x9D2C5680u;
  y ^= (y << 15) & 0xEFC60000u;
  y ^= y >> 18;
  return y;
}

// Inverse of temper().
constexpr std::uint32_t untemper(std::uint32_t y) noexcept {
  y ^= y >> 18;
  y ^= (y << 15) & 0xEFC60000u;
  // x ^= (x << 7) & mask needs repeated application to recover all bits.
  std::uint32_t x = y;
  for (int i = 0; i < 5; ++i) x = y ^ ((x << 7) & 0x9D2C5680u);
  y = x;
  x = y;
  for (int i = 0; i < 3; ++i) x = y ^ (x >> 11);
  return x;
}

inline std::uint32_t next_u32(MtState& state) noexcept {
  if (state.mti_ >= kStateWords) twist(state);
  return temper(state.mt_[state.mti_++]);
}

inline constexpr double kTwoPowMinus32 = 1.0 / 4294967296.0;

// Exact conversion onto [0, 1): value * 2^-32.
constexpr double to_unit_real(std::uint32_t value) noexcept {
  return static_cast<double>(value) * kTwoPowMinus32;
}

inline double next_real(MtState& state) noexcept { return to_unit_real(next_u32(state)); }

// Same observable effect as `draws` calls to next_u32, skipping whole
// twist blocks without tempering.
inline void advance(MtState& state, std::uint64_t draws) noexcept {
  const std::uint64_t left_in_block = kStateWords - state.mti_;
  if (draws <= left_in_block) {
    state.mti_ += static_cast<std::uint32_t>(draws);
    return;
  }
  draws -= left_in_block;
  state.mti_ = kStateWords;
  while (draws > kStateWords) {
    twist(state);
    draws -= kStateWords;
  }
  twist(state);
  state.mti_ = static_cast<std::uint32_t>(draws);
}

inline MtState advanced(MtState state, std::uint64_t draws) noexcept {
  advance(state, draws);
  return state;
}

// std::uniform_random_bit_generator adaptor over an MtState.
class Mt19937 {
 public:
  using result_type = std::uint32_t;

  explicit Mt19937(std::uint32_t seed = 5489u) : state_(init_genrand(seed)) {}
  explicit Mt19937(const MtState& state) : state_(state) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return 0xFFFFFFFFu; }
  result_type operator()() noexcept { return next_u32(state_); }
  void discard(std::uint64_t n) noexcept { advance(state_, n); }

  const MtState& state() const noexcept { return state_; }

 private:
  MtState state_;
};

}  // namespace mts
