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

#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string_view>

#include "mtstreams/mt19937.hpp"

namespace mts::stats {

enum class Mode { Int, Real };

constexpr std::string_view mode_name(Mode m) noexcept { return m == Mode::Int ? "int" : "real"; }

inline std::optional<Mode> parse_mode(std::string_view s) noexcept {
  if (s == "int") return Mode::Int;
  if (s == "real") return Mode::Real;
  return std::nullopt;
}

// What every test family consumes: 32-bit words (bits read MSB first) and
// uniforms on [0,1), with a running draw count.
template <typename S>
concept DrawSource = requires(S s, const S cs) {
  { s.next_bits32() } -> std::same_as<std::uint32_t>;
  { s.next_uniform() } -> std::same_as<double>;
  { cs.draws() } -> std::convertible_to<std::uint64_t>;
};

// A private cursor over a copy of an MT status.
//
// Int mode: words are raw outputs; uniforms are word * 2^-32.
// Real mode: each output is first converted to a double u in [0,1); the
// uniform is u itself and the word is floor(u * 2^32).
class StreamView {
 public:
  StreamView(const MtState& source, Mode mode) : state_(source), mode_(mode) {}

  std::uint32_t next_bits32() noexcept {
    ++draws_;
    if (mode_ == Mode::Int) return next_u32(state_);
    const double u = next_real(state_);
    return static_cast<std::uint32_t>(std::floor(u * 4294967296.0));
  }

  double next_uniform() noexcept {
    ++draws_;
    if (mode_ == Mode::Real) return next_real(state_);
    return to_unit_real(next_u32(state_));
  }

  std::uint64_t draws() const noexcept { return draws_; }
  Mode mode() const noexcept { return mode_; }

 private:
  MtState state_;
  Mode mode_;
  std::uint64_t draws_ = 0;
};

static_assert(DrawSource<StreamView>);

// Continuous MSB-first bit stream over a DrawSource.
template <DrawSource S>
class BitReader {
 public:
  explicit BitReader(S& source) : source_(source) {}

  unsigned next_bit() {
    if (left_ == 0) {
      word_ = source_.next_bits32();
      left_ = 32;
    }
    --left_;
    return (word_ >> left_) & 1u;
  }

 private:
  S& source_;
  std::uint32_t word_ = 0;
  int left_ = 0;
};

}  // namespace mts::stats
