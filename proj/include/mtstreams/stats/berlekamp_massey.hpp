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

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "mtstreams/error.hpp"

namespace mts::stats {

// Packed bit sequence; bit i lives in word i / 64 at position i % 64.
class BitSequence {
 public:
  BitSequence() = default;
  explicit BitSequence(std::size_t n) : words_((n + 63) / 64, 0), size_(n) {}

  template <typename Range>
  static BitSequence from_bits(const Range& bits) {
    BitSequence s(std::size(bits));
    std::size_t i = 0;
    for (auto b : bits) s.set(i++, b != 0);
    return s;
  }

  std::size_t size() const noexcept { return size_; }
  bool get(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v) noexcept {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= m;
    } else {
      words_[i >> 6] &= ~m;
    }
  }
  void push_back(bool v) {
    if ((size_ & 63) == 0) words_.push_back(0);
    ++size_;
    set(size_ - 1, v);
  }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

namespace detail {

// 64 bits of `w` starting at bit `pos`; bits past the end read as zero.
inline std::uint64_t window64(const std::vector<std::uint64_t>& w, std::size_t pos) noexcept {
  const std::size_t q = pos >> 6;
  const unsigned r = pos & 63;
  const std::uint64_t lo = q < w.size() ? w[q] : 0;
  if (r == 0) return lo;
  const std::uint64_t hi = q + 1 < w.size() ? w[q + 1] : 0;
  return (lo >> r) | (hi << (64 - r));
}

// dst ^= src << shift, restricted to the first `src_bits` bits of src.
inline void xor_shifted(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src,
                        std::size_t src_bits, std::size_t shift) noexcept {
  const std::size_t src_words = (src_bits + 63) / 64;
  const std::size_t q = shift >> 6;
  const unsigned r = shift & 63;
  for (std::size_t i = 0; i < src_words && i + q < dst.size(); ++i) {
    const std::uint64_t v = src[i];
    dst[i + q] ^= v << r;
    if (r != 0 && i + q + 1 < dst.size()) dst[i + q + 1] ^= v >> (64 - r);
  }
}

}  // namespace detail

// Linear complexity of `bits`: length of the shortest LFSR that generates
// the sequence. Bit-packed Berlekamp-Massey, O(n * L / 64).
inline std::size_t berlekamp_massey(const BitSequence& bits) {
  const std::size_t n = bits.size();
  if (n == 0) throw ConfigError("berlekamp_massey: empty sequence");
  const std::size_t nwords = (n + 64) / 64 + 2;

  // Reversed copy: rev bit (n - 1 - k) = s_k, so the discrepancy window for
  // step N starts at bit n - 1 - N and runs upward through the polynomial.
  std::vector<std::uint64_t> rev(nwords, 0);
  for (std::size_t k = 0; k < n; ++k)
    if (bits.get(k)) rev[(n - 1 - k) >> 6] |= std::uint64_t{1} << ((n - 1 - k) & 63);

  std::vector<std::uint64_t> c(nwords, 0), b(nwords, 0), t;
  c[0] = b[0] = 1;
  std::size_t lc = 0;        // current complexity L
  std::size_t deg_c = 0;     // bound on deg C
  std::size_t deg_b = 0;     // bound on deg B
  std::size_t m = 1;         // steps since last length change

  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t base = n - 1 - step;
    std::uint64_t acc = 0;
    const std::size_t cw = deg_c / 64 + 1;
    for (std::size_t w = 0; w < cw; ++w) acc ^= c[w] & detail::window64(rev, base + 64 * w);
    if ((std::popcount(acc) & 1) == 0) {
      ++m;
      continue;
    }
    if (2 * lc <= step) {
      t.assign(c.begin(), c.end());
      const std::size_t old_deg_c = deg_c;
      detail::xor_shifted(c, b, deg_b + 1, m);
      deg_c = std::max(deg_c, deg_b + m);
      lc = step + 1 - lc;
      b.swap(t);
      deg_b = old_deg_c;
      m = 1;
    } else {
      detail::xor_shifted(c, b, deg_b + 1, m);
      deg_c = std::max(deg_c, deg_b + m);
      ++m;
    }
    if (deg_c > n) deg_c = n;
  }
  return lc;
}

}  // namespace mts::stats
