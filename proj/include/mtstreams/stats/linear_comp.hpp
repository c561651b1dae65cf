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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "mtstreams/error.hpp"
#include "mtstreams/stats/berlekamp_massey.hpp"
#include "mtstreams/stats/pvalues.hpp"
#include "mtstreams/stats/stream_view.hpp"
#include "mtstreams/stats/test_result.hpp"

namespace mts::stats {

struct LinearCompParams {
  std::uint64_t n_bits = 50000;
  unsigned bit_offset = 0;  // 0 = most significant bit of each output

  friend bool operator==(const LinearCompParams&, const LinearCompParams&) = default;
};

inline void validate(const LinearCompParams& p) {
  if (p.n_bits < 1000) throw ConfigError("LinearComp: n_bits must be >= 1000");
  if (p.bit_offset > 31) throw ConfigError("LinearComp: bit_offset must lie in [0, 31]");
}

// log2 P(L_n = l) for a uniformly random binary sequence of length n:
//   P(L = 0) = 2^-n,  P(L = l) = 2^(min(2n - 2l, 2l - 1) - n)  for 1 <= l <= n.
inline long long linear_complexity_log2_pmf(std::uint64_t n, std::uint64_t l) {
  if (l > n) throw ConfigError("linear complexity exceeds sequence length");
  const auto nn = static_cast<long long>(n);
  const auto ll = static_cast<long long>(l);
  if (l == 0) return -nn;
  return std::min(2 * nn - 2 * ll, 2 * ll - 1) - nn;
}

inline TailPair linear_complexity_tails(std::uint64_t n, std::uint64_t observed) {
  long double left = 0.0L;
  long double right = 0.0L;
  for (std::uint64_t l = 0; l <= n; ++l) {
    const long double p = std::exp2(static_cast<long double>(linear_complexity_log2_pmf(n, l)));
    if (l <= observed) left += p;
    if (l >= observed) right += p;
  }
  return {static_cast<double>(std::min(left, 1.0L)), static_cast<double>(std::min(right, 1.0L))};
}

// Linear complexity of one bit position across consecutive outputs.
// Sub-statistic `saturation`: statistic = L, p-value from the exact null
// distribution of L (small means L is too low, near 1 means too high).
template <DrawSource S>
TestResult linear_comp_test(S& source, const LinearCompParams& params, std::string id = "linearcomp") {
  validate(params);
  const std::uint64_t start = source.draws();
  BitSequence bits(params.n_bits);
  const unsigned shift = 31 - params.bit_offset;
  for (std::uint64_t i = 0; i < params.n_bits; ++i) bits.set(i, (source.next_bits32() >> shift) & 1u);
  const std::size_t complexity = berlekamp_massey(bits);
  TestResult r;
  r.id = std::move(id);
  r.sub.push_back({"saturation", static_cast<double>(complexity),
                   combine_discrete(linear_complexity_tails(params.n_bits, complexity))});
  r.draws = source.draws() - start;
  return r;
}

}  // namespace mts::stats
