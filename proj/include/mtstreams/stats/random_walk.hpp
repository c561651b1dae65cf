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

// Random walk statistics over bit blocks. Each block of l bits is read as a
// +/-1 walk S_0 = 0, ..., S_l; per walk we record
//   H = number of +1 steps,
//   M = max_{0<=j<=l} S_j,
//   R = #{1 <= j <= l : S_j = 0},
// and compare each empirical distribution over N walks with its exact law.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "mtstreams/error.hpp"
#include "mtstreams/stats/pvalues.hpp"
#include "mtstreams/stats/stream_view.hpp"
#include "mtstreams/stats/test_result.hpp"

namespace mts::stats {

struct RandomWalkParams {
  std::uint64_t walks = 10000;  // N
  unsigned steps = 128;         // l

  friend bool operator==(const RandomWalkParams&, const RandomWalkParams&) = default;
};

inline void validate(const RandomWalkParams& p) {
  if (p.walks < 1000) throw ConfigError("RandomWalk1: walks must be >= 1000");
  if (p.steps % 2 != 0) throw ConfigError("RandomWalk1: steps must be even");
  if (p.steps < 8 || p.steps > 4096) throw ConfigError("RandomWalk1: steps must lie in [8, 4096]");
}

struct WalkDistributions {
  std::vector<double> h;  // size l + 1
  std::vector<double> m;  // size l + 1
  std::vector<double> r;  // size l / 2 + 1
};

// Exact null laws of H, M and R for a fair walk of `steps` steps, by
// dynamic programming over walk states. Probabilities are dyadic, so for
// small `steps` the results are exact in binary64.
inline WalkDistributions walk_distributions_dp(unsigned steps) {
  const std::size_t l = steps;
  WalkDistributions out;

  // H: number of up-steps.
  out.h.assign(l + 1, 0.0);
  out.h[0] = 1.0;
  for (std::size_t j = 1; j <= l; ++j) {
    for (std::size_t k = j; k >= 1; --k) out.h[k] = 0.5 * (out.h[k] + out.h[k - 1]);
    out.h[0] *= 0.5;
  }

  // M: state (running max M, gap D = M - S). An up-step at D = 0 raises M.
  {
    std::vector<std::vector<double>> col(l + 1);
    for (std::size_t m = 0; m <= l; ++m) col[m].assign(l - m + 1, 0.0);
    col[0][0] = 1.0;
    for (std::size_t j = 1; j <= l; ++j) {
      for (std::size_t m = std::min(j, l) + 1; m-- > 0;) {
        auto& c = col[m];
        const double carry = m >= 1 ? col[m - 1][0] : 0.0;
        const std::size_t len = std::min(c.size(), j - m + 1);
        double prev_old = 0.0;
        for (std::size_t d = 0; d < len; ++d) {
          const double cur_old = c[d];
          const double next_old = d + 1 < c.size() ? c[d + 1] : 0.0;
          c[d] = 0.5 * next_old + 0.5 * prev_old + (d == 0 ? 0.5 * carry : 0.0);
          prev_old = cur_old;
        }
      }
    }
    out.m.assign(l + 1, 0.0);
    for (std::size_t m = 0; m <= l; ++m)
      for (double v : col[m]) out.m[m] += v;
  }

  // R: state (returns R, |S|). Leaving 0 always moves to |S| = 1.
  {
    const std::size_t rmax = l / 2;
    std::vector<std::vector<double>> col(rmax + 1, std::vector<double>(l + 1, 0.0));
    col[0][0] = 1.0;
    for (std::size_t j = 1; j <= l; ++j) {
      for (std::size_t r = std::min(j / 2, rmax) + 1; r-- > 0;) {
        auto& c = col[r];
        const double arrive = r >= 1 ? 0.5 * col[r - 1][1] : 0.0;
        const std::size_t len = std::min(l + 1, j + 1);
        double prev_old = 0.0;
        for (std::size_t a = 0; a < len; ++a) {
          const double cur_old = c[a];
          const double next_old = a + 1 <= l ? c[a + 1] : 0.0;
          double v;
          if (a == 0) {
            v = arrive;
          } else if (a == 1) {
            v = prev_old + 0.5 * next_old;
          } else {
            v = 0.5 * prev_old + 0.5 * next_old;
          }
          c[a] = v;
          prev_old = cur_old;
        }
      }
    }
    out.r.assign(rmax + 1, 0.0);
    for (std::size_t r = 0; r <= rmax; ++r)
      for (double v : col[r]) out.r[r] += v;
  }
  return out;
}

// Memoized walk_distributions_dp; safe to call from several threads.
inline std::shared_ptr<const WalkDistributions> walk_distributions(unsigned steps) {
  static std::mutex mu;
  static std::map<unsigned, std::shared_ptr<const WalkDistributions>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[steps];
  if (!slot) slot = std::make_shared<const WalkDistributions>(walk_distributions_dp(steps));
  return slot;
}

struct WalkStats {
  unsigned h = 0;
  unsigned m = 0;
  unsigned r = 0;
};

// Statistics of one walk given as l step bits (1 = up).
template <typename NextBit>
WalkStats walk_statistics(unsigned steps, NextBit&& next_bit) {
  WalkStats w;
  long s = 0;
  long max_s = 0;
  for (unsigned j = 0; j < steps; ++j) {
    if (next_bit()) {
      ++w.h;
      ++s;
    } else {
      --s;
    }
    max_s = std::max(max_s, s);
    if (s == 0) ++w.r;
  }
  w.m = static_cast<unsigned>(max_s);
  return w;
}

// Sub-statistics `H`, `M`, `R`: chi-square statistic and right-tail p-value
// of each empirical distribution against its exact law.
template <DrawSource S>
TestResult random_walk_test(S& source, const RandomWalkParams& params, std::string id = "randomwalk") {
  validate(params);
  const auto law = walk_distributions(params.steps);
  const std::uint64_t start = source.draws();
  const unsigned l = params.steps;
  std::vector<std::uint64_t> ch(l + 1, 0), cm(l + 1, 0), cr(l / 2 + 1, 0);
  BitReader<S> bits(source);
  for (std::uint64_t i = 0; i < params.walks; ++i) {
    const WalkStats w = walk_statistics(l, [&] { return bits.next_bit() != 0; });
    ++ch[w.h];
    ++cm[w.m];
    ++cr[w.r];
  }
  TestResult r;
  r.id = std::move(id);
  for (auto [name, counts, probs] : {std::tuple{"H", &ch, &law->h}, std::tuple{"M", &cm, &law->m},
                                     std::tuple{"R", &cr, &law->r}}) {
    const ChiSquare c = merged_chi_square(*counts, *probs);
    r.sub.push_back({name, c.statistic, c.p_value});
  }
  r.draws = source.draws() - start;
  return r;
}

}  // namespace mts::stats
