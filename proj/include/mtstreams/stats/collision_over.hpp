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
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "mtstreams/error.hpp"
#include "mtstreams/stats/pvalues.hpp"
#include "mtstreams/stats/stream_view.hpp"
#include "mtstreams/stats/test_result.hpp"

namespace mts::stats {

struct CollisionOverParams {
  std::uint64_t n = 1u << 14;  // overlapping tuples
  std::uint64_t d = 1024;      // divisions per axis
  unsigned t = 2;              // tuple dimension

  friend bool operator==(const CollisionOverParams&, const CollisionOverParams&) = default;
};

// d^t, or 0 when it does not fit in 64 bits.
inline std::uint64_t collision_cells(std::uint64_t d, unsigned t) noexcept {
  std::uint64_t k = 1;
  for (unsigned j = 0; j < t; ++j) {
    if (d != 0 && k > std::numeric_limits<std::uint64_t>::max() / d) return 0;
    k *= d;
  }
  return k;
}

inline void validate(const CollisionOverParams& p) {
  if (p.t < 1) throw ConfigError("CollisionOver: t must be >= 1");
  if (p.d < 2) throw ConfigError("CollisionOver: d must be >= 2");
  if (p.n < 1024) throw ConfigError("CollisionOver: n must be >= 2^10");
  const std::uint64_t k = collision_cells(p.d, p.t);
  if (k == 0) throw ConfigError("CollisionOver: d^t overflows 64 bits");
  if (k / 4 < p.n) throw ConfigError("CollisionOver: outside the sparse regime (need d^t >= 4n)");
}

// Cell indices of the n overlapping t-tuples formed from n + t - 1 uniforms:
// cell_i = sum_j floor(u_{i+j} * d) * d^j.
inline std::vector<std::uint64_t> overlapping_cells(std::span<const double> uniforms, std::uint64_t d, unsigned t) {
  if (t == 0 || uniforms.size() < t) throw ConfigError("overlapping_cells: not enough uniforms");
  const std::size_t n = uniforms.size() - t + 1;
  std::vector<std::uint64_t> cells(n);
  const double dd = static_cast<double>(d);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t cell = 0;
    std::uint64_t scale = 1;
    for (unsigned j = 0; j < t; ++j) {
      cell += static_cast<std::uint64_t>(uniforms[i + j] * dd) * scale;
      scale *= d;
    }
    cells[i] = cell;
  }
  return cells;
}

// Collisions = points - occupied cells.
inline std::uint64_t count_collisions(std::vector<std::uint64_t> cells) {
  std::sort(cells.begin(), cells.end());
  const auto distinct = static_cast<std::uint64_t>(std::unique(cells.begin(), cells.end()) - cells.begin());
  return cells.size() - distinct;
}

inline double collision_lambda(const CollisionOverParams& p) noexcept {
  const double n = static_cast<double>(p.n);
  return n * (n - 1.0) / (2.0 * static_cast<double>(collision_cells(p.d, p.t)));
}

// Sub-statistic `collisions` against Poisson(n(n-1)/(2k)), k = d^t.
template <DrawSource S>
TestResult collision_over_test(S& source, const CollisionOverParams& params, std::string id = "collisionover") {
  validate(params);
  const std::uint64_t start = source.draws();
  std::vector<double> u(params.n + params.t - 1);
  for (auto& x : u) x = source.next_uniform();
  const std::uint64_t c = count_collisions(overlapping_cells(u, params.d, params.t));
  TestResult r;
  r.id = std::move(id);
  r.sub.push_back({"collisions", static_cast<double>(c),
                   combine_discrete(poisson_two_sided_pvalue(c, collision_lambda(params)))});
  r.draws = source.draws() - start;
  return r;
}

}  // namespace mts::stats
