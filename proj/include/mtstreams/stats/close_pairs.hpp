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
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "mtstreams/error.hpp"
#include "mtstreams/stats/stream_view.hpp"
#include "mtstreams/stats/test_result.hpp"

namespace mts::stats {

struct ClosePairsParams {
  std::uint64_t n = 1u << 13;  // points
  unsigned t = 2;              // dimension

  friend bool operator==(const ClosePairsParams&, const ClosePairsParams&) = default;
};

inline void validate(const ClosePairsParams& p) {
  if (p.n < 256) throw ConfigError("ClosePairs: n must be >= 2^8");
  if (p.t < 2 || p.t > 8) throw ConfigError("ClosePairs: t must lie in [2, 8]");
}

// Squared distance on the unit torus: per-axis displacement is at most 1/2.
inline double toroidal_distance2(const double* a, const double* b, unsigned t) noexcept {
  double s = 0.0;
  for (unsigned j = 0; j < t; ++j) {
    double dx = std::fabs(a[j] - b[j]);
    dx = std::min(dx, 1.0 - dx);
    s += dx * dx;
  }
  return s;
}

// O(n^2) reference; `points` holds n * t coordinates, row major.
inline double min_toroidal_distance_brute(std::span<const double> points, unsigned t) {
  const std::size_t n = points.size() / t;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      best = std::min(best, toroidal_distance2(&points[i * t], &points[j * t], t));
  return std::sqrt(best);
}

// Minimal pairwise toroidal distance using a g^t cell grid. Any pair closer
// than 1/g sits in neighbouring cells, so the neighbour scan is exact once
// its minimum is below 1/g; otherwise the brute-force scan decides.
inline double min_toroidal_distance(std::span<const double> points, unsigned t) {
  const std::size_t n = points.size() / t;
  if (n < 2) return std::numeric_limits<double>::infinity();
  auto g = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), 1.0 / t)));
  std::size_t cells = 1;
  for (unsigned j = 0; j < t; ++j) cells *= std::max<std::size_t>(g, 1);
  if (g < 3 || cells > 4 * n) return min_toroidal_distance_brute(points, t);

  std::vector<std::size_t> cell_of(n);
  std::vector<std::size_t> start(cells + 1, 0);
  const double gd = static_cast<double>(g);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = 0;
    for (unsigned j = t; j-- > 0;) c = c * g + std::min(static_cast<std::size_t>(points[i * t + j] * gd), g - 1);
    cell_of[i] = c;
    ++start[c + 1];
  }
  for (std::size_t c = 0; c < cells; ++c) start[c + 1] += start[c];
  std::vector<std::size_t> order(n);
  {
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t i = 0; i < n; ++i) order[fill[cell_of[i]]++] = i;
  }

  std::size_t neighbours = 1;
  for (unsigned j = 0; j < t; ++j) neighbours *= 3;
  std::vector<std::size_t> coord(t);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < cells; ++c) {
    if (start[c] == start[c + 1]) continue;
    std::size_t rest = c;
    for (unsigned j = 0; j < t; ++j) {
      coord[j] = rest % g;
      rest /= g;
    }
    for (std::size_t nb = 0; nb < neighbours; ++nb) {
      std::size_t code = nb;
      std::size_t other = 0;
      std::size_t scale = 1;
      for (unsigned j = 0; j < t; ++j) {
        const std::size_t off = code % 3;
        code /= 3;
        other += ((coord[j] + g + off - 1) % g) * scale;
        scale *= g;
      }
      if (other < c) continue;  // each unordered cell pair once
      for (std::size_t a = start[c]; a < start[c + 1]; ++a) {
        const std::size_t pa = order[a];
        const std::size_t b0 = other == c ? a + 1 : start[other];
        for (std::size_t b = b0; b < start[other + 1]; ++b)
          best = std::min(best, toroidal_distance2(&points[pa * t], &points[order[b] * t], t));
      }
    }
  }
  if (!(std::sqrt(best) < 1.0 / gd)) return min_toroidal_distance_brute(points, t);
  return std::sqrt(best);
}

// Volume of the unit ball in t dimensions.
inline double unit_ball_volume(unsigned t) noexcept {
  const double h = static_cast<double>(t) / 2.0;
  return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0);
}

// Expected number of pairs within distance x: n(n-1)/2 * V_t * x^t.
inline double close_pairs_lambda(std::uint64_t n, unsigned t, double x) noexcept {
  const double nn = static_cast<double>(n);
  return nn * (nn - 1.0) / 2.0 * unit_ball_volume(t) * std::pow(x, static_cast<double>(t));
}

// Sub-statistic `min_distance`: statistic = D, p-value = exp(-lambda(D)),
// the probability that no pair is closer than D.
template <DrawSource S>
TestResult close_pairs_test(S& source, const ClosePairsParams& params, std::string id = "closepairs") {
  validate(params);
  const std::uint64_t start = source.draws();
  std::vector<double> pts(params.n * params.t);
  for (auto& x : pts) x = source.next_uniform();
  const double dmin = min_toroidal_distance(pts, params.t);
  TestResult r;
  r.id = std::move(id);
  r.sub.push_back({"min_distance", dmin, std::exp(-close_pairs_lambda(params.n, params.t, dmin))});
  r.draws = source.draws() - start;
  return r;
}

}  // namespace mts::stats
