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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mtstreams/error.hpp"
#include "mtstreams/stats/pvalues.hpp"
#include "mtstreams/stats/stream_view.hpp"
#include "mtstreams/stats/test_result.hpp"

namespace mts::stats {

struct SerialParams {
  std::uint64_t n = 1'000'000;  // draws
  std::uint64_t cells = 1024;

  friend bool operator==(const SerialParams&, const SerialParams&) = default;
};

inline void validate(const SerialParams& p) {
  if (p.cells < 2) throw ConfigError("SerialUniformity: cells must be >= 2");
  if (p.n / 10 < p.cells) throw ConfigError("SerialUniformity: need n >= 10 * cells");
}

// Pearson statistic of `counts` against equal expectation.
inline ChiSquare uniform_counts_chi_square(std::span<const std::uint64_t> counts) {
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  const double e = total / static_cast<double>(counts.size());
  ChiSquare r;
  for (auto c : counts) {
    const double diff = static_cast<double>(c) - e;
    r.statistic += diff * diff / e;
  }
  r.df = static_cast<int>(counts.size()) - 1;
  r.p_value = chi2_pvalue(r.statistic, r.df);
  return r;
}

// Sub-statistic `chi2`: cell counts of floor(u * c).
template <DrawSource S>
TestResult serial_uniformity_test(S& source, const SerialParams& params, std::string id = "serial") {
  validate(params);
  const std::uint64_t start = source.draws();
  std::vector<std::uint64_t> counts(params.cells, 0);
  const double c = static_cast<double>(params.cells);
  for (std::uint64_t i = 0; i < params.n; ++i) ++counts[static_cast<std::size_t>(source.next_uniform() * c)];
  const ChiSquare chi = uniform_counts_chi_square(counts);
  TestResult r;
  r.id = std::move(id);
  r.sub.push_back({"chi2", chi.statistic, chi.p_value});
  r.draws = source.draws() - start;
  return r;
}

}  // namespace mts::stats
