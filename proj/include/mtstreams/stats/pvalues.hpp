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

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "mtstreams/error.hpp"

namespace mts::stats {

inline constexpr double kDefaultThreshold = 1e-10;

// Right tail P(X >= x) of a chi-square variable with `df` degrees.
inline double chi2_pvalue(double x, double df) {
  if (!(df >= 1.0)) throw ConfigError("chi2_pvalue: df must be >= 1");
  if (!(x > 0.0)) return 1.0;
  return boost::math::gamma_q(df / 2.0, x / 2.0);
}

struct TailPair {
  double left = 1.0;   // P(X <= observed)
  double right = 1.0;  // P(X >= observed)
};

// Both tails of Poisson(lambda) at `observed`; each includes the atom, so
// left + right >= 1.
inline TailPair poisson_two_sided_pvalue(std::uint64_t observed, double lambda) {
  if (!(lambda > 0.0)) throw ConfigError("poisson_two_sided_pvalue: lambda must be positive");
  const double k = static_cast<double>(observed);
  TailPair p;
  // P(X <= k) = Q(k + 1, lambda);  P(X >= k) = P(k, lambda) for k >= 1.
  p.left = boost::math::gamma_q(k + 1.0, lambda);
  p.right = observed == 0 ? 1.0 : boost::math::gamma_p(k, lambda);
  return p;
}

// Single reported p-value for a discrete statistic: the smaller tail,
// mapped so that small values flag the lower tail and values near 1 flag the
// upper tail.
inline double combine_discrete(const TailPair& p) noexcept {
  return p.left < p.right ? p.left : 1.0 - p.right;
}

// Survival function of the Kolmogorov distribution, Q(x) = P(K > x).
inline double kolmogorov_survival(double x) noexcept {
  if (x <= 0.0) return 1.0;
  if (x < 1.18) {
    // P(K <= x) = sqrt(2 pi)/x * sum exp(-(2k-1)^2 pi^2 / (8 x^2))
    const double w = std::numbers::pi * std::numbers::pi / (8.0 * x * x);
    double sum = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(-odd * odd * w);
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / x * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

struct KsResult {
  double statistic = 0.0;  // sup |F_n - F|
  double p_value = 1.0;
};

// Two-sided Kolmogorov-Smirnov test against Uniform[0,1], using the
// asymptotic distribution with Stephens' small-sample correction.
inline KsResult ks_uniform(std::span<const double> samples) {
  if (samples.size() < 10) throw ConfigError("ks_uniform: need at least 10 samples");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = std::clamp(x[i], 0.0, 1.0);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - u, u - static_cast<double>(i) / n});
  }
  const double sqn = std::sqrt(n);
  return {d, kolmogorov_survival((sqn + 0.12 + 0.11 / sqn) * d)};
}

inline double ks_uniform_pvalue(std::span<const double> samples) { return ks_uniform(samples).p_value; }

// Strict two-sided rule: p == threshold passes.
constexpr bool is_failure(double p, double threshold) noexcept {
  return p < threshold || p > 1.0 - threshold;
}

struct ChiSquare {
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
};

// Chi-square goodness of fit of `counts` against `probabilities` (same
// length, summing to 1). Cells are merged in ascending index order until
// each merged group expects at least `min_expected`; a short final group is
// folded into its predecessor.
inline ChiSquare merged_chi_square(std::span<const std::uint64_t> counts,
                                   std::span<const double> probabilities, double min_expected = 5.0) {
  if (counts.size() != probabilities.size()) throw ConfigError("merged_chi_square: size mismatch");
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  std::vector<double> exp_groups;
  std::vector<double> obs_groups;
  double acc_e = 0.0;
  double acc_o = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    acc_e += total * probabilities[i];
    acc_o += static_cast<double>(counts[i]);
    if (acc_e >= min_expected) {
      exp_groups.push_back(acc_e);
      obs_groups.push_back(acc_o);
      acc_e = acc_o = 0.0;
    }
  }
  if (acc_e > 0.0 || acc_o > 0.0) {
    if (exp_groups.empty()) {
      exp_groups.push_back(acc_e);
      obs_groups.push_back(acc_o);
    } else {
      exp_groups.back() += acc_e;
      obs_groups.back() += acc_o;
    }
  }
  if (exp_groups.size() < 2) throw ConfigError("merged_chi_square: fewer than two cells after merging");
  ChiSquare r;
  for (std::size_t g = 0; g < exp_groups.size(); ++g) {
    const double diff = obs_groups[g] - exp_groups[g];
    r.statistic += diff * diff / exp_groups[g];
  }
  r.df = static_cast<int>(exp_groups.size()) - 1;
  r.p_value = chi2_pvalue(r.statistic, r.df);
  return r;
}

}  // namespace mts::stats
