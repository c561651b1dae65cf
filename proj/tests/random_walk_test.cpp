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


#include <gtest/gtest.h>

#include <vector>

#include "mtstreams/mt19937.hpp"
#include "mtstreams/stats/random_walk.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace mts::stats {
namespace {

class WalkLaw : public ::testing::TestWithParam<unsigned> {};

TEST_P(WalkLaw, DynamicProgramEqualsEnumeration) {
  const unsigned l = GetParam();
  const WalkDistributions dp = walk_distributions_dp(l);
  const WalkDistributions ex = oracle::enumerate_walks(l);
  ASSERT_EQ(dp.h.size(), ex.h.size());
  ASSERT_EQ(dp.m.size(), ex.m.size());
  ASSERT_EQ(dp.r.size(), ex.r.size());
  for (std::size_t i = 0; i < ex.h.size(); ++i) EXPECT_EQ(dp.h[i], ex.h[i]) << "H " << i;
  for (std::size_t i = 0; i < ex.m.size(); ++i) EXPECT_EQ(dp.m[i], ex.m[i]) << "M " << i;
  for (std::size_t i = 0; i < ex.r.size(); ++i) EXPECT_EQ(dp.r[i], ex.r[i]) << "R " << i;
}

INSTANTIATE_TEST_SUITE_P(SmallL, WalkLaw, ::testing::Values(2u, 4u, 8u, 12u, 16u));

TEST(WalkLaw, TwoSteps) {
  const WalkDistributions d = walk_distributions_dp(2);
  EXPECT_EQ(d.h, (std::vector<double>{0.25, 0.5, 0.25}));
  EXPECT_EQ(d.m, (std::vector<double>{0.5, 0.25, 0.25}));
  EXPECT_EQ(d.r, (std::vector<double>{0.5, 0.5}));
}

TEST(WalkLaw, LargeLIsNormalized) {
  const auto d = walk_distributions(1024);
  for (const auto* v : {&d->h, &d->m, &d->r}) {
    long double sum = 0;
    for (double p : *v) sum += p;
    EXPECT_NEAR(static_cast<double>(sum), 1.0, 1e-12);
  }
  EXPECT_EQ(walk_distributions(1024).get(), d.get());
}

TEST(WalkStatistics, HandExample) {
  // U U D D D U: S = 1 2 1 0 -1 0.
  const std::vector<int> steps{1, 1, 0, 0, 0, 1};
  std::size_t j = 0;
  const WalkStats s = walk_statistics(6, [&] { return steps[j++] != 0; });
  EXPECT_EQ(s.h, 3u);
  EXPECT_EQ(s.m, 2u);
  EXPECT_EQ(s.r, 2u);
}

TEST(BitReader, MostSignificantBitFirstAcrossWords) {
  testing::ScriptedSource src({0x80000001u, 0x40000000u});
  BitReader<testing::ScriptedSource> bits(src);
  std::vector<unsigned> got;
  for (int i = 0; i < 64; ++i) got.push_back(bits.next_bit());
  EXPECT_EQ(got[0], 1u);
  EXPECT_EQ(got[31], 1u);
  EXPECT_EQ(got[32], 0u);
  EXPECT_EQ(got[33], 1u);
  EXPECT_EQ(std::count(got.begin(), got.end(), 1u), 3);
  EXPECT_EQ(src.draws(), 2u);
}

TEST(RandomWalk, MersenneTwisterPassesAndCountsDraws) {
  for (RandomWalkParams p : {RandomWalkParams{10000, 128}, RandomWalkParams{10000, 1024}, RandomWalkParams{1001, 10}}) {
    StreamView view(init_genrand(77), Mode::Int);
    TestResult r = random_walk_test(view, p);
    r.decide(kDefaultThreshold);
    EXPECT_EQ(r.verdict, Verdict::Pass);
    ASSERT_EQ(r.sub.size(), 3u);
    EXPECT_EQ(r.draws, (p.walks * p.steps + 31) / 32);
  }
}

TEST(RandomWalk, ConstantStreamFails) {
  testing::ScriptedSource zeros(std::vector<std::uint32_t>(40000, 0u));
  TestResult r = random_walk_test(zeros, {10000, 128});
  r.decide(kDefaultThreshold);
  EXPECT_EQ(r.verdict, Verdict::Fail);
}

TEST(RandomWalk, RejectsBadParameters) {
  testing::SplitMix64Source src(1);
  EXPECT_THROW(random_walk_test(src, {10000, 127}), ConfigError);
  EXPECT_THROW(random_walk_test(src, {10, 128}), ConfigError);
}

}  // namespace
}  // namespace mts::stats
