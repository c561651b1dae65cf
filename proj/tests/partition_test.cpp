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

#include <cmath>
#include <random>

#include "mtstreams/digest.hpp"
#include "mtstreams/partition.hpp"
#include "mtstreams/status_io.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace mts {
namespace {

TEST(SequenceSplitting, ConsecutiveStatusesAreOneSpacingApart) {
  const auto set = generate_sequence_splitting(5489, 10000, 8);
  ASSERT_EQ(set.statuses.size(), 8u);
  EXPECT_EQ(set.statuses[0].state, init_genrand(5489));
  for (std::size_t i = 0; i + 1 < set.statuses.size(); ++i)
    EXPECT_EQ(advanced(set.statuses[i].state, 10000), set.statuses[i + 1].state) << i;
}

TEST(SequenceSplitting, StatusesContinueTheBaseStream) {
  const auto set = generate_sequence_splitting(17, 1000, 4);
  std::mt19937 ref(17);
  for (const auto& [index, state] : set.statuses) {
    MtState s = state;
    std::mt19937 r = ref;
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(next_u32(s), r()) << index;
    ref.discard(1000);
  }
}

TEST(SequenceSplitting, SpacingZero) {
  EXPECT_THROW(generate_sequence_splitting(1, 0, 2), ConfigError);
  const auto lenient = generate_sequence_splitting(1, 0, 3, false);
  EXPECT_EQ(lenient.statuses[0].state, lenient.statuses[2].state);
  EXPECT_THROW(generate_sequence_splitting(1, 10, 0), ConfigError);
  EXPECT_THROW(generate_sequence_splitting(1, 1ull << 63, 3), ConfigError);
}

TEST(RandomSpacing, StatusesAreConsecutiveMasterBlocks) {
  const auto set = generate_random_spacing(5489, 3);
  std::mt19937 master(5489);
  for (const auto& [index, state] : set.statuses) {
    EXPECT_EQ(state.index(), kStateWords);
    for (std::uint32_t w : state.words()) ASSERT_EQ(w, master());
  }
  EXPECT_EQ(set.provenance.discarded, 0u);
}

TEST(Indexed, StatusIsInitGenrandOfIndex) {
  const auto set = generate_indexed(0, 5);
  for (const auto& [index, state] : set.statuses) EXPECT_EQ(state, init_genrand(static_cast<std::uint32_t>(index)));
  const auto shifted = generate_indexed(100, 2);
  EXPECT_EQ(shifted.statuses[1].index, 1u);
  EXPECT_EQ(shifted.statuses[1].state, init_genrand(101));
  EXPECT_THROW(generate_indexed(0xFFFFFFFFu, 2), ConfigError);
  EXPECT_NO_THROW(generate_indexed(0xFFFFFFFFu, 1));
}

TEST(Regenerate, ReproducesEveryTechnique) {
  for (const auto& set : {generate_sequence_splitting(3, 777, 4), generate_random_spacing(9, 4), generate_indexed(12, 4)}) {
    const auto again = regenerate(set.provenance);
    ASSERT_EQ(again.statuses.size(), set.statuses.size());
    for (std::size_t i = 0; i < set.statuses.size(); ++i) EXPECT_EQ(again.statuses[i].state, set.statuses[i].state);
  }
}

TEST(FileNames, RoundTrip) {
  EXPECT_EQ(status_filename(Technique::IndexedSequence, 7), "indexed_00007.mts");
  EXPECT_EQ(status_filename(Technique::SequenceSplitting, 4095), "split_04095.mts");
  EXPECT_EQ(status_filename(Technique::RandomSpacing, 123456), "random_123456.mts");
  for (auto t : {Technique::SequenceSplitting, Technique::RandomSpacing, Technique::IndexedSequence})
    for (std::uint64_t i : {0ull, 9ull, 99999ull, 100000ull}) {
      auto parsed = parse_status_filename(status_filename(t, i));
      ASSERT_TRUE(parsed);
      EXPECT_EQ(parsed->first, t);
      EXPECT_EQ(parsed->second, i);
    }
  EXPECT_FALSE(parse_status_filename("indexed_7.mts"));
  EXPECT_FALSE(parse_status_filename("other_00007.mts"));
  EXPECT_FALSE(parse_status_filename("indexed_00007.txt"));
  EXPECT_FALSE(parse_status_filename("indexed_0000x.mts"));
}

TEST(StatusSets, WriteManifestAndVerify) {
  const auto dir_a = testing::scratch_dir("set_a");
  const auto dir_b = testing::scratch_dir("set_b");
  const auto set = generate_indexed(0, 6);
  const auto wa = write_status_set(set, dir_a);
  const auto wb = write_status_set(regenerate(set.provenance), dir_b);
  EXPECT_EQ(wa.fingerprint, wb.fingerprint);
  EXPECT_EQ(wa.fingerprint, sha256_hex(read_file_bytes(wa.manifest)));

  const std::string manifest = read_file_bytes(wa.manifest);
  EXPECT_NE(manifest.find("# technique=indexed seed=0 count=6\n"), std::string::npos);
  const std::string first = "indexed_00000.mts " + sha256_hex(serialize_status(init_genrand(0))) + " indexed 0\n";
  EXPECT_NE(manifest.find(first), std::string::npos);
  EXPECT_EQ(parse_status(read_file_bytes(dir_a / "indexed_00003.mts")), init_genrand(3));

  auto same = verify_sets(dir_a, dir_b);
  EXPECT_TRUE(same.same());
  EXPECT_EQ(same.identical.size(), 7u);

  std::string bytes = read_file_bytes(dir_b / "indexed_00002.mts");
  bytes[bytes.size() - 2] ^= 1;
  write_file_bytes(dir_b / "indexed_00002.mts", bytes);
  write_file_bytes(dir_b / "extra.mts", "x");
  std::filesystem::remove(dir_b / "indexed_00005.mts");
  auto diff = verify_sets(dir_a, dir_b);
  EXPECT_FALSE(diff.same());
  EXPECT_EQ(diff.differing, std::vector<std::string>{"indexed_00002.mts"});
  EXPECT_EQ(diff.only_in_a, std::vector<std::string>{"indexed_00005.mts"});
  EXPECT_EQ(diff.only_in_b, std::vector<std::string>{"extra.mts"});
  EXPECT_THROW(verify_sets(dir_a, dir_a / "missing"), IoError);
}

TEST(Overlap, DegenerateCases) {
  EXPECT_EQ(overlap_probability(19937, 1, 1'000'000), 0.0);
  EXPECT_EQ(overlap_probability(19937, 4096, 0), 0.0);
  EXPECT_EQ(overlap_probability(16, 0, 10), 0.0);
  EXPECT_EQ(overlap_probability(19937, 4096, 1'000'000'000'000ull), 0.0);
  EXPECT_THROW(overlap_probability(-1, 2, 2), ConfigError);
}

TEST(Overlap, MonotoneOnGrid) {
  const std::uint64_t ks[] = {2, 4, 16, 64, 256};
  const std::uint64_t ls[] = {1, 16, 256, 4096};
  const int periods[] = {16, 24, 32, 64};
  for (int p : periods)
    for (std::size_t i = 0; i < std::size(ks); ++i)
      for (std::size_t j = 0; j < std::size(ls); ++j) {
        const double v = overlap_probability(p, ks[i], ls[j]);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
        if (i + 1 < std::size(ks)) EXPECT_LE(v, overlap_probability(p, ks[i + 1], ls[j]));
        if (j + 1 < std::size(ls)) EXPECT_LE(v, overlap_probability(p, ks[i], ls[j + 1]));
        EXPECT_GE(v, overlap_probability(p + 1, ks[i], ls[j]));
      }
}

TEST(Overlap, MatchesToyMonteCarlo) {
  struct Case {
    std::uint64_t k, length;
  };
  for (auto [k, length] : {Case{8, 256}, Case{4, 64}, Case{16, 32}}) {
    const double predicted = overlap_probability(16, k, length);
    const double observed = oracle::toy_overlap_rate(k, length, 20000, k * 1000 + length);
    EXPECT_NEAR(observed / predicted, 1.0, 0.20) << "k=" << k << " L=" << length << " predicted " << predicted;
  }
}

}  // namespace
}  // namespace mts
