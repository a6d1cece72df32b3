#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <tuple>

#include "hibound/error.hpp"
#include "hibound/reorder.hpp"
#include "test_support.hpp"

using namespace hibound;

namespace {

// Stable sort of all coordinates by (-level, row-major).
std::vector<std::uint64_t> brute_force_positions(const Dims& d, std::size_t stride) {
  const std::size_t n = d.count();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> level(n);
  for (std::size_t x = 0; x < d[0]; ++x)
    for (std::size_t y = 0; y < d[1]; ++y)
      for (std::size_t z = 0; z < d[2]; ++z) level[d.index(x, y, z)] = level_of(x, y, z, stride);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return level[a] > level[b]; });
  std::vector<std::uint64_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
  return pos;
}

}  // namespace

TEST(LevelOf, Examples) {
  EXPECT_EQ(level_of(0, 0, 0, 16), 4);
  EXPECT_EQ(level_of(2, 0, 0, 4), 1);
  EXPECT_EQ(level_of(1, 0, 0, 4), 0);
  EXPECT_EQ(level_of(32, 48, 64, 16), 4);
  EXPECT_EQ(level_of(8, 4, 12, 16), 2);
}

TEST(LevelMap, IndexExamples) {
  const LevelMap map(Dims::of(5, 5, 5), 4);
  EXPECT_EQ(map.index_of(0, 0, 0), 0u);
  EXPECT_EQ(map.index_of(2, 0, 0), 13u);
  EXPECT_EQ(map.index_of(1, 0, 0), 43u);
  EXPECT_EQ(map.prefix(0), 27u);
  EXPECT_THROW(map.index_of(5, 0, 0), Error);
}

TEST(LevelMap, MatchesBruteForceOracle) {
  std::mt19937_64 rng(21);
  std::vector<std::array<std::size_t, 3>> shapes{{1, 1, 1}, {33, 33, 33}, {2, 3, 4}, {17, 1, 9}, {32, 16, 8}};
  for (int i = 0; i < 60; ++i) shapes.push_back({rng() % 33 + 1, rng() % 33 + 1, rng() % 33 + 1});
  for (const auto& s : shapes) {
    const Dims d = Dims::of(s[0], s[1], s[2]);
    for (std::size_t stride : {1u, 2u, 4u, 8u, 16u}) {
      const LevelMap map(d, stride);
      const auto oracle = brute_force_positions(d, stride);
      ASSERT_EQ(map.permutation(), oracle) << s[0] << "x" << s[1] << "x" << s[2] << " A=" << stride;
      for (std::size_t x = 0; x < d[0]; ++x)
        for (std::size_t y = 0; y < d[1]; ++y)
          for (std::size_t z = 0; z < d[2]; ++z) ASSERT_EQ(map.index_of(x, y, z), oracle[d.index(x, y, z)]);
      std::size_t total = 0;
      for (int l = map.top_level(); l >= 0; --l) total += map.level_size(l);
      EXPECT_EQ(total, d.count());
    }
  }
}

TEST(Reorder, AnchorsComeFirst) {
  const Dims d = Dims::of(5, 5, 5);
  std::vector<std::uint8_t> codes(d.count(), 0);
  for (std::size_t x = 0; x < 5; x += 4)
    for (std::size_t y = 0; y < 5; y += 4)
      for (std::size_t z = 0; z < 5; z += 4) codes[d.index(x, y, z)] = 200;
  const auto seq = reorder(codes, LevelMap(d, 4));
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(seq[i], 200);
  for (std::size_t i = 8; i < seq.size(); ++i) EXPECT_EQ(seq[i], 0);
}

TEST(Reorder, RoundTripAndStrategiesAgree) {
  std::mt19937_64 rng(22);
  for (const Dims& d : {Dims::of(33, 33, 33), Dims::of(7, 19, 2), Dims::of(64, 48), Dims::of(1, 1, 5)}) {
    const auto codes = test::random_bytes(rng, d.count());
    for (std::size_t stride : {1u, 4u, 16u}) {
      const LevelMap map(d, stride);
      const auto a = reorder(codes, map, ReorderStrategy::table);
      const auto b = reorder(codes, map, ReorderStrategy::closed_form);
      EXPECT_EQ(a, b);
      auto sorted_in = codes, sorted_out = a;
      std::sort(sorted_in.begin(), sorted_in.end());
      std::sort(sorted_out.begin(), sorted_out.end());
      EXPECT_EQ(sorted_in, sorted_out);
      EXPECT_EQ(inverse_reorder(a, map, ReorderStrategy::table), codes);
      EXPECT_EQ(inverse_reorder(a, map, ReorderStrategy::closed_form), codes);
    }
  }
}

TEST(Reorder, RejectsLengthMismatch) {
  const LevelMap map(Dims::of(4, 4, 4), 4);
  const std::vector<std::uint8_t> wrong(63);
  EXPECT_THROW(reorder(wrong, map), Error);
  EXPECT_THROW(inverse_reorder(wrong, map), Error);
}
