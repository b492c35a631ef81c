// Copyright 2026 The splitrt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "splitrt/blocked_array.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>
#include <string>

#include "splitrt/rng.hpp"

namespace splitrt {
namespace {

RuntimeConfig Workers(std::size_t n) {
  RuntimeConfig c;
  c.num_workers = n;
  return c;
}

TEST(Rng64Test, MatchesSplitmix64ReferenceStream) {
  // First outputs of splitmix64 seeded with 0, as published with the reference implementation.
  Rng64 rng(0);
  EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(rng.next(), 0x06C45D188009454FULL);
}

TEST(Rng64Test, UniformUsesHigh53Bits) {
  Rng64 a(42);
  Rng64 b(42);
  const double u = a.uniform();
  EXPECT_EQ(u, static_cast<double>(b.next() >> 11) / 9007199254740992.0);
  EXPECT_GE(u, 0.0);
  EXPECT_LT(u, 1.0);
}

TEST(CreateArrayTest, CeilingBlockCount) {
  Runtime rt(Workers(2));
  auto arr = create_array(rt, 10, 2, 3, RoundRobin{}, UniformCube{1});
  ASSERT_EQ(arr.num_blocks(), 4u);
  std::vector<std::size_t> rows;
  for (std::size_t b = 0; b < arr.num_blocks(); ++b) rows.push_back(arr.block_range(b).size());
  EXPECT_EQ(rows, (std::vector<std::size_t>{3, 3, 3, 1}));
  EXPECT_EQ(rt.peek(arr.blocks[3]).as<Matrix>().rows(), 1u);
  EXPECT_EQ(arr.blocks[0].size_bytes, 3u * 2u * sizeof(double));
}

TEST(CreateArrayTest, RoundRobinOwners) {
  Runtime rt(Workers(2));
  auto arr = create_array(rt, 8, 1, 2, RoundRobin{}, UniformCube{1});
  EXPECT_EQ(block_locations(rt, arr),
            (std::vector<WorkerId>{WorkerId{0}, WorkerId{1}, WorkerId{0}, WorkerId{1}}));
}

TEST(CreateArrayTest, ExplicitAndSeededPlacement) {
  Runtime rt(Workers(3));
  std::vector<WorkerId> owners{WorkerId{2}, WorkerId{2}, WorkerId{0}};
  auto arr = create_array(rt, 6, 1, 2, Explicit{owners}, UniformCube{1});
  EXPECT_EQ(block_locations(rt, arr), owners);
  EXPECT_THROW(create_array(rt, 6, 1, 2, Explicit{{WorkerId{0}}}, UniformCube{1}), std::invalid_argument);

  const auto p1 = place_blocks(SeededRandom{9}, 50, 3);
  EXPECT_EQ(p1, place_blocks(SeededRandom{9}, 50, 3));
  for (auto w : p1) EXPECT_LT(w.value, 3u);
}

TEST(CreateArrayTest, InvalidSizesThrow) {
  Runtime rt(Workers(1));
  EXPECT_THROW(create_array(rt, 0, 1, 1, RoundRobin{}, UniformCube{1}), std::invalid_argument);
  EXPECT_THROW(create_array(rt, 4, 0, 1, RoundRobin{}, UniformCube{1}), std::invalid_argument);
  EXPECT_THROW(create_array(rt, 4, 1, 0, RoundRobin{}, UniformCube{1}), std::invalid_argument);
  EXPECT_THROW(create_array(rt, 4, 1, 5, RoundRobin{}, UniformCube{1}), std::invalid_argument);
}

TEST(CreateArrayTest, SameSeedSameChecksum) {
  Runtime rt(Workers(2));
  auto a = create_array(rt, 100, 3, 7, RoundRobin{}, UniformCube{5});
  auto b = create_array(rt, 100, 3, 7, RoundRobin{}, UniformCube{5});
  auto c = create_array(rt, 100, 3, 7, RoundRobin{}, UniformCube{6});
  EXPECT_EQ(checksum(rt, a), checksum(rt, b));
  EXPECT_NE(checksum(rt, a), checksum(rt, c));
  EXPECT_EQ(to_matrix(rt, a), to_matrix(rt, b));
}

TEST(CreateArrayTest, ContentIndependentOfBlocking) {
  Runtime rt(Workers(3));
  for (const Generator& gen : {Generator{UniformCube{3}}, Generator{GaussianBlobs{3, 4, 1.0, 10.0}},
                               Generator{LabeledBlobs{3, 10.0, 1.0}}}) {
    auto a = create_array(rt, 97, 4, 97, RoundRobin{}, gen);
    for (std::size_t br : {1u, 5u, 16u, 50u}) {
      auto b = create_array(rt, 97, 4, br, SeededRandom{br}, gen);
      EXPECT_EQ(checksum(rt, a), checksum(rt, b)) << "block_rows=" << br;
    }
  }
}

TEST(CreateArrayTest, UniformCubeRange) {
  std::vector<double> row(6);
  for (std::size_t r = 0; r < 500; ++r) {
    generate_row(UniformCube{11}, r, row);
    for (double v : row) {
      EXPECT_GE(v, 0.0);
      EXPECT_LT(v, 1.0);
    }
  }
}

TEST(CreateArrayTest, RowSeedIsSeedXorRowPlusOne) {
  std::vector<double> row(3);
  generate_row(UniformCube{77}, 4, row);
  Rng64 rng(77 ^ 5);
  for (double v : row) EXPECT_EQ(v, rng.uniform());
}

TEST(CreateArrayTest, GaussianBlobCentersByRow) {
  const std::size_t k = 3;
  const std::size_t n = 3000;
  std::vector<double> row(2);
  std::vector<std::vector<double>> mean(k, std::vector<double>(2, 0.0));
  for (std::size_t r = 0; r < n; ++r) {
    generate_row(GaussianBlobs{1, k, 1.0, 10.0}, r, row);
    for (std::size_t d = 0; d < 2; ++d) mean[r % k][d] += row[d] / (n / k);
  }
  EXPECT_NEAR(mean[0][0], 0.0, 0.2);
  EXPECT_NEAR(mean[0][1], 0.0, 0.2);
  EXPECT_NEAR(mean[1][0], 10.0, 0.2);
  EXPECT_NEAR(mean[2][1], 10.0, 0.2);
}

TEST(CreateArrayTest, LabeledBlobsAlternateAndSeparate) {
  EXPECT_EQ(labeled_blobs_label(0), -1.0);
  EXPECT_EQ(labeled_blobs_label(1), +1.0);
  Runtime rt(Workers(2));
  auto pts = create_array(rt, 40, 2, 6, RoundRobin{}, LabeledBlobs{2, 10.0, 1.0});
  auto labels = create_label_array(rt, pts);
  EXPECT_EQ(labels.block_rows, pts.block_rows);
  EXPECT_EQ(block_locations(rt, labels), block_locations(rt, pts));
  const auto y = to_matrix(rt, labels);
  ASSERT_EQ(y.cols(), 1u);
  for (std::size_t r = 0; r < y.rows(); ++r) EXPECT_EQ(y(r, 0), labeled_blobs_label(r));
}

TEST(ChecksumTest, SingleZeroIsFnvOfEightZeroBytes) {
  std::uint64_t oracle = 0xcbf29ce484222325ULL;
  for (int i = 0; i < 8; ++i) oracle = (oracle ^ 0u) * 0x100000001b3ULL;
  EXPECT_EQ(oracle, 0xa8c7f832281a39c5ULL);

  Runtime rt(Workers(1));
  BlockedArray arr;
  arr.n_rows = 1;
  arr.dims = 1;
  arr.block_rows = 1;
  arr.blocks.push_back(rt.put_value(Matrix(1, 1, {0.0}), WorkerId{0}));
  EXPECT_EQ(checksum(rt, arr), oracle);
}

TEST(ChecksumTest, HashesLittleEndianBitPatterns) {
  const double v = -2.5;
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  std::uint64_t h = kFnvOffset;
  for (int i = 0; i < 8; ++i) h = (h ^ ((bits >> (8 * i)) & 0xFF)) * kFnvPrime;
  EXPECT_EQ(fnv1a_double(kFnvOffset, v), h);
}

TEST(ChecksumTest, SwappingBlocksChangesDigest) {
  Runtime rt(Workers(2));
  auto arr = create_array(rt, 8, 2, 4, RoundRobin{}, UniformCube{3});
  auto swapped = arr;
  std::swap(swapped.blocks[0], swapped.blocks[1]);
  EXPECT_NE(checksum(rt, arr), checksum(rt, swapped));
}

TEST(ChecksumTest, ReadsWithoutTransfers) {
  Runtime rt(Workers(2));
  auto arr = create_array(rt, 50, 2, 5, RoundRobin{}, UniformCube{3});
  const auto before = rt.metrics();
  checksum(rt, arr);
  EXPECT_EQ(rt.metrics(), before);
}

TEST(BlockedArrayTest, CsvDumpHasOneLinePerRow) {
  Runtime rt(Workers(2));
  auto arr = create_array(rt, 7, 3, 2, RoundRobin{}, UniformCube{3});
  std::ostringstream os;
  write_csv(rt, arr, os);
  const auto text = os.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 7);
  const auto first = text.substr(0, text.find('\n'));
  EXPECT_EQ(std::count(first.begin(), first.end(), ','), 2);
}

}  // namespace
}  // namespace splitrt
