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

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "splitrt/matrix.hpp"
#include "splitrt/runtime.hpp"

namespace splitrt {

/// Half-open range of global row indexes.
struct RowRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const RowRange&, const RowRange&) = default;
};

/// A 2-D dataset split into row blocks, each block resident on one worker.
/// Block i covers rows [i*block_rows, min((i+1)*block_rows, n_rows)).
struct BlockedArray {
  std::size_t n_rows = 0;
  std::size_t dims = 0;
  std::size_t block_rows = 0;
  std::vector<DataRef> blocks;

  std::size_t num_blocks() const noexcept { return blocks.size(); }
  RowRange block_range(std::size_t block) const noexcept {
    const auto begin = block * block_rows;
    const auto end = begin + block_rows < n_rows ? begin + block_rows : n_rows;
    return {begin, end};
  }
};

struct RoundRobin {};
struct SeededRandom {
  std::uint64_t seed = 0;
};
struct Explicit {
  std::vector<WorkerId> owners;
};
using PlacementPolicy = std::variant<RoundRobin, SeededRandom, Explicit>;

/// Worker for each of `num_blocks` blocks under `policy`.
std::vector<WorkerId> place_blocks(const PlacementPolicy& policy, std::size_t num_blocks,
                                   std::size_t num_workers);

/// Each coordinate uniform in [0, 1).
struct UniformCube {
  std::uint64_t seed = 0;
};

/// Gaussian blobs; row r belongs to blob r mod k. Blob 0 sits at the origin
/// and blob c >= 1 at `scale` along axis (c-1) mod dims.
struct GaussianBlobs {
  std::uint64_t seed = 0;
  std::size_t k = 2;
  double spread = 1.0;
  double scale = 10.0;
};

/// Two Gaussian blobs, row r in blob r mod 2, blob 0 labeled -1 and blob 1
/// labeled +1. Blob centers are `separation` apart along the main diagonal.
struct LabeledBlobs {
  std::uint64_t seed = 0;
  double separation = 10.0;
  double spread = 1.0;
};

using Generator = std::variant<UniformCube, GaussianBlobs, LabeledBlobs>;

/// Values of global row `row`. A pure function of (generator, row, dims), so
/// array content never depends on the blocking.
void generate_row(const Generator& gen, std::size_t row, std::span<double> out);

/// Label (+1 or -1) of global row `row` under LabeledBlobs.
double labeled_blobs_label(std::size_t row) noexcept;

BlockedArray create_array(Runtime& rt, std::size_t n_rows, std::size_t dims,
                          std::size_t block_rows, const PlacementPolicy& policy,
                          const Generator& gen);

/// Labels for `points` (generated by LabeledBlobs) as a one-column array with
/// identical blocking and block owners.
BlockedArray create_label_array(Runtime& rt, const BlockedArray& points);

/// Per-block owner, in block order.
std::vector<WorkerId> block_locations(const Runtime& rt, const BlockedArray& arr);

/// FNV-1a over the little-endian bit pattern of every element, in global row
/// order. Reads payloads without accounting.
std::uint64_t checksum(const Runtime& rt, const BlockedArray& arr);

/// FNV-1a 64-bit helpers shared by digests across the project.
inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;
std::uint64_t fnv1a_u64(std::uint64_t hash, std::uint64_t word) noexcept;
std::uint64_t fnv1a_double(std::uint64_t hash, double value) noexcept;

/// Materializes the whole array at the caller, in row order. Unaccounted.
Matrix to_matrix(const Runtime& rt, const BlockedArray& arr);

/// Debug dump: one CSV line per point.
void write_csv(const Runtime& rt, const BlockedArray& arr, std::ostream& os);

}  // namespace splitrt
