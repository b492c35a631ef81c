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
#include <vector>

#include "splitrt/blocked_array.hpp"
#include "splitrt/runtime.hpp"

namespace splitrt {

/// Logical group of blocks that share one worker. Holds references and index
/// metadata only; building one never touches block payloads.
struct Partition {
  WorkerId worker;
  std::vector<DataRef> block_refs;
  /// Global block index of each ref, strictly ascending.
  std::vector<std::size_t> block_indexes;
  /// Global row range of each block.
  std::vector<RowRange> item_ranges;

  std::size_t num_blocks() const noexcept { return block_refs.size(); }
  std::size_t num_items() const noexcept;

  /// Global block indexes of the partition's blocks.
  const std::vector<std::size_t>& get_indexes() const noexcept { return block_indexes; }

  /// Global row index of every item, block by block, rows ascending.
  std::vector<std::size_t> get_item_indexes() const;
};

/// Groups the array's blocks by owning worker (one batched location query)
/// and cuts each worker's group into `partitions_per_worker` contiguous
/// sub-groups whose block counts differ by at most one. Empty sub-groups are
/// dropped. Partitions come ordered by (worker, sub-group).
std::vector<Partition> split(const Runtime& rt, const BlockedArray& arr,
                             std::size_t partitions_per_worker = 1);

}  // namespace splitrt
