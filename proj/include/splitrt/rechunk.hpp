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

#include "splitrt/blocked_array.hpp"
#include "splitrt/runtime.hpp"

namespace splitrt {

/// Task kinds submitted by rechunk, as they appear in Metrics::tasks_by_kind.
inline constexpr const char* kRechunkCopyKind = "rechunk_copy";
inline constexpr const char* kRechunkAssembleKind = "rechunk_assemble";

/// Materializes a new array with `new_block_rows` rows per block.
///
/// New block j is assembled on worker j mod W. Every source block that
/// overlaps it and lives elsewhere is first copied on its owner and the copy
/// is moved to the destination, so the whole source block is paid once per
/// foreign destination. The source array is left untouched. Rechunking to the
/// current block size returns `arr` itself and does nothing else.
BlockedArray rechunk(Runtime& rt, const BlockedArray& arr, std::size_t new_block_rows);

/// One block per worker thread: ceil(n_rows / (num_workers * threads_per_worker)).
std::size_t balanced_block_rows(const BlockedArray& arr, const Runtime& rt);

}  // namespace splitrt
