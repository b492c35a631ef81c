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

#include "splitrt/rechunk.hpp"

#include <algorithm>
#include <stdexcept>

namespace splitrt {

namespace {

// Rows [lo, hi) of one input, local to that input's block.
struct Slice {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

}  // namespace

BlockedArray rechunk(Runtime& rt, const BlockedArray& arr, std::size_t new_block_rows) {
  if (new_block_rows < 1 || new_block_rows > arr.n_rows) {
    throw std::invalid_argument("rechunk: need 1 <= new_block_rows <= n_rows");
  }
  if (new_block_rows == arr.block_rows) return arr;

  const auto owners = block_locations(rt, arr);
  const std::size_t num_workers = rt.num_workers();
  BlockedArray out{arr.n_rows, arr.dims, new_block_rows, {}};
  const std::size_t new_blocks = (arr.n_rows + new_block_rows - 1) / new_block_rows;

  // Copies of foreign source blocks, made on the source owner. Submitted for
  // every destination first so they run while assembly is being scheduled.
  struct Pending {
    std::size_t source = 0;
    Future copy;
  };
  std::vector<std::vector<Pending>> copies(new_blocks);
  for (std::size_t j = 0; j < new_blocks; ++j) {
    const WorkerId dst{j % num_workers};
    const auto range = out.block_range(j);
    const auto first = range.begin / arr.block_rows;
    const auto last = (range.end - 1) / arr.block_rows;
    for (auto s = first; s <= last; ++s) {
      if (owners[s] == dst) continue;
      auto fut = rt.submit(
          kRechunkCopyKind,
          [](std::span<const Payload> in) { return Payload::make(in[0].as<Matrix>()); },
          {arr.blocks[s]}, owners[s]);
      rt.account_copy(arr.blocks[s].size_bytes);
      copies[j].push_back({s, std::move(fut)});
    }
  }

  std::vector<Future> assembled;
  assembled.reserve(new_blocks);
  for (std::size_t j = 0; j < new_blocks; ++j) {
    const WorkerId dst{j % num_workers};
    const auto range = out.block_range(j);
    const auto first = range.begin / arr.block_rows;
    const auto last = (range.end - 1) / arr.block_rows;

    std::vector<DataRef> inputs;
    std::vector<Slice> slices;
    std::vector<DataRef> to_release;
    auto pending = copies[j].begin();
    for (auto s = first; s <= last; ++s) {
      const auto src = arr.block_range(s);
      slices.push_back({std::max(range.begin, src.begin) - src.begin,
                        std::min(range.end, src.end) - src.begin});
      if (pending != copies[j].end() && pending->source == s) {
        const auto ref = pending->copy.ref();
        inputs.push_back(ref);
        to_release.push_back(ref);
        ++pending;
      } else {
        inputs.push_back(arr.blocks[s]);
      }
    }

    const std::size_t dims = arr.dims;
    const std::size_t rows = range.size();
    assembled.push_back(rt.submit(
        kRechunkAssembleKind,
        [slices = std::move(slices), dims, rows](std::span<const Payload> in) {
          Matrix block(rows, dims);
          std::size_t at = 0;
          for (std::size_t i = 0; i < in.size(); ++i) {
            const auto& src = in[i].as<Matrix>();
            for (auto r = slices[i].lo; r < slices[i].hi; ++r, ++at) {
              std::copy(src.row(r).begin(), src.row(r).end(), block.row(at).begin());
            }
          }
          return Payload::make(std::move(block));
        },
        std::move(inputs), dst));
    rt.account_copy(rows * dims * sizeof(double));
    for (const auto& ref : to_release) rt.release(ref);
  }

  out.blocks.reserve(new_blocks);
  for (const auto& fut : assembled) out.blocks.push_back(fut.ref());
  return out;
}

std::size_t balanced_block_rows(const BlockedArray& arr, const Runtime& rt) {
  const std::size_t slots = rt.config().num_workers * rt.config().threads_per_worker;
  return std::max<std::size_t>(1, (arr.n_rows + slots - 1) / slots);
}

}  // namespace splitrt
