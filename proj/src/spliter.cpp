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

#include "splitrt/spliter.hpp"

#include <stdexcept>

namespace splitrt {

std::size_t Partition::num_items() const noexcept {
  std::size_t n = 0;
  for (const auto& r : item_ranges) n += r.size();
  return n;
}

std::vector<std::size_t> Partition::get_item_indexes() const {
  std::vector<std::size_t> out;
  out.reserve(num_items());
  for (const auto& r : item_ranges) {
    for (auto i = r.begin; i < r.end; ++i) out.push_back(i);
  }
  return out;
}

std::vector<Partition> split(const Runtime& rt, const BlockedArray& arr,
                             std::size_t partitions_per_worker) {
  if (partitions_per_worker < 1) {
    throw std::invalid_argument("split: partitions_per_worker must be >= 1");
  }
  const auto owners = block_locations(rt, arr);

  std::vector<std::vector<std::size_t>> by_worker(rt.num_workers());
  for (std::size_t b = 0; b < owners.size(); ++b) by_worker[owners[b].value].push_back(b);

  std::vector<Partition> out;
  for (std::size_t w = 0; w < by_worker.size(); ++w) {
    const auto& group = by_worker[w];
    const std::size_t base = group.size() / partitions_per_worker;
    const std::size_t extra = group.size() % partitions_per_worker;
    std::size_t pos = 0;
    for (std::size_t s = 0; s < partitions_per_worker; ++s) {
      const std::size_t count = base + (s < extra ? 1 : 0);
      if (count == 0) continue;
      Partition p;
      p.worker = WorkerId{w};
      for (std::size_t j = pos; j < pos + count; ++j) {
        const auto b = group[j];
        p.block_refs.push_back(DataRef{arr.blocks[b].id, owners[b], arr.blocks[b].size_bytes});
        p.block_indexes.push_back(b);
        p.item_ranges.push_back(arr.block_range(b));
      }
      pos += count;
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace splitrt
