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

#include <cstdint>
#include <map>
#include <string>

namespace splitrt {

/// Point-in-time copy of the runtime counters. Every counter only grows
/// during a run, so the difference of two snapshots is meaningful.
struct Metrics {
  std::uint64_t tasks_submitted = 0;
  std::map<std::string, std::uint64_t> tasks_by_kind;
  /// Worker-to-worker traffic only; gathers to the coordinator are separate.
  std::uint64_t bytes_transferred = 0;
  std::uint64_t transfers = 0;
  std::uint64_t locality_hits = 0;
  /// Always tasks_submitted * sched_overhead.
  std::uint64_t accounted_overhead_ns = 0;
  std::uint64_t virtual_transfer_ns = 0;
  std::uint64_t gathers = 0;
  std::uint64_t gathered_bytes = 0;
  /// Bytes duplicated in worker memory by copy tasks (rechunk footprint proxy).
  std::uint64_t copied_bytes = 0;

  std::uint64_t kind(const std::string& k) const {
    auto it = tasks_by_kind.find(k);
    return it == tasks_by_kind.end() ? 0 : it->second;
  }

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

/// Counter-wise `after - before`. Kinds absent from `after` are dropped.
Metrics operator-(const Metrics& after, const Metrics& before);

}  // namespace splitrt
