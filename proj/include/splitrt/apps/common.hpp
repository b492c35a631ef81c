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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "splitrt/blocked_array.hpp"
#include "splitrt/metrics.hpp"
#include "splitrt/runtime.hpp"

namespace splitrt::apps {

enum class AppKind { histogram, kmeans, csvm, knn };
/// baseline: one task per block. spliter: one task per partition.
/// rechunk: rechunk to a coarser blocking first, then baseline.
enum class Mode { baseline, spliter, rechunk };

std::string_view to_string(AppKind app) noexcept;
std::string_view to_string(Mode mode) noexcept;
std::optional<AppKind> parse_app(std::string_view s) noexcept;
std::optional<Mode> parse_mode(std::string_view s) noexcept;

struct AppConfig {
  AppKind app = AppKind::histogram;
  Mode mode = Mode::baseline;

  std::size_t workers = 2;
  std::size_t threads_per_worker = 1;
  std::size_t blocks_per_worker = 4;
  /// 0 derives ceil(n_rows / (workers * blocks_per_worker)).
  std::size_t block_rows = 0;
  /// Dataset rows (the fit set for knn).
  std::size_t n_rows = 10000;
  std::size_t dims = 2;
  std::uint64_t seed = 1;
  std::size_t partitions_per_worker = 1;
  PlacementPolicy placement = RoundRobin{};

  std::uint64_t sched_overhead_ns = 0;
  std::uint64_t bandwidth_bytes_per_s = 0;
  std::uint64_t latency_ns = 0;
  bool inject_real_overhead = false;

  // histogram
  std::size_t bins = 8;
  // kmeans
  std::size_t k = 8;
  std::size_t iters = 10;
  // csvm
  double C = 1.0;
  std::size_t max_iter = 5;
  double separation = 10.0;
  // knn
  std::size_t knn_k = 5;
  std::size_t query_rows = 1000;
  /// 0 means one query block per worker.
  std::size_t query_blocks = 0;
  /// Unset derives a seed distinct from `seed`.
  std::optional<std::uint64_t> query_seed;

  RuntimeConfig runtime_config() const;
  std::size_t effective_block_rows() const;
  std::size_t effective_query_blocks() const;
  std::uint64_t effective_query_seed() const;
  void validate() const;
};

/// Counters and timing of one application run.
struct AppReport {
  Metrics metrics;
  /// Counter delta over the embarrassingly parallel stage(s) only.
  Metrics map_stage;
  std::uint64_t map_tasks = 0;
  std::size_t block_rows = 0;
  std::size_t num_blocks = 0;
  /// Partitions per split() call; 0 outside spliter mode.
  std::size_t num_partitions = 0;
  /// Wall time of the computation, excluding dataset generation.
  double wall_ms = 0.0;
  std::uint64_t result_checksum = 0;
  std::vector<std::pair<std::string, std::string>> extra;
};

Metrics& operator+=(Metrics& acc, const Metrics& delta);

/// Tree reduction: groups of `arity` consecutive refs are merged by `merge`
/// level by level, in ascending order, until one ref is left. A trailing
/// group of one is carried up unchanged. Inputs consumed by a merge are
/// released.
DataRef reduce_tree(Runtime& rt, const std::string& kind, std::vector<DataRef> refs,
                    std::size_t arity, const TaskFn& merge);

/// Resolves every future, in order.
std::vector<DataRef> resolve(const std::vector<Future>& futures);

}  // namespace splitrt::apps
