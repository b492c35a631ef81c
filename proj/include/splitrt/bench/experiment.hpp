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
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "splitrt/apps/common.hpp"

namespace splitrt::bench {

/// Cartesian grid of application runs. Every field of `base` not swept here
/// is shared by all cells.
struct Grid {
  apps::AppConfig base;
  std::vector<apps::AppKind> apps{apps::AppKind::histogram};
  std::vector<apps::Mode> modes{apps::Mode::baseline};
  std::vector<std::size_t> workers{2};
  std::vector<std::size_t> blocks_per_worker{4};
  std::vector<std::uint64_t> seeds{1};
  std::size_t reps = 1;
  /// Treat base.n_rows (and base.query_rows) as per-worker sizes.
  bool weak_scaling = false;
};

/// One CSV line. Raw rows have rep >= 0; aggregate rows use rep = -1.
/// Warning rows carry only the cell coordinates and a `warning` entry.
struct ResultRow {
  std::string app;
  std::string mode;
  std::size_t workers = 0;
  std::size_t threads_per_worker = 0;
  std::size_t blocks_per_worker = 0;
  std::size_t block_rows = 0;
  std::size_t dims = 0;
  std::uint64_t seed = 0;
  std::int64_t rep = 0;
  double wall_ms = 0.0;
  std::uint64_t map_tasks = 0;
  std::uint64_t total_tasks = 0;
  std::uint64_t bytes_transferred = 0;
  std::uint64_t transfers = 0;
  std::uint64_t locality_hits = 0;
  std::uint64_t accounted_overhead_ns = 0;
  std::uint64_t virtual_transfer_ns = 0;
  std::uint64_t result_checksum = 0;
  std::vector<std::pair<std::string, std::string>> extra;
  bool is_warning = false;
};

inline constexpr const char* kCsvHeader =
    "app,mode,workers,threads_per_worker,blocks_per_worker,block_rows,dims,seed,rep,wall_ms,"
    "map_tasks,total_tasks,bytes_transferred,transfers,locality_hits,accounted_overhead_ns,"
    "virtual_transfer_ns,result_checksum,extra";

/// Runs the application named by cfg.app and returns its report.
apps::AppReport run_app(const apps::AppConfig& cfg);

/// The config of one grid cell.
apps::AppConfig cell_config(const Grid& grid, apps::AppKind app, apps::Mode mode,
                            std::size_t workers, std::size_t blocks_per_worker,
                            std::uint64_t seed);

using ProgressFn = std::function<void(const ResultRow&)>;

/// Runs every cell `reps` times. Emits one row per repetition followed by an
/// aggregate row with the winsorized mean of wall_ms (5% per tail) and
/// `iqr_ms` in extra. A cell whose config is invalid or whose run fails
/// yields a single warning row instead.
std::vector<ResultRow> run_experiment(const Grid& grid, const ProgressFn& progress = {});

std::string to_csv_line(const ResultRow& row);
void write_csv(std::ostream& os, const std::vector<ResultRow>& rows);

}  // namespace splitrt::bench
