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

#include "splitrt/bench/experiment.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "splitrt/apps/apps.hpp"
#include "splitrt/bench/stats.hpp"

namespace splitrt::bench {

using apps::AppConfig;
using apps::AppKind;
using apps::AppReport;
using apps::Mode;

namespace {

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == ';' || c == '\n' || c == '\r' || c == '=') c = ' ';
  }
  return s;
}

std::string format_ms(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

ResultRow coordinates(const AppConfig& cfg) {
  ResultRow row;
  row.app = std::string(apps::to_string(cfg.app));
  row.mode = std::string(apps::to_string(cfg.mode));
  row.workers = cfg.workers;
  row.threads_per_worker = cfg.threads_per_worker;
  row.blocks_per_worker = cfg.blocks_per_worker;
  row.dims = cfg.dims;
  row.seed = cfg.seed;
  return row;
}

bool same_counters(const ResultRow& a, const ResultRow& b) {
  return a.map_tasks == b.map_tasks && a.total_tasks == b.total_tasks &&
         a.bytes_transferred == b.bytes_transferred && a.transfers == b.transfers &&
         a.locality_hits == b.locality_hits && a.accounted_overhead_ns == b.accounted_overhead_ns &&
         a.virtual_transfer_ns == b.virtual_transfer_ns && a.result_checksum == b.result_checksum;
}

}  // namespace

AppReport run_app(const AppConfig& cfg) {
  switch (cfg.app) {
    case AppKind::histogram: return apps::run_histogram(cfg).report;
    case AppKind::kmeans: return apps::run_kmeans(cfg).report;
    case AppKind::csvm: return apps::run_csvm(cfg).report;
    case AppKind::knn: return apps::run_knn(cfg).report;
  }
  throw std::invalid_argument("run_app: unknown application");
}

AppConfig cell_config(const Grid& grid, AppKind app, Mode mode, std::size_t workers,
                      std::size_t blocks_per_worker, std::uint64_t seed) {
  AppConfig cfg = grid.base;
  cfg.app = app;
  cfg.mode = mode;
  cfg.workers = workers;
  cfg.blocks_per_worker = blocks_per_worker;
  cfg.seed = seed;
  cfg.query_seed.reset();
  if (grid.weak_scaling) {
    cfg.n_rows = grid.base.n_rows * workers;
    cfg.query_rows = grid.base.query_rows * workers;
  }
  return cfg;
}

std::vector<ResultRow> run_experiment(const Grid& grid, const ProgressFn& progress) {
  if (grid.reps < 1) throw std::invalid_argument("run_experiment: reps must be >= 1");
  std::vector<ResultRow> out;
  auto emit = [&](ResultRow row) {
    if (progress) progress(row);
    out.push_back(std::move(row));
  };

  for (auto app : grid.apps) {
    for (auto workers : grid.workers) {
      for (auto bpw : grid.blocks_per_worker) {
        for (auto mode : grid.modes) {
          for (auto seed : grid.seeds) {
            const auto cfg = cell_config(grid, app, mode, workers, bpw, seed);
            std::vector<ResultRow> raw;
            try {
              cfg.validate();
              for (std::size_t rep = 0; rep < grid.reps; ++rep) {
                const auto report = run_app(cfg);
                ResultRow row = coordinates(cfg);
                row.block_rows = cfg.effective_block_rows();
                row.rep = static_cast<std::int64_t>(rep);
                row.wall_ms = report.wall_ms;
                row.map_tasks = report.map_tasks;
                row.total_tasks = report.metrics.tasks_submitted;
                row.bytes_transferred = report.metrics.bytes_transferred;
                row.transfers = report.metrics.transfers;
                row.locality_hits = report.metrics.locality_hits;
                row.accounted_overhead_ns = report.metrics.accounted_overhead_ns;
                row.virtual_transfer_ns = report.metrics.virtual_transfer_ns;
                row.result_checksum = report.result_checksum;
                row.extra = report.extra;
                raw.push_back(std::move(row));
              }
            } catch (const std::exception& e) {
              ResultRow warn = coordinates(cfg);
              warn.is_warning = true;
              warn.extra = {{"warning", sanitize(e.what())}};
              emit(std::move(warn));
              continue;
            }

            std::vector<double> wall;
            bool deterministic = true;
            for (const auto& r : raw) {
              wall.push_back(r.wall_ms);
              deterministic = deterministic && same_counters(r, raw.front());
            }
            ResultRow agg = raw.front();
            agg.rep = -1;
            agg.wall_ms = winsorized_mean(wall, 0.05);
            agg.extra.emplace_back("iqr_ms", format_ms(interquartile_range(wall)));
            if (!deterministic) agg.extra.emplace_back("nondeterministic", "1");
            for (auto& r : raw) emit(std::move(r));
            emit(std::move(agg));
          }
        }
      }
    }
  }
  return out;
}

std::string to_csv_line(const ResultRow& row) {
  std::ostringstream os;
  os << row.app << ',' << row.mode << ',' << row.workers << ',' << row.threads_per_worker << ','
     << row.blocks_per_worker << ',';
  if (row.is_warning) {
    os << ',' << row.dims << ',' << row.seed << ",,,,,,,,,,,";
  } else {
    os << row.block_rows << ',' << row.dims << ',' << row.seed << ',' << row.rep << ','
       << format_ms(row.wall_ms) << ',' << row.map_tasks << ',' << row.total_tasks << ','
       << row.bytes_transferred << ',' << row.transfers << ',' << row.locality_hits << ','
       << row.accounted_overhead_ns << ',' << row.virtual_transfer_ns << ','
       << row.result_checksum << ',';
  }
  for (std::size_t i = 0; i < row.extra.size(); ++i) {
    if (i) os << ';';
    os << sanitize(row.extra[i].first) << '=' << sanitize(row.extra[i].second);
  }
  return os.str();
}

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << kCsvHeader << '\n';
  for (const auto& r : rows) os << to_csv_line(r) << '\n';
}

}  // namespace splitrt::bench
