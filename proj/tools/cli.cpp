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

#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "splitrt/apps/common.hpp"
#include "splitrt/bench/experiment.hpp"
#include "splitrt/bench/verify.hpp"

namespace splitrt::cli {

namespace {

using apps::AppConfig;
using apps::AppKind;
using apps::Mode;

struct Options {
  std::string app;
  std::vector<std::size_t> workers{2};
  std::size_t threads_per_worker = 1;
  std::vector<std::size_t> blocks_per_worker;
  std::size_t block_rows = 0;
  std::vector<std::string> modes;
  std::size_t partitions_per_worker = 1;
  double sched_overhead_us = 0.0;
  double bandwidth_mbps = 0.0;
  double latency_us = 0.0;
  bool inject_overhead = false;
  std::vector<std::uint64_t> seeds{1};
  std::size_t reps = 1;
  std::string csv;
  std::size_t rows = 0;
  std::size_t dims = 0;
  bool weak_scaling = false;
  std::size_t bins = 8;
  std::size_t k = 8;
  std::size_t iters = 10;
  double C = 1.0;
  std::size_t max_iter = 5;
  std::size_t knn_k = 5;
  std::size_t query_blocks = 0;
  std::size_t query_rows = 0;
};

struct AppDefaults {
  std::size_t rows;
  std::size_t dims;
  std::size_t query_rows;
};

AppDefaults defaults_for(AppKind app) {
  switch (app) {
    case AppKind::histogram: return {200000, 3, 0};
    case AppKind::kmeans: return {50000, 4, 0};
    case AppKind::csvm: return {4096, 2, 0};
    case AppKind::knn: return {20000, 3, 2000};
  }
  return {10000, 2, 1000};
}

void add_options(CLI::App* cmd, Options& o) {
  const std::vector<std::string> app_names{"histogram", "kmeans", "csvm", "knn"};
  const std::vector<std::string> mode_names{"baseline", "spliter", "rechunk"};
  cmd->add_option("app", o.app, "Application")->required()->check(CLI::IsMember(app_names));
  cmd->add_option("--workers", o.workers, "Worker counts (comma-separated)")->delimiter(',');
  cmd->add_option("--threads-per-worker", o.threads_per_worker)->check(CLI::PositiveNumber);
  cmd->add_option("--blocks-per-worker", o.blocks_per_worker, "Blocks per worker (comma-separated)")
      ->delimiter(',');
  cmd->add_option("--block-rows", o.block_rows, "Explicit rows per block (overrides blocks per worker)");
  cmd->add_option("--mode", o.modes, "baseline, spliter, rechunk (comma-separated)")
      ->delimiter(',')
      ->check(CLI::IsMember(mode_names));
  cmd->add_option("--partitions-per-worker", o.partitions_per_worker)->check(CLI::PositiveNumber);
  cmd->add_option("--sched-overhead-us", o.sched_overhead_us, "Virtual scheduler cost per task")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--inject-overhead", o.inject_overhead, "Also sleep the scheduler cost in real time");
  cmd->add_option("--bandwidth-mbps", o.bandwidth_mbps, "Virtual link bandwidth in Mbit/s (0 = unlimited)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--latency-us", o.latency_us, "Virtual per-transfer latency")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", o.seeds, "Dataset seeds (comma-separated)")->delimiter(',');
  cmd->add_option("--reps", o.reps, "Repetitions per cell")->check(CLI::PositiveNumber);
  cmd->add_option("--csv", o.csv, "Write CSV here instead of stdout");
  cmd->add_option("--rows", o.rows, "Dataset rows (fit rows for knn)");
  cmd->add_option("--dims", o.dims, "Columns per point");
  cmd->add_flag("--weak-scaling", o.weak_scaling, "Scale --rows by the worker count");
  cmd->add_option("--bins", o.bins, "histogram: bins per dimension")->check(CLI::PositiveNumber);
  cmd->add_option("--k", o.k, "kmeans: clusters")->check(CLI::PositiveNumber);
  cmd->add_option("--iters", o.iters, "kmeans: iterations");
  cmd->add_option("--C", o.C, "csvm: penalty")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", o.max_iter, "csvm: cascade iterations")->check(CLI::PositiveNumber);
  cmd->add_option("--knn-k", o.knn_k, "knn: neighbors")->check(CLI::PositiveNumber);
  cmd->add_option("--query-blocks", o.query_blocks, "knn: query blocks (0 = one per worker)");
  cmd->add_option("--query-rows", o.query_rows, "knn: query rows");
}

bench::Grid make_grid(const Options& o, bool sweep) {
  const auto app = *apps::parse_app(o.app);
  const auto d = defaults_for(app);
  bench::Grid grid;
  AppConfig& base = grid.base;
  base.app = app;
  base.threads_per_worker = o.threads_per_worker;
  base.block_rows = o.block_rows;
  base.n_rows = o.rows ? o.rows : d.rows;
  base.dims = o.dims ? o.dims : d.dims;
  base.partitions_per_worker = o.partitions_per_worker;
  base.sched_overhead_ns = static_cast<std::uint64_t>(std::llround(o.sched_overhead_us * 1e3));
  base.bandwidth_bytes_per_s = static_cast<std::uint64_t>(std::llround(o.bandwidth_mbps * 1e6 / 8.0));
  base.latency_ns = static_cast<std::uint64_t>(std::llround(o.latency_us * 1e3));
  base.inject_real_overhead = o.inject_overhead;
  base.bins = o.bins;
  base.k = o.k;
  base.iters = o.iters;
  base.C = o.C;
  base.max_iter = o.max_iter;
  base.knn_k = o.knn_k;
  base.query_blocks = o.query_blocks;
  base.query_rows = o.query_rows ? o.query_rows : (d.query_rows ? d.query_rows : 1000);

  grid.apps = {app};
  grid.workers = o.workers;
  grid.seeds = o.seeds;
  grid.reps = o.reps;
  grid.weak_scaling = o.weak_scaling;
  if (!o.blocks_per_worker.empty()) {
    grid.blocks_per_worker = o.blocks_per_worker;
  } else {
    grid.blocks_per_worker = sweep ? std::vector<std::size_t>{1, 4, 16, 48} : std::vector<std::size_t>{4};
  }
  grid.modes.clear();
  if (o.modes.empty()) {
    grid.modes = {Mode::baseline, Mode::spliter, Mode::rechunk};
  } else {
    for (const auto& m : o.modes) grid.modes.push_back(*apps::parse_mode(m));
  }
  return grid;
}

int run_grid(const Options& o, bool sweep, std::ostream& out, std::ostream& err) {
  const auto grid = make_grid(o, sweep);
  const auto rows = bench::run_experiment(grid, [&](const bench::ResultRow& r) {
    if (r.is_warning) err << "warning: " << bench::to_csv_line(r) << '\n';
  });
  if (o.csv.empty()) {
    bench::write_csv(out, rows);
    return kExitOk;
  }
  std::ofstream file(o.csv);
  if (!file) {
    err << "cannot open " << o.csv << " for writing\n";
    return kExitUsage;
  }
  bench::write_csv(file, rows);
  for (const auto& r : rows) {
    if (r.rep != -1 || r.is_warning) continue;
    out << r.app << ' ' << r.mode << " workers=" << r.workers << " blocks/worker=" << r.blocks_per_worker
        << " wall_ms=" << r.wall_ms << " map_tasks=" << r.map_tasks
        << " bytes_transferred=" << r.bytes_transferred << '\n';
  }
  out << "wrote " << rows.size() << " rows to " << o.csv << '\n';
  return kExitOk;
}

int run_verify(const Options& o, std::ostream& out) {
  const auto grid = make_grid(o, false);
  bool ok = true;
  for (auto workers : grid.workers) {
    for (auto bpw : grid.blocks_per_worker) {
      for (auto seed : grid.seeds) {
        const auto cfg = bench::cell_config(grid, grid.base.app, Mode::baseline, workers, bpw, seed);
        const auto verdict = bench::verify_modes(cfg);
        out << o.app << " workers=" << workers << " blocks/worker=" << bpw << " seed=" << seed << '\n';
        for (const auto& line : verdict.details) out << "  " << line << '\n';
        ok = ok && verdict.ok;
      }
    }
  }
  out << (ok ? "mode equivalence confirmed for " : "mode equivalence FAILED for ") << o.app << '\n';
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Task runtime with locality-aware partitions: benchmarks and checks", "splitrt"};
  app.require_subcommand(1);
  Options opts;
  auto* bench_cmd = app.add_subcommand("bench", "Run one grid of cells and emit CSV");
  auto* sweep_cmd = app.add_subcommand("sweep", "Block sweep over every mode and emit CSV");
  auto* verify_cmd = app.add_subcommand("verify", "Check that baseline, spliter and rechunk agree");
  for (auto* cmd : {bench_cmd, sweep_cmd, verify_cmd}) add_options(cmd, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*verify_cmd) return run_verify(opts, out);
    return run_grid(opts, static_cast<bool>(*sweep_cmd), out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
}

}  // namespace splitrt::cli
