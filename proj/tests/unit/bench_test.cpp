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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "splitrt/bench/experiment.hpp"
#include "splitrt/bench/stats.hpp"
#include "splitrt/bench/verify.hpp"

namespace splitrt::bench {
namespace {

using apps::AppKind;
using apps::Mode;

TEST(StatsTest, ConstantSamples) {
  std::vector<double> v(7, 3.25);
  EXPECT_EQ(winsorized_mean(v), 3.25);
  EXPECT_EQ(interquartile_range(v), 0.0);
}

TEST(StatsTest, HandComputedWinsorizing) {
  // 1..20 plus an outlier of 1000. With 21 samples the 5th and 95th
  // percentiles sit exactly on ranks 1 and 19, i.e. the values 2 and 20.
  std::vector<double> v;
  for (int i = 1; i <= 20; ++i) v.push_back(i);
  v.push_back(1000);
  EXPECT_DOUBLE_EQ(percentile(v, 5), 2.0);
  EXPECT_DOUBLE_EQ(percentile(v, 95), 20.0);
  EXPECT_DOUBLE_EQ(winsorized_mean(v), 231.0 / 21.0);
  EXPECT_DOUBLE_EQ(interquartile_range(v), 10.0);
}

TEST(StatsTest, PercentileInterpolates) {
  std::vector<double> v{4, 1, 3, 2};
  EXPECT_DOUBLE_EQ(percentile(v, 0), 1.0);
  EXPECT_DOUBLE_EQ(percentile(v, 50), 2.5);
  EXPECT_DOUBLE_EQ(percentile(v, 100), 4.0);
  EXPECT_THROW(percentile(std::vector<double>{}, 50), std::invalid_argument);
}

Grid SmallGrid() {
  Grid g;
  g.base.n_rows = 400;
  g.base.dims = 2;
  g.apps = {AppKind::histogram};
  g.modes = {Mode::spliter};
  g.workers = {2};
  g.blocks_per_worker = {4};
  g.seeds = {3};
  return g;
}

TEST(ExperimentTest, RawRowsThenAggregate) {
  auto g = SmallGrid();
  g.reps = 3;
  auto rows = run_experiment(g);
  ASSERT_EQ(rows.size(), 4u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(rows[i].rep, i);
  const auto& agg = rows[3];
  EXPECT_EQ(agg.rep, -1);
  EXPECT_EQ(agg.result_checksum, rows[0].result_checksum);
  EXPECT_EQ(agg.bytes_transferred, rows[0].bytes_transferred);
  ASSERT_FALSE(agg.extra.empty());
  EXPECT_EQ(agg.extra.back().first, "iqr_ms");
  for (const auto& [k, v] : agg.extra) EXPECT_NE(k, "nondeterministic");
  for (int i = 1; i < 3; ++i) {
    EXPECT_EQ(rows[i].total_tasks, rows[0].total_tasks);
    EXPECT_EQ(rows[i].transfers, rows[0].transfers);
    EXPECT_EQ(rows[i].locality_hits, rows[0].locality_hits);
  }
}

TEST(ExperimentTest, GridIsCartesian) {
  auto g = SmallGrid();
  g.modes = {Mode::baseline, Mode::spliter, Mode::rechunk};
  g.blocks_per_worker = {1, 4};
  g.seeds = {1, 2};
  auto rows = run_experiment(g);
  EXPECT_EQ(rows.size(), 3u * 2u * 2u * 2u);
}

TEST(ExperimentTest, InvalidCellBecomesWarningRow) {
  auto g = SmallGrid();
  g.base.block_rows = 10'000;
  auto rows = run_experiment(g);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].is_warning);
  EXPECT_EQ(rows[0].extra.at(0).first, "warning");
  const auto line = to_csv_line(rows[0]);
  EXPECT_NE(line.find("warning="), std::string::npos);
  EXPECT_EQ(std::count(line.begin(), line.end(), ','), 18);
}

TEST(ExperimentTest, WeakScalingGrowsRows) {
  auto g = SmallGrid();
  g.weak_scaling = true;
  g.base.n_rows = 100;
  g.workers = {1, 4};
  g.blocks_per_worker = {1};
  auto rows = run_experiment(g);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].block_rows, 100u);
  EXPECT_EQ(rows[2].block_rows, 100u);
  EXPECT_EQ(rows[2].map_tasks, 4u);
}

TEST(CsvTest, HeaderAndColumnCount) {
  auto g = SmallGrid();
  g.apps = {AppKind::kmeans};
  g.base.k = 2;
  g.base.iters = 2;
  std::ostringstream os;
  write_csv(os, run_experiment(g));
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line,
            "app,mode,workers,threads_per_worker,blocks_per_worker,block_rows,dims,seed,rep,wall_ms,"
            "map_tasks,total_tasks,bytes_transferred,transfers,locality_hits,accounted_overhead_ns,"
            "virtual_transfer_ns,result_checksum,extra");
  int data_lines = 0;
  while (std::getline(in, line)) {
    ++data_lines;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 18) << line;
    EXPECT_EQ(line.rfind("kmeans,spliter,2,1,4,", 0), 0u) << line;
    EXPECT_NE(line.find("inertia="), std::string::npos);
  }
  EXPECT_EQ(data_lines, 2);
}

TEST(VerifyTest, RelativeDifference) {
  Matrix a(1, 2, {1.0, 2.0});
  Matrix b(1, 2, {1.0, 2.0 + 2e-9});
  EXPECT_NEAR(max_relative_difference(a, b), 1e-9, 1e-12);
  EXPECT_EQ(max_relative_difference(Matrix(1, 1), Matrix(1, 1)), 0.0);
  EXPECT_TRUE(std::isinf(max_relative_difference(Matrix(1, 1), Matrix(2, 1))));
}

TEST(VerifyTest, AllAppsAgreeAcrossModes) {
  for (auto app : {AppKind::histogram, AppKind::kmeans, AppKind::csvm, AppKind::knn}) {
    apps::AppConfig c;
    c.app = app;
    c.n_rows = 1500;
    c.query_rows = 150;
    c.blocks_per_worker = 6;
    const auto v = verify_modes(c);
    EXPECT_TRUE(v.ok) << apps::to_string(app);
    EXPECT_EQ(v.details.size(), 2u);
  }
}

}  // namespace
}  // namespace splitrt::bench
