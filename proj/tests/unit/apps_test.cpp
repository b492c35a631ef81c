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

#include "splitrt/apps/apps.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <string>

#include "splitrt/kernels/kdtree.hpp"
#include "splitrt/kernels/svm.hpp"

namespace splitrt::apps {
namespace {

constexpr Mode kAllModes[] = {Mode::baseline, Mode::spliter, Mode::rechunk};

AppConfig Config(AppKind app, Mode mode = Mode::baseline) {
  AppConfig c;
  c.app = app;
  c.mode = mode;
  return c;
}

TEST(AppConfigTest, Parsing) {
  EXPECT_EQ(parse_app("knn"), AppKind::knn);
  EXPECT_EQ(parse_mode("spliter"), Mode::spliter);
  EXPECT_FALSE(parse_app("svm").has_value());
  EXPECT_FALSE(parse_mode("fast").has_value());
  EXPECT_EQ(to_string(Mode::rechunk), "rechunk");
  EXPECT_EQ(to_string(AppKind::csvm), "csvm");
}

TEST(AppConfigTest, DerivedBlockRows) {
  AppConfig c;
  c.n_rows = 1000;
  c.workers = 2;
  c.blocks_per_worker = 48;
  EXPECT_EQ(c.effective_block_rows(), 11u);  // ceil(1000 / 96)
  c.block_rows = 7;
  EXPECT_EQ(c.effective_block_rows(), 7u);
  c.block_rows = 2000;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(ReduceTreeTest, FixedAscendingOrder) {
  RuntimeConfig rc;
  rc.num_workers = 3;
  Runtime rt(rc);
  std::vector<DataRef> refs;
  for (std::size_t i = 0; i < 10; ++i) refs.push_back(rt.put_value(std::string(1, char('a' + i)), WorkerId{i % 3}));
  auto out = reduce_tree(rt, "concat", refs, 3, [](std::span<const Payload> in) {
    std::string s;
    for (const auto& p : in) s += p.as<std::string>();
    return Payload::make(s);
  });
  EXPECT_EQ(rt.gather(out).as<std::string>(), "abcdefghij");
  // Groups {3,3,3,1}, then {3,1}, then {2}; singletons pass through untouched.
  EXPECT_EQ(rt.metrics().kind("concat"), 3u + 1u + 1u);
  rt.wait_idle();
  for (const auto& r : refs) EXPECT_FALSE(rt.is_live(r));
}

TEST(ReduceTreeTest, SingleInputNeedsNoTask) {
  Runtime rt(RuntimeConfig{});
  auto ref = rt.put_value<int>(3, WorkerId{0});
  std::vector<DataRef> refs{ref};
  auto out = reduce_tree(rt, "m", refs, 8, [](std::span<const Payload> in) { return in[0]; });
  EXPECT_EQ(out.id, ref.id);
  EXPECT_EQ(rt.metrics().tasks_submitted, 0u);
}

// ---- histogram ----

TEST(HistogramAppTest, ConservationOnOneWorker) {
  auto c = Config(AppKind::histogram);
  c.workers = 1;
  c.blocks_per_worker = 4;
  c.n_rows = 1000;
  c.dims = 1;
  c.bins = 4;
  for (auto m : kAllModes) {
    c.mode = m;
    auto run = run_histogram(c);
    EXPECT_EQ(run.counts.total(), 1000u);
    EXPECT_EQ(run.counts.discarded, 0u);
  }
}

TEST(HistogramAppTest, ModesBitIdentical) {
  auto c = Config(AppKind::histogram);
  c.n_rows = 5000;
  c.dims = 3;
  c.blocks_per_worker = 12;
  c.placement = SeededRandom{4};
  const auto ref = run_histogram(c).counts;
  for (auto m : {Mode::spliter, Mode::rechunk}) {
    c.mode = m;
    EXPECT_EQ(run_histogram(c).counts, ref) << to_string(m);
  }
}

TEST(HistogramAppTest, TaskCountsAndZeroTransferMap) {
  auto c = Config(AppKind::histogram);
  c.workers = 2;
  c.blocks_per_worker = 48;
  c.n_rows = 96 * 10;
  c.sched_overhead_ns = 1000;
  auto base = run_histogram(c).report;
  c.mode = Mode::spliter;
  auto spl = run_histogram(c).report;
  c.mode = Mode::rechunk;
  auto re = run_histogram(c).report;

  EXPECT_EQ(base.map_tasks, 96u);
  EXPECT_EQ(spl.map_tasks, 2u);
  EXPECT_EQ(re.map_tasks, 2u);
  EXPECT_EQ(spl.num_partitions, 2u);
  EXPECT_EQ(spl.map_stage.bytes_transferred, 0u);
  EXPECT_EQ(base.map_stage.accounted_overhead_ns * 2, spl.map_stage.accounted_overhead_ns * 96);
  EXPECT_EQ(base.metrics.accounted_overhead_ns, base.metrics.tasks_submitted * 1000);
}

TEST(HistogramAppTest, PartitionsPerWorkerLaw) {
  auto c = Config(AppKind::histogram, Mode::spliter);
  c.workers = 3;
  c.blocks_per_worker = 2;
  c.partitions_per_worker = 4;
  c.n_rows = 600;
  // Each worker owns 2 blocks, so min(ppw, 2) partitions each.
  EXPECT_EQ(run_histogram(c).report.map_tasks, 6u);
}

// ---- k-means ----

TEST(KMeansAppTest, SingleClusterIsGlobalMean) {
  auto c = Config(AppKind::kmeans);
  c.k = 1;
  c.iters = 3;
  c.n_rows = 500;
  c.dims = 2;
  for (auto m : kAllModes) {
    c.mode = m;
    auto run = run_kmeans(c);
    RuntimeConfig rc;
    Runtime rt(rc);
    auto arr = create_array(rt, c.n_rows, c.dims, c.n_rows, RoundRobin{}, GaussianBlobs{c.seed, 1});
    auto pts = to_matrix(rt, arr);
    for (std::size_t d = 0; d < 2; ++d) {
      double mean = 0;
      for (std::size_t r = 0; r < pts.rows(); ++r) mean += pts(r, d);
      mean /= static_cast<double>(pts.rows());
      EXPECT_NEAR(run.centers(0, d), mean, 1e-12 * std::max(1.0, std::abs(mean)));
    }
  }
}

TEST(KMeansAppTest, ModesAgreeAndCountTasks) {
  auto c = Config(AppKind::kmeans);
  c.n_rows = 4000;
  c.dims = 4;
  c.k = 4;
  c.iters = 5;
  c.blocks_per_worker = 6;
  auto base = run_kmeans(c);
  EXPECT_EQ(base.report.map_tasks, 12u * 5u);
  for (auto m : {Mode::spliter, Mode::rechunk}) {
    c.mode = m;
    auto other = run_kmeans(c);
    double worst = 0;
    for (std::size_t i = 0; i < base.centers.data().size(); ++i) {
      const double a = base.centers.data()[i];
      const double b = other.centers.data()[i];
      worst = std::max(worst, std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}));
    }
    EXPECT_LE(worst, 1e-9) << to_string(m);
    EXPECT_EQ(other.report.map_tasks, 2u * 5u) << to_string(m);
  }
  c.mode = Mode::spliter;
  EXPECT_EQ(run_kmeans(c).report.map_stage.bytes_transferred, 0u);
}

TEST(KMeansAppTest, InertiaTraceNonIncreasing) {
  auto c = Config(AppKind::kmeans);
  c.n_rows = 3000;
  c.k = 5;
  c.dims = 3;
  auto run = run_kmeans(c);
  ASSERT_EQ(run.inertia.size(), c.iters);
  for (std::size_t i = 1; i < run.inertia.size(); ++i) {
    EXPECT_LE(run.inertia[i], run.inertia[i - 1] * (1 + 1e-9));
  }
}

// ---- cascade SVM ----

TEST(CsvmAppTest, SeparableBlobsAllModes) {
  auto c = Config(AppKind::csvm);
  c.n_rows = 2048;
  c.dims = 2;
  c.blocks_per_worker = 4;
  for (auto m : kAllModes) {
    c.mode = m;
    auto run = run_csvm(c);
    EXPECT_GE(run.accuracy, 0.99) << to_string(m);
    for (auto g : run.model.support_global_indexes) EXPECT_LT(g, c.n_rows);
  }
}

TEST(CsvmAppTest, OneBlockEqualsDirectTraining) {
  auto c = Config(AppKind::csvm);
  c.workers = 1;
  c.blocks_per_worker = 1;
  c.n_rows = 300;
  c.separation = 4.0;
  auto run = run_csvm(c);

  Matrix pts(c.n_rows, c.dims);
  std::vector<double> y(c.n_rows);
  std::vector<std::size_t> idx(c.n_rows);
  for (std::size_t r = 0; r < c.n_rows; ++r) {
    generate_row(LabeledBlobs{c.seed, c.separation, 1.0}, r, pts.row(r));
    y[r] = labeled_blobs_label(r);
    idx[r] = r;
  }
  kernels::SmoParams params;
  params.C = c.C;
  auto direct = kernels::smo_train(pts, y, params, idx);
  EXPECT_EQ(run.model.support_global_indexes, direct.support_global_indexes);
  EXPECT_EQ(run.model.alphas, direct.alphas);
  EXPECT_EQ(run.model.bias, direct.bias);
}

TEST(CsvmAppTest, SupportVectorsAreTrainingRows) {
  auto c = Config(AppKind::csvm, Mode::spliter);
  c.n_rows = 1000;
  c.blocks_per_worker = 5;
  c.separation = 3.0;
  auto run = run_csvm(c);
  std::vector<double> row(c.dims);
  for (std::size_t i = 0; i < run.model.num_support(); ++i) {
    const auto g = run.model.support_global_indexes[i];
    generate_row(LabeledBlobs{c.seed, c.separation, 1.0}, g, row);
    const auto sv = run.model.support_points.row(i);
    EXPECT_TRUE(std::equal(row.begin(), row.end(), sv.begin()));
    EXPECT_EQ(run.model.support_labels[i], labeled_blobs_label(g));
  }
}

TEST(CsvmAppTest, SingleClassBlockIsReported) {
  auto c = Config(AppKind::csvm);
  c.n_rows = 64;
  c.block_rows = 1;
  try {
    run_csvm(c);
    FAIL() << "expected a single-class error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("larger blocks"), std::string::npos);
  }
}

// ---- kNN ----

TEST(KnnAppTest, QueryEqualToFitRowFindsIt) {
  auto c = Config(AppKind::knn);
  c.n_rows = 2000;
  c.dims = 3;
  c.query_rows = 200;
  c.query_seed = c.seed;
  for (auto m : kAllModes) {
    c.mode = m;
    auto run = run_knn(c);
    ASSERT_EQ(run.indexes.size(), 200u);
    for (std::size_t q = 0; q < 200; ++q) {
      EXPECT_EQ(run.indexes[q][0], q);
      EXPECT_EQ(run.distances[q][0], 0.0);
    }
  }
}

TEST(KnnAppTest, ModesMatchBruteForce) {
  auto c = Config(AppKind::knn);
  c.n_rows = 5000;
  c.dims = 3;
  c.query_rows = 1000;
  c.knn_k = 5;
  const auto fit = knn_fit_points(c);
  const auto queries = knn_query_points(c);
  std::vector<std::vector<std::size_t>> oracle;
  for (std::size_t q = 0; q < queries.rows(); ++q) {
    std::vector<std::size_t> ids;
    for (const auto& n : kernels::brute_knn(fit, queries.row(q), 5).neighbors) ids.push_back(n.index);
    oracle.push_back(ids);
  }
  for (auto m : kAllModes) {
    c.mode = m;
    EXPECT_EQ(run_knn(c).indexes, oracle) << to_string(m);
  }
}

TEST(KnnAppTest, LookupTaskCount) {
  auto c = Config(AppKind::knn);
  c.n_rows = 4000;
  c.query_rows = 400;
  c.workers = 2;
  c.blocks_per_worker = 6;
  c.query_blocks = 3;
  auto base = run_knn(c);
  EXPECT_EQ(base.num_trees, 12u);
  EXPECT_EQ(base.report.metrics.kind(kKnnQuery), 3u * 12u);
  c.mode = Mode::spliter;
  auto spl = run_knn(c);
  EXPECT_EQ(spl.num_trees, 2u);
  EXPECT_EQ(spl.report.metrics.kind(kKnnQuery), 3u * 2u);
  EXPECT_EQ(spl.report.map_stage.bytes_transferred, 0u);
  c.mode = Mode::rechunk;
  EXPECT_EQ(run_knn(c).num_trees, 2u);
}

TEST(KnnAppTest, KLargerThanFitSetRejected) {
  auto c = Config(AppKind::knn);
  c.n_rows = 4;
  c.blocks_per_worker = 1;
  c.knn_k = 5;
  EXPECT_THROW(run_knn(c), std::invalid_argument);
}

TEST(AppsTest, RepeatedRunsAreDeterministic) {
  for (auto app : {AppKind::histogram, AppKind::kmeans, AppKind::csvm, AppKind::knn}) {
    for (auto m : kAllModes) {
      auto c = Config(app, m);
      c.n_rows = 2000;
      c.query_rows = 200;
      c.workers = 3;
      c.threads_per_worker = 2;
      c.blocks_per_worker = 5;
      AppReport a;
      AppReport b;
      switch (app) {
        case AppKind::histogram: a = run_histogram(c).report; b = run_histogram(c).report; break;
        case AppKind::kmeans: a = run_kmeans(c).report; b = run_kmeans(c).report; break;
        case AppKind::csvm: a = run_csvm(c).report; b = run_csvm(c).report; break;
        case AppKind::knn: a = run_knn(c).report; b = run_knn(c).report; break;
      }
      EXPECT_EQ(a.result_checksum, b.result_checksum) << to_string(app) << "/" << to_string(m);
      EXPECT_EQ(a.metrics, b.metrics) << to_string(app) << "/" << to_string(m);
      EXPECT_EQ(a.extra, b.extra);
    }
  }
}

}  // namespace
}  // namespace splitrt::apps
