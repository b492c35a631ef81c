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
#include <vector>

#include "splitrt/apps/common.hpp"
#include "splitrt/kernels/histogram.hpp"
#include "splitrt/kernels/svm.hpp"
#include "splitrt/matrix.hpp"

namespace splitrt::apps {

// Task kinds, as reported in Metrics::tasks_by_kind.
inline constexpr const char* kHistogramMap = "histogram.map";
inline constexpr const char* kHistogramReduce = "histogram.reduce";
inline constexpr const char* kKMeansMap = "kmeans.map";
inline constexpr const char* kKMeansReduce = "kmeans.reduce";
inline constexpr const char* kCsvmTrain = "csvm.train";
inline constexpr const char* kCsvmMerge = "csvm.merge";
inline constexpr const char* kCsvmPredict = "csvm.predict";
inline constexpr const char* kKnnFit = "knn.fit";
inline constexpr const char* kKnnQuery = "knn.query";
inline constexpr const char* kKnnMerge = "knn.merge";

/// Arity of the partial-result reductions of histogram and k-means.
inline constexpr std::size_t kReduceArity = 8;

struct HistogramRun {
  kernels::CountTensor counts;
  AppReport report;
};

/// n-dimensional histogram of UniformCube data over [0,1)^dims.
HistogramRun run_histogram(const AppConfig& cfg);

struct KMeansRun {
  Matrix centers;
  /// Inertia of the centers each iteration started from.
  std::vector<double> inertia;
  AppReport report;
};

/// Lloyd's k-means for cfg.iters iterations over GaussianBlobs data with
/// cfg.k blobs, starting from the first k rows.
KMeansRun run_kmeans(const AppConfig& cfg);

struct CsvmRun {
  kernels::SvmModel model;
  double accuracy = 0.0;
  std::size_t iterations = 0;
  AppReport report;
};

/// Binary cascade SVM over LabeledBlobs data, iterated until the final
/// support set stops changing or cfg.max_iter iterations ran.
CsvmRun run_csvm(const AppConfig& cfg);

struct KnnRun {
  /// For each query row, the global indexes of its k nearest fit rows.
  std::vector<std::vector<std::size_t>> indexes;
  /// Matching squared distances.
  std::vector<std::vector<double>> distances;
  std::size_t num_trees = 0;
  AppReport report;
};

/// k-nearest neighbors of UniformCube query rows against UniformCube fit rows.
KnnRun run_knn(const AppConfig& cfg);

/// The fit set and query set run_knn generates for `cfg`, for oracles.
Matrix knn_fit_points(const AppConfig& cfg);
Matrix knn_query_points(const AppConfig& cfg);

}  // namespace splitrt::apps
