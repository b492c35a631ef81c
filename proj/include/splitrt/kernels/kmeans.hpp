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
#include <span>
#include <vector>

#include "splitrt/matrix.hpp"

namespace splitrt::kernels {

/// Per-cluster coordinate sums and counts for one Lloyd step, plus the
/// squared distance of every point to its assigned (old) center.
struct KMeansPartial {
  Matrix sums;
  std::vector<std::uint64_t> counts;
  double inertia = 0.0;

  static KMeansPartial zeros(std::size_t k, std::size_t dims);
  std::size_t size_bytes() const noexcept {
    return sums.size_bytes() + counts.size() * sizeof(std::uint64_t) + sizeof(double);
  }
};

/// Index of the nearest center by squared Euclidean distance; lowest index
/// wins ties.
std::size_t nearest_center(std::span<const double> point, const Matrix& centers,
                           double* dist2 = nullptr) noexcept;

KMeansPartial kmeans_partial(const Matrix& block, const Matrix& centers);

/// Sums the parts in the given order.
KMeansPartial kmeans_merge(std::span<const KMeansPartial* const> parts);
KMeansPartial kmeans_merge(std::span<const KMeansPartial> parts);

/// sums[c] / counts[c], keeping old_centers[c] for empty clusters.
Matrix kmeans_recompute(const Matrix& sums, std::span<const std::uint64_t> counts,
                        const Matrix& old_centers);

/// Total squared distance of the points to their nearest center.
double kmeans_inertia(const Matrix& points, const Matrix& centers);

}  // namespace splitrt::kernels
