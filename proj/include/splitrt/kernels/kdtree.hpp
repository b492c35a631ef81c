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
#include <span>
#include <vector>

#include "splitrt/matrix.hpp"

namespace splitrt::kernels {

/// One neighbor candidate. Ordered by (dist2, index).
struct Neighbor {
  double dist2 = 0.0;
  std::size_t index = 0;
  friend auto operator<=>(const Neighbor&, const Neighbor&) = default;
};

struct KnnResult {
  std::vector<Neighbor> neighbors;  // ascending
  std::uint64_t distance_evals = 0;
};

/// Median-split KD-tree over a private copy of the points. Immutable once
/// built; concurrent queries are safe.
class KdTree {
 public:
  static constexpr std::size_t kDefaultLeafSize = 16;

  struct Node {
    /// Split dimension, or -1 for a leaf.
    int split_dim = -1;
    double split_value = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    /// Range into the permutation of point indexes covered by this node.
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    bool is_leaf() const noexcept { return split_dim < 0; }
  };

  KdTree() = default;

  /// Splits on dimension (depth mod dims) at the lower median, ordering ties
  /// by point index. A node becomes a leaf when it holds at most leaf_size
  /// points or all its points share one value on the split dimension.
  static KdTree build(Matrix points, std::size_t leaf_size = kDefaultLeafSize);

  /// Exact k nearest by squared Euclidean distance, ties to the lower index.
  KnnResult knn(std::span<const double> query, std::size_t k) const;

  std::size_t size() const noexcept { return points_.rows(); }
  std::size_t dims() const noexcept { return points_.cols(); }
  std::size_t leaf_size() const noexcept { return leaf_size_; }
  const Matrix& points() const noexcept { return points_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  /// Point indexes in leaf order; node [begin, end) ranges index into this.
  const std::vector<std::uint32_t>& order() const noexcept { return order_; }
  std::size_t depth() const noexcept;

  std::size_t size_bytes() const noexcept {
    return points_.size_bytes() + nodes_.size() * sizeof(Node) + order_.size() * sizeof(std::uint32_t);
  }

 private:
  std::int32_t build_node(std::uint32_t begin, std::uint32_t end, std::size_t depth);

  Matrix points_;
  std::size_t leaf_size_ = kDefaultLeafSize;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> order_;
};

/// Exhaustive search with the same contract as KdTree::knn.
KnnResult brute_knn(const Matrix& points, std::span<const double> query, std::size_t k);

/// Globally smallest k by (dist2, index) across all parts.
std::vector<Neighbor> merge_kqueries(std::span<const std::vector<Neighbor>> parts, std::size_t k);

}  // namespace splitrt::kernels
