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

#include "splitrt/kernels/kdtree.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace splitrt::kernels {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return s;
}

// Max-heap on (dist2, index) holding the best k seen so far.
class TopK {
 public:
  explicit TopK(std::size_t k) : k_(k) {}

  void offer(Neighbor n) {
    if (heap_.size() < k_) {
      heap_.push(n);
    } else if (n < heap_.top()) {
      heap_.pop();
      heap_.push(n);
    }
  }
  bool full() const noexcept { return heap_.size() == k_; }
  double worst() const noexcept {
    return full() ? heap_.top().dist2 : std::numeric_limits<double>::infinity();
  }
  std::vector<Neighbor> sorted() && {
    std::vector<Neighbor> out;
    out.reserve(heap_.size());
    while (!heap_.empty()) {
      out.push_back(heap_.top());
      heap_.pop();
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  std::size_t k_;
  std::priority_queue<Neighbor> heap_;
};

}  // namespace

KdTree KdTree::build(Matrix points, std::size_t leaf_size) {
  if (leaf_size < 1) throw std::invalid_argument("KdTree: leaf_size must be >= 1");
  if (points.rows() > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("KdTree: too many points");
  }
  KdTree tree;
  tree.points_ = std::move(points);
  tree.leaf_size_ = leaf_size;
  tree.order_.resize(tree.points_.rows());
  for (std::uint32_t i = 0; i < tree.order_.size(); ++i) tree.order_[i] = i;
  if (tree.points_.rows() > 0) tree.build_node(0, static_cast<std::uint32_t>(tree.order_.size()), 0);
  return tree;
}

std::int32_t KdTree::build_node(std::uint32_t begin, std::uint32_t end, std::size_t depth) {
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(Node{-1, 0.0, -1, -1, begin, end});
  const std::size_t n = end - begin;
  if (n <= leaf_size_) return id;

  const std::size_t dim = depth % points_.cols();
  auto first = order_.begin() + begin;
  auto last = order_.begin() + end;
  const auto [lo_it, hi_it] = std::minmax_element(first, last, [&](std::uint32_t a, std::uint32_t b) {
    return points_(a, dim) < points_(b, dim);
  });
  if (points_(*lo_it, dim) == points_(*hi_it, dim)) return id;

  const std::size_t mid = (n - 1) / 2;
  std::nth_element(first, first + mid, last, [&](std::uint32_t a, std::uint32_t b) {
    const double va = points_(a, dim);
    const double vb = points_(b, dim);
    return va < vb || (va == vb && a < b);
  });
  const double split = points_(*(first + mid), dim);
  const auto cut = begin + static_cast<std::uint32_t>(mid + 1);

  const auto left = build_node(begin, cut, depth + 1);
  const auto right = build_node(cut, end, depth + 1);
  Node& node = nodes_[id];
  node.split_dim = static_cast<int>(dim);
  node.split_value = split;
  node.left = left;
  node.right = right;
  return id;
}

std::size_t KdTree::depth() const noexcept {
  if (nodes_.empty()) return 0;
  std::size_t best = 0;
  std::vector<std::pair<std::int32_t, std::size_t>> stack{{0, 1}};
  while (!stack.empty()) {
    const auto [id, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    const Node& node = nodes_[id];
    if (!node.is_leaf()) {
      stack.push_back({node.left, d + 1});
      stack.push_back({node.right, d + 1});
    }
  }
  return best;
}

KnnResult KdTree::knn(std::span<const double> query, std::size_t k) const {
  if (k < 1) throw std::invalid_argument("knn: k must be >= 1");
  if (query.size() != dims() && size() > 0) throw std::invalid_argument("knn: query width mismatch");
  KnnResult result;
  if (nodes_.empty()) return result;
  TopK best(k);

  auto visit = [&](auto&& self, std::int32_t id) -> void {
    const Node& node = nodes_[id];
    if (node.is_leaf()) {
      for (auto i = node.begin; i < node.end; ++i) {
        const auto p = order_[i];
        best.offer({squared_distance(points_.row(p), query), p});
        ++result.distance_evals;
      }
      return;
    }
    const double diff = query[node.split_dim] - node.split_value;
    const auto near = diff <= 0.0 ? node.left : node.right;
    const auto far = diff <= 0.0 ? node.right : node.left;
    self(self, near);
    // Points on the far side are at least |diff| away along split_dim.
    if (!best.full() || diff * diff <= best.worst()) self(self, far);
  };
  visit(visit, 0);
  result.neighbors = std::move(best).sorted();
  return result;
}

KnnResult brute_knn(const Matrix& points, std::span<const double> query, std::size_t k) {
  if (k < 1) throw std::invalid_argument("brute_knn: k must be >= 1");
  KnnResult result;
  std::vector<Neighbor> all;
  all.reserve(points.rows());
  for (std::size_t i = 0; i < points.rows(); ++i) {
    all.push_back({squared_distance(points.row(i), query), i});
    ++result.distance_evals;
  }
  const auto take = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end());
  all.resize(take);
  result.neighbors = std::move(all);
  return result;
}

std::vector<Neighbor> merge_kqueries(std::span<const std::vector<Neighbor>> parts, std::size_t k) {
  std::vector<Neighbor> all;
  for (const auto& part : parts) all.insert(all.end(), part.begin(), part.end());
  const auto take = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end());
  all.resize(take);
  return all;
}

}  // namespace splitrt::kernels
