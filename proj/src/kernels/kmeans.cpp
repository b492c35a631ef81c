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

#include "splitrt/kernels/kmeans.hpp"

#include <limits>
#include <stdexcept>

namespace splitrt::kernels {

KMeansPartial KMeansPartial::zeros(std::size_t k, std::size_t dims) {
  return KMeansPartial{Matrix(k, dims), std::vector<std::uint64_t>(k, 0), 0.0};
}

std::size_t nearest_center(std::span<const double> point, const Matrix& centers,
                           double* dist2) noexcept {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centers.rows(); ++c) {
    const auto center = centers.row(c);
    double d = 0.0;
    for (std::size_t j = 0; j < point.size(); ++j) {
      const double diff = point[j] - center[j];
      d += diff * diff;
    }
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  if (dist2) *dist2 = best_d;
  return best;
}

KMeansPartial kmeans_partial(const Matrix& block, const Matrix& centers) {
  if (centers.rows() == 0) throw std::invalid_argument("kmeans_partial: no centers");
  auto out = KMeansPartial::zeros(centers.rows(), centers.cols());
  if (block.empty()) return out;
  if (block.cols() != centers.cols()) throw std::invalid_argument("kmeans_partial: width mismatch");
  for (std::size_t r = 0; r < block.rows(); ++r) {
    const auto p = block.row(r);
    double d = 0.0;
    const auto c = nearest_center(p, centers, &d);
    auto sum = out.sums.row(c);
    for (std::size_t j = 0; j < p.size(); ++j) sum[j] += p[j];
    out.counts[c] += 1;
    out.inertia += d;
  }
  return out;
}

KMeansPartial kmeans_merge(std::span<const KMeansPartial* const> parts) {
  if (parts.empty()) throw std::invalid_argument("kmeans_merge: no parts");
  const auto& first = *parts.front();
  auto out = KMeansPartial::zeros(first.sums.rows(), first.sums.cols());
  for (const KMeansPartial* p : parts) {
    if (p->sums.rows() != out.sums.rows() || p->sums.cols() != out.sums.cols()) {
      throw std::invalid_argument("kmeans_merge: shape mismatch");
    }
    auto dst = out.sums.data();
    const auto src = p->sums.data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    for (std::size_t c = 0; c < out.counts.size(); ++c) out.counts[c] += p->counts[c];
    out.inertia += p->inertia;
  }
  return out;
}

KMeansPartial kmeans_merge(std::span<const KMeansPartial> parts) {
  std::vector<const KMeansPartial*> ptrs;
  ptrs.reserve(parts.size());
  for (const auto& p : parts) ptrs.push_back(&p);
  return kmeans_merge(ptrs);
}

Matrix kmeans_recompute(const Matrix& sums, std::span<const std::uint64_t> counts,
                        const Matrix& old_centers) {
  if (sums.rows() != counts.size() || sums.rows() != old_centers.rows() ||
      sums.cols() != old_centers.cols()) {
    throw std::invalid_argument("kmeans_recompute: shape mismatch");
  }
  Matrix out = old_centers;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == 0) continue;
    const auto n = static_cast<double>(counts[c]);
    for (std::size_t j = 0; j < sums.cols(); ++j) out(c, j) = sums(c, j) / n;
  }
  return out;
}

double kmeans_inertia(const Matrix& points, const Matrix& centers) {
  double total = 0.0;
  for (std::size_t r = 0; r < points.rows(); ++r) {
    double d = 0.0;
    nearest_center(points.row(r), centers, &d);
    total += d;
  }
  return total;
}

}  // namespace splitrt::kernels
