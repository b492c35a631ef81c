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

#include "splitrt/kernels/histogram.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace splitrt::kernels {

void HistogramSpec::validate() const {
  if (dims < 1) throw std::invalid_argument("HistogramSpec: dims must be >= 1");
  if (bins_per_dim < 1) throw std::invalid_argument("HistogramSpec: bins_per_dim must be >= 1");
  if ((!lo.empty() && lo.size() != dims) || (!hi.empty() && hi.size() != dims)) {
    throw std::invalid_argument("HistogramSpec: lo/hi must have one entry per dimension");
  }
  for (std::size_t d = 0; d < dims; ++d) {
    if (!(low(d) < high(d))) throw std::invalid_argument("HistogramSpec: need lo < hi");
  }
}

CountTensor CountTensor::zeros(std::size_t dims, std::size_t bins_per_dim) {
  std::size_t cells = 1;
  for (std::size_t d = 0; d < dims; ++d) cells *= bins_per_dim;
  return CountTensor{dims, bins_per_dim, std::vector<std::uint64_t>(cells, 0), 0};
}

std::uint64_t CountTensor::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::size_t bin_of(double x, double lo, double hi, std::size_t bins) noexcept {
  if (!(x >= lo && x <= hi)) return bins;
  if (x == hi) return bins - 1;
  const auto b = static_cast<std::size_t>(std::floor((x - lo) / (hi - lo) * static_cast<double>(bins)));
  return b < bins ? b : bins - 1;
}

CountTensor histogramdd(const Matrix& block, const HistogramSpec& spec) {
  spec.validate();
  auto out = CountTensor::zeros(spec.dims, spec.bins_per_dim);
  if (block.empty()) return out;
  if (block.cols() != spec.dims) throw std::invalid_argument("histogramdd: block width != spec.dims");

  for (std::size_t r = 0; r < block.rows(); ++r) {
    const auto p = block.row(r);
    std::size_t flat = 0;
    bool inside = true;
    for (std::size_t d = 0; d < spec.dims; ++d) {
      const auto b = bin_of(p[d], spec.low(d), spec.high(d), spec.bins_per_dim);
      if (b == spec.bins_per_dim) {
        inside = false;
        break;
      }
      flat = flat * spec.bins_per_dim + b;
    }
    if (inside) {
      out.counts[flat] += 1;
    } else {
      out.discarded += 1;
    }
  }
  return out;
}

CountTensor sum_counts(std::span<const CountTensor* const> parts) {
  if (parts.empty()) throw std::invalid_argument("sum_counts: no parts");
  CountTensor out = CountTensor::zeros(parts.front()->dims, parts.front()->bins_per_dim);
  for (const CountTensor* p : parts) {
    if (p->dims != out.dims || p->bins_per_dim != out.bins_per_dim) {
      throw std::invalid_argument("sum_counts: shape mismatch");
    }
    for (std::size_t i = 0; i < out.counts.size(); ++i) out.counts[i] += p->counts[i];
    out.discarded += p->discarded;
  }
  return out;
}

CountTensor sum_counts(std::span<const CountTensor> parts) {
  std::vector<const CountTensor*> ptrs;
  ptrs.reserve(parts.size());
  for (const auto& p : parts) ptrs.push_back(&p);
  return sum_counts(ptrs);
}

}  // namespace splitrt::kernels
