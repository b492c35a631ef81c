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

/// Uniform bins over [lo[d], hi[d]] per dimension. Empty lo/hi mean [0, 1).
struct HistogramSpec {
  std::size_t dims = 1;
  std::size_t bins_per_dim = 1;
  std::vector<double> lo;
  std::vector<double> hi;

  double low(std::size_t d) const { return lo.empty() ? 0.0 : lo[d]; }
  double high(std::size_t d) const { return hi.empty() ? 1.0 : hi[d]; }
  void validate() const;
};

/// Dense bins_per_dim^dims counts, dimension 0 most significant.
struct CountTensor {
  std::size_t dims = 0;
  std::size_t bins_per_dim = 0;
  std::vector<std::uint64_t> counts;
  /// Points outside the range (or NaN) that were left out of `counts`.
  std::uint64_t discarded = 0;

  static CountTensor zeros(std::size_t dims, std::size_t bins_per_dim);
  std::uint64_t total() const noexcept;
  std::size_t size_bytes() const noexcept {
    return (counts.size() + 1) * sizeof(std::uint64_t);
  }
  friend bool operator==(const CountTensor&, const CountTensor&) = default;
};

/// Bin of a coordinate: floor((x - lo) / (hi - lo) * bins), with x == hi
/// going to the last bin. Returns bins for out-of-range input.
std::size_t bin_of(double x, double lo, double hi, std::size_t bins) noexcept;

CountTensor histogramdd(const Matrix& block, const HistogramSpec& spec);

/// Element-wise sum in the given order. Shapes must match.
CountTensor sum_counts(std::span<const CountTensor> parts);
CountTensor sum_counts(std::span<const CountTensor* const> parts);

}  // namespace splitrt::kernels
