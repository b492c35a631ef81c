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

struct SmoParams {
  double C = 1.0;
  double tol = 1e-3;
  /// Consecutive full sweeps without an alpha update before stopping.
  int max_passes = 10;
  /// Seed for the second-index choice.
  std::uint64_t seed = 0x5EED5EEDULL;
  /// Hard bound on the number of sweeps over the data.
  int max_sweeps = 20000;
};

/// Linear-kernel SVM restricted to its support vectors.
struct SvmModel {
  Matrix support_points;
  std::vector<double> support_labels;
  std::vector<double> alphas;
  double bias = 0.0;
  std::vector<std::size_t> support_global_indexes;

  std::size_t num_support() const noexcept { return alphas.size(); }
  double decision(std::span<const double> point) const noexcept;
  std::size_t size_bytes() const noexcept {
    return support_points.size_bytes() +
           (support_labels.size() + alphas.size() + 1) * sizeof(double) +
           support_global_indexes.size() * sizeof(std::size_t);
  }
};

/// Simplified SMO (random second index) with a linear kernel. Labels must be
/// +1/-1 with both classes present. `global_indexes`, when given, names each
/// training row; otherwise rows are named 0..n-1.
SvmModel smo_train(const Matrix& points, std::span<const double> labels,
                   const SmoParams& params = {},
                   std::span<const std::size_t> global_indexes = {});

/// sign(sum_i alpha_i y_i <x_i, p> + b), with sign(0) = +1.
std::vector<double> svm_predict(const SvmModel& model, const Matrix& points);

}  // namespace splitrt::kernels
