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

#include "splitrt/kernels/svm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "splitrt/rng.hpp"

namespace splitrt::kernels {

namespace {

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

constexpr double kSupportThreshold = 1e-12;
constexpr double kMinAlphaStep = 1e-5;

}  // namespace

double SvmModel::decision(std::span<const double> point) const noexcept {
  double s = bias;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    s += alphas[i] * support_labels[i] * dot(support_points.row(i), point);
  }
  return s;
}

SvmModel smo_train(const Matrix& points, std::span<const double> labels, const SmoParams& params,
                   std::span<const std::size_t> global_indexes) {
  const std::size_t m = points.rows();
  if (labels.size() != m) throw std::invalid_argument("smo_train: labels size != rows");
  if (!global_indexes.empty() && global_indexes.size() != m) {
    throw std::invalid_argument("smo_train: global_indexes size != rows");
  }
  bool has_pos = false;
  bool has_neg = false;
  for (double y : labels) {
    if (y == 1.0) {
      has_pos = true;
    } else if (y == -1.0) {
      has_neg = true;
    } else {
      throw std::invalid_argument("smo_train: labels must be +1 or -1");
    }
  }
  if (!has_pos || !has_neg) {
    throw std::invalid_argument("smo_train: training set needs points of both classes");
  }

  const std::size_t d = points.cols();
  std::vector<double> alpha(m, 0.0);
  std::vector<double> w(d, 0.0);
  std::vector<double> self_dot(m);
  for (std::size_t i = 0; i < m; ++i) self_dot[i] = dot(points.row(i), points.row(i));
  double b = 0.0;
  const double C = params.C;
  Rng64 rng(params.seed);

  auto f = [&](std::size_t i) { return dot(w, points.row(i)) + b; };

  int passes = 0;
  int sweeps = 0;
  while (passes < params.max_passes && sweeps < params.max_sweeps) {
    ++sweeps;
    int changed = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double yi = labels[i];
      const double ei = f(i) - yi;
      if (!((yi * ei < -params.tol && alpha[i] < C) || (yi * ei > params.tol && alpha[i] > 0))) {
        continue;
      }
      std::size_t j = static_cast<std::size_t>(rng.below(m - 1));
      if (j >= i) ++j;
      const double yj = labels[j];
      const double ej = f(j) - yj;
      const double ai_old = alpha[i];
      const double aj_old = alpha[j];

      double lo;
      double hi;
      if (yi != yj) {
        lo = std::max(0.0, aj_old - ai_old);
        hi = std::min(C, C + aj_old - ai_old);
      } else {
        lo = std::max(0.0, ai_old + aj_old - C);
        hi = std::min(C, ai_old + aj_old);
      }
      if (lo == hi) continue;

      const double kij = dot(points.row(i), points.row(j));
      const double eta = 2.0 * kij - self_dot[i] - self_dot[j];
      if (eta >= 0.0) continue;

      double aj = aj_old - yj * (ei - ej) / eta;
      aj = std::clamp(aj, lo, hi);
      if (std::abs(aj - aj_old) < kMinAlphaStep) continue;
      const double ai = ai_old + yi * yj * (aj_old - aj);

      const double di = yi * (ai - ai_old);
      const double dj = yj * (aj - aj_old);
      const double b1 = b - ei - di * self_dot[i] - dj * kij;
      const double b2 = b - ej - di * kij - dj * self_dot[j];
      if (ai > 0.0 && ai < C) {
        b = b1;
      } else if (aj > 0.0 && aj < C) {
        b = b2;
      } else {
        b = 0.5 * (b1 + b2);
      }

      alpha[i] = ai;
      alpha[j] = aj;
      const auto xi = points.row(i);
      const auto xj = points.row(j);
      for (std::size_t k = 0; k < d; ++k) w[k] += di * xi[k] + dj * xj[k];
      ++changed;
    }
    passes = changed == 0 ? passes + 1 : 0;
  }

  SvmModel model;
  model.bias = b;
  for (std::size_t i = 0; i < m; ++i) {
    if (alpha[i] <= kSupportThreshold) continue;
    model.support_points.append_row(points.row(i));
    model.support_labels.push_back(labels[i]);
    model.alphas.push_back(alpha[i]);
    model.support_global_indexes.push_back(global_indexes.empty() ? i : global_indexes[i]);
  }
  return model;
}

std::vector<double> svm_predict(const SvmModel& model, const Matrix& points) {
  std::vector<double> out(points.rows());
  for (std::size_t r = 0; r < points.rows(); ++r) {
    out[r] = model.decision(points.row(r)) >= 0.0 ? 1.0 : -1.0;
  }
  return out;
}

}  // namespace splitrt::kernels
