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

#include "splitrt/bench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace splitrt::bench {

namespace {

double sorted_percentile(const std::vector<double>& sorted, double p) {
  const double pos = p / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

std::vector<double> sorted_copy(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("statistics of an empty sample");
  std::vector<double> v(samples.begin(), samples.end());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

double percentile(std::span<const double> samples, double p) {
  if (p < 0.0 || p > 100.0) throw std::invalid_argument("percentile: p outside [0, 100]");
  return sorted_percentile(sorted_copy(samples), p);
}

double winsorized_mean(std::span<const double> samples, double tail) {
  if (tail < 0.0 || tail >= 0.5) throw std::invalid_argument("winsorized_mean: tail outside [0, 0.5)");
  const auto sorted = sorted_copy(samples);
  const double lo = sorted_percentile(sorted, 100.0 * tail);
  const double hi = sorted_percentile(sorted, 100.0 * (1.0 - tail));
  double sum = 0.0;
  for (double v : sorted) sum += std::clamp(v, lo, hi);
  return sum / static_cast<double>(sorted.size());
}

double interquartile_range(std::span<const double> samples) {
  const auto sorted = sorted_copy(samples);
  return sorted_percentile(sorted, 75.0) - sorted_percentile(sorted, 25.0);
}

}  // namespace splitrt::bench
