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

#include <span>
#include <vector>

namespace splitrt::bench {

/// Linear-interpolation percentile (p in [0, 100]) of unsorted samples.
double percentile(std::span<const double> samples, double p);

/// Clamps samples below the `tail` and above the (1 - tail) percentile to
/// those percentile values, then averages.
double winsorized_mean(std::span<const double> samples, double tail = 0.05);

/// 75th minus 25th percentile.
double interquartile_range(std::span<const double> samples);

}  // namespace splitrt::bench
