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

#include <string>
#include <vector>

#include "splitrt/apps/common.hpp"
#include "splitrt/matrix.hpp"

namespace splitrt::bench {

/// Tolerances of the mode-equivalence check.
inline constexpr double kCentersRelTol = 1e-9;
inline constexpr double kAccuracyAbsTol = 0.01;

struct Verdict {
  bool ok = true;
  /// One line per compared mode pair.
  std::vector<std::string> details;
};

/// max |a - b| / max(max |a|, max |b|); 0 for two zero matrices.
double max_relative_difference(const Matrix& a, const Matrix& b);

/// Runs cfg.app in baseline, spliter and rechunk mode and checks that the
/// results agree: identical counts (histogram) and neighbor lists (knn),
/// centers within kCentersRelTol (kmeans), accuracies within
/// kAccuracyAbsTol (csvm).
Verdict verify_modes(const apps::AppConfig& cfg);

}  // namespace splitrt::bench
