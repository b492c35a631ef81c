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

#include "splitrt/bench/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "splitrt/apps/apps.hpp"

namespace splitrt::bench {

using apps::AppConfig;
using apps::AppKind;
using apps::Mode;

double max_relative_difference(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  double diff = 0.0;
  double scale = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    diff = std::max(diff, std::abs(da[i] - db[i]));
    scale = std::max({scale, std::abs(da[i]), std::abs(db[i])});
  }
  return scale == 0.0 ? diff : diff / scale;
}

namespace {

constexpr Mode kModes[] = {Mode::baseline, Mode::spliter, Mode::rechunk};

AppConfig with_mode(AppConfig cfg, Mode m) {
  cfg.mode = m;
  return cfg;
}

std::string pair_name(Mode m) { return "baseline vs " + std::string(apps::to_string(m)); }

std::string fmt(const char* pattern, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

}  // namespace

Verdict verify_modes(const AppConfig& cfg) {
  Verdict v;
  auto record = [&](Mode m, bool ok, const std::string& what) {
    v.ok = v.ok && ok;
    v.details.push_back(pair_name(m) + ": " + (ok ? "equivalent" : "MISMATCH") + " (" + what + ")");
  };

  switch (cfg.app) {
    case AppKind::histogram: {
      const auto ref = apps::run_histogram(with_mode(cfg, Mode::baseline)).counts;
      for (auto m : kModes) {
        if (m == Mode::baseline) continue;
        const auto other = apps::run_histogram(with_mode(cfg, m)).counts;
        record(m, other == ref, "bit-identical counts");
      }
      break;
    }
    case AppKind::kmeans: {
      const auto ref = apps::run_kmeans(with_mode(cfg, Mode::baseline)).centers;
      for (auto m : kModes) {
        if (m == Mode::baseline) continue;
        const auto other = apps::run_kmeans(with_mode(cfg, m)).centers;
        const double rel = max_relative_difference(ref, other);
        record(m, rel <= kCentersRelTol, fmt("centers max relative difference %.3g", rel));
      }
      break;
    }
    case AppKind::csvm: {
      const double ref = apps::run_csvm(with_mode(cfg, Mode::baseline)).accuracy;
      for (auto m : kModes) {
        if (m == Mode::baseline) continue;
        const double acc = apps::run_csvm(with_mode(cfg, m)).accuracy;
        record(m, std::abs(acc - ref) <= kAccuracyAbsTol,
               fmt("accuracy difference %.4f", std::abs(acc - ref)));
      }
      break;
    }
    case AppKind::knn: {
      const auto ref = apps::run_knn(with_mode(cfg, Mode::baseline)).indexes;
      for (auto m : kModes) {
        if (m == Mode::baseline) continue;
        const auto other = apps::run_knn(with_mode(cfg, m)).indexes;
        record(m, other == ref, "identical neighbor index lists");
      }
      break;
    }
  }
  return v;
}

}  // namespace splitrt::bench
