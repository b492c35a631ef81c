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

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <memory>
#include <stdexcept>

#include "splitrt/apps/apps.hpp"
#include "splitrt/rechunk.hpp"
#include "splitrt/spliter.hpp"

namespace splitrt::apps {

using kernels::SmoParams;
using kernels::SvmModel;

namespace {

struct Row {
  std::size_t index;
  std::span<const double> point;
  double label;
};

// Trains on the rows deduplicated by global index, in ascending index order.
SvmModel train_on(std::vector<Row> rows, const SmoParams& params, const char* context) {
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.index < b.index; });
  rows.erase(std::unique(rows.begin(), rows.end(),
                         [](const Row& a, const Row& b) { return a.index == b.index; }),
             rows.end());
  Matrix points;
  std::vector<double> labels;
  std::vector<std::size_t> indexes;
  for (const auto& r : rows) {
    points.append_row(r.point);
    labels.push_back(r.label);
    indexes.push_back(r.index);
  }
  const bool both = std::find(labels.begin(), labels.end(), 1.0) != labels.end() &&
                    std::find(labels.begin(), labels.end(), -1.0) != labels.end();
  if (!both) {
    throw std::runtime_error(std::string(context) +
                             ": training group holds a single class; use larger blocks");
  }
  return kernels::smo_train(points, labels, params, indexes);
}

void append_support(const SvmModel& m, std::vector<Row>& rows) {
  for (std::size_t i = 0; i < m.num_support(); ++i) {
    rows.push_back({m.support_global_indexes[i], m.support_points.row(i), m.support_labels[i]});
  }
}

std::vector<std::size_t> sorted_support(const SvmModel& m) {
  auto idx = m.support_global_indexes;
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

CsvmRun run_csvm(const AppConfig& cfg) {
  cfg.validate();
  Runtime rt(cfg.runtime_config());
  const LabeledBlobs gen{cfg.seed, cfg.separation, 1.0};
  const auto x_source =
      create_array(rt, cfg.n_rows, cfg.dims, cfg.effective_block_rows(), cfg.placement, gen);
  const auto y_source = create_label_array(rt, x_source);

  SmoParams params;
  params.C = cfg.C;

  CsvmRun run;
  AppReport& report = run.report;
  const auto t0 = std::chrono::steady_clock::now();

  BlockedArray x = x_source;
  BlockedArray y = y_source;
  if (cfg.mode == Mode::rechunk) {
    const auto rows = balanced_block_rows(x_source, rt);
    x = rechunk(rt, x_source, rows);
    y = rechunk(rt, y_source, rows);
  }
  report.block_rows = x.block_rows;
  report.num_blocks = x.num_blocks();

  // One level-0 group per block, or per partition with labels aligned by
  // the partition's block indexes.
  struct Group {
    std::vector<DataRef> inputs;  // x blocks, then the matching y blocks
    std::vector<RowRange> ranges;
    std::optional<WorkerId> worker;
  };
  std::vector<Group> groups;
  if (cfg.mode == Mode::spliter) {
    const auto partitions = split(rt, x, cfg.partitions_per_worker);
    report.num_partitions = partitions.size();
    for (const auto& p : partitions) {
      Group g{p.block_refs, p.item_ranges, p.worker};
      for (auto idx : p.get_indexes()) g.inputs.push_back(y.blocks[idx]);
      groups.push_back(std::move(g));
    }
  } else {
    for (std::size_t b = 0; b < x.num_blocks(); ++b) {
      groups.push_back(Group{{x.blocks[b], y.blocks[b]}, {x.block_range(b)}, std::nullopt});
    }
  }

  std::shared_ptr<const SvmModel> feedback;
  std::vector<std::size_t> previous_support;
  for (std::size_t iter = 0; iter < cfg.max_iter; ++iter) {
    const auto before = rt.metrics();
    std::vector<Future> level0;
    for (const auto& g : groups) {
      level0.push_back(rt.submit(
          kCsvmTrain,
          [ranges = g.ranges, feedback, params](std::span<const Payload> in) {
            const std::size_t n = ranges.size();
            std::vector<Row> rows;
            for (std::size_t b = 0; b < n; ++b) {
              const auto& xb = in[b].as<Matrix>();
              const auto& yb = in[n + b].as<Matrix>();
              for (std::size_t r = 0; r < xb.rows(); ++r) {
                rows.push_back({ranges[b].begin + r, xb.row(r), yb(r, 0)});
              }
            }
            if (feedback) append_support(*feedback, rows);
            return Payload::make(train_on(std::move(rows), params, "cascade level 0"));
          },
          g.inputs, g.worker));
    }
    auto refs = resolve(level0);
    report.map_stage += rt.metrics() - before;

    const auto final_ref = reduce_tree(rt, kCsvmMerge, std::move(refs), 2,
                                       [params](std::span<const Payload> in) {
                                         std::vector<Row> rows;
                                         for (const auto& m : in) append_support(m.as<SvmModel>(), rows);
                                         return Payload::make(train_on(std::move(rows), params, "cascade merge"));
                                       });
    auto model = std::make_shared<const SvmModel>(rt.gather(final_ref).as<SvmModel>());
    rt.release(final_ref);
    run.iterations = iter + 1;

    auto support = sorted_support(*model);
    const bool converged = iter > 0 && support == previous_support;
    previous_support = std::move(support);
    feedback = std::move(model);
    if (converged) break;
  }
  run.model = *feedback;

  std::vector<Future> checks;
  for (std::size_t b = 0; b < x.num_blocks(); ++b) {
    checks.push_back(rt.submit(
        kCsvmPredict,
        [feedback](std::span<const Payload> in) {
          const auto& xb = in[0].as<Matrix>();
          const auto& yb = in[1].as<Matrix>();
          const auto predicted = kernels::svm_predict(*feedback, xb);
          std::uint64_t correct = 0;
          for (std::size_t r = 0; r < xb.rows(); ++r) correct += predicted[r] == yb(r, 0) ? 1 : 0;
          return Payload::make(correct);
        },
        {x.blocks[b], y.blocks[b]}));
  }
  std::uint64_t correct = 0;
  for (const auto& f : checks) correct += rt.gather_as<std::uint64_t>(f);
  run.accuracy = static_cast<double>(correct) / static_cast<double>(cfg.n_rows);
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  rt.wait_idle();
  report.metrics = rt.metrics();
  report.map_tasks = report.metrics.kind(kCsvmTrain);
  std::uint64_t h = kFnvOffset;
  for (auto i : previous_support) h = fnv1a_u64(h, i);
  h = fnv1a_double(h, run.model.bias);
  report.result_checksum = fnv1a_double(h, run.accuracy);
  report.extra = {{"accuracy", format_double(run.accuracy)},
                  {"support_vectors", std::to_string(run.model.num_support())},
                  {"cascade_iterations", std::to_string(run.iterations)}};
  return run;
}

}  // namespace splitrt::apps
