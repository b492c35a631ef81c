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

#include <chrono>

#include "splitrt/apps/apps.hpp"
#include "splitrt/rechunk.hpp"
#include "splitrt/spliter.hpp"

namespace splitrt::apps {

using kernels::CountTensor;

HistogramRun run_histogram(const AppConfig& cfg) {
  cfg.validate();
  Runtime rt(cfg.runtime_config());
  const auto source = create_array(rt, cfg.n_rows, cfg.dims, cfg.effective_block_rows(),
                                   cfg.placement, UniformCube{cfg.seed});
  const kernels::HistogramSpec spec{cfg.dims, cfg.bins, {}, {}};

  HistogramRun run;
  AppReport& report = run.report;
  const auto t0 = std::chrono::steady_clock::now();

  BlockedArray arr = source;
  if (cfg.mode == Mode::rechunk) arr = rechunk(rt, source, balanced_block_rows(source, rt));
  report.block_rows = arr.block_rows;
  report.num_blocks = arr.num_blocks();

  const auto before = rt.metrics();
  std::vector<Future> partials;
  if (cfg.mode == Mode::spliter) {
    const auto partitions = split(rt, arr, cfg.partitions_per_worker);
    report.num_partitions = partitions.size();
    for (const auto& p : partitions) {
      partials.push_back(rt.submit(
          kHistogramMap,
          [spec](std::span<const Payload> blocks) {
            std::vector<CountTensor> part_results;
            part_results.reserve(blocks.size());
            for (const auto& b : blocks) part_results.push_back(kernels::histogramdd(b.as<Matrix>(), spec));
            return Payload::make(kernels::sum_counts(part_results));
          },
          p.block_refs, p.worker));
    }
  } else {
    for (const auto& block : arr.blocks) {
      partials.push_back(rt.submit(
          kHistogramMap,
          [spec](std::span<const Payload> in) {
            return Payload::make(kernels::histogramdd(in[0].as<Matrix>(), spec));
          },
          {block}));
    }
  }
  auto refs = resolve(partials);
  report.map_stage = rt.metrics() - before;

  const auto final_ref = reduce_tree(rt, kHistogramReduce, std::move(refs), kReduceArity,
                                     [](std::span<const Payload> in) {
                                       std::vector<const CountTensor*> parts;
                                       for (const auto& p : in) parts.push_back(&p.as<CountTensor>());
                                       return Payload::make(kernels::sum_counts(parts));
                                     });
  run.counts = rt.gather(final_ref).as<CountTensor>();
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  rt.wait_idle();
  report.metrics = rt.metrics();
  report.map_tasks = report.metrics.kind(kHistogramMap);
  std::uint64_t h = kFnvOffset;
  for (auto c : run.counts.counts) h = fnv1a_u64(h, c);
  report.result_checksum = fnv1a_u64(h, run.counts.discarded);
  report.extra = {{"total", std::to_string(run.counts.total())},
                  {"discarded", std::to_string(run.counts.discarded)}};
  return run;
}

}  // namespace splitrt::apps
