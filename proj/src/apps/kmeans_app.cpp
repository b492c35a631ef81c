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
#include <cstdio>

#include "splitrt/apps/apps.hpp"
#include "splitrt/kernels/kmeans.hpp"
#include "splitrt/rechunk.hpp"
#include "splitrt/spliter.hpp"

namespace splitrt::apps {

using kernels::KMeansPartial;

namespace {

Payload merge_partials(std::span<const Payload> in) {
  std::vector<const KMeansPartial*> parts;
  parts.reserve(in.size());
  for (const auto& p : in) parts.push_back(&p.as<KMeansPartial>());
  return Payload::make(kernels::kmeans_merge(parts));
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

KMeansRun run_kmeans(const AppConfig& cfg) {
  cfg.validate();
  Runtime rt(cfg.runtime_config());
  const GaussianBlobs gen{cfg.seed, cfg.k, 1.0, 10.0};
  const auto source =
      create_array(rt, cfg.n_rows, cfg.dims, cfg.effective_block_rows(), cfg.placement, gen);

  Matrix centers(cfg.k, cfg.dims);
  for (std::size_t c = 0; c < cfg.k; ++c) generate_row(gen, c, centers.row(c));

  KMeansRun run;
  AppReport& report = run.report;
  const auto t0 = std::chrono::steady_clock::now();

  BlockedArray arr = source;
  if (cfg.mode == Mode::rechunk) arr = rechunk(rt, source, balanced_block_rows(source, rt));
  report.block_rows = arr.block_rows;
  report.num_blocks = arr.num_blocks();

  // Partitions are built once and reused by every iteration.
  std::vector<Partition> partitions;
  if (cfg.mode == Mode::spliter) {
    partitions = split(rt, arr, cfg.partitions_per_worker);
    report.num_partitions = partitions.size();
  }

  for (std::size_t it = 0; it < cfg.iters; ++it) {
    const auto before = rt.metrics();
    std::vector<Future> partials;
    if (cfg.mode == Mode::spliter) {
      for (const auto& p : partitions) {
        partials.push_back(rt.submit(
            kKMeansMap,
            [centers](std::span<const Payload> blocks) {
              std::vector<KMeansPartial> subresults;
              subresults.reserve(blocks.size());
              for (const auto& b : blocks) subresults.push_back(kernels::kmeans_partial(b.as<Matrix>(), centers));
              return Payload::make(kernels::kmeans_merge(subresults));
            },
            p.block_refs, p.worker));
      }
    } else {
      for (const auto& block : arr.blocks) {
        partials.push_back(rt.submit(
            kKMeansMap,
            [centers](std::span<const Payload> in) {
              return Payload::make(kernels::kmeans_partial(in[0].as<Matrix>(), centers));
            },
            {block}));
      }
    }
    auto refs = resolve(partials);
    report.map_stage += rt.metrics() - before;

    const auto total_ref = reduce_tree(rt, kKMeansReduce, std::move(refs), kReduceArity, merge_partials);
    const auto total = rt.gather(total_ref).as<KMeansPartial>();
    rt.release(total_ref);
    run.inertia.push_back(total.inertia);
    centers = kernels::kmeans_recompute(total.sums, total.counts, centers);
  }
  run.centers = centers;
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  rt.wait_idle();
  report.metrics = rt.metrics();
  report.map_tasks = report.metrics.kind(kKMeansMap);
  std::uint64_t h = kFnvOffset;
  for (double v : run.centers.data()) h = fnv1a_double(h, v);
  report.result_checksum = h;
  if (!run.inertia.empty()) report.extra.emplace_back("inertia", format_double(run.inertia.back()));
  return run;
}

}  // namespace splitrt::apps
