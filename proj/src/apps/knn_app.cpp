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
#include <stdexcept>

#include "splitrt/apps/apps.hpp"
#include "splitrt/kernels/kdtree.hpp"
#include "splitrt/rechunk.hpp"
#include "splitrt/spliter.hpp"

namespace splitrt::apps {

using kernels::KdTree;
using kernels::Neighbor;

namespace {

// A lookup tree plus the global fit-row index of each of its points.
struct FitTree {
  KdTree tree;
  std::vector<std::size_t> global;
  std::size_t size_bytes() const noexcept {
    return tree.size_bytes() + global.size() * sizeof(std::size_t);
  }
};

// Per query row, neighbors with global indexes.
struct QueryResult {
  std::vector<std::vector<Neighbor>> rows;
  std::uint64_t distance_evals = 0;
  std::size_t size_bytes() const noexcept {
    std::size_t n = sizeof(std::uint64_t);
    for (const auto& r : rows) n += r.size() * sizeof(Neighbor);
    return n;
  }
};

FitTree fit_tree(std::span<const Payload> blocks, const std::vector<RowRange>& ranges) {
  std::vector<const Matrix*> parts;
  FitTree out;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    parts.push_back(&blocks[b].as<Matrix>());
    for (auto i = ranges[b].begin; i < ranges[b].end; ++i) out.global.push_back(i);
  }
  out.tree = KdTree::build(vstack(parts));
  return out;
}

}  // namespace

Matrix knn_fit_points(const AppConfig& cfg) {
  Matrix m(cfg.n_rows, cfg.dims);
  const UniformCube gen{cfg.seed};
  for (std::size_t r = 0; r < cfg.n_rows; ++r) generate_row(gen, r, m.row(r));
  return m;
}

Matrix knn_query_points(const AppConfig& cfg) {
  Matrix m(cfg.query_rows, cfg.dims);
  const UniformCube gen{cfg.effective_query_seed()};
  for (std::size_t r = 0; r < cfg.query_rows; ++r) generate_row(gen, r, m.row(r));
  return m;
}

KnnRun run_knn(const AppConfig& cfg) {
  cfg.validate();
  Runtime rt(cfg.runtime_config());
  const auto fit_source = create_array(rt, cfg.n_rows, cfg.dims, cfg.effective_block_rows(),
                                       cfg.placement, UniformCube{cfg.seed});
  const std::size_t query_blocks = cfg.effective_query_blocks();
  const auto queries = create_array(rt, cfg.query_rows, cfg.dims,
                                    (cfg.query_rows + query_blocks - 1) / query_blocks, RoundRobin{},
                                    UniformCube{cfg.effective_query_seed()});
  const std::size_t k = cfg.knn_k;

  KnnRun run;
  AppReport& report = run.report;
  const auto t0 = std::chrono::steady_clock::now();

  BlockedArray fit = fit_source;
  if (cfg.mode == Mode::rechunk) {
    fit = rechunk(rt, fit_source, (fit_source.n_rows + rt.num_workers() - 1) / rt.num_workers());
  }
  report.block_rows = fit.block_rows;
  report.num_blocks = fit.num_blocks();

  // fit: one tree per block, or one per partition over its concatenated blocks.
  const auto before = rt.metrics();
  std::vector<Future> trees;
  if (cfg.mode == Mode::spliter) {
    const auto partitions = split(rt, fit, cfg.partitions_per_worker);
    report.num_partitions = partitions.size();
    for (const auto& p : partitions) {
      trees.push_back(rt.submit(
          kKnnFit,
          [ranges = p.item_ranges](std::span<const Payload> in) {
            return Payload::make(fit_tree(in, ranges));
          },
          p.block_refs, p.worker));
    }
  } else {
    for (std::size_t b = 0; b < fit.num_blocks(); ++b) {
      trees.push_back(rt.submit(
          kKnnFit,
          [ranges = std::vector<RowRange>{fit.block_range(b)}](std::span<const Payload> in) {
            return Payload::make(fit_tree(in, ranges));
          },
          {fit.blocks[b]}));
    }
  }
  const auto tree_refs = resolve(trees);
  report.map_stage = rt.metrics() - before;
  run.num_trees = tree_refs.size();
  const auto tree_owner = rt.who_has(tree_refs);

  // kneighbors: every query block against every tree, on the tree's worker.
  // Grouping submissions by worker keeps each query block in one place until
  // all lookups there are queued.
  const std::size_t num_q = queries.num_blocks();
  std::vector<std::vector<Future>> lookups(num_q, std::vector<Future>(tree_refs.size()));
  for (std::size_t w = 0; w < rt.num_workers(); ++w) {
    for (std::size_t q = 0; q < num_q; ++q) {
      for (std::size_t t = 0; t < tree_refs.size(); ++t) {
        if (tree_owner[t].value != w) continue;
        lookups[q][t] = rt.submit(
            kKnnQuery,
            [k](std::span<const Payload> in) {
              const auto& ft = in[0].as<FitTree>();
              const auto& block = in[1].as<Matrix>();
              QueryResult res;
              res.rows.reserve(block.rows());
              for (std::size_t r = 0; r < block.rows(); ++r) {
                auto found = ft.tree.knn(block.row(r), k);
                for (auto& n : found.neighbors) n.index = ft.global[n.index];
                res.distance_evals += found.distance_evals;
                res.rows.push_back(std::move(found.neighbors));
              }
              return Payload::make(std::move(res));
            },
            {tree_refs[t], queries.blocks[q]}, WorkerId{w});
      }
    }
  }

  std::vector<Future> merged;
  merged.reserve(num_q);
  for (std::size_t q = 0; q < num_q; ++q) {
    auto parts = resolve(lookups[q]);
    merged.push_back(rt.submit(
        kKnnMerge,
        [k](std::span<const Payload> in) {
          QueryResult out;
          const auto& first = in[0].as<QueryResult>();
          out.rows.resize(first.rows.size());
          std::vector<std::vector<Neighbor>> per_row(in.size());
          for (std::size_t r = 0; r < out.rows.size(); ++r) {
            for (std::size_t t = 0; t < in.size(); ++t) per_row[t] = in[t].as<QueryResult>().rows[r];
            out.rows[r] = kernels::merge_kqueries(per_row, k);
          }
          for (const auto& p : in) out.distance_evals += p.as<QueryResult>().distance_evals;
          return Payload::make(std::move(out));
        },
        parts));
    for (const auto& r : parts) rt.release(r);
  }

  std::uint64_t evals = 0;
  for (const auto& f : merged) {
    const auto res = rt.gather_as<QueryResult>(f);
    evals += res.distance_evals;
    for (const auto& row : res.rows) {
      std::vector<std::size_t> idx;
      std::vector<double> dist;
      for (const auto& n : row) {
        idx.push_back(n.index);
        dist.push_back(n.dist2);
      }
      run.indexes.push_back(std::move(idx));
      run.distances.push_back(std::move(dist));
    }
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  rt.wait_idle();
  report.metrics = rt.metrics();
  report.map_tasks = report.metrics.kind(kKnnFit);
  std::uint64_t h = kFnvOffset;
  for (const auto& row : run.indexes) {
    for (auto i : row) h = fnv1a_u64(h, i);
  }
  report.result_checksum = h;
  report.extra = {{"distance_evals", std::to_string(evals)},
                  {"trees", std::to_string(run.num_trees)},
                  {"query_tasks", std::to_string(report.metrics.kind(kKnnQuery))}};
  return run;
}

}  // namespace splitrt::apps
