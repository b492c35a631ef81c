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

#include "splitrt/apps/common.hpp"

#include <stdexcept>

namespace splitrt::apps {

std::string_view to_string(AppKind app) noexcept {
  switch (app) {
    case AppKind::histogram: return "histogram";
    case AppKind::kmeans: return "kmeans";
    case AppKind::csvm: return "csvm";
    case AppKind::knn: return "knn";
  }
  return "?";
}

std::string_view to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::baseline: return "baseline";
    case Mode::spliter: return "spliter";
    case Mode::rechunk: return "rechunk";
  }
  return "?";
}

std::optional<AppKind> parse_app(std::string_view s) noexcept {
  for (auto a : {AppKind::histogram, AppKind::kmeans, AppKind::csvm, AppKind::knn}) {
    if (s == to_string(a)) return a;
  }
  return std::nullopt;
}

std::optional<Mode> parse_mode(std::string_view s) noexcept {
  for (auto m : {Mode::baseline, Mode::spliter, Mode::rechunk}) {
    if (s == to_string(m)) return m;
  }
  return std::nullopt;
}

RuntimeConfig AppConfig::runtime_config() const {
  RuntimeConfig rc;
  rc.num_workers = workers;
  rc.threads_per_worker = threads_per_worker;
  rc.sched_overhead_ns = sched_overhead_ns;
  rc.bandwidth_bytes_per_s = bandwidth_bytes_per_s;
  rc.latency_ns = latency_ns;
  rc.inject_real_overhead = inject_real_overhead;
  return rc;
}

std::size_t AppConfig::effective_block_rows() const {
  if (block_rows != 0) return block_rows;
  const std::size_t blocks = workers * blocks_per_worker;
  const std::size_t rows = (n_rows + blocks - 1) / blocks;
  return rows == 0 ? 1 : rows;
}

std::size_t AppConfig::effective_query_blocks() const {
  const std::size_t b = query_blocks == 0 ? workers : query_blocks;
  return b > query_rows ? query_rows : b;
}

std::uint64_t AppConfig::effective_query_seed() const {
  return query_seed ? *query_seed : seed ^ 0x51A7E5EED0000001ULL;
}

void AppConfig::validate() const {
  if (workers < 1 || threads_per_worker < 1) {
    throw std::invalid_argument("AppConfig: workers and threads_per_worker must be >= 1");
  }
  if (blocks_per_worker < 1 && block_rows == 0) {
    throw std::invalid_argument("AppConfig: blocks_per_worker must be >= 1");
  }
  if (n_rows < 1 || dims < 1) throw std::invalid_argument("AppConfig: n_rows and dims must be >= 1");
  if (effective_block_rows() > n_rows) {
    throw std::invalid_argument("AppConfig: block_rows exceeds n_rows");
  }
  if (partitions_per_worker < 1) {
    throw std::invalid_argument("AppConfig: partitions_per_worker must be >= 1");
  }
  switch (app) {
    case AppKind::histogram:
      if (bins < 1) throw std::invalid_argument("AppConfig: bins must be >= 1");
      break;
    case AppKind::kmeans:
      if (k < 1 || k > n_rows) throw std::invalid_argument("AppConfig: need 1 <= k <= n_rows");
      break;
    case AppKind::csvm:
      if (!(C > 0.0)) throw std::invalid_argument("AppConfig: C must be > 0");
      if (max_iter < 1) throw std::invalid_argument("AppConfig: max_iter must be >= 1");
      break;
    case AppKind::knn:
      if (knn_k < 1) throw std::invalid_argument("AppConfig: knn k must be >= 1");
      if (knn_k > n_rows) throw std::invalid_argument("AppConfig: knn k exceeds fit rows");
      if (query_rows < 1) throw std::invalid_argument("AppConfig: query_rows must be >= 1");
      break;
  }
}

Metrics& operator+=(Metrics& acc, const Metrics& delta) {
  acc.tasks_submitted += delta.tasks_submitted;
  for (const auto& [kind, n] : delta.tasks_by_kind) acc.tasks_by_kind[kind] += n;
  acc.bytes_transferred += delta.bytes_transferred;
  acc.transfers += delta.transfers;
  acc.locality_hits += delta.locality_hits;
  acc.accounted_overhead_ns += delta.accounted_overhead_ns;
  acc.virtual_transfer_ns += delta.virtual_transfer_ns;
  acc.gathers += delta.gathers;
  acc.gathered_bytes += delta.gathered_bytes;
  acc.copied_bytes += delta.copied_bytes;
  return acc;
}

std::vector<DataRef> resolve(const std::vector<Future>& futures) {
  std::vector<DataRef> refs;
  refs.reserve(futures.size());
  for (const auto& f : futures) refs.push_back(f.ref());
  return refs;
}

DataRef reduce_tree(Runtime& rt, const std::string& kind, std::vector<DataRef> refs,
                    std::size_t arity, const TaskFn& merge) {
  if (refs.empty()) throw std::invalid_argument("reduce_tree: nothing to reduce");
  if (arity < 2) throw std::invalid_argument("reduce_tree: arity must be >= 2");
  while (refs.size() > 1) {
    std::vector<Future> merged;
    std::vector<std::optional<DataRef>> carried;
    for (std::size_t i = 0; i < refs.size(); i += arity) {
      const std::size_t end = i + arity < refs.size() ? i + arity : refs.size();
      if (end - i == 1) {
        carried.emplace_back(refs[i]);
        continue;
      }
      std::vector<DataRef> group(refs.begin() + static_cast<std::ptrdiff_t>(i),
                                 refs.begin() + static_cast<std::ptrdiff_t>(end));
      merged.push_back(rt.submit(kind, merge, group));
      carried.emplace_back(std::nullopt);
      for (const auto& r : group) rt.release(r);
    }
    std::vector<DataRef> next;
    next.reserve(carried.size());
    std::size_t m = 0;
    for (const auto& c : carried) next.push_back(c ? *c : merged[m++].ref());
    refs = std::move(next);
  }
  return refs.front();
}

}  // namespace splitrt::apps
