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

#include <compare>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <exception>
#include <functional>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "splitrt/metrics.hpp"
#include "splitrt/payload.hpp"

namespace splitrt {

struct WorkerId {
  std::size_t value = 0;
  friend auto operator<=>(const WorkerId&, const WorkerId&) = default;
};
std::ostream& operator<<(std::ostream& os, WorkerId w);

/// Handle to a value resident in exactly one worker store.
///
/// `id` is the stable identity of the value. `owner` is the owner at the
/// time the ref was produced; after the value moves, the directory (see
/// Runtime::who_has) is authoritative and the old ref's owner is stale.
struct DataRef {
  std::uint64_t id = 0;
  WorkerId owner;
  std::size_t size_bytes = 0;
  friend bool operator==(const DataRef&, const DataRef&) = default;
};

struct RuntimeConfig {
  std::size_t num_workers = 1;
  std::size_t threads_per_worker = 1;
  /// Virtual nanoseconds charged per task submission.
  std::uint64_t sched_overhead_ns = 0;
  /// Bytes per second for the virtual transfer cost; 0 means unlimited.
  std::uint64_t bandwidth_bytes_per_s = 0;
  std::uint64_t latency_ns = 0;
  /// Also sleep sched_overhead_ns of real time on every submission.
  bool inject_real_overhead = false;

  void validate() const;
};

class DanglingRefError : public std::runtime_error {
 public:
  explicit DanglingRefError(std::uint64_t id);
  std::uint64_t id() const noexcept { return id_; }

 private:
  std::uint64_t id_;
};

class RuntimeStartError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TaskState { pending, running, done, failed };
std::ostream& operator<<(std::ostream& os, TaskState s);

/// Task body: receives the input payloads in submission order, all resident
/// on the executing worker, and returns the result payload.
using TaskFn = std::function<Payload(std::span<const Payload>)>;

namespace detail {
struct TaskRecord;
}

/// Shareable, wait-able handle to a submitted task.
class Future {
 public:
  Future() = default;

  std::uint64_t task_id() const;
  TaskState state() const;
  /// Worker the task was assigned to at submission.
  WorkerId worker() const;
  void wait() const;
  /// Blocks until terminal; rethrows the task's error if it failed.
  DataRef ref() const;
  bool valid() const noexcept { return static_cast<bool>(rec_); }

 private:
  friend class Runtime;
  explicit Future(std::shared_ptr<detail::TaskRecord> rec) : rec_(std::move(rec)) {}
  std::shared_ptr<detail::TaskRecord> rec_;
};

/// Coordinator plus a fixed set of in-process workers. Each worker owns a
/// block store and runs `threads_per_worker` executor threads over its own
/// task queue. All submissions come from a single coordinator thread.
///
/// Inputs not resident on a task's worker are moved there at submission;
/// a value is never moved while a queued or running task still reads it on
/// its current worker, so every task starts with all inputs local.
class Runtime {
 public:
  explicit Runtime(RuntimeConfig config);
  ~Runtime();

  Runtime(const Runtime&) = delete;
  Runtime& operator=(const Runtime&) = delete;

  const RuntimeConfig& config() const noexcept { return config_; }
  std::size_t num_workers() const noexcept { return config_.num_workers; }

  DataRef put(Payload value, WorkerId worker);
  template <class T>
  DataRef put_value(T value, WorkerId worker) {
    return put(Payload::make(std::move(value)), worker);
  }

  std::vector<WorkerId> who_has(std::span<const DataRef> refs) const;

  /// Worker owning the most input bytes, lowest id on ties. With no live
  /// inputs, cycles over the workers in call order.
  WorkerId locality_schedule(std::span<const DataRef> inputs);

  Future submit(std::string kind, TaskFn func, std::vector<DataRef> inputs,
                std::optional<WorkerId> worker_hint = std::nullopt);

  /// Copy of the result at the coordinator; accounted as a gather, not as a
  /// worker transfer.
  Payload gather(const Future& future);
  Payload gather(const DataRef& ref);
  template <class T>
  T gather_as(const Future& future) {
    return gather(future).as<T>();
  }

  /// Moves the value to `dst`. No-op without accounting if already there.
  DataRef transfer(const DataRef& ref, WorkerId dst);

  /// Drops the value once no pending task reads it.
  void release(const DataRef& ref);

  /// Reads a value without any accounting. For inspection and digests.
  Payload peek(const DataRef& ref) const;

  bool is_live(const DataRef& ref) const;

  /// Records bytes duplicated in worker memory by a copying operation.
  void account_copy(std::uint64_t bytes);

  Metrics metrics() const;

  /// Blocks until every submitted task reached a terminal state.
  void wait_idle();

 private:
  struct Entry {
    WorkerId owner;
    std::size_t size = 0;
    std::size_t readers = 0;
    bool release_pending = false;
  };
  struct Worker {
    std::unordered_map<std::uint64_t, Payload> store;
    std::deque<std::shared_ptr<detail::TaskRecord>> queue;
    std::condition_variable queue_cv;
    std::vector<std::thread> threads;
  };

  void check_worker(WorkerId w) const;
  void executor_loop(std::size_t worker_index);
  void run_task(std::size_t worker_index, detail::TaskRecord& task);
  void transfer_locked(std::unique_lock<std::mutex>& lock, std::uint64_t id, WorkerId dst);
  void erase_locked(std::uint64_t id);
  WorkerId schedule_locked(std::span<const DataRef> inputs);
  void shutdown();

  RuntimeConfig config_;

  mutable std::mutex mu_;
  std::condition_variable readers_cv_;
  std::condition_variable idle_cv_;
  std::unordered_map<std::uint64_t, Entry> directory_;
  std::vector<std::unique_ptr<Worker>> workers_;
  bool stopping_ = false;
  std::uint64_t next_data_id_ = 1;
  std::uint64_t next_task_id_ = 1;
  std::size_t round_robin_next_ = 0;
  std::size_t outstanding_ = 0;
  Metrics counters_;
};

}  // namespace splitrt
