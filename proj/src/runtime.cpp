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

#include "splitrt/runtime.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <system_error>

namespace splitrt {

namespace detail {

struct TaskRecord {
  std::uint64_t task_id = 0;
  std::string kind;
  TaskFn func;
  std::vector<std::uint64_t> input_ids;
  WorkerId worker;
  std::uint64_t result_id = 0;

  mutable std::mutex mu;
  mutable std::condition_variable cv;
  TaskState state = TaskState::pending;
  DataRef result;
  std::exception_ptr error;

  void advance(TaskState next) {
    std::lock_guard lock(mu);
    if (next <= state) throw std::logic_error("TaskRecord: state may only move forward");
    state = next;
    if (next == TaskState::done || next == TaskState::failed) cv.notify_all();
  }

  void wait() const {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return state == TaskState::done || state == TaskState::failed; });
  }
};

}  // namespace detail

std::ostream& operator<<(std::ostream& os, WorkerId w) { return os << "w" << w.value; }

std::ostream& operator<<(std::ostream& os, TaskState s) {
  switch (s) {
    case TaskState::pending: return os << "pending";
    case TaskState::running: return os << "running";
    case TaskState::done: return os << "done";
    case TaskState::failed: return os << "failed";
  }
  return os;
}

void RuntimeConfig::validate() const {
  if (num_workers < 1) throw std::invalid_argument("RuntimeConfig: num_workers must be >= 1");
  if (threads_per_worker < 1) {
    throw std::invalid_argument("RuntimeConfig: threads_per_worker must be >= 1");
  }
}

DanglingRefError::DanglingRefError(std::uint64_t id)
    : std::runtime_error("dangling data ref #" + std::to_string(id)), id_(id) {}

Metrics operator-(const Metrics& after, const Metrics& before) {
  Metrics d;
  d.tasks_submitted = after.tasks_submitted - before.tasks_submitted;
  for (const auto& [kind, n] : after.tasks_by_kind) {
    const auto prev = before.kind(kind);
    if (n != prev) d.tasks_by_kind[kind] = n - prev;
  }
  d.bytes_transferred = after.bytes_transferred - before.bytes_transferred;
  d.transfers = after.transfers - before.transfers;
  d.locality_hits = after.locality_hits - before.locality_hits;
  d.accounted_overhead_ns = after.accounted_overhead_ns - before.accounted_overhead_ns;
  d.virtual_transfer_ns = after.virtual_transfer_ns - before.virtual_transfer_ns;
  d.gathers = after.gathers - before.gathers;
  d.gathered_bytes = after.gathered_bytes - before.gathered_bytes;
  d.copied_bytes = after.copied_bytes - before.copied_bytes;
  return d;
}

// --- Future -----------------------------------------------------------------

std::uint64_t Future::task_id() const { return rec_->task_id; }

TaskState Future::state() const {
  std::lock_guard lock(rec_->mu);
  return rec_->state;
}

WorkerId Future::worker() const { return rec_->worker; }

void Future::wait() const { rec_->wait(); }

DataRef Future::ref() const {
  rec_->wait();
  std::lock_guard lock(rec_->mu);
  if (rec_->state == TaskState::failed) std::rethrow_exception(rec_->error);
  return rec_->result;
}

// --- Runtime ----------------------------------------------------------------

Runtime::Runtime(RuntimeConfig config) : config_(config) {
  config_.validate();
  try {
    workers_.reserve(config_.num_workers);
    for (std::size_t w = 0; w < config_.num_workers; ++w) {
      workers_.push_back(std::make_unique<Worker>());
    }
    for (std::size_t w = 0; w < config_.num_workers; ++w) {
      for (std::size_t t = 0; t < config_.threads_per_worker; ++t) {
        workers_[w]->threads.emplace_back([this, w] { executor_loop(w); });
      }
    }
  } catch (const std::exception& e) {
    shutdown();
    throw RuntimeStartError(std::string("runtime startup failed: ") + e.what());
  }
}

Runtime::~Runtime() { shutdown(); }

void Runtime::shutdown() {
  {
    std::lock_guard lock(mu_);
    stopping_ = true;
  }
  for (auto& worker : workers_) worker->queue_cv.notify_all();
  for (auto& worker : workers_) {
    for (auto& t : worker->threads) {
      if (t.joinable()) t.join();
    }
    worker->threads.clear();
  }
}

void Runtime::check_worker(WorkerId w) const {
  if (w.value >= config_.num_workers) {
    throw std::out_of_range("unknown worker " + std::to_string(w.value));
  }
}

DataRef Runtime::put(Payload value, WorkerId worker) {
  check_worker(worker);
  std::lock_guard lock(mu_);
  const auto id = next_data_id_++;
  const auto size = value.size_bytes();
  workers_[worker.value]->store.emplace(id, std::move(value));
  directory_.emplace(id, Entry{worker, size});
  return DataRef{id, worker, size};
}

std::vector<WorkerId> Runtime::who_has(std::span<const DataRef> refs) const {
  std::lock_guard lock(mu_);
  std::vector<WorkerId> out;
  out.reserve(refs.size());
  for (const auto& ref : refs) {
    auto it = directory_.find(ref.id);
    if (it == directory_.end()) throw DanglingRefError(ref.id);
    out.push_back(it->second.owner);
  }
  return out;
}

bool Runtime::is_live(const DataRef& ref) const {
  std::lock_guard lock(mu_);
  return directory_.contains(ref.id);
}

WorkerId Runtime::locality_schedule(std::span<const DataRef> inputs) {
  std::lock_guard lock(mu_);
  return schedule_locked(inputs);
}

WorkerId Runtime::schedule_locked(std::span<const DataRef> inputs) {
  std::vector<std::uint64_t> bytes(config_.num_workers, 0);
  bool any = false;
  for (const auto& ref : inputs) {
    auto it = directory_.find(ref.id);
    if (it == directory_.end()) continue;
    bytes[it->second.owner.value] += it->second.size;
    any = true;
  }
  if (!any) {
    const WorkerId w{round_robin_next_};
    round_robin_next_ = (round_robin_next_ + 1) % config_.num_workers;
    return w;
  }
  // max_element returns the first maximum, i.e. the lowest worker id.
  const auto best = std::max_element(bytes.begin(), bytes.end());
  return WorkerId{static_cast<std::size_t>(best - bytes.begin())};
}

void Runtime::transfer_locked(std::unique_lock<std::mutex>& lock, std::uint64_t id,
                              WorkerId dst) {
  auto it = directory_.find(id);
  if (it == directory_.end()) throw DanglingRefError(id);
  if (it->second.owner == dst) return;

  // Readers queued on the current owner must finish before the value leaves.
  readers_cv_.wait(lock, [&] {
    auto cur = directory_.find(id);
    return cur == directory_.end() || cur->second.readers == 0;
  });
  it = directory_.find(id);
  if (it == directory_.end()) throw DanglingRefError(id);

  Entry& entry = it->second;
  auto& src_store = workers_[entry.owner.value]->store;
  auto node = src_store.extract(id);
  workers_[dst.value]->store.insert(std::move(node));
  entry.owner = dst;

  counters_.transfers += 1;
  counters_.bytes_transferred += entry.size;
  std::uint64_t wire_ns = 0;
  if (config_.bandwidth_bytes_per_s != 0) {
    const unsigned __int128 scaled =
        static_cast<unsigned __int128>(entry.size) * 1'000'000'000u;
    wire_ns = static_cast<std::uint64_t>(scaled / config_.bandwidth_bytes_per_s);
  }
  counters_.virtual_transfer_ns += config_.latency_ns + wire_ns;
}

DataRef Runtime::transfer(const DataRef& ref, WorkerId dst) {
  check_worker(dst);
  std::unique_lock lock(mu_);
  transfer_locked(lock, ref.id, dst);
  const auto& entry = directory_.at(ref.id);
  return DataRef{ref.id, entry.owner, entry.size};
}

Future Runtime::submit(std::string kind, TaskFn func, std::vector<DataRef> inputs,
                       std::optional<WorkerId> worker_hint) {
  if (worker_hint) check_worker(*worker_hint);
  auto rec = std::make_shared<detail::TaskRecord>();
  rec->kind = std::move(kind);
  rec->func = std::move(func);

  std::unique_lock lock(mu_);
  rec->task_id = next_task_id_++;
  for (const auto& in : inputs) {
    if (!directory_.contains(in.id)) {
      rec->state = TaskState::failed;
      rec->error = std::make_exception_ptr(DanglingRefError(in.id));
      return Future(std::move(rec));
    }
  }

  const WorkerId target = worker_hint ? *worker_hint : schedule_locked(inputs);
  rec->worker = target;
  for (const auto& in : inputs) {
    if (directory_.at(in.id).owner == target) {
      counters_.locality_hits += 1;
    } else {
      transfer_locked(lock, in.id, target);
    }
    rec->input_ids.push_back(in.id);
  }
  // Register readers only after all moves: a task may list the same ref twice.
  for (const auto id : rec->input_ids) directory_.at(id).readers += 1;

  rec->result_id = next_data_id_++;
  counters_.tasks_submitted += 1;
  counters_.tasks_by_kind[rec->kind] += 1;
  counters_.accounted_overhead_ns += config_.sched_overhead_ns;
  outstanding_ += 1;

  Worker& worker = *workers_[target.value];
  worker.queue.push_back(rec);
  worker.queue_cv.notify_one();
  lock.unlock();

  if (config_.inject_real_overhead && config_.sched_overhead_ns > 0) {
    std::this_thread::sleep_for(std::chrono::nanoseconds(config_.sched_overhead_ns));
  }
  return Future(std::move(rec));
}

void Runtime::executor_loop(std::size_t worker_index) {
  Worker& worker = *workers_[worker_index];
  for (;;) {
    std::shared_ptr<detail::TaskRecord> task;
    {
      std::unique_lock lock(mu_);
      worker.queue_cv.wait(lock, [&] { return stopping_ || !worker.queue.empty(); });
      if (worker.queue.empty()) return;
      task = std::move(worker.queue.front());
      worker.queue.pop_front();
    }
    run_task(worker_index, *task);
  }
}

void Runtime::run_task(std::size_t worker_index, detail::TaskRecord& task) {
  task.advance(TaskState::running);
  Worker& worker = *workers_[worker_index];

  std::vector<Payload> args;
  std::exception_ptr error;
  {
    std::lock_guard lock(mu_);
    args.reserve(task.input_ids.size());
    for (const auto id : task.input_ids) {
      auto it = worker.store.find(id);
      if (it == worker.store.end()) {
        error = std::make_exception_ptr(std::logic_error(
            "input #" + std::to_string(id) + " not resident on worker " +
            std::to_string(worker_index) + " at task start"));
        break;
      }
      args.push_back(it->second);
    }
  }

  Payload result;
  if (!error) {
    try {
      result = task.func(args);
    } catch (...) {
      error = std::current_exception();
    }
  }
  args.clear();

  DataRef ref;
  {
    std::lock_guard lock(mu_);
    if (!error) {
      ref = DataRef{task.result_id, WorkerId{worker_index}, result.size_bytes()};
      worker.store.emplace(task.result_id, std::move(result));
      directory_.emplace(task.result_id, Entry{ref.owner, ref.size_bytes});
    }
    for (const auto id : task.input_ids) {
      auto it = directory_.find(id);
      if (it == directory_.end()) continue;
      if (--it->second.readers == 0 && it->second.release_pending) erase_locked(id);
    }
    readers_cv_.notify_all();
  }

  {
    std::lock_guard lock(task.mu);
    if (error) {
      task.error = error;
      task.state = TaskState::failed;
    } else {
      task.result = ref;
      task.state = TaskState::done;
    }
    task.cv.notify_all();
  }
  task.func = nullptr;

  std::lock_guard lock(mu_);
  outstanding_ -= 1;
  if (outstanding_ == 0) idle_cv_.notify_all();
}

void Runtime::erase_locked(std::uint64_t id) {
  auto it = directory_.find(id);
  if (it == directory_.end()) return;
  workers_[it->second.owner.value]->store.erase(id);
  directory_.erase(it);
}

void Runtime::release(const DataRef& ref) {
  std::lock_guard lock(mu_);
  auto it = directory_.find(ref.id);
  if (it == directory_.end()) throw DanglingRefError(ref.id);
  if (it->second.readers == 0) {
    erase_locked(ref.id);
  } else {
    it->second.release_pending = true;
  }
}

Payload Runtime::gather(const DataRef& ref) {
  std::lock_guard lock(mu_);
  auto it = directory_.find(ref.id);
  if (it == directory_.end()) throw DanglingRefError(ref.id);
  counters_.gathers += 1;
  counters_.gathered_bytes += it->second.size;
  return workers_[it->second.owner.value]->store.at(ref.id);
}

Payload Runtime::gather(const Future& future) { return gather(future.ref()); }

Payload Runtime::peek(const DataRef& ref) const {
  std::lock_guard lock(mu_);
  auto it = directory_.find(ref.id);
  if (it == directory_.end()) throw DanglingRefError(ref.id);
  return workers_[it->second.owner.value]->store.at(ref.id);
}

void Runtime::account_copy(std::uint64_t bytes) {
  std::lock_guard lock(mu_);
  counters_.copied_bytes += bytes;
}

Metrics Runtime::metrics() const {
  std::lock_guard lock(mu_);
  return counters_;
}

void Runtime::wait_idle() {
  std::unique_lock lock(mu_);
  idle_cv_.wait(lock, [&] { return outstanding_ == 0; });
}

}  // namespace splitrt
