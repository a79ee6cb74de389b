// Copyright 2026 The qcor-rt Authors
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

#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "qcor/kernel.hpp"
#include "qcor/objective.hpp"
#include "qcor/optimizer.hpp"
#include "qcor/pauli.hpp"
#include "qcor/result_buffer.hpp"
#include "qcor/simulator.hpp"

namespace qcor {

/// Arguments of a task. Absent members take their defaults when the task is
/// initiated:
///   kernel     -> identity kernel of `width` qubits
///   observable -> Z on every qubit of the kernel (computational basis)
///   objective  -> ExpectationObjective
///   optimizer  -> a single evaluation at `parameters`
struct TaskSpec {
  std::optional<Kernel> kernel;
  std::optional<PauliObservable> observable;
  std::shared_ptr<ObjectiveFunction> objective;
  std::shared_ptr<Optimizer> optimizer;
  std::optional<std::vector<double>> parameters;
  ExecutionConfig config;
  /// Register width used when no kernel is given (falls back to the
  /// observable's width).
  std::size_t width = 0;
};

/// Token for one in-flight task. Copyable and transferable between threads;
/// the task behind it can be synced exactly once.
class TaskHandle {
 public:
  std::uint64_t runtime_id() const { return runtime_id_; }
  std::uint64_t task_id() const { return task_id_; }

 private:
  friend class Runtime;
  TaskHandle(std::uint64_t runtime, std::uint64_t task)
      : runtime_id_(runtime), task_id_(task) {}

  std::uint64_t runtime_id_;
  std::uint64_t task_id_;
};

/// Failure raised inside a task, re-raised by `sync`.
class TaskError : public Error {
 public:
  TaskError(ErrorCode cause, const std::string& message)
      : Error(ErrorCode::kTaskFailed, message), cause_(cause) {}
  /// Code of the original failure.
  ErrorCode cause() const noexcept { return cause_; }

 private:
  ErrorCode cause_;
};

/// Launches tasks on worker threads and hands back their result trees.
///
/// Destroying a Runtime waits for every task it still owns.
class Runtime {
 public:
  Runtime();
  ~Runtime();
  Runtime(const Runtime&) = delete;
  Runtime& operator=(const Runtime&) = delete;

  /// Resolves defaults and validates `spec` on the calling thread (errors
  /// are thrown here), then starts the task and returns without waiting.
  TaskHandle task_initiate(TaskSpec spec);

  /// Blocks until the task finishes and returns its root buffer. Root
  /// metadata holds `opt-value`, `opt-params` (optimizer tasks) or `value`,
  /// `params` (single evaluations), plus `num-evaluations`; children are the
  /// evaluations in order.
  ResultBuffer sync(const TaskHandle& handle);

  /// Tasks initiated but not yet synced.
  std::size_t pending() const;

 private:
  std::uint64_t id_;
  std::uint64_t next_task_ = 0;
  mutable std::mutex mutex_;
  std::map<std::uint64_t, std::future<ResultBuffer>> tasks_;
};

/// Process-wide runtime behind the free functions.
Runtime& default_runtime();

inline TaskHandle task_initiate(TaskSpec spec) {
  return default_runtime().task_initiate(std::move(spec));
}
inline ResultBuffer sync(const TaskHandle& handle) {
  return default_runtime().sync(handle);
}

/// Sum of Z_q over `num_qubits` qubits.
PauliObservable computational_basis_observable(std::size_t num_qubits);

}  // namespace qcor
