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

#include "qcor/runtime.hpp"

#include <atomic>

#include "qcor/error.hpp"

namespace qcor {

namespace {

std::atomic<std::uint64_t> g_next_runtime{1};

struct ResolvedTask {
  std::uint64_t id;
  PauliObservable observable;
  Kernel kernel;
  std::shared_ptr<ObjectiveFunction> objective;
  std::shared_ptr<Optimizer> optimizer;
  std::vector<double> parameters;
};

ResultBuffer run_task(const ResolvedTask& task) {
  ResultBuffer root;
  root.metadata.put("task-id", task.id)
      .put("kernel", print_kernel(task.kernel))
      .put("observable", to_string(task.observable));

  std::size_t evaluations = 0;
  auto f = [&](std::span<const double> p) {
    ++evaluations;
    return task.objective->evaluate(p, root);
  };

  if (task.optimizer) {
    const auto result = task.optimizer->optimize(
        f, task.objective->dimensions(), task.parameters);
    root.metadata.put("optimizer", task.optimizer->name())
        .put("opt-value", result.value)
        .put("opt-params", result.params)
        .put("converged", result.converged)
        .put("iterations", result.iterations);
  } else {
    const double value = f(task.parameters);
    root.metadata.put("value", value).put("params", task.parameters);
  }
  root.metadata.put("num-evaluations", evaluations);
  return root;
}

}  // namespace

PauliObservable computational_basis_observable(std::size_t num_qubits) {
  std::vector<PauliTerm> terms;
  for (std::size_t q = 0; q < num_qubits; ++q) {
    terms.push_back(
        {1.0, PauliString::from_entries({{static_cast<Qubit>(q), PauliOp::Z}})});
  }
  return simplify(PauliObservable::from_terms(std::move(terms)));
}

Runtime::Runtime() : id_(g_next_runtime.fetch_add(1)) {}

Runtime::~Runtime() {
  std::lock_guard lock(mutex_);
  for (auto& [id, future] : tasks_) {
    if (future.valid()) future.wait();
  }
}

TaskHandle Runtime::task_initiate(TaskSpec spec) {
  if (spec.config.shots == 0 && !spec.config.exact) {
    throw Error(ErrorCode::kInvalidArgument, "shots must be at least 1");
  }
  if (spec.config.noise) spec.config.noise->validate();

  std::size_t width = spec.kernel ? spec.kernel->num_qubits() : spec.width;
  if (!spec.kernel && width == 0 && spec.observable) {
    width = spec.observable->num_qubits();
  }
  if (width == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "task without a kernel needs a register width");
  }

  Kernel kernel = spec.kernel ? std::move(*spec.kernel) : Kernel::identity(width);
  PauliObservable observable = spec.observable
                                   ? std::move(*spec.observable)
                                   : computational_basis_observable(width);
  auto objective = spec.objective ? std::move(spec.objective)
                                  : std::make_shared<ExpectationObjective>();
  objective->initialize(observable, kernel, spec.config);

  const std::size_t dims = objective->dimensions();
  std::vector<double> params;
  if (spec.parameters) {
    params = std::move(*spec.parameters);
    if (params.size() != dims) {
      throw Error(ErrorCode::kInvalidArgument,
                  "objective takes " + std::to_string(dims) +
                      " parameter(s), got " + std::to_string(params.size()));
    }
  } else if (!spec.optimizer && dims > 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "a task without an optimizer needs " + std::to_string(dims) +
                    " concrete parameter(s)");
  }
  if (spec.optimizer && dims == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot optimize an objective without parameters");
  }

  std::lock_guard lock(mutex_);
  const std::uint64_t task_id = next_task_++;
  ResolvedTask task{task_id,          std::move(observable),
                    std::move(kernel), std::move(objective),
                    std::move(spec.optimizer), std::move(params)};
  tasks_.emplace(task_id,
                 std::async(std::launch::async,
                            [task = std::move(task)]() { return run_task(task); }));
  return TaskHandle(id_, task_id);
}

ResultBuffer Runtime::sync(const TaskHandle& handle) {
  if (handle.runtime_id() != id_) {
    throw Error(ErrorCode::kForeignHandle,
                "task handle belongs to a different runtime");
  }
  std::future<ResultBuffer> future;
  {
    std::lock_guard lock(mutex_);
    auto it = tasks_.find(handle.task_id());
    if (it == tasks_.end()) {
      throw Error(ErrorCode::kAlreadySynced,
                  "task " + std::to_string(handle.task_id()) +
                      " was already synced");
    }
    future = std::move(it->second);
    tasks_.erase(it);
  }
  const std::string prefix = "task " + std::to_string(handle.task_id()) + ": ";
  try {
    return future.get();
  } catch (const Error& e) {
    throw TaskError(e.code(), prefix + e.what());
  } catch (const std::exception& e) {
    throw TaskError(ErrorCode::kTaskFailed, prefix + e.what());
  }
}

std::size_t Runtime::pending() const {
  std::lock_guard lock(mutex_);
  return tasks_.size();
}

Runtime& default_runtime() {
  static Runtime runtime;
  return runtime;
}

}  // namespace qcor
