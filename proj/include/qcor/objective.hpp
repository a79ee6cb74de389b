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
#include <memory>
#include <optional>
#include <span>

#include "qcor/kernel.hpp"
#include "qcor/pauli.hpp"
#include "qcor/result_buffer.hpp"
#include "qcor/simulator.hpp"

namespace qcor {

/// Parameterized scalar function whose evaluations run kernels on the
/// simulator.
///
/// An instance belongs to one task at a time. The task calls `initialize`
/// once with the resolved observable, kernel and execution settings, then
/// `evaluate` any number of times. Each evaluation appends exactly one node
/// to `sink` (the task's root buffer); quantum results reach the caller only
/// through that tree.
class ObjectiveFunction {
 public:
  virtual ~ObjectiveFunction() = default;

  virtual void initialize(const PauliObservable& observable,
                          const Kernel& kernel,
                          const ExecutionConfig& config) = 0;
  virtual std::size_t dimensions() const = 0;
  virtual double evaluate(std::span<const double> params,
                          ResultBuffer& sink) = 0;
};

/// Expectation value of the observable in the state prepared by the kernel.
///
/// Appends to `sink` one node with metadata `params`, `value`,
/// `identity-offset` and `evaluation`, holding one child per measured kernel.
/// Each child carries `term`, `coefficient`, `expectation` and either sampled
/// counts plus simulator metadata, or (exact mode) the exact outcome
/// `distribution`. `evaluation` also selects the sampling sub-stream.
double default_objective_evaluate(const PauliObservable& observable,
                                  const Kernel& kernel,
                                  std::span<const double> params,
                                  const ExecutionConfig& config,
                                  ResultBuffer& sink,
                                  std::uint64_t evaluation = 0);

/// The default objective used when a task names none.
class ExpectationObjective final : public ObjectiveFunction {
 public:
  ExpectationObjective() = default;
  ExpectationObjective(PauliObservable observable, Kernel kernel,
                       ExecutionConfig config);

  void initialize(const PauliObservable& observable, const Kernel& kernel,
                  const ExecutionConfig& config) override;
  std::size_t dimensions() const override;
  double evaluate(std::span<const double> params, ResultBuffer& sink) override;

 private:
  struct State {
    PauliObservable observable;
    Kernel kernel;
    ExecutionConfig config;
  };
  std::optional<State> state_;
  std::uint64_t evaluations_ = 0;
};

}  // namespace qcor
