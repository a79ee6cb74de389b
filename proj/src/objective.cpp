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

#include "qcor/objective.hpp"

#include "qcor/error.hpp"
#include "qcor/observe.hpp"

namespace qcor {

namespace {

HeterogeneousMap distribution_map(const QuasiDistribution& dist) {
  HeterogeneousMap out;
  for (const auto& [bits, p] : dist) out.put(bits, p);
  return out;
}

HeterogeneousMap::IntegerList support(const PauliString& s) {
  HeterogeneousMap::IntegerList out;
  for (auto [q, op] : s.entries()) out.push_back(q);
  return out;
}

}  // namespace

double default_objective_evaluate(const PauliObservable& observable,
                                  const Kernel& kernel,
                                  std::span<const double> params,
                                  const ExecutionConfig& config,
                                  ResultBuffer& sink,
                                  std::uint64_t evaluation) {
  const Kernel bound = bind(kernel, params);
  const ObservedKernels observed = observe(observable, bound);

  ResultBuffer node;
  double value = observed.identity_offset.real();
  for (std::size_t k = 0; k < observed.kernels.size(); ++k) {
    const auto& [term, measured_kernel] = observed.kernels[k];
    ResultBuffer leaf;
    double expectation = 0.0;
    if (config.exact) {
      const auto dist = exact_distribution(measured_kernel, config.noise);
      expectation = expectation_from_distribution(term, dist);
      leaf.metadata.put("exact", true)
          .put("measured-qubits", support(term.string))
          .put("distribution", distribution_map(dist));
    } else {
      ExecutionConfig run = config;
      run.seed = derive_seed(config.seed, (evaluation << 20) | k);
      auto result = execute(measured_kernel, run);
      expectation = expectation_from_counts(term, result.counts);
      leaf.counts = std::move(result.counts);
      leaf.metadata = std::move(result.metadata);
    }
    leaf.metadata.put("term", term.string.to_string())
        .put("coefficient", term.coefficient)
        .put("expectation", expectation);
    value += expectation;
    node.add_child(std::move(leaf));
  }

  node.metadata.put("evaluation", evaluation)
      .put("params", HeterogeneousMap::RealList(params.begin(), params.end()))
      .put("identity-offset", observed.identity_offset.real())
      .put("value", value);
  sink.add_child(std::move(node));
  return value;
}

ExpectationObjective::ExpectationObjective(PauliObservable observable,
                                           Kernel kernel,
                                           ExecutionConfig config) {
  initialize(observable, kernel, config);
}

void ExpectationObjective::initialize(const PauliObservable& observable,
                                      const Kernel& kernel,
                                      const ExecutionConfig& config) {
  if (observable.num_qubits() > kernel.num_qubits()) {
    throw Error(ErrorCode::kOutOfRange,
                "observable acts on " + std::to_string(observable.num_qubits()) +
                    " qubits but kernel " + kernel.name() + " has " +
                    std::to_string(kernel.num_qubits()));
  }
  if (kernel.is_measured()) {
    throw Error(ErrorCode::kAlreadyMeasured,
                "objective kernel " + kernel.name() + " must be unmeasured");
  }
  state_ = State{observable, kernel, config};
  evaluations_ = 0;
}

std::size_t ExpectationObjective::dimensions() const {
  if (!state_) {
    throw Error(ErrorCode::kInvalidArgument, "objective is not initialized");
  }
  return state_->kernel.dimensions();
}

double ExpectationObjective::evaluate(std::span<const double> params,
                                      ResultBuffer& sink) {
  if (!state_) {
    throw Error(ErrorCode::kInvalidArgument, "objective is not initialized");
  }
  return default_objective_evaluate(state_->observable, state_->kernel, params,
                                    state_->config, sink, evaluations_++);
}

}  // namespace qcor
