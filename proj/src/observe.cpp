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

#include "qcor/observe.hpp"

#include "qcor/error.hpp"

namespace qcor {

ObservedKernels observe(const PauliObservable& obs, const Kernel& kernel) {
  if (kernel.is_measured()) {
    throw Error(ErrorCode::kAlreadyMeasured,
                "observe needs an unmeasured kernel; " + kernel.name() +
                    " already measures");
  }
  if (obs.num_qubits() > kernel.num_qubits()) {
    throw Error(ErrorCode::kOutOfRange,
                "observable acts on " + std::to_string(obs.num_qubits()) +
                    " qubits but kernel " + kernel.name() + " has " +
                    std::to_string(kernel.num_qubits()));
  }
  ObservedKernels out;
  for (const auto& term : obs.terms()) {
    if (term.string.is_identity()) {
      out.identity_offset += term.coefficient;
    } else {
      out.kernels.emplace_back(term,
                               append_measurement_basis(kernel, term.string));
    }
  }
  return out;
}

}  // namespace qcor
