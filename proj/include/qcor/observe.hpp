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

#include <utility>
#include <vector>

#include "qcor/kernel.hpp"
#include "qcor/pauli.hpp"

namespace qcor {

/// Measured circuits for one observable: one kernel per non-identity term,
/// with identity terms folded into a constant offset.
struct ObservedKernels {
  complex identity_offset{0.0, 0.0};
  std::vector<std::pair<PauliTerm, Kernel>> kernels;
};

/// Maps a bound, unmeasured kernel to the measured kernels needed to estimate
/// `obs`, in the observable's canonical term order.
ObservedKernels observe(const PauliObservable& obs, const Kernel& kernel);

}  // namespace qcor
