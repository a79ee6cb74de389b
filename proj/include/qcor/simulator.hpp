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
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "qcor/heterogeneous_map.hpp"
#include "qcor/kernel.hpp"
#include "qcor/pauli.hpp"
#include "qcor/statevector_kernels.hpp"

namespace qcor {

/// Dense register state |psi> of 2^n amplitudes, starting in |0...0>.
class StateVector {
 public:
  /// Largest register the simulator holds in memory.
  static constexpr std::size_t kMaxQubits = 24;

  explicit StateVector(std::size_t num_qubits);

  std::size_t num_qubits() const { return num_qubits_; }
  std::span<const complex> amplitudes() const { return amps_; }
  std::span<complex> amplitudes() { return amps_; }
  double norm_squared() const;

 private:
  std::size_t num_qubits_;
  std::vector<complex> amps_;
};

/// Unitary of a single bound, non-measure instruction. Throws
/// kUnboundParameter, kOutOfRange, or kInvalidArgument for Measure.
void apply_gate(StateVector& state, const Instruction& instr);

/// 2x2 matrix of a single-qubit gate (bound rotations included).
kernels::Mat2 gate_matrix(const Instruction& instr);

/// Evolves |0...0> through every non-measure instruction of a bound kernel.
/// Measurements are terminal per qubit, so skipping them leaves the
/// pre-measurement state.
StateVector simulate(const Kernel& kernel);

/// Readout flip probabilities of one qubit.
struct ReadoutError {
  double p01 = 0.0;  ///< P(read 1 | true 0)
  double p10 = 0.0;  ///< P(read 0 | true 1)

  friend bool operator==(const ReadoutError&, const ReadoutError&) = default;
};

/// Independent per-qubit readout flips. Qubits without an override use
/// `uniform`.
struct ReadoutNoiseModel {
  ReadoutError uniform;
  std::map<Qubit, ReadoutError> per_qubit;

  const ReadoutError& at(Qubit q) const {
    auto it = per_qubit.find(q);
    return it == per_qubit.end() ? uniform : it->second;
  }
  void validate() const;
};

struct ExecutionConfig {
  std::uint64_t shots = 1024;
  std::uint64_t seed = 0;
  std::optional<ReadoutNoiseModel> noise;
  /// Infinite-shot mode: objectives use exact marginal distributions instead
  /// of sampled counts.
  bool exact = false;
};

struct ExecutionResult {
  ShotCounts counts;
  HeterogeneousMap metadata;
};

/// Name of the sampling generator, recorded in execution metadata.
inline constexpr const char* kGeneratorName = "mt19937_64";

/// Samples `config.shots` outcomes of the kernel's measured qubits (qubit 0
/// leftmost in each bitstring), then applies readout flips. Deterministic in
/// (kernel, config). Metadata: shots, seed, generator, measured-qubits,
/// wall-time (seconds).
ExecutionResult execute(const Kernel& kernel, const ExecutionConfig& config);

/// Exact distribution of the measured qubits, corrupted analytically by the
/// readout model when one is given. Zero-probability outcomes are omitted.
QuasiDistribution exact_distribution(
    const Kernel& kernel,
    const std::optional<ReadoutNoiseModel>& noise = std::nullopt);

/// <psi|O|psi> for a bound, unmeasured kernel of at most 12 qubits. Throws
/// kNonHermitian when the quadratic form has an imaginary part above 1e-10.
double exact_expectation(const Kernel& kernel, const PauliObservable& obs);

/// Decorrelated seed for sub-stream `stream` of a base seed (SplitMix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// Bitstring for outcome index `outcome` over `width` measured qubits;
/// character i is bit i.
std::string outcome_bitstring(std::size_t outcome, std::size_t width);

}  // namespace qcor
