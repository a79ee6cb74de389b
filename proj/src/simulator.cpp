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

#include "qcor/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "qcor/error.hpp"
#include "qcor/statevector_kernels.hpp"

namespace qcor {

namespace {

constexpr double kHermitianTolerance = 1e-10;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void require_bound(const Kernel& kernel) {
  if (!kernel.is_bound()) {
    throw Error(ErrorCode::kUnboundParameter,
                "kernel " + kernel.name() + " has unbound parameters");
  }
}

void require_capacity(std::size_t num_qubits, std::size_t limit) {
  if (num_qubits > limit) {
    throw Error(ErrorCode::kDimensionOverflow,
                std::to_string(num_qubits) + " qubits exceeds the limit of " +
                    std::to_string(limit));
  }
}

std::vector<unsigned> to_unsigned(const std::vector<Qubit>& qubits) {
  return {qubits.begin(), qubits.end()};
}

std::vector<double> measured_marginal(const Kernel& kernel,
                                      std::vector<Qubit>& measured) {
  require_bound(kernel);
  measured = kernel.measured_qubits();
  if (measured.empty()) {
    throw Error(ErrorCode::kNotMeasured,
                "kernel " + kernel.name() + " has no measurements");
  }
  const StateVector state = simulate(kernel);
  return kernels::omp::marginal_probabilities(state.amplitudes(),
                                              to_unsigned(measured));
}

}  // namespace

StateVector::StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
  require_capacity(num_qubits, kMaxQubits);
  amps_.assign(std::size_t{1} << num_qubits, complex{0.0, 0.0});
  amps_[0] = 1.0;
}

double StateVector::norm_squared() const {
  return kernels::omp::norm_squared(amps_);
}

kernels::Mat2 gate_matrix(const Instruction& instr) {
  using namespace std::complex_literals;
  const double r = 1.0 / std::numbers::sqrt2;
  switch (instr.kind) {
    case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Y: return {0.0, -1i, 1i, 0.0};
    case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
    case GateKind::H: return {r, r, r, -r};
    case GateKind::S: return {1.0, 0.0, 0.0, 1i};
    case GateKind::Sdg: return {1.0, 0.0, 0.0, -1i};
    case GateKind::T:
      return {1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4)};
    case GateKind::Rx: {
      const double t = instr.angle() / 2;
      return {std::cos(t), -1i * std::sin(t), -1i * std::sin(t), std::cos(t)};
    }
    case GateKind::Ry: {
      const double t = instr.angle() / 2;
      return {std::cos(t), -std::sin(t), std::sin(t), std::cos(t)};
    }
    case GateKind::Rz: {
      const double t = instr.angle() / 2;
      return {std::polar(1.0, -t), 0.0, 0.0, std::polar(1.0, t)};
    }
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(gate_name(instr.kind)) +
                      " is not a single-qubit unitary");
  }
}

void apply_gate(StateVector& state, const Instruction& instr) {
  if (instr.kind == GateKind::Measure) {
    throw Error(ErrorCode::kInvalidArgument, "Measure is not a unitary gate");
  }
  if (instr.qubits.size() != gate_arity(instr.kind)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(gate_name(instr.kind)) + " has wrong operand count");
  }
  for (auto q : instr.qubits) {
    if (q >= state.num_qubits()) {
      throw Error(ErrorCode::kOutOfRange,
                  "qubit " + std::to_string(q) + " outside the " +
                      std::to_string(state.num_qubits()) + "-qubit register");
    }
  }
  auto amps = state.amplitudes();
  switch (instr.kind) {
    case GateKind::CNOT:
      kernels::omp::apply_cnot(amps, instr.qubits[0], instr.qubits[1]);
      break;
    case GateKind::CZ:
      kernels::omp::apply_cz(amps, instr.qubits[0], instr.qubits[1]);
      break;
    default:
      kernels::omp::apply_1q(amps, instr.qubits[0], gate_matrix(instr));
  }
}

StateVector simulate(const Kernel& kernel) {
  require_bound(kernel);
  StateVector state(kernel.num_qubits());
  for (const auto& instr : kernel.body()) {
    if (instr.kind != GateKind::Measure) apply_gate(state, instr);
  }
  return state;
}

void ReadoutNoiseModel::validate() const {
  auto check = [](const ReadoutError& e) {
    for (double p : {e.p01, e.p10}) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "readout flip probability must lie in [0, 1]");
      }
    }
  };
  check(uniform);
  for (const auto& [q, e] : per_qubit) check(e);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::string outcome_bitstring(std::size_t outcome, std::size_t width) {
  std::string bits(width, '0');
  for (std::size_t b = 0; b < width; ++b) {
    if ((outcome >> b) & 1u) bits[b] = '1';
  }
  return bits;
}

ExecutionResult execute(const Kernel& kernel, const ExecutionConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  if (config.shots == 0) {
    throw Error(ErrorCode::kInvalidArgument, "shots must be at least 1");
  }
  if (config.noise) config.noise->validate();

  std::vector<Qubit> measured;
  const std::vector<double> probs = measured_marginal(kernel, measured);

  std::vector<double> cdf(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cdf.begin());
  const double total = cdf.back();
  const std::size_t last_nonzero = static_cast<std::size_t>(
      std::find_if(probs.rbegin(), probs.rend(), [](double p) { return p > 0; })
          .base() - probs.begin() - 1);

  std::mt19937_64 rng(config.seed);
  std::vector<std::uint64_t> tally(probs.size(), 0);
  for (std::uint64_t shot = 0; shot < config.shots; ++shot) {
    const double u = uniform01(rng) * total;
    auto idx = static_cast<std::size_t>(
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    idx = std::min(idx, last_nonzero);
    if (config.noise) {
      for (std::size_t b = 0; b < measured.size(); ++b) {
        const auto& err = config.noise->at(measured[b]);
        const bool one = (idx >> b) & 1u;
        if (uniform01(rng) < (one ? err.p10 : err.p01)) idx ^= std::size_t{1} << b;
      }
    }
    ++tally[idx];
  }

  ExecutionResult result;
  for (std::size_t o = 0; o < tally.size(); ++o) {
    if (tally[o]) result.counts[outcome_bitstring(o, measured.size())] = tally[o];
  }
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  result.metadata.put("shots", config.shots)
      .put("seed", static_cast<std::int64_t>(config.seed))
      .put("generator", kGeneratorName)
      .put("measured-qubits",
           HeterogeneousMap::IntegerList(measured.begin(), measured.end()))
      .put("wall-time", elapsed.count());
  return result;
}

QuasiDistribution exact_distribution(
    const Kernel& kernel, const std::optional<ReadoutNoiseModel>& noise) {
  std::vector<Qubit> measured;
  std::vector<double> probs = measured_marginal(kernel, measured);
  if (noise) {
    noise->validate();
    for (std::size_t b = 0; b < measured.size(); ++b) {
      const auto& e = noise->at(measured[b]);
      kernels::omp::apply_bit_matrix(
          probs, static_cast<unsigned>(b),
          {1.0 - e.p01, e.p10, e.p01, 1.0 - e.p10});
    }
  }
  QuasiDistribution out;
  for (std::size_t o = 0; o < probs.size(); ++o) {
    if (probs[o] != 0.0) out[outcome_bitstring(o, measured.size())] = probs[o];
  }
  return out;
}

double exact_expectation(const Kernel& kernel, const PauliObservable& obs) {
  require_bound(kernel);
  require_capacity(kernel.num_qubits(), kMaxDenseQubits);
  if (kernel.is_measured()) {
    throw Error(ErrorCode::kAlreadyMeasured,
                "exact expectation needs an unmeasured kernel");
  }
  if (obs.num_qubits() > kernel.num_qubits()) {
    throw Error(ErrorCode::kOutOfRange,
                "observable is wider than the " +
                    std::to_string(kernel.num_qubits()) + "-qubit kernel");
  }
  const StateVector state = simulate(kernel);
  complex acc = 0.0;
  for (const auto& t : obs.terms()) {
    acc += t.coefficient *
           kernels::omp::pauli_expectation(state.amplitudes(),
                                           t.string.x_mask(), t.string.z_mask(),
                                           t.string.count_y());
  }
  if (std::abs(acc.imag()) > kHermitianTolerance) {
    throw Error(ErrorCode::kNonHermitian,
                "expectation has imaginary part " + std::to_string(acc.imag()));
  }
  return acc.real();
}

}  // namespace qcor
