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

#include <bit>

#include "qcor/statevector_kernels.hpp"

namespace qcor::kernels::serial {

namespace {

complex i_power(std::size_t k) {
  static constexpr complex kPowers[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kPowers[k % 4];
}

}  // namespace

void apply_1q(std::span<complex> amps, unsigned qubit, const Mat2& m) {
  const std::size_t stride = std::size_t{1} << qubit;
  const std::size_t half = amps.size() / 2;
  for (std::size_t k = 0; k < half; ++k) {
    // Insert a zero at bit position `qubit`.
    const std::size_t i0 = ((k & ~(stride - 1)) << 1) | (k & (stride - 1));
    const std::size_t i1 = i0 | stride;
    const complex a0 = amps[i0];
    const complex a1 = amps[i1];
    amps[i0] = m[0] * a0 + m[1] * a1;
    amps[i1] = m[2] * a0 + m[3] * a1;
  }
}

void apply_cnot(std::span<complex> amps, unsigned control, unsigned target) {
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & cbit) && !(i & tbit)) std::swap(amps[i], amps[i | tbit]);
  }
}

void apply_cz(std::span<complex> amps, unsigned a, unsigned b) {
  const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & mask) == mask) amps[i] = -amps[i];
  }
}

double norm_squared(std::span<const complex> amps) {
  double acc = 0.0;
  for (const auto& a : amps) acc += std::norm(a);
  return acc;
}

std::vector<double> marginal_probabilities(std::span<const complex> amps,
                                           std::span<const unsigned> measured) {
  std::vector<double> probs(std::size_t{1} << measured.size(), 0.0);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    std::size_t outcome = 0;
    for (std::size_t b = 0; b < measured.size(); ++b) {
      outcome |= ((i >> measured[b]) & 1u) << b;
    }
    probs[outcome] += std::norm(amps[i]);
  }
  return probs;
}

complex pauli_expectation(std::span<const complex> amps, std::uint64_t x_mask,
                          std::uint64_t z_mask, std::size_t y_count) {
  complex acc = 0.0;
  for (std::uint64_t x = 0; x < amps.size(); ++x) {
    const double sign = (std::popcount(x & z_mask) & 1) ? -1.0 : 1.0;
    acc += std::conj(amps[x ^ x_mask]) * sign * amps[x];
  }
  return i_power(y_count) * acc;
}

void apply_bit_matrix(std::span<double> values, unsigned bit,
                      const RealMat2& m) {
  const std::size_t stride = std::size_t{1} << bit;
  for (std::size_t i0 = 0; i0 < values.size(); ++i0) {
    if (i0 & stride) continue;
    const std::size_t i1 = i0 | stride;
    const double v0 = values[i0];
    const double v1 = values[i1];
    values[i0] = m[0] * v0 + m[1] * v1;
    values[i1] = m[2] * v0 + m[3] * v1;
  }
}

}  // namespace qcor::kernels::serial
