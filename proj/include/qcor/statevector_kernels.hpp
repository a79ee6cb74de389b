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

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

// Inner loops of the simulator and of readout mitigation.
//
// Every kernel exists twice with identical signatures: `serial` is the plain
// reference loop kept for testing, `omp` is the OpenMP version the library
// runs. Amplitude index bit k is the state of qubit k.

namespace qcor::kernels {

using complex = std::complex<double>;

/// Row-major 2x2 matrix {m00, m01, m10, m11}.
using Mat2 = std::array<complex, 4>;
using RealMat2 = std::array<double, 4>;

/// Registers below this size run serially even in the OpenMP variants.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 14;

namespace serial {

void apply_1q(std::span<complex> amps, unsigned qubit, const Mat2& m);
void apply_cnot(std::span<complex> amps, unsigned control, unsigned target);
void apply_cz(std::span<complex> amps, unsigned a, unsigned b);
double norm_squared(std::span<const complex> amps);

/// Probabilities of the 2^k outcomes of measuring `measured`; outcome bit i
/// is the result on measured[i].
std::vector<double> marginal_probabilities(std::span<const complex> amps,
                                           std::span<const unsigned> measured);

/// <psi| P |psi> for the Pauli string given by its masks and Y count.
complex pauli_expectation(std::span<const complex> amps, std::uint64_t x_mask,
                          std::uint64_t z_mask, std::size_t y_count);

/// Applies a 2x2 real matrix to bit `bit` of a dense vector over 2^k
/// outcomes (the factorized form of a tensor-product confusion matrix).
void apply_bit_matrix(std::span<double> values, unsigned bit,
                      const RealMat2& m);

}  // namespace serial

namespace omp {

void apply_1q(std::span<complex> amps, unsigned qubit, const Mat2& m);
void apply_cnot(std::span<complex> amps, unsigned control, unsigned target);
void apply_cz(std::span<complex> amps, unsigned a, unsigned b);
double norm_squared(std::span<const complex> amps);
std::vector<double> marginal_probabilities(std::span<const complex> amps,
                                           std::span<const unsigned> measured);
complex pauli_expectation(std::span<const complex> amps, std::uint64_t x_mask,
                          std::uint64_t z_mask, std::size_t y_count);
void apply_bit_matrix(std::span<double> values, unsigned bit,
                      const RealMat2& m);

/// Worker threads OpenMP would use for a parallel region.
int max_threads();

}  // namespace omp

}  // namespace qcor::kernels
