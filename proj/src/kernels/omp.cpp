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

#include <omp.h>

#include "qcor/statevector_kernels.hpp"

namespace qcor::kernels::omp {

namespace {

using Index = std::int64_t;

complex i_power(std::size_t k) {
  static constexpr complex kPowers[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kPowers[k % 4];
}

bool parallel(std::size_t n) { return n >= kParallelThreshold; }

}  // namespace

int max_threads() { return omp_get_max_threads(); }

void apply_1q(std::span<complex> amps, unsigned qubit, const Mat2& m) {
  const std::size_t stride = std::size_t{1} << qubit;
  const Index half = static_cast<Index>(amps.size() / 2);
  complex* data = amps.data();
#pragma omp parallel for if (parallel(amps.size())) schedule(static)
  for (Index k = 0; k < half; ++k) {
    const std::size_t uk = static_cast<std::size_t>(k);
    const std::size_t i0 = ((uk & ~(stride - 1)) << 1) | (uk & (stride - 1));
    const std::size_t i1 = i0 | stride;
    const complex a0 = data[i0];
    const complex a1 = data[i1];
    data[i0] = m[0] * a0 + m[1] * a1;
    data[i1] = m[2] * a0 + m[3] * a1;
  }
}

void apply_cnot(std::span<complex> amps, unsigned control, unsigned target) {
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  // Enumerate indices with the control set and the target clear.
  const unsigned lo = control < target ? control : target;
  const unsigned hi = control < target ? target : control;
  const Index quarter = static_cast<Index>(amps.size() / 4);
  complex* data = amps.data();
#pragma omp parallel for if (parallel(amps.size())) schedule(static)
  for (Index k = 0; k < quarter; ++k) {
    std::size_t i = static_cast<std::size_t>(k);
    i = ((i >> lo) << (lo + 1)) | (i & ((std::size_t{1} << lo) - 1));
    i = ((i >> hi) << (hi + 1)) | (i & ((std::size_t{1} << hi) - 1));
    i |= cbit;
    std::swap(data[i], data[i | tbit]);
  }
}

void apply_cz(std::span<complex> amps, unsigned a, unsigned b) {
  const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
  const Index n = static_cast<Index>(amps.size());
  complex* data = amps.data();
#pragma omp parallel for if (parallel(amps.size())) schedule(static)
  for (Index i = 0; i < n; ++i) {
    if ((static_cast<std::size_t>(i) & mask) == mask) data[i] = -data[i];
  }
}

double norm_squared(std::span<const complex> amps) {
  const Index n = static_cast<Index>(amps.size());
  const complex* data = amps.data();
  double acc = 0.0;
#pragma omp parallel for if (parallel(amps.size())) reduction(+ : acc)
  for (Index i = 0; i < n; ++i) acc += std::norm(data[i]);
  return acc;
}

std::vector<double> marginal_probabilities(std::span<const complex> amps,
                                           std::span<const unsigned> measured) {
  const std::size_t outcomes = std::size_t{1} << measured.size();
  const Index n = static_cast<Index>(amps.size());
  const complex* data = amps.data();
  const int threads = parallel(amps.size()) ? omp_get_max_threads() : 1;
  // Per-thread histograms, merged in thread order afterwards so the result
  // does not depend on which thread finishes first.
  std::vector<std::vector<double>> partial(
      static_cast<std::size_t>(threads), std::vector<double>(outcomes, 0.0));
#pragma omp parallel num_threads(threads)
  {
    auto& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (Index i = 0; i < n; ++i) {
      const std::size_t ui = static_cast<std::size_t>(i);
      std::size_t outcome = 0;
      for (std::size_t b = 0; b < measured.size(); ++b) {
        outcome |= ((ui >> measured[b]) & 1u) << b;
      }
      local[outcome] += std::norm(data[i]);
    }
  }
  std::vector<double> probs(outcomes, 0.0);
  for (const auto& local : partial) {
    for (std::size_t o = 0; o < outcomes; ++o) probs[o] += local[o];
  }
  return probs;
}

complex pauli_expectation(std::span<const complex> amps, std::uint64_t x_mask,
                          std::uint64_t z_mask, std::size_t y_count) {
  const Index n = static_cast<Index>(amps.size());
  const complex* data = amps.data();
  const int threads = parallel(amps.size()) ? omp_get_max_threads() : 1;
  std::vector<complex> partial(static_cast<std::size_t>(threads), 0.0);
#pragma omp parallel num_threads(threads)
  {
    complex local = 0.0;
#pragma omp for schedule(static)
    for (Index i = 0; i < n; ++i) {
      const std::uint64_t x = static_cast<std::uint64_t>(i);
      const double sign = (std::popcount(x & z_mask) & 1) ? -1.0 : 1.0;
      local += std::conj(data[x ^ x_mask]) * sign * data[x];
    }
    partial[static_cast<std::size_t>(omp_get_thread_num())] = local;
  }
  complex acc = 0.0;
  for (const auto& p : partial) acc += p;
  return i_power(y_count) * acc;
}

void apply_bit_matrix(std::span<double> values, unsigned bit,
                      const RealMat2& m) {
  const std::size_t stride = std::size_t{1} << bit;
  const Index half = static_cast<Index>(values.size() / 2);
  double* data = values.data();
#pragma omp parallel for if (parallel(values.size())) schedule(static)
  for (Index k = 0; k < half; ++k) {
    const std::size_t uk = static_cast<std::size_t>(k);
    const std::size_t i0 = ((uk & ~(stride - 1)) << 1) | (uk & (stride - 1));
    const std::size_t i1 = i0 | stride;
    const double v0 = data[i0];
    const double v1 = data[i1];
    data[i0] = m[0] * v0 + m[1] * v1;
    data[i1] = m[2] * v0 + m[3] * v1;
  }
}

}  // namespace qcor::kernels::omp
