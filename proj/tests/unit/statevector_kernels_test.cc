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

#include "qcor/statevector_kernels.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qcor::kernels;

namespace {

// Large enough to cross the parallel threshold.
constexpr unsigned kQubits = 16;

std::vector<complex> random_state(std::uint64_t seed, unsigned n) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<complex> v(std::size_t{1} << n);
  double norm = 0;
  for (auto& a : v) {
    a = {g(rng), g(rng)};
    norm += std::norm(a);
  }
  for (auto& a : v) a /= std::sqrt(norm);
  return v;
}

double max_diff(const std::vector<complex>& a, const std::vector<complex>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(kernels, threshold_is_crossed) {
  ASSERT_GE(std::size_t{1} << kQubits, kParallelThreshold);
  EXPECT_GE(omp::max_threads(), 1);
}

TEST(kernels, apply_1q_agrees) {
  const Mat2 m = {complex(0.6, 0.1), complex(0.2, -0.7), complex(-0.3, 0.4),
                  complex(0.9, 0.0)};
  for (unsigned n : {3u, kQubits}) {
    for (unsigned q = 0; q < n; q += 5) {
      auto a = random_state(q + n, n), b = a;
      serial::apply_1q(a, q, m);
      omp::apply_1q(b, q, m);
      EXPECT_EQ(max_diff(a, b), 0.0);
    }
  }
}

TEST(kernels, two_qubit_gates_agree) {
  auto a = random_state(1, kQubits), b = a;
  serial::apply_cnot(a, 3, 11);
  omp::apply_cnot(b, 3, 11);
  serial::apply_cz(a, 0, 15);
  omp::apply_cz(b, 0, 15);
  EXPECT_EQ(max_diff(a, b), 0.0);
}

TEST(kernels, cnot_semantics) {
  std::vector<complex> v(4, 0.0);
  v[0b01] = 1.0;  // qubit 0 set
  serial::apply_cnot(v, 0, 1);
  EXPECT_EQ(v[0b11], complex(1.0));
  std::vector<complex> w(4, 0.0);
  w[0b11] = 1.0;
  serial::apply_cz(w, 0, 1);
  EXPECT_EQ(w[0b11], complex(-1.0));
}

TEST(kernels, reductions_agree) {
  auto v = random_state(2, kQubits);
  EXPECT_NEAR(serial::norm_squared(v), omp::norm_squared(v), 1e-12);
  EXPECT_EQ(omp::norm_squared(v), omp::norm_squared(v));

  const std::vector<unsigned> measured = {0, 7, 15};
  auto ps = serial::marginal_probabilities(v, measured);
  auto po = omp::marginal_probabilities(v, measured);
  ASSERT_EQ(ps.size(), 8u);
  for (std::size_t i = 0; i < ps.size(); ++i) EXPECT_NEAR(ps[i], po[i], 1e-14);
  EXPECT_EQ(po, omp::marginal_probabilities(v, measured));

  for (auto [x, z, y] : {std::tuple{0x0003ull, 0x0000ull, 0ul},
                         std::tuple{0x8001ull, 0x8000ull, 1ul},
                         std::tuple{0x0000ull, 0x0f0full, 0ul}}) {
    auto es = serial::pauli_expectation(v, x, z, y);
    auto eo = omp::pauli_expectation(v, x, z, y);
    EXPECT_LT(std::abs(es - eo), 1e-12);
  }
}

TEST(kernels, marginal_bit_order) {
  std::vector<complex> v(8, 0.0);
  v[0b100] = 1.0;  // qubit 2 set
  const std::vector<unsigned> measured = {2, 0};
  auto p = serial::marginal_probabilities(v, measured);
  EXPECT_EQ(p[0b01], 1.0);
}

TEST(kernels, bit_matrix_agrees) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u;
  std::vector<double> a(std::size_t{1} << kQubits);
  for (auto& x : a) x = u(rng);
  auto b = a;
  const RealMat2 m = {1.2, -0.3, -0.2, 1.3};
  for (unsigned bit : {0u, 9u, 15u}) {
    serial::apply_bit_matrix(a, bit, m);
    omp::apply_bit_matrix(b, bit, m);
  }
  EXPECT_EQ(a, b);
}
