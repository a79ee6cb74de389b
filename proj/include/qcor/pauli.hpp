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

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qcor {

using complex = std::complex<double>;
using Qubit = std::uint32_t;

/// Coefficients whose magnitude does not exceed this are dropped by
/// `simplify` unless a different tolerance is requested.
inline constexpr double kDefaultPruneTolerance = 1e-12;

enum class PauliOp : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(PauliOp op);

/// Single-qubit product a*b = phase * op, phase in {1, -1, i, -i}.
std::pair<complex, PauliOp> multiply(PauliOp a, PauliOp b);

/// Tensor product of single-qubit Paulis, stored sparsely as (qubit, op)
/// pairs sorted by qubit. Identity factors are never stored, so the empty
/// string is the identity.
class PauliString {
 public:
  using Entry = std::pair<Qubit, PauliOp>;

  PauliString() = default;

  /// Builds from arbitrary (qubit, op) pairs. Identity entries are dropped;
  /// repeated qubits are rejected (use `product` to multiply them out).
  static PauliString from_entries(std::vector<Entry> entries);

  /// Left-to-right product of the factors with the accumulated phase.
  static std::pair<complex, PauliString> product(std::span<const Entry> factors);

  std::span<const Entry> entries() const { return entries_; }
  bool is_identity() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  /// Op acting on `qubit` (I when absent).
  PauliOp at(Qubit qubit) const;

  /// 1 + largest qubit index; 0 for the identity.
  std::size_t num_qubits() const {
    return entries_.empty() ? 0 : entries_.back().first + 1;
  }

  /// Bit masks for the dense action P|x> = i^{#Y} (-1)^{|x & z|} |x ^ x_mask>.
  std::uint64_t x_mask() const;
  std::uint64_t z_mask() const;
  std::size_t count_y() const;

  /// "X0 Y3"; the identity prints as "I".
  std::string to_string() const;

  /// Equal or identity on every shared qubit.
  bool qubitwise_commutes(const PauliString& other) const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

  /// Canonical order: qubit index sequence first, then op kinds.
  friend bool operator<(const PauliString& a, const PauliString& b);

 private:
  std::vector<Entry> entries_;
};

std::pair<complex, PauliString> multiply(const PauliString& a,
                                         const PauliString& b);

struct PauliTerm {
  complex coefficient{1.0, 0.0};
  PauliString string;

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

/// Weighted sum of Pauli strings.
///
/// Every operation except `from_terms` returns a simplified observable: terms
/// in canonical order, one term per distinct string, negligible coefficients
/// removed. Values are immutable once built and safe to share across threads.
class PauliObservable {
 public:
  PauliObservable() = default;

  /// Keeps the terms exactly as given (no merging); rejects non-finite
  /// coefficients.
  static PauliObservable from_terms(std::vector<PauliTerm> terms);

  static PauliObservable identity(complex coefficient = 1.0);
  static PauliObservable single(PauliOp op, Qubit qubit,
                                complex coefficient = 1.0);
  static PauliObservable term(PauliString string, complex coefficient = 1.0);

  std::span<const PauliTerm> terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t num_qubits() const;

  /// True when every coefficient is real (imaginary part within tol).
  bool has_real_coefficients(double tol = kDefaultPruneTolerance) const;

  friend bool operator==(const PauliObservable&,
                         const PauliObservable&) = default;

 private:
  std::vector<PauliTerm> terms_;
};

PauliObservable parse_pauli(std::string_view text);
std::string to_string(const PauliObservable& obs);

PauliObservable simplify(const PauliObservable& obs,
                         double tol = kDefaultPruneTolerance);
PauliObservable add(const PauliObservable& a, const PauliObservable& b);
PauliObservable scale(const PauliObservable& a, complex factor);
PauliObservable multiply(const PauliObservable& a, const PauliObservable& b);

inline PauliObservable operator+(const PauliObservable& a,
                                 const PauliObservable& b) {
  return add(a, b);
}
inline PauliObservable operator-(const PauliObservable& a,
                                 const PauliObservable& b) {
  return add(a, scale(b, -1.0));
}
inline PauliObservable operator*(const PauliObservable& a,
                                 const PauliObservable& b) {
  return multiply(a, b);
}
inline PauliObservable operator*(complex factor, const PauliObservable& a) {
  return scale(a, factor);
}

/// Largest register the dense expansion accepts.
inline constexpr std::size_t kMaxDenseQubits = 12;

/// 2^n x 2^n matrix; basis index bit k is the state of qubit k.
Eigen::MatrixXcd to_dense_matrix(const PauliObservable& obs, std::size_t n);

using ShotCounts = std::map<std::string, std::uint64_t>;
using QuasiDistribution = std::map<std::string, double>;

/// Parity estimator Re(c) * sum_b counts[b] (-1)^{parity} / total.
///
/// Bitstring character i holds the outcome of `measured[i]`. When `measured`
/// is empty the term's own support (ascending) is assumed.
double expectation_from_counts(const PauliTerm& term, const ShotCounts& counts,
                               std::span<const Qubit> measured = {});

/// Same estimator over a (quasi-)probability distribution; the weights are
/// used as given, without renormalization.
double expectation_from_distribution(const PauliTerm& term,
                                     const QuasiDistribution& distribution,
                                     std::span<const Qubit> measured = {});

/// Greedy partition into qubit-wise commuting groups, visiting terms in
/// canonical order.
std::vector<PauliObservable> group_commuting(const PauliObservable& obs);

}  // namespace qcor
