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

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qcor/pauli.hpp"

namespace qcor {

/// c^dagger_site when `dagger`, c_site otherwise.
struct LadderOp {
  Qubit site = 0;
  bool dagger = false;

  friend bool operator==(const LadderOp&, const LadderOp&) = default;
};

struct FermionTerm {
  complex coefficient{1.0, 0.0};
  /// Operator product in textual (left-to-right) order.
  std::vector<LadderOp> ops;

  friend bool operator==(const FermionTerm&, const FermionTerm&) = default;
};

/// Sum of ladder-operator products. Terms are kept as written until
/// `normal_order` canonicalizes them.
class FermionObservable {
 public:
  FermionObservable() = default;

  static FermionObservable from_terms(std::vector<FermionTerm> terms);

  std::span<const FermionTerm> terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  /// 1 + largest site; 0 when no ladder operator appears.
  std::size_t num_modes() const;

  friend bool operator==(const FermionObservable&,
                         const FermionObservable&) = default;

 private:
  std::vector<FermionTerm> terms_;
};

/// Terms `[coeff] factor*` joined by '+' or '-'; a factor is `<site>^`
/// (creation) or `<site>` (annihilation). A coefficient is parenthesized
/// `(re,im)` or a real written with a fraction or exponent (`2.5`, `1e-3`);
/// bare integers are always sites.
FermionObservable parse_fermion(std::string_view text);

/// Canonical text of the normal-ordered form, every term with its
/// coefficient, e.g. "(1,0) + (-1,0) 0^ 0".
std::string to_string(const FermionObservable& obs);

FermionObservable add(const FermionObservable& a, const FermionObservable& b);
FermionObservable scale(const FermionObservable& a, complex factor);
/// Operator product: concatenates the op sequences of every term pair.
FermionObservable multiply(const FermionObservable& a,
                           const FermionObservable& b);
/// Hermitian conjugate: reversed sequences, daggers flipped, coefficients
/// conjugated.
FermionObservable adjoint(const FermionObservable& a);

/// Rewrites every product with creations first (ascending site) and then
/// annihilations (ascending site) using {c_i, c^dagger_j} = delta_ij; merges
/// like terms and drops those with |coefficient| <= tol.
FermionObservable normal_order(const FermionObservable& obs,
                               double tol = kDefaultPruneTolerance);

/// Jordan-Wigner map: mode j -> qubit j, with
///   c^dagger_j = 1/2 (X_j - i Y_j) Z_{j-1} ... Z_0
///   c_j        = 1/2 (X_j + i Y_j) Z_{j-1} ... Z_0
PauliObservable jordan_wigner(const FermionObservable& obs);

inline constexpr std::size_t kMaxDenseModes = 10;

/// Dense operator on the 2^n occupation-number basis (bit j = occupation of
/// mode j), built by applying each ladder operator literally with its
/// Jordan-Wigner parity sign.
Eigen::MatrixXcd fermion_to_dense(const FermionObservable& obs,
                                  std::size_t n_modes);

}  // namespace qcor
