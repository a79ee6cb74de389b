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

#include "qcor/fermion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "qcor/error.hpp"
#include "text.hpp"

namespace qcor {

namespace {

// Canonical position: creations before annihilations, then ascending site.
std::pair<int, Qubit> order_key(const LadderOp& op) {
  return {op.dagger ? 0 : 1, op.site};
}

struct SequenceLess {
  bool operator()(const std::vector<LadderOp>& a,
                  const std::vector<LadderOp>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (order_key(a[i]) != order_key(b[i])) {
        return order_key(a[i]) < order_key(b[i]);
      }
    }
    return false;
  }
};

using TermMap = std::map<std::vector<LadderOp>, complex, SequenceLess>;

// Adds the normal-ordered expansion of coeff * ops to `out`.
void expand_normal(complex coeff, std::vector<LadderOp> ops, TermMap& out) {
  for (std::size_t i = 0; i + 1 < ops.size(); ++i) {
    const auto ka = order_key(ops[i]);
    const auto kb = order_key(ops[i + 1]);
    if (ka == kb) return;  // c c = c^dagger c^dagger = 0
    if (ka < kb) continue;

    // ops[i] ops[i+1] = -ops[i+1] ops[i] + {ops[i], ops[i+1]}
    if (!ops[i].dagger && ops[i + 1].dagger && ops[i].site == ops[i + 1].site) {
      std::vector<LadderOp> contracted;
      contracted.reserve(ops.size() - 2);
      contracted.insert(contracted.end(), ops.begin(), ops.begin() + i);
      contracted.insert(contracted.end(), ops.begin() + i + 2, ops.end());
      expand_normal(coeff, std::move(contracted), out);
    }
    std::swap(ops[i], ops[i + 1]);
    expand_normal(-coeff, std::move(ops), out);
    return;
  }
  out[std::move(ops)] += coeff;
}

bool is_finite(complex c) {
  return std::isfinite(c.real()) && std::isfinite(c.imag());
}

// Image of one ladder operator under the Jordan-Wigner map.
PauliObservable ladder_image(const LadderOp& op) {
  std::vector<PauliString::Entry> parity;
  for (Qubit k = 0; k < op.site; ++k) parity.emplace_back(k, PauliOp::Z);
  auto with = [&](PauliOp p) {
    auto entries = parity;
    entries.emplace_back(op.site, p);
    return PauliString::from_entries(std::move(entries));
  };
  const complex y_coeff = op.dagger ? complex{0.0, -0.5} : complex{0.0, 0.5};
  return simplify(PauliObservable::from_terms(
      {{0.5, with(PauliOp::X)}, {y_coeff, with(PauliOp::Y)}}));
}

}  // namespace

FermionObservable FermionObservable::from_terms(std::vector<FermionTerm> terms) {
  for (const auto& t : terms) {
    if (!is_finite(t.coefficient)) {
      throw Error(ErrorCode::kNonFinite, "non-finite fermion coefficient");
    }
  }
  FermionObservable obs;
  obs.terms_ = std::move(terms);
  return obs;
}

std::size_t FermionObservable::num_modes() const {
  std::size_t n = 0;
  for (const auto& t : terms_) {
    for (const auto& op : t.ops) n = std::max<std::size_t>(n, op.site + 1);
  }
  return n;
}

FermionObservable parse_fermion(std::string_view text) {
  detail::Scanner in(text);
  in.skip_space();
  if (in.at_end()) in.fail("empty fermion observable");

  std::vector<FermionTerm> terms;
  double sign = 1.0;
  if (in.consume('-')) {
    sign = -1.0;
  } else {
    in.consume('+');
  }

  while (true) {
    in.skip_space();
    FermionTerm term;
    bool has_coefficient = false;
    const bool signed_number =
        (in.peek() == '+' || in.peek() == '-') &&
        (in.at_digit(1) || in.peek(1) == '.');
    if (in.peek() == '(') {
      term.coefficient = in.paren_complex();
      has_coefficient = true;
    } else if ((in.at_digit() || in.peek() == '.' || signed_number) &&
               in.number_is_real()) {
      term.coefficient = in.real();
      has_coefficient = true;
    }
    if (!is_finite(term.coefficient)) in.fail("non-finite coefficient");
    term.coefficient *= sign;

    while (true) {
      in.skip_space();
      if (!in.at_digit()) break;
      LadderOp op;
      op.site = in.uint();
      op.dagger = in.consume('^');
      term.ops.push_back(op);
    }
    if (term.ops.empty() && !has_coefficient) in.fail("expected term");
    terms.push_back(std::move(term));

    in.skip_space();
    if (in.at_end()) break;
    if (in.consume('+')) {
      sign = 1.0;
    } else if (in.consume('-')) {
      sign = -1.0;
    } else {
      in.fail("expected '+' or '-' between terms");
    }
  }
  return FermionObservable::from_terms(std::move(terms));
}

std::string to_string(const FermionObservable& obs) {
  const auto normal = normal_order(obs);
  if (normal.empty()) return "(0,0)";
  std::string out;
  for (const auto& t : normal.terms()) {
    if (!out.empty()) out += " + ";
    out += detail::format_complex(t.coefficient);
    for (const auto& op : t.ops) {
      out += ' ';
      out += std::to_string(op.site);
      if (op.dagger) out += '^';
    }
  }
  return out;
}

FermionObservable add(const FermionObservable& a, const FermionObservable& b) {
  std::vector<FermionTerm> all(a.terms().begin(), a.terms().end());
  all.insert(all.end(), b.terms().begin(), b.terms().end());
  return FermionObservable::from_terms(std::move(all));
}

FermionObservable scale(const FermionObservable& a, complex factor) {
  std::vector<FermionTerm> out(a.terms().begin(), a.terms().end());
  for (auto& t : out) t.coefficient *= factor;
  return FermionObservable::from_terms(std::move(out));
}

FermionObservable multiply(const FermionObservable& a,
                           const FermionObservable& b) {
  std::vector<FermionTerm> out;
  out.reserve(a.terms().size() * b.terms().size());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      FermionTerm t{ta.coefficient * tb.coefficient, ta.ops};
      t.ops.insert(t.ops.end(), tb.ops.begin(), tb.ops.end());
      out.push_back(std::move(t));
    }
  }
  return FermionObservable::from_terms(std::move(out));
}

FermionObservable adjoint(const FermionObservable& a) {
  std::vector<FermionTerm> out;
  out.reserve(a.terms().size());
  for (const auto& t : a.terms()) {
    FermionTerm adj{std::conj(t.coefficient), {t.ops.rbegin(), t.ops.rend()}};
    for (auto& op : adj.ops) op.dagger = !op.dagger;
    out.push_back(std::move(adj));
  }
  return FermionObservable::from_terms(std::move(out));
}

FermionObservable normal_order(const FermionObservable& obs, double tol) {
  TermMap merged;
  for (const auto& t : obs.terms()) expand_normal(t.coefficient, t.ops, merged);
  std::vector<FermionTerm> out;
  for (auto& [ops, c] : merged) {
    if (std::abs(c) > tol) out.push_back({c, ops});
  }
  return FermionObservable::from_terms(std::move(out));
}

PauliObservable jordan_wigner(const FermionObservable& obs) {
  PauliObservable total;
  for (const auto& t : obs.terms()) {
    PauliObservable product = PauliObservable::identity(t.coefficient);
    for (const auto& op : t.ops) {
      product = multiply(product, ladder_image(op));
      if (product.empty()) break;
    }
    total = add(total, product);
  }
  return total;
}

Eigen::MatrixXcd fermion_to_dense(const FermionObservable& obs,
                                  std::size_t n_modes) {
  if (n_modes > kMaxDenseModes) {
    throw Error(ErrorCode::kDimensionOverflow,
                "dense fermion operators limited to " +
                    std::to_string(kMaxDenseModes) + " modes");
  }
  if (n_modes < obs.num_modes()) {
    throw Error(ErrorCode::kInvalidArgument,
                "observable uses " + std::to_string(obs.num_modes()) +
                    " modes, more than the requested " +
                    std::to_string(n_modes));
  }
  const std::size_t dim = std::size_t{1} << n_modes;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : obs.terms()) {
    for (std::size_t x = 0; x < dim; ++x) {
      // Each ladder operator sends a basis state to +-(another basis state)
      // or to zero; apply the product right to left.
      std::size_t state = x;
      double sign = 1.0;
      bool zero = false;
      for (auto it = t.ops.rbegin(); it != t.ops.rend(); ++it) {
        const std::size_t bit = std::size_t{1} << it->site;
        const bool occupied = state & bit;
        if (occupied == it->dagger) {
          zero = true;
          break;
        }
        if (std::popcount(state & (bit - 1)) & 1) sign = -sign;
        state ^= bit;
      }
      if (!zero) {
        m(static_cast<Eigen::Index>(state), static_cast<Eigen::Index>(x)) +=
            sign * t.coefficient;
      }
    }
  }
  return m;
}

}  // namespace qcor
