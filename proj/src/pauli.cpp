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

#include "qcor/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ranges>

#include "qcor/error.hpp"
#include "text.hpp"

namespace qcor {

namespace {

constexpr complex kI{0.0, 1.0};

bool is_finite(complex c) {
  return std::isfinite(c.real()) && std::isfinite(c.imag());
}

complex i_power(std::size_t k) {
  switch (k % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

char to_char(PauliOp op) {
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(op)];
}

std::pair<complex, PauliOp> multiply(PauliOp a, PauliOp b) {
  if (a == PauliOp::I) return {1.0, b};
  if (b == PauliOp::I) return {1.0, a};
  if (a == b) return {1.0, PauliOp::I};
  int ia = static_cast<int>(a), ib = static_cast<int>(b);
  auto op = static_cast<PauliOp>(6 - ia - ib);
  // Cyclic order X -> Y -> Z picks up +i, anti-cyclic -i.
  complex phase = ((ib - ia + 3) % 3 == 1) ? kI : -kI;
  return {phase, op};
}

PauliString PauliString::from_entries(std::vector<Entry> entries) {
  std::erase_if(entries, [](const Entry& e) { return e.second == PauliOp::I; });
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (std::size_t k = 1; k < entries.size(); ++k) {
    if (entries[k].first == entries[k - 1].first) {
      throw Error(ErrorCode::kInvalidArgument,
                  "repeated qubit " + std::to_string(entries[k].first) +
                      " in Pauli string");
    }
  }
  PauliString s;
  s.entries_ = std::move(entries);
  return s;
}

std::pair<complex, PauliString> PauliString::product(
    std::span<const Entry> factors) {
  complex phase = 1.0;
  PauliString acc;
  for (const auto& f : factors) {
    auto [p, next] = multiply(acc, from_entries({f}));
    phase *= p;
    acc = std::move(next);
  }
  return {phase, std::move(acc)};
}

PauliOp PauliString::at(Qubit qubit) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), qubit,
      [](const Entry& e, Qubit q) { return e.first < q; });
  return (it != entries_.end() && it->first == qubit) ? it->second
                                                      : PauliOp::I;
}

std::uint64_t PauliString::x_mask() const {
  std::uint64_t mask = 0;
  for (auto [q, op] : entries_) {
    if (q >= 64) throw Error(ErrorCode::kDimensionOverflow, "qubit index >= 64");
    if (op == PauliOp::X || op == PauliOp::Y) mask |= std::uint64_t{1} << q;
  }
  return mask;
}

std::uint64_t PauliString::z_mask() const {
  std::uint64_t mask = 0;
  for (auto [q, op] : entries_) {
    if (q >= 64) throw Error(ErrorCode::kDimensionOverflow, "qubit index >= 64");
    if (op == PauliOp::Z || op == PauliOp::Y) mask |= std::uint64_t{1} << q;
  }
  return mask;
}

std::size_t PauliString::count_y() const {
  return static_cast<std::size_t>(std::count_if(
      entries_.begin(), entries_.end(),
      [](const Entry& e) { return e.second == PauliOp::Y; }));
}

std::string PauliString::to_string() const {
  if (entries_.empty()) return "I";
  std::string out;
  for (auto [q, op] : entries_) {
    if (!out.empty()) out += ' ';
    out += to_char(op);
    out += std::to_string(q);
  }
  return out;
}

bool PauliString::qubitwise_commutes(const PauliString& other) const {
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      if (a->second != b->second) return false;
      ++a;
      ++b;
    }
  }
  return true;
}

bool operator<(const PauliString& a, const PauliString& b) {
  auto qa = a.entries_ | std::views::keys;
  auto qb = b.entries_ | std::views::keys;
  if (!std::ranges::equal(qa, qb)) {
    return std::ranges::lexicographical_compare(qa, qb);
  }
  return std::ranges::lexicographical_compare(a.entries_ | std::views::values,
                                              b.entries_ | std::views::values);
}

std::pair<complex, PauliString> multiply(const PauliString& a,
                                         const PauliString& b) {
  complex phase = 1.0;
  std::vector<PauliString::Entry> out;
  out.reserve(a.size() + b.size());
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  while (ia != a.entries().end() || ib != b.entries().end()) {
    if (ib == b.entries().end() ||
        (ia != a.entries().end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.entries().end() || ib->first < ia->first) {
      out.push_back(*ib++);
    } else {
      auto [p, op] = multiply(ia->second, ib->second);
      phase *= p;
      if (op != PauliOp::I) out.emplace_back(ia->first, op);
      ++ia;
      ++ib;
    }
  }
  return {phase, PauliString::from_entries(std::move(out))};
}

PauliObservable PauliObservable::from_terms(std::vector<PauliTerm> terms) {
  for (const auto& t : terms) {
    if (!is_finite(t.coefficient)) {
      throw Error(ErrorCode::kNonFinite,
                  "non-finite coefficient on term " + t.string.to_string());
    }
  }
  PauliObservable obs;
  obs.terms_ = std::move(terms);
  return obs;
}

PauliObservable PauliObservable::identity(complex coefficient) {
  return term(PauliString{}, coefficient);
}

PauliObservable PauliObservable::single(PauliOp op, Qubit qubit,
                                        complex coefficient) {
  return term(PauliString::from_entries({{qubit, op}}), coefficient);
}

PauliObservable PauliObservable::term(PauliString string, complex coefficient) {
  return simplify(from_terms({PauliTerm{coefficient, std::move(string)}}));
}

std::size_t PauliObservable::num_qubits() const {
  std::size_t n = 0;
  for (const auto& t : terms_) n = std::max(n, t.string.num_qubits());
  return n;
}

bool PauliObservable::has_real_coefficients(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(), [tol](const PauliTerm& t) {
    return std::abs(t.coefficient.imag()) <= tol;
  });
}

PauliObservable simplify(const PauliObservable& obs, double tol) {
  std::map<PauliString, complex> merged;
  for (const auto& t : obs.terms()) merged[t.string] += t.coefficient;
  std::vector<PauliTerm> out;
  out.reserve(merged.size());
  for (auto& [s, c] : merged) {
    if (std::abs(c) > tol) out.push_back({c, s});
  }
  return PauliObservable::from_terms(std::move(out));
}

PauliObservable add(const PauliObservable& a, const PauliObservable& b) {
  std::vector<PauliTerm> all(a.terms().begin(), a.terms().end());
  all.insert(all.end(), b.terms().begin(), b.terms().end());
  return simplify(PauliObservable::from_terms(std::move(all)));
}

PauliObservable scale(const PauliObservable& a, complex factor) {
  std::vector<PauliTerm> out(a.terms().begin(), a.terms().end());
  for (auto& t : out) t.coefficient *= factor;
  return simplify(PauliObservable::from_terms(std::move(out)));
}

PauliObservable multiply(const PauliObservable& a, const PauliObservable& b) {
  std::vector<PauliTerm> out;
  out.reserve(a.terms().size() * b.terms().size());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      auto [phase, s] = multiply(ta.string, tb.string);
      out.push_back({phase * ta.coefficient * tb.coefficient, std::move(s)});
    }
  }
  return simplify(PauliObservable::from_terms(std::move(out)));
}

PauliObservable parse_pauli(std::string_view text) {
  detail::Scanner in(text);
  in.skip_space();
  if (in.at_end()) in.fail("empty observable");

  std::vector<PauliTerm> terms;
  double sign = 1.0;
  if (in.consume('-')) {
    sign = -1.0;
  } else {
    in.consume('+');
  }

  while (true) {
    in.skip_space();
    complex coefficient = 1.0;
    bool has_coefficient = false;
    if (in.peek() == '(') {
      coefficient = in.paren_complex();
      has_coefficient = true;
    } else if (in.at_digit() || in.peek() == '.' ||
               ((in.peek() == '+' || in.peek() == '-') &&
                (in.at_digit(1) || in.peek(1) == '.'))) {
      coefficient = in.real();
      has_coefficient = true;
    }
    if (!is_finite(coefficient)) in.fail("non-finite coefficient");

    std::vector<PauliString::Entry> factors;
    bool identity = false;
    while (true) {
      in.skip_space();
      char c = in.peek();
      if (c == 'X' || c == 'Y' || c == 'Z') {
        in.advance();
        if (!in.at_digit()) in.fail("expected qubit index after Pauli");
        Qubit q = in.uint();
        factors.emplace_back(q, c == 'X'   ? PauliOp::X
                                : c == 'Y' ? PauliOp::Y
                                           : PauliOp::Z);
      } else if (c == 'I' && !in.at_digit(1)) {
        in.advance();
        identity = true;
      } else {
        break;
      }
    }
    if (factors.empty() && !identity) {
      in.fail(has_coefficient ? "expected Pauli factor after coefficient"
                              : "expected term");
    }

    auto [phase, string] = PauliString::product(factors);
    terms.push_back({sign * coefficient * phase, std::move(string)});

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
  return simplify(PauliObservable::from_terms(std::move(terms)));
}

std::string to_string(const PauliObservable& obs) {
  if (obs.empty()) return "(0,0) I";
  std::string out;
  for (const auto& t : obs.terms()) {
    if (!out.empty()) out += " + ";
    if (t.coefficient != complex{1.0, 0.0}) {
      out += detail::format_complex(t.coefficient);
      out += ' ';
    }
    out += t.string.to_string();
  }
  return out;
}

Eigen::MatrixXcd to_dense_matrix(const PauliObservable& obs, std::size_t n) {
  if (n > kMaxDenseQubits) {
    throw Error(ErrorCode::kDimensionOverflow,
                "dense expansion limited to " +
                    std::to_string(kMaxDenseQubits) + " qubits");
  }
  if (n < obs.num_qubits()) {
    throw Error(ErrorCode::kOutOfRange,
                "observable acts on " + std::to_string(obs.num_qubits()) +
                    " qubits, more than the requested " + std::to_string(n));
  }
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : obs.terms()) {
    const auto xm = t.string.x_mask();
    const auto zm = t.string.z_mask();
    const complex base = t.coefficient * i_power(t.string.count_y());
    for (std::uint64_t x = 0; x < dim; ++x) {
      const double sign = (std::popcount(x & zm) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(x ^ xm), static_cast<Eigen::Index>(x)) +=
          sign * base;
    }
  }
  return m;
}

namespace {

// Bitstring positions holding the term's support.
std::vector<std::size_t> parity_positions(const PauliTerm& term,
                                          std::span<const Qubit> measured) {
  std::vector<std::size_t> positions;
  positions.reserve(term.string.size());
  if (measured.empty()) {
    for (std::size_t i = 0; i < term.string.size(); ++i) positions.push_back(i);
    return positions;
  }
  for (auto [q, op] : term.string.entries()) {
    auto it = std::find(measured.begin(), measured.end(), q);
    if (it == measured.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "qubit " + std::to_string(q) + " of term " +
                      term.string.to_string() + " was not measured");
    }
    positions.push_back(static_cast<std::size_t>(it - measured.begin()));
  }
  return positions;
}

template <typename Weights>
double parity_sum(const PauliTerm& term, const Weights& weights,
                  std::span<const Qubit> measured, double& total) {
  const auto positions = parity_positions(term, measured);
  const std::size_t width =
      measured.empty() ? term.string.size() : measured.size();
  double acc = 0.0;
  total = 0.0;
  for (const auto& [bits, w] : weights) {
    if (bits.size() != width) {
      throw Error(ErrorCode::kInvalidArgument,
                  "bitstring '" + bits + "' does not cover " +
                      std::to_string(width) + " measured qubits");
    }
    bool odd = false;
    for (auto p : positions) {
      if (bits[p] != '0' && bits[p] != '1') {
        throw Error(ErrorCode::kInvalidArgument,
                    "invalid bitstring '" + bits + "'");
      }
      odd ^= (bits[p] == '1');
    }
    const double weight = static_cast<double>(w);
    acc += odd ? -weight : weight;
    total += weight;
  }
  return acc;
}

}  // namespace

double expectation_from_counts(const PauliTerm& term, const ShotCounts& counts,
                               std::span<const Qubit> measured) {
  double total = 0.0;
  const double acc = parity_sum(term, counts, measured, total);
  if (counts.empty() || total == 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "empty counts");
  }
  return term.coefficient.real() * acc / total;
}

double expectation_from_distribution(const PauliTerm& term,
                                     const QuasiDistribution& distribution,
                                     std::span<const Qubit> measured) {
  if (distribution.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty distribution");
  }
  double total = 0.0;
  return term.coefficient.real() *
         parity_sum(term, distribution, measured, total);
}

std::vector<PauliObservable> group_commuting(const PauliObservable& obs) {
  std::vector<std::vector<PauliTerm>> groups;
  for (const auto& t : obs.terms()) {
    auto fits = [&](const std::vector<PauliTerm>& g) {
      return std::all_of(g.begin(), g.end(), [&](const PauliTerm& member) {
        return member.string.qubitwise_commutes(t.string);
      });
    };
    auto it = std::find_if(groups.begin(), groups.end(), fits);
    if (it == groups.end()) {
      groups.push_back({t});
    } else {
      it->push_back(t);
    }
  }
  std::vector<PauliObservable> out;
  out.reserve(groups.size());
  for (auto& g : groups) out.push_back(PauliObservable::from_terms(std::move(g)));
  return out;
}

}  // namespace qcor
