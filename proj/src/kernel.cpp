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

#include "qcor/kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <set>

#include "qcor/error.hpp"
#include "text.hpp"

namespace qcor {

namespace {

constexpr std::array<std::string_view, 13> kGateNames = {
    "X", "Y", "Z", "H", "S", "Sdg", "T", "Rx", "Ry", "Rz", "CNOT", "CZ",
    "Measure"};

struct Violation {
  ErrorCode code;
  std::string message;
};

// Checks one instruction against the kernel built so far; updates `measured`.
std::optional<Violation> check_instruction(const Instruction& instr,
                                           std::size_t num_qubits,
                                           const std::vector<std::string>& params,
                                           std::set<Qubit>& measured) {
  const auto name = std::string(gate_name(instr.kind));
  if (instr.qubits.size() != gate_arity(instr.kind)) {
    return Violation{ErrorCode::kInvalidArgument,
                     name + " takes " + std::to_string(gate_arity(instr.kind)) +
                         " operand(s), got " +
                         std::to_string(instr.qubits.size())};
  }
  for (std::size_t i = 0; i < instr.qubits.size(); ++i) {
    const Qubit q = instr.qubits[i];
    if (q >= num_qubits) {
      return Violation{ErrorCode::kOutOfRange,
                       "qubit index " + std::to_string(q) +
                           " out of range for " + std::to_string(num_qubits) +
                           "-qubit kernel"};
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (instr.qubits[j] == q) {
        return Violation{ErrorCode::kInvalidArgument,
                         name + " operands must be distinct"};
      }
    }
    if (measured.contains(q)) {
      return Violation{ErrorCode::kAlreadyMeasured,
                       name + " on qubit " + std::to_string(q) +
                           " after its measurement"};
    }
  }
  if (is_rotation(instr.kind) != instr.param.has_value()) {
    return Violation{ErrorCode::kInvalidArgument,
                     is_rotation(instr.kind) ? name + " requires an angle"
                                             : name + " takes no angle"};
  }
  if (instr.param) {
    if (const auto* ref = std::get_if<std::string>(&*instr.param)) {
      if (std::find(params.begin(), params.end(), *ref) == params.end()) {
        return Violation{ErrorCode::kUnboundParameter,
                         "unknown parameter '" + *ref + "'"};
      }
    } else if (!std::isfinite(std::get<double>(*instr.param))) {
      return Violation{ErrorCode::kNonFinite, "non-finite angle in " + name};
    }
  }
  if (instr.kind == GateKind::Measure) measured.insert(instr.qubits.front());
  return std::nullopt;
}

bool is_identifier(std::string_view s) {
  auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  if (s.empty() || !alpha(s.front())) return false;
  return std::all_of(s.begin(), s.end(),
                     [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
}

std::optional<Violation> check_header(const std::string& name,
                                      const std::vector<std::string>& params,
                                      std::size_t num_qubits) {
  if (!is_identifier(name)) {
    return Violation{ErrorCode::kInvalidArgument,
                     "invalid kernel name '" + name + "'"};
  }
  if (num_qubits == 0) {
    return Violation{ErrorCode::kInvalidArgument,
                     "kernel must declare at least one qubit"};
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!is_identifier(params[i])) {
      return Violation{ErrorCode::kInvalidArgument,
                       "invalid parameter name '" + params[i] + "'"};
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (params[i] == params[j]) {
        return Violation{ErrorCode::kInvalidArgument,
                         "duplicate parameter '" + params[i] + "'"};
      }
    }
  }
  return std::nullopt;
}

std::string format_angle(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace

std::string_view gate_name(GateKind kind) {
  return kGateNames[static_cast<std::size_t>(kind)];
}

std::optional<GateKind> gate_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kGateNames.size(); ++i) {
    if (kGateNames[i] == name) return static_cast<GateKind>(i);
  }
  return std::nullopt;
}

bool is_rotation(GateKind kind) {
  return kind == GateKind::Rx || kind == GateKind::Ry || kind == GateKind::Rz;
}

std::size_t gate_arity(GateKind kind) {
  return (kind == GateKind::CNOT || kind == GateKind::CZ) ? 2 : 1;
}

double Instruction::angle() const {
  if (!param) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(gate_name(kind)) + " has no angle");
  }
  if (const auto* ref = std::get_if<std::string>(&*param)) {
    throw Error(ErrorCode::kUnboundParameter,
                "parameter '" + *ref + "' is not bound");
  }
  return std::get<double>(*param);
}

Kernel::Kernel(std::string name, std::vector<std::string> params,
               std::size_t num_qubits, std::vector<Instruction> body)
    : name_(std::move(name)),
      params_(std::move(params)),
      num_qubits_(num_qubits),
      body_(std::move(body)) {
  if (auto v = check_header(name_, params_, num_qubits_)) {
    throw Error(v->code, v->message);
  }
  std::set<Qubit> measured;
  for (const auto& instr : body_) {
    if (auto v = check_instruction(instr, num_qubits_, params_, measured)) {
      throw Error(v->code, "kernel " + name_ + ": " + v->message);
    }
  }
}

Kernel Kernel::identity(std::size_t num_qubits) {
  return Kernel("id", {}, num_qubits, {});
}

bool Kernel::is_measured() const {
  return std::any_of(body_.begin(), body_.end(), [](const Instruction& i) {
    return i.kind == GateKind::Measure;
  });
}

std::vector<Qubit> Kernel::measured_qubits() const {
  std::vector<Qubit> out;
  for (const auto& i : body_) {
    if (i.kind == GateKind::Measure) out.push_back(i.qubits.front());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Kernel parse_kernel(std::string_view text) {
  detail::Scanner in(text, /*line_comments=*/true);

  auto keyword = [&](std::string_view word) {
    in.skip_space();
    const auto at = in.pos();
    if (!in.at_ident_start() || in.ident() != word) {
      in.fail_at(at, "expected '" + std::string(word) + "'");
    }
  };

  keyword("kernel");
  in.skip_space();
  const auto name_at = in.pos();
  std::string name = in.ident();

  in.skip_space();
  in.expect('(');
  std::vector<std::string> params;
  in.skip_space();
  if (!in.consume(')')) {
    while (true) {
      in.skip_space();
      params.push_back(in.ident());
      in.skip_space();
      if (in.consume(')')) break;
      in.expect(',');
    }
  }

  keyword("qubits");
  in.skip_space();
  const auto width_at = in.pos();
  const std::size_t num_qubits = in.uint();
  if (auto v = check_header(name, params, num_qubits)) {
    in.fail_at(v->code == ErrorCode::kInvalidArgument && num_qubits == 0
                   ? width_at
                   : name_at,
               v->message, v->code);
  }

  in.skip_space();
  in.expect('{');

  std::vector<Instruction> body;
  std::set<Qubit> measured;
  while (true) {
    in.skip_space();
    if (in.consume('}')) break;
    const auto instr_at = in.pos();
    if (!in.at_ident_start()) in.fail("expected instruction or '}'");
    const std::string gate = in.ident();
    auto kind = gate_from_name(gate);
    if (!kind) in.fail_at(instr_at, "unknown gate '" + gate + "'");

    Instruction instr;
    instr.kind = *kind;
    in.skip_space();
    if (in.consume('(')) {
      in.skip_space();
      if (in.at_ident_start()) {
        instr.param = in.ident();
      } else {
        instr.param = in.real();
      }
      in.skip_space();
      in.expect(')');
    }

    while (true) {
      in.skip_space();
      if (in.peek() != 'q' || !in.at_digit(1)) break;
      in.advance();
      instr.qubits.push_back(in.uint());
    }
    if (instr.qubits.empty()) in.fail("expected operand 'q<index>'");
    in.skip_space();
    in.expect(';');

    if (auto v = check_instruction(instr, num_qubits, params, measured)) {
      in.fail_at(instr_at, v->message, v->code);
    }
    body.push_back(std::move(instr));
  }
  in.skip_space();
  if (!in.at_end()) in.fail("unexpected text after kernel body");

  return Kernel(std::move(name), std::move(params), num_qubits,
                std::move(body));
}

std::string print_kernel(const Kernel& kernel) {
  std::string out = "kernel " + kernel.name() + "(";
  for (std::size_t i = 0; i < kernel.params().size(); ++i) {
    if (i) out += ", ";
    out += kernel.params()[i];
  }
  out += ") qubits " + std::to_string(kernel.num_qubits()) + " {\n";
  for (const auto& instr : kernel.body()) {
    out += "  ";
    out += gate_name(instr.kind);
    if (instr.param) {
      out += '(';
      if (const auto* ref = std::get_if<std::string>(&*instr.param)) {
        out += *ref;
      } else {
        out += format_angle(std::get<double>(*instr.param));
      }
      out += ')';
    }
    for (auto q : instr.qubits) out += " q" + std::to_string(q);
    out += ";\n";
  }
  out += "}";
  return out;
}

Kernel bind(const Kernel& kernel, std::span<const double> values) {
  if (values.size() != kernel.params().size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "kernel " + kernel.name() + " takes " +
                    std::to_string(kernel.params().size()) +
                    " parameter(s), got " + std::to_string(values.size()));
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFinite, "non-finite parameter value");
    }
  }
  std::vector<Instruction> body = kernel.body();
  for (auto& instr : body) {
    if (!instr.param) continue;
    if (const auto* ref = std::get_if<std::string>(&*instr.param)) {
      const auto& names = kernel.params();
      const auto idx = static_cast<std::size_t>(
          std::find(names.begin(), names.end(), *ref) - names.begin());
      instr.param = values[idx];
    }
  }
  return Kernel(kernel.name(), {}, kernel.num_qubits(), std::move(body));
}

Kernel append_measurement_basis(const Kernel& kernel,
                                const PauliString& string) {
  if (!kernel.is_bound()) {
    throw Error(ErrorCode::kUnboundParameter,
                "kernel " + kernel.name() + " has free parameters");
  }
  if (kernel.is_measured()) {
    throw Error(ErrorCode::kAlreadyMeasured,
                "kernel " + kernel.name() + " is already measured");
  }
  if (string.num_qubits() > kernel.num_qubits()) {
    throw Error(ErrorCode::kOutOfRange,
                "Pauli string " + string.to_string() + " exceeds the " +
                    std::to_string(kernel.num_qubits()) + "-qubit kernel");
  }
  std::vector<Instruction> body = kernel.body();
  for (auto [q, op] : string.entries()) {
    if (op == PauliOp::X) {
      body.push_back({GateKind::H, {q}, std::nullopt});
    } else if (op == PauliOp::Y) {
      body.push_back({GateKind::Sdg, {q}, std::nullopt});
      body.push_back({GateKind::H, {q}, std::nullopt});
    }
  }
  for (auto [q, op] : string.entries()) {
    body.push_back({GateKind::Measure, {q}, std::nullopt});
  }
  return Kernel(kernel.name(), {}, kernel.num_qubits(), std::move(body));
}

}  // namespace qcor
