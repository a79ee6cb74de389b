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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qcor/pauli.hpp"

namespace qcor {

enum class GateKind : std::uint8_t {
  X, Y, Z, H, S, Sdg, T, Rx, Ry, Rz, CNOT, CZ, Measure,
};

std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_from_name(std::string_view name);
bool is_rotation(GateKind kind);
std::size_t gate_arity(GateKind kind);

/// Rotation angle: a literal in radians or a reference to a kernel parameter.
using ParamExpr = std::variant<double, std::string>;

struct Instruction {
  GateKind kind = GateKind::X;
  /// For CNOT: control then target.
  std::vector<Qubit> qubits;
  std::optional<ParamExpr> param;

  bool is_bound() const {
    return !param || std::holds_alternative<double>(*param);
  }
  /// Literal angle; throws kUnboundParameter for a named reference.
  double angle() const;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

/// Validated parameterized circuit.
///
/// Construction checks every invariant (operand ranges and arity, rotation
/// parameters, parameter names, measurement terminal per qubit), so any
/// Kernel value in hand is well formed.
class Kernel {
 public:
  Kernel(std::string name, std::vector<std::string> params,
         std::size_t num_qubits, std::vector<Instruction> body);

  /// Zero-instruction kernel mapping |0...0> to itself.
  static Kernel identity(std::size_t num_qubits);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& params() const { return params_; }
  std::size_t num_qubits() const { return num_qubits_; }
  const std::vector<Instruction>& body() const { return body_; }

  /// Number of free parameters.
  std::size_t dimensions() const { return params_.size(); }
  bool is_bound() const { return params_.empty(); }
  bool is_measured() const;
  /// Ascending list of measured qubits.
  std::vector<Qubit> measured_qubits() const;

  friend bool operator==(const Kernel&, const Kernel&) = default;

 private:
  std::string name_;
  std::vector<std::string> params_;
  std::size_t num_qubits_;
  std::vector<Instruction> body_;
};

Kernel parse_kernel(std::string_view text);

/// One instruction per line, two-space indent; literal angles with 17
/// significant digits so that parsing the text back is lossless.
std::string print_kernel(const Kernel& kernel);

/// Substitutes `values[i]` for parameter `params()[i]`.
Kernel bind(const Kernel& kernel, std::span<const double> values);

/// Appends basis changes (H for X, Sdg then H for Y) for every qubit of the
/// string in ascending order, followed by a Measure on each of them.
Kernel append_measurement_basis(const Kernel& kernel, const PauliString& string);

}  // namespace qcor
