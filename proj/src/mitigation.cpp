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

#include "qcor/mitigation.hpp"

#include <cmath>

#include "qcor/error.hpp"
#include "qcor/statevector_kernels.hpp"

namespace qcor {

namespace {

constexpr double kStochasticTolerance = 1e-9;
constexpr double kSingularThreshold = 1e-6;
// Sampling streams for calibration runs, kept apart from objective streams.
constexpr std::uint64_t kCalibrationStream = std::uint64_t{1} << 62;

std::vector<Qubit> resolve_measured(std::span<const Qubit> measured,
                                    std::size_t width) {
  if (!measured.empty()) {
    if (measured.size() != width) {
      throw Error(ErrorCode::kInvalidArgument,
                  "bitstrings of width " + std::to_string(width) + " for " +
                      std::to_string(measured.size()) + " measured qubits");
    }
    return {measured.begin(), measured.end()};
  }
  std::vector<Qubit> out(width);
  for (std::size_t i = 0; i < width; ++i) out[i] = static_cast<Qubit>(i);
  return out;
}

std::size_t bitstring_index(const std::string& bits) {
  std::size_t idx = 0;
  for (std::size_t b = 0; b < bits.size(); ++b) {
    if (bits[b] == '1') {
      idx |= std::size_t{1} << b;
    } else if (bits[b] != '0') {
      throw Error(ErrorCode::kInvalidArgument, "invalid bitstring '" + bits + "'");
    }
  }
  return idx;
}

template <typename Weights>
std::vector<double> dense_vector(const Weights& weights, std::size_t& width) {
  if (weights.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "nothing to mitigate");
  }
  width = weights.begin()->first.size();
  if (width > StateVector::kMaxQubits) {
    throw Error(ErrorCode::kDimensionOverflow, "too many measured qubits");
  }
  std::vector<double> v(std::size_t{1} << width, 0.0);
  for (const auto& [bits, w] : weights) {
    if (bits.size() != width) {
      throw Error(ErrorCode::kInvalidArgument, "bitstrings differ in length");
    }
    v[bitstring_index(bits)] += static_cast<double>(w);
  }
  return v;
}

// Applies one 2x2 matrix per measured qubit; `pick` chooses the matrix.
template <typename Pick>
QuasiDistribution transform(std::vector<double> v, std::size_t width,
                            const Calibration& calibration,
                            std::span<const Qubit> measured, Pick pick) {
  const auto qubits = resolve_measured(measured, width);
  for (std::size_t b = 0; b < width; ++b) {
    if (qubits[b] >= calibration.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "no calibration for qubit " + std::to_string(qubits[b]));
    }
    kernels::omp::apply_bit_matrix(v, static_cast<unsigned>(b),
                                   pick(calibration[qubits[b]]));
  }
  QuasiDistribution out;
  for (std::size_t o = 0; o < v.size(); ++o) {
    if (v[o] != 0.0) out[outcome_bitstring(o, width)] = v[o];
  }
  return out;
}

QuasiDistribution invert(std::vector<double> v, std::size_t width,
                         const Calibration& calibration,
                         std::span<const Qubit> measured) {
  return transform(std::move(v), width, calibration, measured,
                   [](const ConfusionMatrix& m) {
                     m.validate();
                     return m.inverse();
                   });
}

QuasiDistribution distribution_from(const HeterogeneousMap& map) {
  QuasiDistribution out;
  for (const auto& key : map.keys()) out[key] = map.get<double>(key);
  return out;
}

HeterogeneousMap to_map(const QuasiDistribution& dist) {
  HeterogeneousMap out;
  for (const auto& [bits, p] : dist) out.put(bits, p);
  return out;
}

std::vector<Qubit> measured_of(const ResultBuffer& leaf) {
  const auto& list =
      leaf.metadata.get<HeterogeneousMap::IntegerList>("measured-qubits");
  return {list.begin(), list.end()};
}

}  // namespace

void ConfusionMatrix::validate() const {
  for (double x : m) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "confusion matrix entries must lie in [0, 1]");
    }
  }
  if (std::abs(m[0] + m[2] - 1.0) > kStochasticTolerance ||
      std::abs(m[1] + m[3] - 1.0) > kStochasticTolerance) {
    throw Error(ErrorCode::kInvalidArgument,
                "confusion matrix columns must sum to 1");
  }
  if (std::abs(determinant()) <= kSingularThreshold) {
    throw Error(ErrorCode::kSingularCalibration,
                "confusion matrix is singular");
  }
}

std::array<double, 4> ConfusionMatrix::inverse() const {
  const double det = determinant();
  if (std::abs(det) <= kSingularThreshold) {
    throw Error(ErrorCode::kSingularCalibration,
                "confusion matrix is singular");
  }
  return {m[3] / det, -m[1] / det, -m[2] / det, m[0] / det};
}

Calibration calibrate(std::size_t num_qubits, const ExecutionConfig& config) {
  if (!config.exact && config.shots < kMinCalibrationShots) {
    throw Error(ErrorCode::kInvalidArgument,
                "calibration needs at least " +
                    std::to_string(kMinCalibrationShots) + " shots");
  }
  Calibration out;
  out.reserve(num_qubits);
  for (std::size_t q = 0; q < num_qubits; ++q) {
    const Qubit qubit = static_cast<Qubit>(q);
    ConfusionMatrix cm;
    for (int truth = 0; truth < 2; ++truth) {
      std::vector<Instruction> body;
      if (truth == 1) body.push_back({GateKind::X, {qubit}, std::nullopt});
      body.push_back({GateKind::Measure, {qubit}, std::nullopt});
      const Kernel prep("calibrate", {}, num_qubits, std::move(body));

      QuasiDistribution freq;
      if (config.exact) {
        freq = exact_distribution(prep, config.noise);
      } else {
        ExecutionConfig run = config;
        run.seed = derive_seed(config.seed, kCalibrationStream | (2 * q + truth));
        for (const auto& [bits, n] : execute(prep, run).counts) {
          freq[bits] = static_cast<double>(n) / static_cast<double>(run.shots);
        }
      }
      for (int observed = 0; observed < 2; ++observed) {
        auto it = freq.find(observed == 0 ? "0" : "1");
        cm.m[static_cast<std::size_t>(2 * observed + truth)] =
            it == freq.end() ? 0.0 : it->second;
      }
    }
    out.push_back(cm);
  }
  return out;
}

Calibration analytic_calibration(const ReadoutNoiseModel& noise,
                                 std::size_t num_qubits) {
  noise.validate();
  Calibration out;
  for (std::size_t q = 0; q < num_qubits; ++q) {
    out.push_back(ConfusionMatrix::from_error(noise.at(static_cast<Qubit>(q))));
  }
  return out;
}

QuasiDistribution mitigate_counts(const ShotCounts& counts,
                                  const Calibration& calibration,
                                  std::span<const Qubit> measured) {
  std::size_t width = 0;
  auto v = dense_vector(counts, width);
  double total = 0.0;
  for (double x : v) total += x;
  if (total == 0.0) throw Error(ErrorCode::kInvalidArgument, "empty counts");
  for (double& x : v) x /= total;
  return invert(std::move(v), width, calibration, measured);
}

QuasiDistribution mitigate_distribution(const QuasiDistribution& distribution,
                                        const Calibration& calibration,
                                        std::span<const Qubit> measured) {
  std::size_t width = 0;
  auto v = dense_vector(distribution, width);
  return invert(std::move(v), width, calibration, measured);
}

QuasiDistribution apply_confusion(const QuasiDistribution& clean,
                                  const Calibration& calibration,
                                  std::span<const Qubit> measured) {
  std::size_t width = 0;
  auto v = dense_vector(clean, width);
  return transform(std::move(v), width, calibration, measured,
                   [](const ConfusionMatrix& m) { return m.m; });
}

HeterogeneousMap::RealMatrix calibration_rows(const Calibration& calibration) {
  HeterogeneousMap::RealMatrix rows;
  for (const auto& cm : calibration) rows.emplace_back(cm.m.begin(), cm.m.end());
  return rows;
}

MitigatedObjective::MitigatedObjective(std::shared_ptr<ObjectiveFunction> inner,
                                       std::optional<Calibration> calibration)
    : inner_(std::move(inner)), calibration_(std::move(calibration)) {
  if (!inner_) {
    throw Error(ErrorCode::kInvalidArgument, "no objective to decorate");
  }
  if (calibration_) {
    for (const auto& cm : *calibration_) cm.validate();
  }
}

void MitigatedObjective::initialize(const PauliObservable& observable,
                                    const Kernel& kernel,
                                    const ExecutionConfig& config) {
  inner_->initialize(observable, kernel, config);
  num_qubits_ = kernel.num_qubits();
  config_ = config;
  published_ = false;
}

double MitigatedObjective::evaluate(std::span<const double> params,
                                    ResultBuffer& sink) {
  if (!calibration_) calibration_ = calibrate(num_qubits_, config_);
  if (!published_) {
    sink.metadata.put("readout-calibration", calibration_rows(*calibration_));
    published_ = true;
  }

  ResultBuffer scratch;
  const double raw = inner_->evaluate(params, scratch);
  if (scratch.children.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "decorated objective published no evaluation");
  }
  for (const auto& key : scratch.metadata.keys()) {
    if (!sink.metadata.contains(key)) {
      sink.metadata.copy_from(scratch.metadata, key);
    }
  }
  ResultBuffer node = std::move(scratch.children.back());

  double value = node.metadata.get_or<double>("identity-offset", 0.0);
  for (auto& leaf : node.children) {
    const auto measured = measured_of(leaf);
    QuasiDistribution mitigated;
    if (leaf.metadata.contains("mitigated-distribution")) {
      mitigated = mitigate_distribution(
          distribution_from(leaf.metadata.get<HeterogeneousMap>(
              "mitigated-distribution")),
          *calibration_, measured);
    } else if (leaf.metadata.contains("distribution")) {
      mitigated = mitigate_distribution(
          distribution_from(leaf.metadata.get<HeterogeneousMap>("distribution")),
          *calibration_, measured);
    } else {
      mitigated = mitigate_counts(leaf.counts, *calibration_, measured);
    }
    const auto string =
        parse_pauli(leaf.metadata.get<std::string>("term")).terms().front().string;
    const PauliTerm term{leaf.metadata.get<std::complex<double>>("coefficient"),
                         string};
    const double e = mitigated.empty()
                         ? 0.0
                         : expectation_from_distribution(term, mitigated, measured);
    leaf.metadata.put("mitigated-distribution", to_map(mitigated))
        .put("mitigated-expectation", e);
    value += e;
  }

  if (!node.metadata.contains("raw-value")) node.metadata.put("raw-value", raw);
  node.metadata.put("mitigated-value", value).put("value", value);
  sink.add_child(std::move(node));
  return value;
}

}  // namespace qcor
