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
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "qcor/heterogeneous_map.hpp"
#include "qcor/objective.hpp"
#include "qcor/simulator.hpp"

namespace qcor {

/// Readout confusion of one qubit, M[observed][true] = P(observed | true),
/// stored row-major as {M00, M01, M10, M11}.
struct ConfusionMatrix {
  std::array<double, 4> m{1.0, 0.0, 0.0, 1.0};

  static ConfusionMatrix from_error(const ReadoutError& e) {
    return {{1.0 - e.p01, e.p10, e.p01, 1.0 - e.p10}};
  }

  double operator()(int observed, int truth) const {
    return m[static_cast<std::size_t>(2 * observed + truth)];
  }
  double determinant() const { return m[0] * m[3] - m[1] * m[2]; }

  /// Throws kInvalidArgument for entries outside [0, 1] or columns not
  /// summing to 1 (1e-9), kSingularCalibration when |det| <= 1e-6.
  void validate() const;
  std::array<double, 4> inverse() const;

  friend bool operator==(const ConfusionMatrix&,
                         const ConfusionMatrix&) = default;
};

/// Confusion matrix per qubit, indexed by qubit.
using Calibration = std::vector<ConfusionMatrix>;

inline constexpr std::uint64_t kMinCalibrationShots = 100;

/// Estimates each qubit's confusion matrix from two runs (|0> and X|0>, each
/// measuring only that qubit). In exact mode the analytic distributions are
/// used instead of samples.
Calibration calibrate(std::size_t num_qubits, const ExecutionConfig& config);

/// Calibration implied exactly by a readout noise model.
Calibration analytic_calibration(const ReadoutNoiseModel& noise,
                                 std::size_t num_qubits);

/// Inverts the tensor-product confusion matrix one qubit at a time (cost
/// O(2^k k) for k measured qubits). Bitstring character i belongs to
/// `measured[i]` (qubit i when `measured` is empty). The result sums to 1
/// and may contain negative entries.
QuasiDistribution mitigate_counts(const ShotCounts& counts,
                                  const Calibration& calibration,
                                  std::span<const Qubit> measured = {});
QuasiDistribution mitigate_distribution(const QuasiDistribution& distribution,
                                        const Calibration& calibration,
                                        std::span<const Qubit> measured = {});

/// Forward map: what a readout with this calibration makes of `clean`.
QuasiDistribution apply_confusion(const QuasiDistribution& clean,
                                  const Calibration& calibration,
                                  std::span<const Qubit> measured = {});

/// Rows {M00, M01, M10, M11}, one per qubit (the `readout-calibration`
/// metadata value).
HeterogeneousMap::RealMatrix calibration_rows(const Calibration& calibration);

/// Readout-error mitigation wrapped around another objective.
///
/// Each evaluation runs the inner objective, then recomputes every measured
/// term from the mitigated quasi-distribution of its results. The evaluation
/// node gains `raw-value` and `mitigated-value` (and `value` becomes the
/// mitigated one); each term child gains `mitigated-distribution`.
/// Decorators nest: an outer one starts from the inner's mitigated output.
///
/// Without an explicit calibration, one is measured at the first evaluation
/// with the task's execution settings and kept for the rest of the task; it
/// is published under `readout-calibration` in the task's root metadata.
class MitigatedObjective final : public ObjectiveFunction {
 public:
  explicit MitigatedObjective(std::shared_ptr<ObjectiveFunction> inner,
                              std::optional<Calibration> calibration = {});

  void initialize(const PauliObservable& observable, const Kernel& kernel,
                  const ExecutionConfig& config) override;
  std::size_t dimensions() const override { return inner_->dimensions(); }
  double evaluate(std::span<const double> params, ResultBuffer& sink) override;

  const std::optional<Calibration>& calibration() const { return calibration_; }

 private:
  std::shared_ptr<ObjectiveFunction> inner_;
  std::optional<Calibration> calibration_;
  std::size_t num_qubits_ = 0;
  ExecutionConfig config_;
  bool published_ = false;
};

}  // namespace qcor
