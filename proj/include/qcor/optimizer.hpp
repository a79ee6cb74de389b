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

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcor/heterogeneous_map.hpp"

namespace qcor {

class ObjectiveFunction;
struct ResultBuffer;

using ScalarFunction = std::function<double(std::span<const double>)>;

struct OptimizationResult {
  std::vector<double> params;
  double value = 0.0;
  std::size_t evaluations = 0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Classical minimizer. Implementations must be safe to call from several
/// tasks at once (`optimize` is const).
class Optimizer {
 public:
  virtual ~Optimizer() = default;

  virtual std::string name() const = 0;

  /// Minimizes `f` over `dimensions` variables. `initial_guess`, when
  /// non-empty, is used unless the options fix an initial point.
  virtual OptimizationResult optimize(
      const ScalarFunction& f, std::size_t dimensions,
      std::span<const double> initial_guess = {}) const = 0;

  /// Drives an objective, publishing every evaluation into `sink`.
  OptimizationResult optimize(ObjectiveFunction& objective, ResultBuffer& sink,
                              std::span<const double> initial_guess = {}) const;
};

/// Downhill simplex with reflection 1, expansion 2, contraction 0.5 and
/// shrink 0.5.
///
/// Stops once both spreads are below their tolerances, or when a budget
/// runs out.
///
/// Options (all optional):
///   max-evaluations  integer, default 500   hard cap on objective evaluations
///   max-iterations   integer, default none  simplex-update budget
///   tolerance        real,    default 1e-6  max f - min f over the simplex
///   x-tolerance      real,    default 1e-4  max |x_i - x_best| over the simplex
///   initial-point    list-of-real           start vertex
///   initial-step     real,    default 0.1   per-axis offset of the others
class NelderMead final : public Optimizer {
 public:
  explicit NelderMead(HeterogeneousMap options = {});

  std::string name() const override { return "nelder-mead"; }
  using Optimizer::optimize;
  OptimizationResult optimize(
      const ScalarFunction& f, std::size_t dimensions,
      std::span<const double> initial_guess = {}) const override;

 private:
  std::size_t max_evaluations_ = 500;
  std::size_t max_iterations_ = 0;
  double tolerance_ = 1e-6;
  double x_tolerance_ = 1e-4;
  std::vector<double> initial_point_;
  double initial_step_ = 0.1;
};

OptimizationResult optimize_nelder_mead(const ScalarFunction& f,
                                        std::size_t dimensions,
                                        const HeterogeneousMap& options = {});

/// Optimizer by registry name ("nelder-mead").
std::shared_ptr<Optimizer> make_optimizer(std::string_view name,
                                          HeterogeneousMap options = {});

}  // namespace qcor
