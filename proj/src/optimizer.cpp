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

#include "qcor/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qcor/error.hpp"
#include "qcor/objective.hpp"

namespace qcor {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

std::size_t positive_count(const HeterogeneousMap& options,
                           std::string_view key) {
  const auto v = options.get<std::int64_t>(key);
  if (v < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(key) + " must be at least 1");
  }
  return static_cast<std::size_t>(v);
}

// Accepts integer literals where a real option is expected.
double real_option(const HeterogeneousMap& options, std::string_view key) {
  if (options.kind(key) == HeterogeneousMap::Kind::kInteger) {
    return static_cast<double>(options.get<std::int64_t>(key));
  }
  return options.get<double>(key);
}

struct Vertex {
  std::vector<double> x;
  double f = 0.0;
};

}  // namespace

OptimizationResult Optimizer::optimize(ObjectiveFunction& objective,
                                       ResultBuffer& sink,
                                       std::span<const double> initial_guess) const {
  return optimize(
      [&](std::span<const double> p) { return objective.evaluate(p, sink); },
      objective.dimensions(), initial_guess);
}

NelderMead::NelderMead(HeterogeneousMap options) {
  static const std::vector<std::string> kKnown = {
      "max-evaluations", "max-iterations", "tolerance", "x-tolerance",
      "initial-point", "initial-step"};
  for (const auto& key : options.keys()) {
    if (std::find(kKnown.begin(), kKnown.end(), key) == kKnown.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown nelder-mead option '" + key + "'");
    }
  }
  if (options.contains("max-evaluations")) {
    max_evaluations_ = positive_count(options, "max-evaluations");
  }
  if (options.contains("max-iterations")) {
    max_iterations_ = positive_count(options, "max-iterations");
  }
  if (options.contains("tolerance")) {
    tolerance_ = real_option(options, "tolerance");
    if (!(tolerance_ >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "tolerance must be >= 0");
    }
  }
  if (options.contains("x-tolerance")) {
    x_tolerance_ = real_option(options, "x-tolerance");
    if (!(x_tolerance_ >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "x-tolerance must be >= 0");
    }
  }
  if (options.contains("initial-point")) {
    initial_point_ = options.get<HeterogeneousMap::RealList>("initial-point");
    for (double v : initial_point_) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kNonFinite, "non-finite initial point");
      }
    }
  }
  if (options.contains("initial-step")) {
    initial_step_ = real_option(options, "initial-step");
    if (!(initial_step_ > 0.0) || !std::isfinite(initial_step_)) {
      throw Error(ErrorCode::kInvalidArgument, "initial-step must be > 0");
    }
  }
}

OptimizationResult NelderMead::optimize(
    const ScalarFunction& f, std::size_t dimensions,
    std::span<const double> initial_guess) const {
  if (dimensions == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "nelder-mead needs at least one dimension");
  }
  std::vector<double> start(dimensions, 0.0);
  if (!initial_point_.empty()) {
    start = initial_point_;
  } else if (!initial_guess.empty()) {
    start.assign(initial_guess.begin(), initial_guess.end());
  }
  if (start.size() != dimensions) {
    throw Error(ErrorCode::kInvalidArgument,
                "initial point has " + std::to_string(start.size()) +
                    " entries for a " + std::to_string(dimensions) +
                    "-dimensional objective");
  }

  OptimizationResult result;
  struct BudgetExhausted {};
  auto eval = [&](const std::vector<double>& x) {
    if (result.evaluations >= max_evaluations_) throw BudgetExhausted{};
    const double v = f(x);
    ++result.evaluations;
    if (!std::isfinite(v)) {
      std::string where;
      for (double xi : x) where += (where.empty() ? "" : ", ") + std::to_string(xi);
      throw Error(ErrorCode::kNonFinite,
                  "objective returned a non-finite value at [" + where + "]");
    }
    return v;
  };

  const std::size_t n = dimensions;
  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  try {
    simplex.push_back({start, eval(start)});
    for (std::size_t i = 0; i < n; ++i) {
      auto x = start;
      x[i] += initial_step_;
      simplex.push_back({x, eval(x)});
    }
  } catch (const BudgetExhausted&) {
    const auto& best = *std::min_element(
        simplex.begin(), simplex.end(),
        [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    result.params = best.x;
    result.value = best.f;
    return result;
  }

  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  std::vector<double> centroid(n);
  auto along = [&](double t, const std::vector<double>& toward) {
    // centroid + t * (toward - centroid)
    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = centroid[j] + t * (toward[j] - centroid[j]);
    }
    return x;
  };

  try {
    while (true) {
      std::stable_sort(simplex.begin(), simplex.end(), by_value);
      double x_spread = 0.0;
      for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          x_spread = std::max(x_spread, std::abs(simplex[i].x[j] - simplex[0].x[j]));
        }
      }
      if (simplex.back().f - simplex.front().f < tolerance_ &&
          x_spread <= x_tolerance_) {
        result.converged = true;
        break;
      }
      if (result.evaluations >= max_evaluations_) break;
      if (max_iterations_ && result.iterations >= max_iterations_) break;
      ++result.iterations;

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i].x[j] / n;
      }
      Vertex& worst = simplex.back();
      const double f_best = simplex.front().f;
      const double f_second_worst = simplex[n - 1].f;

      Vertex reflected{along(-kReflect, worst.x), 0.0};
      reflected.f = eval(reflected.x);

      if (reflected.f < f_best) {
        Vertex expanded{along(kExpand, reflected.x), 0.0};
        expanded.f = eval(expanded.x);
        worst = expanded.f < reflected.f ? std::move(expanded)
                                         : std::move(reflected);
        continue;
      }
      if (reflected.f < f_second_worst) {
        worst = std::move(reflected);
        continue;
      }
      if (reflected.f < worst.f) {
        Vertex outside{along(kContract, reflected.x), 0.0};
        outside.f = eval(outside.x);
        if (outside.f <= reflected.f) {
          worst = std::move(outside);
          continue;
        }
      } else {
        Vertex inside{along(kContract, worst.x), 0.0};
        inside.f = eval(inside.x);
        if (inside.f < worst.f) {
          worst = std::move(inside);
          continue;
        }
      }
      for (std::size_t i = 1; i <= n; ++i) {
        std::vector<double> x(n);
        for (std::size_t j = 0; j < n; ++j) {
          x[j] = simplex[0].x[j] + kShrink * (simplex[i].x[j] - simplex[0].x[j]);
        }
        const double fx = eval(x);
        simplex[i] = {std::move(x), fx};
      }
    }
  } catch (const BudgetExhausted&) {
    // Budget spent; the simplex still holds only evaluated vertices.
  }

  const auto& best = *std::min_element(simplex.begin(), simplex.end(), by_value);
  result.params = best.x;
  result.value = best.f;
  return result;
}

OptimizationResult optimize_nelder_mead(const ScalarFunction& f,
                                        std::size_t dimensions,
                                        const HeterogeneousMap& options) {
  return NelderMead(options).optimize(f, dimensions);
}

std::shared_ptr<Optimizer> make_optimizer(std::string_view name,
                                          HeterogeneousMap options) {
  if (name == "nelder-mead") {
    return std::make_shared<NelderMead>(std::move(options));
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown optimizer '" + std::string(name) + "'");
}

}  // namespace qcor
