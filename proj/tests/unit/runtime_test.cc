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

#include "qcor/runtime.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "oracles.hpp"
#include "qcor/error.hpp"
#include "qcor/heterogeneous_map.hpp"
#include "qcor/result_buffer.hpp"

using namespace qcor;

namespace {

constexpr const char* kAnsatz =
    "kernel ansatz(t) qubits 2 { X q0; Ry(t) q1; CNOT q1 q0; }";
constexpr const char* kEntangler =
    "kernel ansatz2(a, b) qubits 2 { Ry(a) q0; CNOT q0 q1; Ry(b) q1; }";

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kTaskFailed;
}

ExecutionConfig exact() {
  ExecutionConfig c;
  c.exact = true;
  return c;
}

// Classical objective that records calls and optionally sleeps.
class ShimObjective final : public ObjectiveFunction {
 public:
  ShimObjective(std::size_t dims, std::chrono::milliseconds delay)
      : dims_(dims), delay_(delay) {}
  void initialize(const PauliObservable&, const Kernel&,
                  const ExecutionConfig&) override {}
  std::size_t dimensions() const override { return dims_; }
  double evaluate(std::span<const double> params, ResultBuffer& sink) override {
    std::this_thread::sleep_for(delay_);
    double v = 0;
    for (double p : params) v += (p - 1.0) * (p - 1.0);
    ResultBuffer node;
    node.metadata.put("value", v);
    sink.add_child(std::move(node));
    return v;
  }

 private:
  std::size_t dims_;
  std::chrono::milliseconds delay_;
};

class FailingObjective final : public ObjectiveFunction {
 public:
  void initialize(const PauliObservable&, const Kernel&,
                  const ExecutionConfig&) override {}
  std::size_t dimensions() const override { return 1; }
  double evaluate(std::span<const double>, ResultBuffer&) override {
    throw Error(ErrorCode::kNonHermitian, "boom");
  }
};

}  // namespace

// ---- HeterogeneousMap ------------------------------------------------------

TEST(heterogeneous_map, typed_access) {
  HeterogeneousMap m;
  m.put("shots", 1024).put("name", "vqe").put("ratio", 0.5).put("flag", true);
  m.put("z", complex(1, -2)).put("xs", std::vector<double>{1, 2});
  EXPECT_EQ(m.get<std::int64_t>("shots"), 1024);
  EXPECT_EQ(m.get<std::string>("name"), "vqe");
  EXPECT_EQ(m.get<bool>("flag"), true);
  EXPECT_EQ(m.get<complex>("z"), complex(1, -2));
  EXPECT_EQ(m.kind("xs"), HeterogeneousMap::Kind::kRealList);
  EXPECT_EQ(m.get_or<double>("missing", 3.0), 3.0);
  EXPECT_EQ(m.size(), 6u);
  EXPECT_TRUE(m.erase("flag"));
  EXPECT_FALSE(m.contains("flag"));
}

TEST(heterogeneous_map, errors_are_distinct) {
  HeterogeneousMap m;
  m.put("shots", 1024);
  EXPECT_EQ(code_of([&] { m.get<double>("missing"); }), ErrorCode::kMissingKey);
  EXPECT_EQ(code_of([&] { m.get<std::string>("shots"); }), ErrorCode::kKindMismatch);
  EXPECT_EQ(code_of([&] { m.get<double>("shots"); }), ErrorCode::kKindMismatch);
}

TEST(heterogeneous_map, json_round_trip) {
  HeterogeneousMap inner;
  inner.put("a", 1).put("b", std::vector<std::string>{"x", "y"});
  HeterogeneousMap m;
  m.put("n", -3).put("r", 2.5).put("s", "text").put("t", false).put("inner", inner);
  m.put("ints", HeterogeneousMap::IntegerList{0, 2});
  m.put("rows", HeterogeneousMap::RealMatrix{{0.5, 1.0}, {0.25, 0.75}});
  m.put("z", complex(0.5, -1));
  auto back = HeterogeneousMap::from_json(m.to_json());
  EXPECT_EQ(back.get<HeterogeneousMap>("inner"), inner);
  EXPECT_EQ(back.get<std::int64_t>("n"), -3);
  EXPECT_EQ(back.get<HeterogeneousMap::RealMatrix>("rows"), m.get<HeterogeneousMap::RealMatrix>("rows"));
  EXPECT_EQ(back.get<HeterogeneousMap::RealList>("z"), (std::vector<double>{0.5, -1.0}));
  EXPECT_EQ(m.to_json()["z"], nlohmann::json::parse("[0.5,-1.0]"));
}

// ---- ResultBuffer ----------------------------------------------------------

TEST(result_buffer, json_schema_round_trip) {
  ResultBuffer root;
  root.metadata.put("task-id", 3);
  auto& child = root.add_child({});
  child.counts = {{"01", 5}, {"10", 7}};
  child.metadata.put("term", "Z0 Z1");
  child.add_child({});
  const auto j = root.to_json();
  EXPECT_TRUE(j.contains("metadata"));
  EXPECT_TRUE(j.contains("counts"));
  EXPECT_TRUE(j["children"].is_array());
  EXPECT_EQ(j["children"][0]["counts"]["10"], 7);
  EXPECT_EQ(ResultBuffer::from_json(j), root);
  EXPECT_EQ(root.tree_size(), 3u);
  EXPECT_THROW(ResultBuffer::from_json(nlohmann::json::parse(R"({"metadata":{}})")),
               Error);
  EXPECT_THROW(ResultBuffer::from_json(nlohmann::json::parse(
                   R"({"metadata":{},"counts":{"0":-1},"children":[]})")),
               Error);
}

TEST(result_buffer, without_key_strips_recursively) {
  ResultBuffer root;
  root.metadata.put("wall-time", 1.0).put("keep", 1);
  root.add_child({}).metadata.put("wall-time", 2.0);
  auto stripped = without_key(root, "wall-time");
  EXPECT_FALSE(stripped.metadata.contains("wall-time"));
  EXPECT_TRUE(stripped.metadata.contains("keep"));
  EXPECT_FALSE(stripped.children[0].metadata.contains("wall-time"));
}

// ---- default objective -----------------------------------------------------

TEST(default_objective, examples) {
  ResultBuffer sink;
  auto ansatz = parse_kernel(kAnsatz);
  EXPECT_NEAR(default_objective_evaluate(parse_pauli("X0 X1"), ansatz,
                                         std::vector<double>{0.0}, exact(), sink),
              0.0, 1e-15);

  ResultBuffer offset_sink;
  EXPECT_EQ(default_objective_evaluate(parse_pauli("3.5 I"), ansatz,
                                       std::vector<double>{0.3}, {}, offset_sink),
            3.5);
  ASSERT_EQ(offset_sink.children.size(), 1u);
  EXPECT_TRUE(offset_sink.children[0].children.empty());

  ResultBuffer z_sink;
  ExecutionConfig shots;
  shots.shots = 1000;
  EXPECT_EQ(default_objective_evaluate(parse_pauli("Z0"), Kernel::identity(1), {},
                                       shots, z_sink),
            1.0);
  const auto& leaf = z_sink.children[0].children[0];
  EXPECT_EQ(leaf.counts, (ShotCounts{{"0", 1000}}));
  EXPECT_EQ(leaf.metadata.get<std::string>("term"), "Z0");
  EXPECT_EQ(z_sink.children[0].metadata.get<double>("value"), 1.0);
}

TEST(default_objective, arity_mismatch) {
  ResultBuffer sink;
  EXPECT_EQ(code_of([&] {
              default_objective_evaluate(parse_pauli("Z0"), parse_kernel(kAnsatz),
                                         std::vector<double>{1, 2}, exact(), sink);
            }),
            ErrorCode::kInvalidArgument);
}

TEST(default_objective, linear_in_observable) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 25; ++i) {
    auto k = qcor::testing::random_kernel(rng, 2, 8);
    auto o1 = qcor::testing::random_observable(rng, 2, 4, true);
    auto o2 = qcor::testing::random_observable(rng, 2, 4, true);
    const double a = u(rng), b = u(rng);
    ResultBuffer sink;
    const double whole = default_objective_evaluate(
        scale(o1, a) + scale(o2, b), k, {}, exact(), sink);
    const double parts =
        a * default_objective_evaluate(o1, k, {}, exact(), sink) +
        b * default_objective_evaluate(o2, k, {}, exact(), sink);
    EXPECT_NEAR(whole, parts, 1e-10);
  }
}

TEST(default_objective, sampled_is_reproducible) {
  ExecutionConfig cfg;
  cfg.shots = 2000;
  cfg.seed = 5;
  ResultBuffer a, b;
  auto k = parse_kernel(kAnsatz);
  const double va = default_objective_evaluate(parse_pauli("X0 X1 + Z0"), k,
                                               std::vector<double>{0.7}, cfg, a);
  const double vb = default_objective_evaluate(parse_pauli("X0 X1 + Z0"), k,
                                               std::vector<double>{0.7}, cfg, b);
  EXPECT_EQ(va, vb);
  EXPECT_EQ(without_key(a, "wall-time"), without_key(b, "wall-time"));
}

// ---- Nelder-Mead -----------------------------------------------------------

TEST(nelder_mead, quadratic_shim) {
  auto r = optimize_nelder_mead(
      [](std::span<const double> x) { return (x[0] - 2) * (x[0] - 2); }, 1);
  EXPECT_NEAR(r.params[0], 2.0, 1e-3);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.evaluations, 500u);
}

TEST(nelder_mead, convex_quadratics_up_to_four_dims) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-3, 3), w(0.5, 3);
  for (std::size_t d = 1; d <= 4; ++d) {
    std::vector<double> c(d), s(d);
    for (std::size_t i = 0; i < d; ++i) {
      c[i] = u(rng);
      s[i] = w(rng);
    }
    HeterogeneousMap opts;
    opts.put("tolerance", 1e-12).put("initial-step", 0.5);
    auto r = optimize_nelder_mead(
        [&](std::span<const double> x) {
          double v = 0;
          for (std::size_t i = 0; i < d; ++i) v += s[i] * (x[i] - c[i]) * (x[i] - c[i]);
          return v;
        },
        d, opts);
    EXPECT_LE(r.evaluations, 500u);
    for (std::size_t i = 0; i < d; ++i) EXPECT_NEAR(r.params[i], c[i], 1e-3) << d;
  }
}

TEST(nelder_mead, options_and_errors) {
  HeterogeneousMap bad;
  bad.put("max-iter", 3);
  EXPECT_EQ(code_of([&] { NelderMead{bad}; }), ErrorCode::kInvalidArgument);
  HeterogeneousMap wrong_kind;
  wrong_kind.put("tolerance", "small");
  EXPECT_EQ(code_of([&] { NelderMead{wrong_kind}; }), ErrorCode::kKindMismatch);
  HeterogeneousMap budget;
  budget.put("max-evaluations", 10);
  auto r = optimize_nelder_mead(
      [](std::span<const double> x) { return std::cos(x[0]) + x[1] * x[1]; }, 2, budget);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.evaluations, 10u);
  for (std::int64_t cap : {1, 2, 3, 11, 17}) {
    HeterogeneousMap opts;
    opts.put("max-evaluations", cap);
    std::size_t calls = 0;
    auto capped = optimize_nelder_mead(
        [&](std::span<const double> x) {
          ++calls;
          return std::cos(x[0]) + std::sin(x[1]) + x[2] * x[2];
        },
        3, opts);
    EXPECT_EQ(calls, static_cast<std::size_t>(cap));
    EXPECT_EQ(capped.evaluations, calls);
    EXPECT_EQ(capped.params.size(), 3u);
  }

  HeterogeneousMap start;
  start.put("initial-point", std::vector<double>{1, 2, 3});
  EXPECT_EQ(code_of([&] {
              optimize_nelder_mead([](std::span<const double>) { return 0.0; }, 2, start);
            }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] {
              optimize_nelder_mead([](std::span<const double>) { return NAN; }, 1);
            }),
            ErrorCode::kNonFinite);
  EXPECT_EQ(code_of([] { make_optimizer("cobyla"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(make_optimizer("nelder-mead")->name(), "nelder-mead");
}

// ---- Runtime ---------------------------------------------------------------

TEST(runtime, vqe_with_optimizer) {
  Runtime rt;
  TaskSpec spec;
  spec.kernel = parse_kernel(kAnsatz);
  spec.observable = parse_pauli("X0 X1");
  spec.optimizer = make_optimizer("nelder-mead");
  spec.config = exact();
  auto root = rt.sync(rt.task_initiate(std::move(spec)));
  EXPECT_NEAR(root.metadata.get<double>("opt-value"), -1.0, 1e-4);
  EXPECT_EQ(root.metadata.get<HeterogeneousMap::RealList>("opt-params").size(), 1u);
  const auto n = root.metadata.get<std::int64_t>("num-evaluations");
  EXPECT_EQ(root.children.size(), static_cast<std::size_t>(n));
  for (const auto& child : root.children) EXPECT_EQ(child.children.size(), 1u);
}

TEST(runtime, two_parameter_entangler) {
  Runtime rt;
  TaskSpec spec;
  spec.kernel = parse_kernel(kEntangler);
  spec.observable = parse_pauli("X0 X1 + Z0 Z1");
  HeterogeneousMap opts;
  opts.put("initial-point", std::vector<double>{1.0, 2.0}).put("initial-step", 0.5);
  spec.optimizer = make_optimizer("nelder-mead", opts);
  spec.config = exact();
  auto root = rt.sync(rt.task_initiate(std::move(spec)));
  EXPECT_NEAR(root.metadata.get<double>("opt-value"), -2.0, 1e-3);
  for (const auto& child : root.children) EXPECT_EQ(child.children.size(), 2u);
}

TEST(runtime, single_evaluation_default_objective) {
  Runtime rt;
  TaskSpec spec;
  spec.kernel = parse_kernel(kAnsatz);
  spec.observable = parse_pauli("X0 X1");
  spec.parameters = std::vector<double>{0.4};
  spec.config = exact();
  auto root = rt.sync(rt.task_initiate(std::move(spec)));
  EXPECT_NEAR(root.metadata.get<double>("value"), std::sin(0.4), 1e-12);
  EXPECT_EQ(root.metadata.get<HeterogeneousMap::RealList>("params"),
            (std::vector<double>{0.4}));
  EXPECT_EQ(root.children.size(), 1u);
  EXPECT_EQ(root.metadata.get<std::int64_t>("num-evaluations"), 1);
}

TEST(runtime, all_defaults) {
  Runtime rt;
  TaskSpec spec;
  spec.width = 1;
  auto root = rt.sync(rt.task_initiate(std::move(spec)));
  EXPECT_EQ(root.metadata.get<double>("value"), 1.0);
  EXPECT_EQ(root.metadata.get<std::string>("observable"), "Z0");
  EXPECT_EQ(root.metadata.get<std::string>("kernel"), "kernel id() qubits 1 {\n}");
}

TEST(runtime, default_observable_covers_kernel) {
  Runtime rt;
  TaskSpec spec;
  spec.kernel = parse_kernel("kernel k() qubits 3 { X q1; }");
  spec.config = exact();
  auto root = rt.sync(rt.task_initiate(std::move(spec)));
  EXPECT_NEAR(root.metadata.get<double>("value"), 1.0, 1e-15);
  EXPECT_EQ(root.children[0].children.size(), 3u);
}

TEST(runtime, synchronous_validation) {
  Runtime rt;
  EXPECT_EQ(code_of([&] { rt.task_initiate({}); }), ErrorCode::kInvalidArgument);
  TaskSpec missing_params;
  missing_params.kernel = parse_kernel(kAnsatz);
  EXPECT_EQ(code_of([&] { rt.task_initiate(missing_params); }),
            ErrorCode::kInvalidArgument);
  TaskSpec wrong_arity = missing_params;
  wrong_arity.parameters = std::vector<double>{1, 2};
  EXPECT_EQ(code_of([&] { rt.task_initiate(wrong_arity); }), ErrorCode::kInvalidArgument);
  TaskSpec too_wide;
  too_wide.kernel = Kernel::identity(1);
  too_wide.observable = parse_pauli("Z3");
  EXPECT_EQ(code_of([&] { rt.task_initiate(too_wide); }), ErrorCode::kOutOfRange);
  TaskSpec zero_shots;
  zero_shots.width = 1;
  zero_shots.config.shots = 0;
  EXPECT_EQ(code_of([&] { rt.task_initiate(zero_shots); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(rt.pending(), 0u);
}

TEST(runtime, errors_surface_at_sync) {
  Runtime rt;
  TaskSpec spec;
  spec.width = 1;
  spec.objective = std::make_shared<FailingObjective>();
  spec.parameters = std::vector<double>{0.0};
  auto h = rt.task_initiate(std::move(spec));
  try {
    rt.sync(h);
    FAIL();
  } catch (const TaskError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTaskFailed);
    EXPECT_EQ(e.cause(), ErrorCode::kNonHermitian);
    EXPECT_NE(std::string(e.what()).find("boom"), std::string::npos);
  }
}

TEST(runtime, handle_contract) {
  Runtime a, b;
  TaskSpec spec;
  spec.width = 1;
  auto h = a.task_initiate(spec);
  EXPECT_EQ(code_of([&] { b.sync(h); }), ErrorCode::kForeignHandle);
  a.sync(h);
  EXPECT_EQ(code_of([&] { a.sync(h); }), ErrorCode::kAlreadySynced);
}

TEST(runtime, initiate_does_not_block) {
  Runtime rt;
  TaskSpec spec;
  spec.width = 1;
  spec.objective = std::make_shared<ShimObjective>(1, std::chrono::milliseconds(300));
  spec.parameters = std::vector<double>{0.0};
  const auto t0 = std::chrono::steady_clock::now();
  auto h = rt.task_initiate(std::move(spec));
  const auto dt = std::chrono::steady_clock::now() - t0;
  EXPECT_LT(dt, std::chrono::milliseconds(50));
  EXPECT_EQ(rt.pending(), 1u);
  auto root = rt.sync(h);
  EXPECT_EQ(root.metadata.get<double>("value"), 1.0);
}

TEST(runtime, reverse_order_and_cross_thread_sync) {
  Runtime rt;
  auto make = [](double theta) {
    TaskSpec s;
    s.kernel = parse_kernel(kAnsatz);
    s.observable = parse_pauli("X0 X1");
    s.parameters = std::vector<double>{theta};
    s.config.exact = true;
    return s;
  };
  auto h1 = rt.task_initiate(make(0.3));
  auto h2 = rt.task_initiate(make(1.2));
  auto r2 = rt.sync(h2);
  ResultBuffer r1;
  std::thread worker([&] { r1 = rt.sync(h1); });
  worker.join();
  EXPECT_NEAR(r1.metadata.get<double>("value"), std::sin(0.3), 1e-12);
  EXPECT_NEAR(r2.metadata.get<double>("value"), std::sin(1.2), 1e-12);
  EXPECT_NE(r1.metadata.get<std::int64_t>("task-id"),
            r2.metadata.get<std::int64_t>("task-id"));
}

TEST(runtime, free_functions_use_default_runtime) {
  TaskSpec spec;
  spec.width = 2;
  auto root = sync(task_initiate(spec));
  EXPECT_EQ(root.metadata.get<double>("value"), 2.0);
}

TEST(computational_basis_observable, sums_z) {
  EXPECT_EQ(to_string(computational_basis_observable(3)), "Z0 + Z1 + Z2");
}
