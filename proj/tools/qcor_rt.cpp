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

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcor/error.hpp"
#include "qcor/fermion.hpp"
#include "qcor/kernel.hpp"
#include "qcor/mitigation.hpp"
#include "qcor/objective.hpp"
#include "qcor/optimizer.hpp"
#include "qcor/pauli.hpp"
#include "qcor/result_buffer.hpp"
#include "qcor/runtime.hpp"
#include "qcor/simulator.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

// Bad input detected before any task runs.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string kernel_file;
  std::string observable;
  std::string observable_file;
  std::string optimizer = "nelder-mead";
  std::int64_t max_evaluations = 0;
  std::vector<double> initial_point;
  double initial_step = 0.0;
  std::uint64_t shots = 1024;
  std::optional<std::uint64_t> seed;
  bool exact = false;
  double p01 = 0.0;
  double p10 = 0.0;
  bool mitigate = false;
  std::string output;
  bool timing = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::uint64_t resolve_seed(const RunConfig& rc) {
  if (rc.seed) return *rc.seed;
  const char* env = std::getenv("QCOR_RT_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string_view(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("QCOR_RT_SEED is not an unsigned integer: ") + env);
  }
}

qcor::ExecutionConfig execution_config(const RunConfig& rc) {
  qcor::ExecutionConfig cfg;
  cfg.shots = rc.shots;
  cfg.seed = resolve_seed(rc);
  cfg.exact = rc.exact;
  if (!rc.exact && rc.shots == 0) throw UsageError("--shots must be >= 1");
  if (rc.p01 != 0.0 || rc.p10 != 0.0) {
    cfg.noise = qcor::ReadoutNoiseModel{{rc.p01, rc.p10}, {}};
  }
  return cfg;
}

qcor::Kernel load_kernel(const RunConfig& rc) {
  return qcor::parse_kernel(read_file(rc.kernel_file));
}

qcor::PauliObservable load_observable(const RunConfig& rc) {
  if (!rc.observable_file.empty()) {
    return qcor::parse_pauli(read_file(rc.observable_file));
  }
  return qcor::parse_pauli(rc.observable);
}

std::shared_ptr<qcor::ObjectiveFunction> make_objective(const RunConfig& rc) {
  auto inner = std::make_shared<qcor::ExpectationObjective>();
  if (!rc.mitigate) return inner;
  return std::make_shared<qcor::MitigatedObjective>(inner);
}

std::shared_ptr<qcor::Optimizer> make_optimizer(const RunConfig& rc) {
  qcor::HeterogeneousMap options;
  if (rc.max_evaluations > 0) options.put("max-evaluations", rc.max_evaluations);
  if (!rc.initial_point.empty()) options.put("initial-point", rc.initial_point);
  if (rc.initial_step > 0.0) options.put("initial-step", rc.initial_step);
  return qcor::make_optimizer(rc.optimizer, std::move(options));
}

void emit(const RunConfig& rc, const qcor::ResultBuffer& buffer) {
  const qcor::ResultBuffer out =
      rc.timing ? buffer : qcor::without_key(buffer, "wall-time");
  const std::string text = out.to_json().dump(2) + "\n";
  if (rc.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(rc.output, std::ios::binary);
  if (!file || !(file << text)) {
    throw std::runtime_error("cannot write '" + rc.output + "'");
  }
}

int cmd_vqe(const RunConfig& rc) {
  qcor::TaskSpec spec;
  spec.kernel = load_kernel(rc);
  spec.observable = load_observable(rc);
  spec.objective = make_objective(rc);
  spec.optimizer = make_optimizer(rc);
  spec.config = execution_config(rc);
  qcor::Runtime rt;
  const auto handle = rt.task_initiate(std::move(spec));
  const auto root = rt.sync(handle);
  emit(rc, root);
  std::cerr << "opt-value " << root.metadata.get<double>("opt-value") << " after "
            << root.metadata.get<std::int64_t>("num-evaluations") << " evaluations\n";
  return kExitOk;
}

struct Sweep {
  double start = 0.0;
  double stop = 0.0;
  std::int64_t points = 0;
};

Sweep parse_sweep(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos) throw UsageError("--sweep expects start:stop:count");
  Sweep s;
  try {
    std::size_t used = 0;
    s.start = std::stod(text.substr(0, a), &used);
    if (used != a) throw std::invalid_argument(text);
    s.stop = std::stod(text.substr(a + 1, b - a - 1), &used);
    if (used != b - a - 1) throw std::invalid_argument(text);
    s.points = std::stoll(text.substr(b + 1), &used);
    if (used != text.size() - b - 1) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw UsageError("--sweep expects start:stop:count, got '" + text + "'");
  }
  if (s.points < 1) throw UsageError("--sweep count must be >= 1");
  if (!std::isfinite(s.start) || !std::isfinite(s.stop)) {
    throw UsageError("--sweep bounds must be finite");
  }
  return s;
}

int cmd_evaluate(const RunConfig& rc, const std::vector<double>& params,
                 const std::string& sweep_text) {
  const auto kernel = load_kernel(rc);
  const auto observable = load_observable(rc);
  const auto config = execution_config(rc);
  qcor::Runtime rt;

  if (sweep_text.empty()) {
    qcor::TaskSpec spec;
    spec.kernel = kernel;
    spec.observable = observable;
    spec.objective = make_objective(rc);
    spec.parameters = params;
    spec.config = config;
    const auto root = rt.sync(rt.task_initiate(std::move(spec)));
    emit(rc, root);
    std::cerr << "value " << root.metadata.get<double>("value") << "\n";
    return kExitOk;
  }

  const Sweep sweep = parse_sweep(sweep_text);
  if (kernel.params().size() != 1) {
    throw UsageError("--sweep needs a kernel with exactly one parameter");
  }
  std::vector<qcor::TaskHandle> handles;
  std::vector<double> angles;
  for (std::int64_t i = 0; i < sweep.points; ++i) {
    const double t =
        sweep.points == 1
            ? sweep.start
            : sweep.start + (sweep.stop - sweep.start) * static_cast<double>(i) /
                                static_cast<double>(sweep.points - 1);
    qcor::TaskSpec spec;
    spec.kernel = kernel;
    spec.observable = observable;
    spec.objective = make_objective(rc);
    spec.parameters = std::vector<double>{t};
    spec.config = config;
    spec.config.seed = qcor::derive_seed(config.seed, static_cast<std::uint64_t>(i));
    handles.push_back(rt.task_initiate(std::move(spec)));
    angles.push_back(t);
  }
  qcor::ResultBuffer root;
  root.metadata.put("sweep-start", sweep.start)
      .put("sweep-stop", sweep.stop)
      .put("sweep-points", sweep.points)
      .put("seed", static_cast<std::int64_t>(config.seed));
  std::vector<double> values;
  for (const auto& h : handles) {
    auto child = rt.sync(h);
    values.push_back(child.metadata.get<double>("value"));
    root.add_child(std::move(child));
  }
  root.metadata.put("params", angles).put("values", values);
  emit(rc, root);
  std::cerr << "swept " << sweep.points << " points\n";
  return kExitOk;
}

int cmd_transform(const std::string& text) {
  const auto pauli = qcor::jordan_wigner(qcor::parse_fermion(text));
  std::cout << qcor::to_string(pauli) << "\n";
  return kExitOk;
}

int cmd_simulate(const RunConfig& rc, const std::vector<double>& values,
                 bool bind_given) {
  auto kernel = load_kernel(rc);
  if (bind_given || !kernel.params().empty()) kernel = qcor::bind(kernel, values);
  if (!kernel.is_measured()) {
    throw UsageError("kernel '" + kernel.name() + "' measures no qubit");
  }
  auto config = execution_config(rc);
  if (rc.exact) throw UsageError("simulate samples shots; --exact is not supported");
  const auto result = qcor::execute(kernel, config);
  qcor::ResultBuffer root;
  root.metadata = result.metadata;
  root.metadata.put("kernel", kernel.name());
  root.counts = result.counts;
  emit(rc, root);
  std::uint64_t total = 0;
  for (const auto& [bits, n] : root.counts) total += n;
  std::cerr << root.counts.size() << " distinct outcomes over " << total << " shots\n";
  return kExitOk;
}

void add_execution_options(CLI::App* cmd, RunConfig& rc) {
  cmd->add_option("--shots", rc.shots, "Shots per measured kernel")
      ->capture_default_str();
  cmd->add_option("--seed", rc.seed, "Sampling seed (default: $QCOR_RT_SEED, else 0)");
  cmd->add_option("--p01", rc.p01, "Readout flip probability 0 -> 1")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--p10", rc.p10, "Readout flip probability 1 -> 0")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--output,-o", rc.output, "Write JSON here instead of stdout");
  cmd->add_flag("--timing", rc.timing, "Keep wall-time entries in the output");
}

void add_objective_options(CLI::App* cmd, RunConfig& rc) {
  cmd->add_option("--kernel", rc.kernel_file, "Kernel source file (.qk)")->required();
  auto* obs = cmd->add_option("--observable", rc.observable, "Pauli observable");
  auto* file = cmd->add_option("--observable-file", rc.observable_file,
                               "File holding the Pauli observable");
  obs->excludes(file);
  file->excludes(obs);
  cmd->require_option(1, 0);
  cmd->add_flag("--exact", rc.exact, "Exact expectations instead of sampling");
  cmd->add_flag("--mitigate", rc.mitigate, "Apply readout-error mitigation");
  add_execution_options(cmd, rc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid quantum-classical task runtime"};
  app.require_subcommand(1);
  RunConfig rc;

  auto* vqe = app.add_subcommand("vqe", "Minimize an observable over kernel parameters");
  add_objective_options(vqe, rc);
  vqe->add_option("--optimizer", rc.optimizer, "Optimizer name")->capture_default_str();
  vqe->add_option("--max-evaluations", rc.max_evaluations, "Evaluation budget");
  vqe->add_option("--initial-point", rc.initial_point, "Start vertex");
  vqe->add_option("--initial-step", rc.initial_step, "Initial simplex step");

  std::vector<double> params;
  std::string sweep;
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate the default objective");
  add_objective_options(evaluate, rc);
  auto* params_opt = evaluate->add_option("--params", params, "Kernel parameters");
  auto* sweep_opt =
      evaluate->add_option("--sweep", sweep, "start:stop:count, one task per angle");
  params_opt->excludes(sweep_opt);

  std::string fermion;
  auto* transform = app.add_subcommand("transform", "Jordan-Wigner transform");
  transform->add_option("fermion", fermion, "Fermionic operator string")->required();

  std::vector<double> bind_values;
  auto* simulate = app.add_subcommand("simulate", "Sample a measured kernel");
  simulate->add_option("--kernel", rc.kernel_file, "Kernel source file (.qk)")->required();
  auto* bind_opt = simulate->add_option("--bind", bind_values, "Parameter values");
  add_execution_options(simulate, rc);
  simulate->add_flag("--exact", rc.exact, "Rejected: simulate always samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*vqe) return cmd_vqe(rc);
    if (*evaluate) return cmd_evaluate(rc, params, sweep);
    if (*transform) return cmd_transform(fermion);
    return cmd_simulate(rc, bind_values, bind_opt->count() > 0);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qcor::TaskError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const qcor::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
