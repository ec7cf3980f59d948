// Copyright 2026 The Sentinel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sentinel/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sentinel/schedparams.hpp"
#include "sentinel/simharness.hpp"
#include "sentinel/verifier.hpp"

namespace sentinel {

namespace {

bool verbose_enabled() {
  const char* env = std::getenv("SENTINEL_LOG");
  return env != nullptr && std::string(env) != "" && std::string(env) != "0";
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(std::stod(item));
  }
  return out;
}

const char* class_name(SafetyClass c) {
  switch (c) {
    case SafetyClass::kSafe:
      return "Safe";
    case SafetyClass::kUndecided:
      return "Undecided";
    case SafetyClass::kUnsafe:
      return "Unsafe";
  }
  return "?";
}

double percentile(std::vector<double> xs, double p) {
  std::sort(xs.begin(), xs.end());
  const std::size_t rank = static_cast<std::size_t>(
      std::ceil(p * static_cast<double>(xs.size())));
  return xs[std::max<std::size_t>(rank, 1) - 1];
}

struct CliOptions {
  std::string scenario_path;
  std::string out_path;
  std::string mode;
  std::string problem = "upper";
  std::string x_override;
  std::string v_override;
  double subsample = 1e-3;
  int iterations = 0;
  unsigned seed = 0;
  bool soft = false;
};

int cmd_verify(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  const Scenario scenario = load_scenario(opt.scenario_path);
  const IntersectionModel model = scenario.model();
  std::vector<VehicleState> states = scenario.initial;
  if (!opt.x_override.empty()) {
    const auto xs = parse_list(opt.x_override);
    if (xs.size() != states.size()) {
      err << "error: --x needs one value per vehicle\n";
      return 1;
    }
    for (std::size_t j = 0; j < xs.size(); ++j) states[j].pos = xs[j];
  }
  if (!opt.v_override.empty()) {
    const auto vs = parse_list(opt.v_override);
    if (vs.size() != states.size()) {
      err << "error: --v needs one value per vehicle\n";
      return 1;
    }
    for (std::size_t j = 0; j < vs.size(); ++j) states[j].speed = vs[j];
  }

  SolveOptions solve;
  solve.feasibility_only = opt.mode == "feasibility";
  solve.soft_chained_deadlines = opt.soft;
  const LowerSolution lo = solve_lower(model, states, solve);
  const UpperSolution up = solve_upper(model, states, solve);
  const Verdict verdict =
      classify(std::isfinite(lo.cost) ? lo.cost : 1.0,
               std::isfinite(up.cost) ? up.cost : 1.0);
  out << "s_lower: ";
  if (std::isfinite(lo.cost)) {
    out << lo.cost;
  } else {
    out << "positive";
  }
  out << "\ns_upper: ";
  if (std::isfinite(up.cost)) {
    out << up.cost;
  } else {
    out << "positive";
  }
  out << "\nclassification: " << class_name(verdict.classification) << "\n";
  switch (verdict.classification) {
    case SafetyClass::kSafe:
      return 0;
    case SafetyClass::kUndecided:
      return 2;
    case SafetyClass::kUnsafe:
      return 3;
  }
  return 1;
}

int cmd_run(const CliOptions& opt, bool closed_loop, std::ostream& out,
            std::ostream& err) {
  const Scenario scenario = load_scenario(opt.scenario_path);
  HarnessOptions harness;
  harness.subsample = opt.subsample;
  harness.supervisor_feasibility = opt.mode != "exact";
  harness.time_steps = closed_loop;
  const auto t0 = std::chrono::steady_clock::now();
  const RunResult res =
      closed_loop ? run_closed_loop(scenario, harness)
                  : run_open_loop(scenario, harness);
  const auto t1 = std::chrono::steady_clock::now();
  if (!opt.out_path.empty()) {
    write_log(res.log, opt.out_path);
    if (verbose_enabled()) err << "wrote " << opt.out_path << "\n";
  }
  const double wall = std::chrono::duration<double>(t1 - t0).count();
  out << "steps: " << scenario.steps << "\n";
  out << "overrides: " << res.override_count << "\n";
  out << "max_s_lower: " << res.max_s_lower << "\n";
  out << "max_s_upper: " << res.max_s_upper << "\n";
  out << "bad_set_samples: " << res.bad_samples << "\n";
  if (!res.step_seconds.empty()) {
    const double worst =
        *std::max_element(res.step_seconds.begin(), res.step_seconds.end());
    out << "max_step_seconds: " << worst << "\n";
  }
  out << "wall_seconds_per_step: "
      << (scenario.steps > 0 ? wall / scenario.steps : 0.0) << "\n";
  return 0;
}

int cmd_bench(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  Scenario scenario = load_scenario(opt.scenario_path);
  if (opt.iterations > 0) scenario.steps = opt.iterations;
  if (opt.seed != 0) {
    // Randomized desired inputs stress the override path.
    std::mt19937_64 rng(opt.seed);
    for (std::size_t j = 0; j < scenario.vehicles.size(); ++j) {
      const VehicleSpec& spec = scenario.vehicles[j];
      std::uniform_real_distribution<double> dist(spec.u_min, spec.u_max);
      DesiredPolicy policy;
      for (int k = 0; k < scenario.steps; ++k) {
        policy.table.push_back({k * scenario.tau, dist(rng)});
      }
      scenario.desired[j] = policy;
    }
  }
  HarnessOptions harness;
  harness.log_costs = false;
  harness.subsample = opt.subsample;
  harness.supervisor_feasibility = opt.mode != "exact";
  harness.time_steps = true;
  const RunResult res = run_closed_loop(scenario, harness);
  if (res.step_seconds.empty()) {
    err << "error: no steps executed\n";
    return 1;
  }
  const double p50 = percentile(res.step_seconds, 0.50);
  const double p95 = percentile(res.step_seconds, 0.95);
  const double worst =
      *std::max_element(res.step_seconds.begin(), res.step_seconds.end());
  out << "steps: " << res.step_seconds.size() << "\n";
  out << "overrides: " << res.override_count << "\n";
  out << "p50_seconds: " << p50 << "\n";
  out << "p95_seconds: " << p95 << "\n";
  out << "max_seconds: " << worst << "\n";
  out << "budget_0.1s: " << (worst <= 0.1 ? "within" : "exceeded") << "\n";
  return 0;
}

int cmd_export_lp(const CliOptions& opt, std::ostream& out, std::ostream&) {
  const Scenario scenario = load_scenario(opt.scenario_path);
  const IntersectionModel model = scenario.model();
  std::vector<double> x(scenario.initial.size());
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = scenario.initial[j].pos;
  const OperationGraph graph = build_operation_graph(model, x);

  DisjunctiveTemporalProblem dtp;
  if (opt.problem == "lower") {
    dtp = build_lower_dtp(graph,
                          lower_bound_params(model, graph, scenario.initial),
                          opt.soft);
  } else {
    dtp = build_upper_dtp(graph,
                          upper_bound_params(model, graph, scenario.initial));
  }
  const std::string text = export_lp(dtp);
  if (opt.out_path.empty()) {
    out << text;
  } else {
    write_text(text, opt.out_path);
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"intersection crossing verifier and supervisor"};
  app.require_subcommand(1);
  CliOptions opt;

  auto add_common = [&](CLI::App* cmd, bool needs_mode) {
    cmd->add_option("scenario", opt.scenario_path, "scenario JSON file")
        ->required();
    if (needs_mode) {
      cmd->add_option("--mode", opt.mode, "solver mode: exact|feasibility")
          ->check(CLI::IsMember({"exact", "feasibility"}));
    }
    cmd->add_option("--out", opt.out_path, "output file");
    cmd->add_option("--subsample", opt.subsample,
                    "bad-set monitor grid [s], default 1e-3");
    cmd->add_option("--seed", opt.seed, "random seed (bench)");
  };

  CLI::App* verify_cmd = app.add_subcommand("verify", "classify a state");
  add_common(verify_cmd, true);
  verify_cmd->add_option("--x", opt.x_override, "position overrides x0,x1,...");
  verify_cmd->add_option("--v", opt.v_override, "speed overrides v0,v1,...");
  verify_cmd->add_flag("--soft", opt.soft,
                       "soft chained deadlines in the lower problem");

  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "closed loop under the supervisor");
  add_common(sim_cmd, true);

  CLI::App* open_cmd =
      app.add_subcommand("open-loop", "uncontrolled desired inputs");
  add_common(open_cmd, false);

  CLI::App* bench_cmd =
      app.add_subcommand("bench", "supervisor step latency percentiles");
  add_common(bench_cmd, true);
  bench_cmd->add_option("--iterations", opt.iterations, "steps to time");

  CLI::App* lp_cmd =
      app.add_subcommand("export-lp", "write a bound problem in LP format");
  add_common(lp_cmd, false);
  lp_cmd->add_option("--problem", opt.problem, "lower|upper")
      ->check(CLI::IsMember({"lower", "upper"}));
  lp_cmd->add_flag("--soft", opt.soft,
                   "soft chained deadlines in the lower problem");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (app.got_subcommand(verify_cmd)) {
      if (opt.mode.empty()) opt.mode = "exact";
      return cmd_verify(opt, out, err);
    }
    if (app.got_subcommand(sim_cmd)) {
      if (opt.mode.empty()) opt.mode = "feasibility";
      return cmd_run(opt, /*closed_loop=*/true, out, err);
    }
    if (app.got_subcommand(open_cmd)) {
      return cmd_run(opt, /*closed_loop=*/false, out, err);
    }
    if (app.got_subcommand(bench_cmd)) {
      if (opt.mode.empty()) opt.mode = "feasibility";
      return cmd_bench(opt, out, err);
    }
    if (app.got_subcommand(lp_cmd)) {
      return cmd_export_lp(opt, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no command\n";
  return 1;
}

}  // namespace sentinel
