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

#include "sentinel/simharness.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "sentinel/schedparams.hpp"
#include "sentinel/verifier.hpp"

namespace sentinel {

namespace {

struct Monitor {
  IntersectionModel model;
  OperationGraph graph;   // shared pairs are state-independent
  BadSetVariant nominal;
  BadSetVariant shrunk;
  BadSetVariant inflated;

  explicit Monitor(const Scenario& scenario)
      : model(scenario.model()),
        graph(build_operation_graph(
            model, std::vector<double>(scenario.vehicles.size(), 0.0))),
        nominal(nominal_variant(model)),
        shrunk(shrunk_areas(model)),
        inflated(inflated_areas(model)) {}
};

int subsamples_per_step(const Scenario& scenario, const HarnessOptions& opt) {
  if (!(opt.subsample > 0.0)) {
    throw std::invalid_argument("harness: subsample must be positive");
  }
  const double ratio = scenario.tau / opt.subsample;
  const int n = static_cast<int>(std::llround(ratio));
  if (n < 1 || std::abs(ratio - n) > 1e-9) {
    throw std::invalid_argument(
        "harness: tau must be an integer multiple of the subsample grid");
  }
  return n;
}

// Simulation loop shared by both modes. `choose_inputs` returns the signals
// to apply on [0, tau) and whether the supervisor overrode.
template <typename ChooseInputs>
RunResult run(const Scenario& scenario, const HarnessOptions& opt,
              ChooseInputs choose_inputs) {
  scenario.validate();
  Monitor mon(scenario);
  const int subs = subsamples_per_step(scenario, opt);
  const std::size_t n = scenario.vehicles.size();

  RunResult res;
  std::vector<VehicleState> states = scenario.initial;
  for (int k = 0; k < scenario.steps; ++k) {
    double s_lower = 0.0, s_upper = 0.0;
    if (opt.log_costs) {
      const Verdict v = verify(mon.model, states);
      s_lower = v.s_lower;
      s_upper = v.s_upper;
      res.max_s_lower = std::max(res.max_s_lower, s_lower);
      res.max_s_upper = std::max(res.max_s_upper, s_upper);
    }

    const auto [applied, overridden] = choose_inputs(k, states);
    if (overridden) ++res.override_count;

    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = states[j].pos;
    for (std::size_t j = 0; j < n; ++j) {
      LogRow row;
      row.step = k;
      row.time = k * scenario.tau;
      row.vehicle = static_cast<int>(j);
      row.pos = states[j].pos;
      row.speed = states[j].speed;
      row.u_applied = applied[j].value_at(0.0);
      row.overridden = overridden;
      row.s_lower = s_lower;
      row.s_upper = s_upper;
      row.in_bad = in_bad_set(mon.graph, mon.nominal, x);
      row.in_shrunk = in_bad_set(mon.graph, mon.shrunk, x);
      row.in_inflated = in_bad_set(mon.graph, mon.inflated, x);
      res.log.rows.push_back(row);
    }

    // Advance one period, checking the bad sets on the subsample grid.
    std::vector<std::vector<TrajectorySample>> trajs(n);
    for (std::size_t j = 0; j < n; ++j) {
      trajs[j] = simulate_signal(states[j], mon.model.vehicle(j), applied[j],
                                 scenario.tau, opt.subsample);
    }
    for (int i = 1; i <= subs; ++i) {
      for (std::size_t j = 0; j < n; ++j) x[j] = trajs[j][i].state.pos;
      if (in_bad_set(mon.graph, mon.nominal, x)) ++res.bad_samples;
      if (in_bad_set(mon.graph, mon.shrunk, x)) ++res.shrunk_samples;
      if (in_bad_set(mon.graph, mon.inflated, x)) ++res.inflated_samples;
    }
    for (std::size_t j = 0; j < n; ++j) states[j] = trajs[j].back().state;
  }
  return res;
}

}  // namespace

RunResult run_open_loop(const Scenario& scenario,
                        const HarnessOptions& options) {
  return run(scenario, options,
             [&](int k, const std::vector<VehicleState>&) {
               std::vector<PiecewiseConstantInput> applied;
               for (const DesiredPolicy& d : scenario.desired) {
                 applied.push_back(PiecewiseConstantInput::constant(
                     d.value_at(k * scenario.tau)));
               }
               return std::pair(std::move(applied), false);
             });
}

RunResult run_closed_loop(const Scenario& scenario,
                          const HarnessOptions& options) {
  Supervisor::Config cfg;
  cfg.tau = scenario.tau;
  cfg.feasibility_mode = options.supervisor_feasibility;
  Supervisor supervisor(scenario.model(), cfg);

  std::vector<double> step_times;
  RunResult res = run(
      scenario, options,
      [&](int k, const std::vector<VehicleState>& states) {
        std::vector<double> desired(scenario.vehicles.size());
        for (std::size_t j = 0; j < desired.size(); ++j) {
          desired[j] = scenario.desired[j].value_at(k * scenario.tau);
        }
        const auto t0 = std::chrono::steady_clock::now();
        SupervisorStep stepped = supervisor.step(states, desired);
        const auto t1 = std::chrono::steady_clock::now();
        if (options.time_steps) {
          step_times.push_back(std::chrono::duration<double>(t1 - t0).count());
        }
        return std::pair(std::move(stepped.applied), stepped.overridden);
      });
  res.step_seconds = std::move(step_times);
  return res;
}

}  // namespace sentinel
