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

#ifndef SENTINEL_SIMHARNESS_HPP_
#define SENTINEL_SIMHARNESS_HPP_

#include <vector>

#include "sentinel/scenario.hpp"
#include "sentinel/supervisor.hpp"

namespace sentinel {

struct HarnessOptions {
  /// Compute and log s_lower/s_upper (exact solves) at every step.
  bool log_costs = true;
  /// Solver mode of the supervisor hot path (closed loop only).
  bool supervisor_feasibility = true;
  /// Bad-set monitor grid [s]; tau must be an integer multiple of it.
  double subsample = 1e-3;
  /// Record wall-clock seconds per supervisor step (closed loop only).
  bool time_steps = false;
};

/// Aggregate outcome of one run.
struct RunResult {
  TrajectoryLog log;
  int override_count = 0;
  /// Bad-set entries seen at the subsample grid (counting samples).
  long bad_samples = 0;
  long shrunk_samples = 0;
  long inflated_samples = 0;
  double max_s_upper = 0.0;   // over logged finite costs
  double max_s_lower = 0.0;
  std::vector<double> step_seconds;  // if time_steps
};

/// Vehicles roll uncontrolled under the desired profiles.
RunResult run_open_loop(const Scenario& scenario,
                        const HarnessOptions& options = {});

/// The supervisor filters the desired inputs each period. Propagates
/// SupervisorInitError if the initial state cannot be certified.
RunResult run_closed_loop(const Scenario& scenario,
                          const HarnessOptions& options = {});

}  // namespace sentinel

#endif  // SENTINEL_SIMHARNESS_HPP_
