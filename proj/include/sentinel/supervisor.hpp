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

#ifndef SENTINEL_SUPERVISOR_HPP_
#define SENTINEL_SUPERVISOR_HPP_

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sentinel/dynamics.hpp"
#include "sentinel/intersection.hpp"
#include "sentinel/verifier.hpp"

namespace sentinel {

/**
 * @brief Safe input generator.
 *
 * For every vehicle with active operations, builds a signal that reaches the
 * first active area start exactly at the scheduled time and applies u_max
 * from then on. The pre-arrival segment brakes at u_min until a switch time
 * found by bisection on the (monotone) arrival-time map, to an arrival
 * tolerance of 1e-6 s. Vehicles past all areas get constant u_max.
 *
 * The schedule must satisfy release <= t_first <= deadline for the given
 * states (i.e., come from a zero-cost upper-bound solve); otherwise throws
 * std::invalid_argument.
 */
std::vector<PiecewiseConstantInput> sigma(
    const std::vector<VehicleState>& states, const IntersectionModel& model,
    const std::map<int, double>& t_first);

/// First step refused: no stored safe input exists and the initial desired
/// prediction cannot be certified safe.
class SupervisorInitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output of one supervisor step: the input to apply on [0, tau).
struct SupervisorStep {
  std::vector<PiecewiseConstantInput> applied;
  bool overridden = false;
};

/**
 * @brief Discrete-time supervisor.
 *
 * Each step predicts the state one period ahead under the drivers' inputs
 * and certifies it with the upper-bound problem. On success the desired
 * inputs pass through and a fresh safe signal is stored for the next step;
 * otherwise the stored safe signal is applied and regenerated from its own
 * predicted state, which is always certifiable once step 0 succeeds.
 */
class Supervisor {
 public:
  struct Config {
    double tau = 0.1;               // [s]
    bool feasibility_mode = true;   // hot-path solver mode
    bool check_shifted_schedule = true;
    /// Grid for the in-step collision check of the drivers' inputs. The
    /// certificate at the predicted state covers the future from there; the
    /// path across one period is checked directly at this resolution.
    double path_check_grid = 1e-3;  // [s]
  };

  Supervisor(IntersectionModel model, Config config);

  /**
   * @brief One supervision period.
   *
   * Throws SupervisorInitError when the very first step cannot be certified;
   * throws std::logic_error if the safe-branch re-verification ever reports
   * positive cost (that would contradict the non-blocking argument).
   */
  SupervisorStep step(const std::vector<VehicleState>& measured,
                      const std::vector<double>& desired_inputs);

  const IntersectionModel& model() const { return model_; }
  double tau() const { return config_.tau; }
  int step_index() const { return step_index_; }

  /// Stored safe signal for the next period (empty before the first step).
  const std::vector<PiecewiseConstantInput>& safe_signal() const {
    return safe_signal_;
  }
  /// Schedule from the last successful verification.
  const UpperSolution& last_schedule() const { return last_schedule_; }

 private:
  std::vector<VehicleState> predict(
      const std::vector<VehicleState>& measured,
      const std::vector<PiecewiseConstantInput>& inputs) const;
  bool path_enters_bad_set(
      const std::vector<VehicleState>& measured,
      const std::vector<PiecewiseConstantInput>& inputs) const;
  void verify_shifted_schedule(const std::vector<VehicleState>& safe_states,
                               const UpperSolution& previous) const;

  IntersectionModel model_;
  Config config_;
  OperationGraph pair_graph_;  // shared-area pairs, state-independent
  BadSetVariant nominal_;
  std::vector<PiecewiseConstantInput> safe_signal_;
  UpperSolution last_schedule_;
  bool initialized_ = false;
  int step_index_ = 0;
};

}  // namespace sentinel

#endif  // SENTINEL_SUPERVISOR_HPP_
