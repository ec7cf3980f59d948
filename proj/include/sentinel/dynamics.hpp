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

#ifndef SENTINEL_DYNAMICS_HPP_
#define SENTINEL_DYNAMICS_HPP_

#include <vector>

namespace sentinel {

/**
 * @brief Longitudinal dynamics parameters of one vehicle.
 *
 * The acceleration model is
 *
 *     accel = accel_gain * u + drag_coeff * speed^2
 *
 * with the throttle/brake input u in [u_min, u_max] and the speed kept in
 * [v_min, v_max] by saturation. v_min must be strictly positive so that the
 * vehicle always makes forward progress.
 */
struct VehicleSpec {
  int id = 0;
  double accel_gain = 1.0;   // a [m/s^2 per input unit]
  double drag_coeff = 0.0;   // b [1/m]
  double u_min = -1.0;
  double u_max = 1.0;
  double v_min = 1.0;        // [m/s], > 0
  double v_max = 10.0;       // [m/s]

  /// Throws std::invalid_argument if the parameter ranges are inconsistent.
  void validate() const;
};

/// Longitudinal position [m] and speed [m/s] of a vehicle.
struct VehicleState {
  double pos = 0.0;
  double speed = 0.0;

  friend bool operator==(const VehicleState&, const VehicleState&) = default;
};

/**
 * @brief Piecewise-constant input signal.
 *
 * values[i] applies on [breakpoints[i], breakpoints[i+1]); the last value
 * holds forever. breakpoints must start at 0 and be strictly increasing.
 */
struct PiecewiseConstantInput {
  std::vector<double> breakpoints;
  std::vector<double> values;

  static PiecewiseConstantInput constant(double u);

  double value_at(double t) const;
  void validate(const VehicleSpec& spec) const;

  friend bool operator==(const PiecewiseConstantInput&,
                         const PiecewiseConstantInput&) = default;
};

/// One (time, state) sample of a simulated trajectory.
struct TrajectorySample {
  double time = 0.0;
  VehicleState state;
};

/// Fixed base step of the integrator [s].
inline constexpr double kIntegratorStep = 1e-3;

/// Absolute position tolerance for crossing-time queries [m].
inline constexpr double kCrossingTol = 1e-9;

/**
 * @brief Integrate the vehicle for dt seconds under a constant input.
 *
 * Classical fixed-step RK4 with base step 1e-3 s. When the speed hits v_min
 * or v_max while the raw acceleration pushes outward, the crossing instant is
 * located by bisection, the speed is pinned exactly to the bound, and the
 * remainder of the step is a constant-speed cruise. Deterministic: identical
 * arguments produce bit-identical results.
 *
 * Throws std::invalid_argument for u outside [u_min, u_max] or dt <= 0.
 */
VehicleState step(const VehicleState& state, const VehicleSpec& spec, double u,
                  double dt);

/**
 * @brief Time at which the vehicle reaches `target` under constant input u.
 *
 * Returns 0 when state.pos >= target. The crossing is unique because the
 * speed never drops below v_min > 0; it is bracketed during a forward sweep
 * and then bisected to an absolute position tolerance of 1e-9 m.
 */
double time_to_position(const VehicleState& state, const VehicleSpec& spec,
                        double u, double target);

/**
 * @brief Crossing times for a sorted list of targets, one forward sweep.
 *
 * Equivalent to calling time_to_position per target (bit-identical results);
 * targets must be non-decreasing.
 */
std::vector<double> times_to_positions(const VehicleState& state,
                                       const VehicleSpec& spec, double u,
                                       const std::vector<double>& targets);

/// Minimum time to reach `target` over all input signals: constant u_max.
double min_time_to(const VehicleState& state, const VehicleSpec& spec,
                   double target);

/// Maximum time to reach `target` over all input signals: constant u_min.
double max_time_to(const VehicleState& state, const VehicleSpec& spec,
                   double target);

/**
 * @brief Sample the trajectory under a piecewise-constant signal.
 *
 * Returns samples at t = 0, dt, 2*dt, ... <= horizon. Integration sub-steps
 * are aligned to the signal's breakpoints and to the sample grid, so the
 * result equals the corresponding composition of step() calls exactly.
 *
 * Throws std::invalid_argument for horizon <= 0 or dt <= 0.
 */
std::vector<TrajectorySample> simulate_signal(const VehicleState& state,
                                              const VehicleSpec& spec,
                                              const PiecewiseConstantInput& signal,
                                              double horizon, double dt);

}  // namespace sentinel

#endif  // SENTINEL_DYNAMICS_HPP_
