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

#include "sentinel/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sentinel {

namespace {

constexpr double kSpeedEventTol = 1e-9;  // [m/s]
constexpr double kTimeDust = 1e-12;      // sub-steps shorter than this are dropped

double raw_accel(const VehicleSpec& spec, double u, double speed) {
  return spec.accel_gain * u + spec.drag_coeff * speed * speed;
}

// One RK4 update over h on the raw field. The speed bounds are handled by
// event location in substep(); before a crossing the true dynamics are the
// unprojected field, so the stages stay smooth and fourth-order.
VehicleState rk4(const VehicleState& s, const VehicleSpec& spec, double u,
                 double h) {
  const double k1v = raw_accel(spec, u, s.speed);
  const double k1x = s.speed;
  const double v2 = s.speed + 0.5 * h * k1v;
  const double k2v = raw_accel(spec, u, v2);
  const double k2x = v2;
  const double v3 = s.speed + 0.5 * h * k2v;
  const double k3v = raw_accel(spec, u, v3);
  const double k3x = v3;
  const double v4 = s.speed + h * k3v;
  const double k4v = raw_accel(spec, u, v4);
  const double k4x = v4;
  VehicleState out;
  out.pos = s.pos + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
  out.speed = s.speed + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  return out;
}

bool pinned_outward(const VehicleSpec& spec, double u, double speed) {
  if (speed >= spec.v_max && raw_accel(spec, u, speed) > 0.0) return true;
  if (speed <= spec.v_min && raw_accel(spec, u, speed) < 0.0) return true;
  return false;
}

// Advance one sub-step of length h, locating a speed-bound crossing by
// bisection when one occurs. The returned speed sits exactly on the bound
// after a crossing.
VehicleState substep(const VehicleState& s, const VehicleSpec& spec, double u,
                     double h) {
  if (pinned_outward(spec, u, s.speed)) {
    return {s.pos + s.speed * h, s.speed};
  }
  VehicleState out = rk4(s, spec, u, h);
  double bound = 0.0;
  if (out.speed > spec.v_max) {
    bound = spec.v_max;
  } else if (out.speed < spec.v_min) {
    bound = spec.v_min;
  } else {
    return out;
  }
  // Speed is monotone within a constant-input sub-step, so the crossing
  // instant is unique. Bisect the sub-step duration.
  double lo = 0.0, hi = h;
  VehicleState at_event = out;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    at_event = rk4(s, spec, u, mid);
    if (std::abs(at_event.speed - bound) <= kSpeedEventTol) {
      lo = hi = mid;
      break;
    }
    const bool past = (bound == spec.v_max) ? (at_event.speed > bound)
                                            : (at_event.speed < bound);
    if (past) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (hi - lo <= kTimeDust) break;
  }
  at_event.speed = bound;
  const double remaining = h - 0.5 * (lo + hi);
  if (remaining > kTimeDust) {
    at_event.pos += bound * remaining;
  }
  return at_event;
}

}  // namespace

void VehicleSpec::validate() const {
  if (!(u_min < u_max)) {
    throw std::invalid_argument("VehicleSpec: requires u_min < u_max");
  }
  if (!(v_min > 0.0) || !(v_min <= v_max)) {
    throw std::invalid_argument("VehicleSpec: requires 0 < v_min <= v_max");
  }
  if (!(accel_gain > 0.0)) {
    throw std::invalid_argument("VehicleSpec: requires accel_gain > 0");
  }
  if (drag_coeff < 0.0) {
    throw std::invalid_argument("VehicleSpec: requires drag_coeff >= 0");
  }
}

PiecewiseConstantInput PiecewiseConstantInput::constant(double u) {
  return {{0.0}, {u}};
}

double PiecewiseConstantInput::value_at(double t) const {
  double v = values.front();
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (breakpoints[i] <= t) {
      v = values[i];
    } else {
      break;
    }
  }
  return v;
}

void PiecewiseConstantInput::validate(const VehicleSpec& spec) const {
  if (breakpoints.empty() || breakpoints.size() != values.size()) {
    throw std::invalid_argument("PiecewiseConstantInput: size mismatch");
  }
  if (breakpoints.front() != 0.0) {
    throw std::invalid_argument("PiecewiseConstantInput: must start at t=0");
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > breakpoints[i - 1])) {
      throw std::invalid_argument(
          "PiecewiseConstantInput: breakpoints must be strictly increasing");
    }
  }
  for (double v : values) {
    if (v < spec.u_min || v > spec.u_max) {
      throw std::invalid_argument(
          "PiecewiseConstantInput: value outside input bounds");
    }
  }
}

VehicleState step(const VehicleState& state, const VehicleSpec& spec, double u,
                  double dt) {
  if (u < spec.u_min || u > spec.u_max) {
    throw std::invalid_argument("step: input outside [u_min, u_max]");
  }
  if (!(dt > 0.0)) {
    throw std::invalid_argument("step: requires dt > 0");
  }
  VehicleState s = state;
  double remaining = dt;
  while (remaining > kTimeDust) {
    if (pinned_outward(spec, u, s.speed)) {
      // Constant-speed cruise until the input changes; exact in one shot.
      s.pos += s.speed * remaining;
      break;
    }
    const double h = std::min(remaining, kIntegratorStep);
    s = substep(s, spec, u, h);
    remaining -= h;
  }
  return s;
}

namespace {

// Forward sweep shared by the crossing-time queries. Calls `visit` with the
// state at the start of each sub-step and the sub-step length, until `done`
// returns true or `t_limit` is exceeded.
template <typename Visit>
void sweep(const VehicleState& state, const VehicleSpec& spec, double u,
           double t_limit, Visit visit) {
  VehicleState s = state;
  double t = 0.0;
  while (t < t_limit) {
    double h = std::min(kIntegratorStep, t_limit - t);
    if (h <= kTimeDust) break;
    if (pinned_outward(spec, u, s.speed)) {
      // Cruise straight to the limit; the visitor resolves crossings
      // analytically for a pinned state.
      h = t_limit - t;
    }
    VehicleState next = substep(s, spec, u, h);
    if (visit(s, next, t, h)) return;
    s = next;
    t += h;
  }
}

double bisect_crossing(const VehicleState& at, const VehicleSpec& spec,
                       double u, double h, double target) {
  // at.pos < target <= pos(h). Bisect the sub-step duration until the
  // position tolerance is met.
  double lo = 0.0, hi = h;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double pos_mid = substep(at, spec, u, mid).pos;
    if (std::abs(pos_mid - target) <= kCrossingTol) return mid;
    if (pos_mid < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= kTimeDust) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> times_to_positions(const VehicleState& state,
                                       const VehicleSpec& spec, double u,
                                       const std::vector<double>& targets) {
  if (u < spec.u_min || u > spec.u_max) {
    throw std::invalid_argument("times_to_positions: input outside bounds");
  }
  std::vector<double> out(targets.size(), 0.0);
  std::size_t k = 0;
  while (k < targets.size() && state.pos >= targets[k]) {
    out[k++] = 0.0;
  }
  if (k == targets.size()) return out;

  // Hard upper bound on any crossing time: cruise at v_min.
  const double t_limit =
      (targets.back() - state.pos) / spec.v_min + 1.0;

  sweep(state, spec, u, t_limit,
        [&](const VehicleState& s, const VehicleState& next, double t,
            double h) {
          while (k < targets.size() && next.pos >= targets[k]) {
            if (pinned_outward(spec, u, s.speed)) {
              out[k] = t + (targets[k] - s.pos) / s.speed;
            } else {
              out[k] = t + bisect_crossing(s, spec, u, h, targets[k]);
            }
            ++k;
          }
          return k == targets.size();
        });
  if (k != targets.size()) {
    throw std::logic_error("times_to_positions: crossing not reached");
  }
  return out;
}

double time_to_position(const VehicleState& state, const VehicleSpec& spec,
                        double u, double target) {
  return times_to_positions(state, spec, u, {target}).front();
}

double min_time_to(const VehicleState& state, const VehicleSpec& spec,
                   double target) {
  return time_to_position(state, spec, spec.u_max, target);
}

double max_time_to(const VehicleState& state, const VehicleSpec& spec,
                   double target) {
  return time_to_position(state, spec, spec.u_min, target);
}

std::vector<TrajectorySample> simulate_signal(const VehicleState& state,
                                              const VehicleSpec& spec,
                                              const PiecewiseConstantInput& signal,
                                              double horizon, double dt) {
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("simulate_signal: requires horizon > 0");
  }
  if (!(dt > 0.0)) {
    throw std::invalid_argument("simulate_signal: requires dt > 0");
  }
  signal.validate(spec);

  std::vector<TrajectorySample> out;
  out.push_back({0.0, state});

  VehicleState s = state;
  double t = 0.0;
  std::size_t seg = 0;  // active signal segment
  int sample = 1;
  while (true) {
    const double t_sample = sample * dt;
    if (t_sample > horizon + kTimeDust) break;
    // Advance to the next sample, splitting at breakpoints in between.
    while (t < t_sample - kTimeDust) {
      double t_next = t_sample;
      if (seg + 1 < signal.breakpoints.size() &&
          signal.breakpoints[seg + 1] < t_next - kTimeDust) {
        t_next = signal.breakpoints[seg + 1];
      }
      s = step(s, spec, signal.values[seg], t_next - t);
      t = t_next;
      while (seg + 1 < signal.breakpoints.size() &&
             signal.breakpoints[seg + 1] <= t + kTimeDust) {
        ++seg;
      }
    }
    out.push_back({t_sample, s});
    ++sample;
  }
  return out;
}

}  // namespace sentinel
