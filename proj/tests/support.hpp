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

#ifndef SENTINEL_TESTS_SUPPORT_HPP_
#define SENTINEL_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <random>
#include <vector>

#include "sentinel/dynamics.hpp"
#include "sentinel/intersection.hpp"
#include "sentinel/scenario.hpp"

namespace sentinel::testsupport {

// Independent fine-step Euler integrator used as the dynamics oracle: the
// speed advances by explicit Euler and is clamped to the bounds, while the
// position uses the trapezoid of consecutive speeds. A plain rectangle rule
// carries an intrinsic (h/2)*|speed change| position bias, which at h=1e-6
// is itself a full micrometre over one saturation ramp and would drown the
// comparison; the trapezoid keeps the oracle's own error well below that.
inline VehicleState euler_reference(const VehicleState& start,
                                    const VehicleSpec& spec, double u,
                                    double duration, double h = 1e-6) {
  VehicleState s = start;
  double t = 0.0;
  while (t < duration) {
    const double dt = std::min(h, duration - t);
    double acc = spec.accel_gain * u + spec.drag_coeff * s.speed * s.speed;
    if (s.speed >= spec.v_max && acc > 0.0) acc = 0.0;
    if (s.speed <= spec.v_min && acc < 0.0) acc = 0.0;
    const double next =
        std::clamp(s.speed + acc * dt, spec.v_min, spec.v_max);
    s.pos += 0.5 * (s.speed + next) * dt;
    s.speed = next;
    t += dt;
  }
  return s;
}

// Crossing time oracle on top of the Euler reference: coarse sweep plus
// bisection to the same 1e-9 position tolerance.
inline double euler_time_to(const VehicleState& start, const VehicleSpec& spec,
                            double u, double target, double h = 1e-6) {
  if (start.pos >= target) return 0.0;
  VehicleState s = start;
  double t = 0.0;
  while (s.pos < target) {
    double acc = spec.accel_gain * u + spec.drag_coeff * s.speed * s.speed;
    if (s.speed >= spec.v_max && acc > 0.0) acc = 0.0;
    if (s.speed <= spec.v_min && acc < 0.0) acc = 0.0;
    const double next =
        std::clamp(s.speed + acc * h, spec.v_min, spec.v_max);
    const double prev = s.pos;
    s.pos += 0.5 * (s.speed + next) * h;
    s.speed = next;
    t += h;
    if (s.pos >= target) {
      // Linear interpolation inside one micro-step is below 1e-9 m.
      return t - h + (target - prev) / (s.pos - prev) * h;
    }
  }
  return t;
}

// Deterministic scenario generator for randomized sweeps. Produces small
// valid intersections with shared areas; positions may fall inside areas or
// past the whole route.
struct RandomScenario {
  IntersectionModel model;
  std::vector<VehicleState> states;
};

inline RandomScenario random_intersection(std::mt19937_64& rng, int n_vehicles,
                                          int n_areas,
                                          bool allow_inside = true) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<VehicleSpec> specs;
  for (int j = 0; j < n_vehicles; ++j) {
    VehicleSpec s;
    s.id = j;
    s.accel_gain = 0.5 + 1.0 * unit(rng);
    s.u_max = 1.0 + 2.0 * unit(rng);
    s.u_min = -(1.0 + 2.0 * unit(rng));
    s.v_min = 3.0 + 4.0 * unit(rng);
    s.v_max = s.v_min + 0.5 + 3.0 * unit(rng);
    // Keep braking effective at top speed.
    s.drag_coeff =
        std::min(0.01, 0.5 * s.accel_gain * (-s.u_min) / (s.v_max * s.v_max)) *
        unit(rng);
    specs.push_back(s);
  }

  // Every vehicle crosses a random non-empty subset of areas, in area order
  // along its own path; geometry roughly follows the reference layout.
  std::vector<Placement> placements;
  for (int j = 0; j < n_vehicles; ++j) {
    double alpha = 15.0 + 10.0 * unit(rng);
    bool any = false;
    for (int a = 0; a < n_areas; ++a) {
      const bool last_chance = !any && a == n_areas - 1;
      if (!last_chance && unit(rng) < 0.35) continue;
      const double len = 3.0 + 3.0 * unit(rng);
      placements.push_back({a, j, alpha, alpha + len});
      alpha += len + 1.0 + 2.0 * unit(rng);
      any = true;
    }
  }

  RandomScenario out{IntersectionModel(specs, placements), {}};
  for (int j = 0; j < n_vehicles; ++j) {
    const auto& route = out.model.route(j);
    const double max_pos =
        allow_inside ? route.back().beta + 2.0 : route.front().alpha;
    std::uniform_real_distribution<double> pos(-5.0, max_pos);
    std::uniform_real_distribution<double> speed(specs[j].v_min,
                                                 specs[j].v_max);
    out.states.push_back({pos(rng), speed(rng)});
  }
  return out;
}

inline std::vector<double> positions_of(const std::vector<VehicleState>& s) {
  std::vector<double> x(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) x[j] = s[j].pos;
  return x;
}

// Horizon that covers every route exit at v_min, as the oracle requires.
inline double oracle_horizon(const IntersectionModel& m,
                             const std::vector<VehicleState>& states) {
  double h = 1.0;
  for (std::size_t j = 0; j < states.size(); ++j) {
    const auto& route = m.route(static_cast<int>(j));
    if (route.empty()) continue;
    h = std::max(h, (route.back().beta - states[j].pos) /
                        m.vehicle(static_cast<int>(j)).v_min);
  }
  return h + 0.5;
}

}  // namespace sentinel::testsupport

#endif  // SENTINEL_TESTS_SUPPORT_HPP_
