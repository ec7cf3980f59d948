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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sentinel/schedparams.hpp"
#include "support.hpp"

using namespace sentinel;
using namespace sentinel::testsupport;

namespace {

VehicleSpec spec8_10(int id, double drag = 0.005) {
  VehicleSpec s;
  s.id = id;
  s.drag_coeff = drag;
  s.u_min = -2.0;
  s.u_max = 2.0;
  s.v_min = 8.0;
  s.v_max = 10.0;
  return s;
}

// Two vehicles sharing area 0; vehicle 0 also crosses area 1 afterwards.
// Reference geometry: 5 m areas, 1 m gap, first entry at 20 m.
IntersectionModel two_vehicle_model(double drag = 0.005) {
  std::vector<VehicleSpec> specs{spec8_10(0, drag), spec8_10(1, drag)};
  std::vector<Placement> placements{
      {0, 0, 20.0, 25.0}, {1, 0, 26.0, 31.0}, {0, 1, 20.0, 25.0}};
  return IntersectionModel(std::move(specs), std::move(placements));
}

}  // namespace

TEST_CASE("reference geometry gap and occupancy windows") {
  const IntersectionModel m = two_vehicle_model();
  const std::vector<VehicleState> states{{0.0, 10.0}, {0.0, 8.0}};
  const OperationGraph g = build_operation_graph(m, {0.0, 0.0});
  const LowerBoundParams lp = lower_bound_params(m, g, states);

  const LowerOpParams& first = lp.ops.at({0, 0});
  CHECK(first.first);
  CHECK(first.proc_min == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(first.proc_max == doctest::Approx(0.625).epsilon(1e-12));

  const LowerOpParams& second = lp.ops.at({1, 0});
  CHECK_FALSE(second.first);
  CHECK(second.gap_fast == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(second.gap_slow == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("saturated cruise gives exact release times") {
  const IntersectionModel m = two_vehicle_model();
  const std::vector<VehicleState> states{{0.0, 10.0}, {0.0, 8.0}};
  const OperationGraph g = build_operation_graph(m, {0.0, 0.0});
  const LowerBoundParams lp = lower_bound_params(m, g, states);
  // Vehicle 0 at v_max with positive drag: pure cruise to 20 m.
  CHECK(lp.ops.at({0, 0}).release == 2.0);
  // Vehicle 1 deadline: pinned to v_min under full braking.
  CHECK(lp.ops.at({0, 1}).deadline == 2.5);
}

TEST_CASE("operation already underway gets a zero window") {
  const IntersectionModel m = two_vehicle_model();
  const std::vector<VehicleState> states{{22.0, 9.0}, {0.0, 8.0}};
  const OperationGraph g = build_operation_graph(m, {22.0, 0.0});
  const LowerBoundParams lp = lower_bound_params(m, g, states);
  const LowerOpParams& started = lp.ops.at({0, 0});
  CHECK(started.release == 0.0);
  CHECK(started.deadline == 0.0);
  // Occupancy window measured from the current position (3 m left).
  CHECK(started.proc_min == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(started.proc_max == doctest::Approx(0.375).epsilon(1e-12));
}

TEST_CASE("upper bound: outside vehicles get the full entry window") {
  const IntersectionModel m = two_vehicle_model();
  const std::vector<VehicleState> states{{0.0, 10.0}, {0.0, 8.0}};
  const OperationGraph g = build_operation_graph(m, {0.0, 0.0});
  const UpperBoundParams up = upper_bound_params(m, g, states);

  const UpperOpParams& head = up.ops.at({0, 0});
  CHECK(head.first);
  CHECK(head.release == 2.0);
  CHECK(head.deadline > head.release);
  CHECK(head.entry_offset == 0.0);
  CHECK(head.exit_offset > 0.0);

  // Offsets grow along the route and exits trail entries.
  const UpperOpParams& tail = up.ops.at({1, 0});
  CHECK(tail.entry_offset > 0.0);
  CHECK(tail.entry_offset < tail.exit_offset);
  CHECK(head.exit_offset < tail.exit_offset);
}

TEST_CASE("upper bound: zero-drag exit offset has the closed form") {
  // With b = 0 the exit offset solves v_min*t + (a*u_max/2)*t^2 = 5.
  const IntersectionModel m = two_vehicle_model(0.0);
  const std::vector<VehicleState> states{{0.0, 10.0}, {0.0, 8.0}};
  const OperationGraph g = build_operation_graph(m, {0.0, 0.0});
  const UpperBoundParams up = upper_bound_params(m, g, states);
  const double expected = (-8.0 + std::sqrt(64.0 + 4.0 * 5.0)) / 2.0;
  CHECK(std::abs(up.ops.at({0, 0}).exit_offset - expected) < 1e-6);
}

TEST_CASE("upper bound: inside vehicles have a collapsed window") {
  const IntersectionModel m = two_vehicle_model();
  // Vehicle 0 between its areas (past 25, before 26).
  const std::vector<VehicleState> states{{25.5, 9.0}, {0.0, 8.0}};
  const OperationGraph g = build_operation_graph(m, {25.5, 0.0});
  const UpperBoundParams up = upper_bound_params(m, g, states);
  const UpperOpParams& head = up.ops.at({1, 0});
  CHECK(head.first);
  CHECK(head.release == head.deadline);
  CHECK(head.release > 0.0);
  CHECK(head.entry_offset == 0.0);
  CHECK(head.exit_offset > 0.0);
}

TEST_CASE("upper bound: started first operation pins entry to zero") {
  const IntersectionModel m = two_vehicle_model();
  const std::vector<VehicleState> states{{21.0, 9.0}, {0.0, 8.0}};
  const OperationGraph g = build_operation_graph(m, {21.0, 0.0});
  const UpperBoundParams up = upper_bound_params(m, g, states);
  const UpperOpParams& head = up.ops.at({0, 0});
  CHECK(head.release == 0.0);
  CHECK(head.deadline == 0.0);
  // Exit offset is the minimum time to clear the remaining 4 m.
  const VehicleSpec& spec = m.vehicle(0);
  CHECK(head.exit_offset ==
        doctest::Approx(min_time_to({21.0, 9.0}, spec, 25.0)).epsilon(1e-12));
}

TEST_CASE("shrunk areas: braking-saturated exit bound is alpha + 4") {
  const IntersectionModel m = two_vehicle_model();
  const BadSetVariant shrunk = shrunk_areas(m);
  const auto& first = shrunk.intervals.at({0, 0});
  CHECK(first.first == 20.0);
  // v_min cruise for (beta-alpha)/v_max = 0.5 s covers 4 m.
  CHECK(first.second == doctest::Approx(24.0).epsilon(1e-12));
}

TEST_CASE("inflated areas: zero-drag first-op exit bound") {
  const IntersectionModel m = two_vehicle_model(0.0);
  const BadSetVariant inflated = inflated_areas(m);
  const auto& first = inflated.intervals.at({0, 0});
  CHECK(first.first == 20.0);
  const double t_star = (-8.0 + std::sqrt(84.0)) / 2.0;
  CHECK(std::abs(first.second - (20.0 + 10.0 * t_star)) < 1e-5);
}

TEST_CASE("degenerate speed range collapses all variants") {
  VehicleSpec s = spec8_10(0, 0.0);
  s.v_min = s.v_max = 9.0;
  const IntersectionModel m({s}, {{0, 0, 20.0, 25.0}, {1, 0, 26.0, 31.0}});
  const BadSetVariant shrunk = shrunk_areas(m);
  const BadSetVariant inflated = inflated_areas(m);
  for (const Placement& p : m.placements()) {
    const auto& lo = shrunk.intervals.at({p.area, p.vehicle});
    const auto& hi = inflated.intervals.at({p.area, p.vehicle});
    CHECK(lo.first == doctest::Approx(p.alpha).epsilon(1e-9));
    CHECK(std::abs(lo.second - p.beta) < 1e-6);
    CHECK(hi.first == doctest::Approx(p.alpha).epsilon(1e-9));
    CHECK(std::abs(hi.second - p.beta) < 1e-6);
  }
}

TEST_CASE("nesting: shrunk inside nominal inside inflated") {
  std::mt19937_64 rng(73);
  for (int it = 0; it < 50; ++it) {
    const auto rnd = random_intersection(rng, 3, 3);
    const BadSetVariant shrunk = shrunk_areas(rnd.model);
    const BadSetVariant inflated = inflated_areas(rnd.model);
    for (const Placement& p : rnd.model.placements()) {
      const auto& lo = shrunk.intervals.at({p.area, p.vehicle});
      const auto& hi = inflated.intervals.at({p.area, p.vehicle});
      if (lo.first < lo.second) {
        CHECK(lo.first >= p.alpha);
        CHECK(lo.second <= p.beta);
      }
      CHECK(hi.first <= p.alpha);
      CHECK(hi.second >= p.beta);
    }
  }
}

TEST_CASE("lower-bound windows are ordered on random instances") {
  std::mt19937_64 rng(79);
  for (int it = 0; it < 50; ++it) {
    const auto rnd = random_intersection(rng, 3, 3);
    const OperationGraph g =
        build_operation_graph(rnd.model, positions_of(rnd.states));
    const LowerBoundParams lp = lower_bound_params(rnd.model, g, rnd.states);
    for (const auto& [op, prm] : lp.ops) {
      CHECK(prm.proc_min <= prm.proc_max + 1e-12);
      if (prm.first) {
        CHECK(prm.release <= prm.deadline + 1e-9);
      } else {
        CHECK(prm.gap_fast <= prm.gap_slow + 1e-12);
      }
    }
  }
}

TEST_CASE("upper-bound offsets are ordered on random instances") {
  std::mt19937_64 rng(83);
  for (int it = 0; it < 50; ++it) {
    const auto rnd = random_intersection(rng, 3, 3);
    const OperationGraph g =
        build_operation_graph(rnd.model, positions_of(rnd.states));
    const UpperBoundParams up = upper_bound_params(rnd.model, g, rnd.states);
    for (const auto& [op, prm] : up.ops) {
      CHECK(prm.entry_offset < prm.exit_offset + 1e-12);
      if (prm.first) CHECK(prm.release <= prm.deadline + 1e-9);
    }
    // Entry offsets grow along each route.
    for (const auto& [prev, next] : g.conjunctive) {
      CHECK(up.ops.at(prev).entry_offset < up.ops.at(next).entry_offset);
    }
  }
}

TEST_CASE("parameters ignore unrelated vehicles") {
  const IntersectionModel m = two_vehicle_model();
  const std::vector<VehicleState> states{{0.0, 10.0}, {0.0, 8.0}};
  const OperationGraph g = build_operation_graph(m, {0.0, 0.0});
  const LowerBoundParams lp = lower_bound_params(m, g, states);
  const UpperBoundParams up = upper_bound_params(m, g, states);

  // Same two vehicles plus an unrelated third on its own area.
  std::vector<VehicleSpec> specs{spec8_10(0), spec8_10(1), spec8_10(2)};
  std::vector<Placement> placements{{0, 0, 20.0, 25.0},
                                    {1, 0, 26.0, 31.0},
                                    {0, 1, 20.0, 25.0},
                                    {7, 2, 20.0, 25.0}};
  const IntersectionModel m3(specs, placements);
  const std::vector<VehicleState> states3{{0.0, 10.0}, {0.0, 8.0}, {0.0, 9.0}};
  const OperationGraph g3 = build_operation_graph(m3, {0.0, 0.0, 0.0});
  const LowerBoundParams lp3 = lower_bound_params(m3, g3, states3);
  const UpperBoundParams up3 = upper_bound_params(m3, g3, states3);

  for (const auto& [op, prm] : lp.ops) {
    const LowerOpParams& other = lp3.ops.at(op);
    CHECK(prm.release == other.release);
    CHECK(prm.deadline == other.deadline);
    CHECK(prm.proc_min == other.proc_min);
    CHECK(prm.gap_slow == other.gap_slow);
  }
  for (const auto& [op, prm] : up.ops) {
    const UpperOpParams& other = up3.ops.at(op);
    CHECK(prm.release == other.release);
    CHECK(prm.deadline == other.deadline);
    CHECK(prm.entry_offset == other.entry_offset);
    CHECK(prm.exit_offset == other.exit_offset);
  }
}

TEST_CASE("first-op lower window equals the dynamics extremal times") {
  std::mt19937_64 rng(89);
  for (int it = 0; it < 30; ++it) {
    const auto rnd = random_intersection(rng, 2, 2, /*allow_inside=*/false);
    const OperationGraph g =
        build_operation_graph(rnd.model, positions_of(rnd.states));
    const LowerBoundParams lp = lower_bound_params(rnd.model, g, rnd.states);
    for (const Operation& op : g.first_ops) {
      const Placement& p = rnd.model.placement(op);
      const VehicleSpec& spec = rnd.model.vehicle(op.vehicle);
      const VehicleState& st = rnd.states[op.vehicle];
      CHECK(lp.ops.at(op).release == min_time_to(st, spec, p.alpha));
      CHECK(lp.ops.at(op).deadline == max_time_to(st, spec, p.alpha));
    }
  }
}
