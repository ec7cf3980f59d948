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

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "sentinel/simharness.hpp"
#include "support.hpp"

using namespace sentinel;

namespace {

std::string fixture(const char* name) {
  return std::string(SENTINEL_FIXTURE_DIR) + "/" + name;
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("fixture files match the built-in scenarios") {
  CHECK(load_scenario(fixture("three_vehicle.json")) == three_vehicle_scenario());
  CHECK(load_scenario(fixture("twenty_vehicle.json")) == twenty_vehicle_scenario());
}

TEST_CASE("the 3-vehicle fixture has the documented shape") {
  const Scenario s = load_scenario(fixture("three_vehicle.json"));
  CHECK(s.vehicles.size() == 3);
  CHECK(s.areas.size() == 3);
  CHECK(s.placements.size() == 6);
  CHECK(s.initial[0].speed == 10.0);
  CHECK(s.initial[1].speed == 8.0);
  for (const VehicleSpec& v : s.vehicles) {
    CHECK(v.v_min == 8.0);
    CHECK(v.v_max == 10.0);
  }
  CHECK(s.model().first_area_start(0) == 20.0);
}

TEST_CASE("the 20-vehicle fixture has the documented shape") {
  const Scenario s = load_scenario(fixture("twenty_vehicle.json"));
  CHECK(s.vehicles.size() == 20);
  CHECK(s.areas.size() == 48);
  CHECK(s.placements.size() == 120);
  for (int j = 0; j < 20; ++j) {
    CHECK(s.model().route(j).size() == 6);
    CHECK(s.model().first_area_start(j) == 20.0);
  }
}

TEST_CASE("scenario round trip is bit-exact") {
  const Scenario s = three_vehicle_scenario();
  const std::string path = temp_path("sentinel_roundtrip.json");
  save_scenario(s, path);
  CHECK(load_scenario(path) == s);
  std::filesystem::remove(path);

  // Also via string, including a table-valued desired profile.
  Scenario t = s;
  t.desired[1] = DesiredPolicy{{{0.0, -2.0}, {1.5, 0.25}}};
  CHECK(parse_scenario(scenario_to_json(t)) == t);
}

TEST_CASE("scenario parser names the missing field") {
  const std::string good = scenario_to_json(three_vehicle_scenario());
  CHECK_THROWS_WITH_AS(parse_scenario("{}"),
                       doctest::Contains("missing field 'vehicles'"),
                       ScenarioParseError);
  std::string no_vmin = good;
  const auto pos = no_vmin.find("\"v_min\"");
  no_vmin.replace(pos, 7, "\"vmin\"");
  CHECK_THROWS_WITH_AS(parse_scenario(no_vmin),
                       doctest::Contains("v_min"), ScenarioParseError);
  CHECK_THROWS_AS(parse_scenario("not json"), ScenarioParseError);
}

TEST_CASE("CSV log format") {
  TrajectoryLog log;
  log.rows.push_back({0, 0.0, 1, 1.25, 9.5, -2.0, true, 0.0, 0.123456789, false,
                      false, true});
  const std::string csv = log_to_csv(log);
  CHECK(csv ==
        "step,time,vehicle,pos,speed,u_applied,overridden,s_lower,s_upper,"
        "in_bad,in_shrunk,in_inflated\n"
        "0,0,1,1.25,9.5,-2,1,0,0.123456789,0,0,1\n");
}

TEST_CASE("zero-length horizon produces an empty log") {
  Scenario s = three_vehicle_scenario();
  s.steps = 0;
  const RunResult res = run_open_loop(s);
  CHECK(res.log.rows.empty());
  const std::string path = temp_path("sentinel_empty.csv");
  write_log(res.log, path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line ==
        "step,time,vehicle,pos,speed,u_applied,overridden,s_lower,s_upper,"
        "in_bad,in_shrunk,in_inflated");
  CHECK_FALSE(std::getline(in, line));
  std::filesystem::remove(path);
}

TEST_CASE("open loop on the reference fixture: bounds stay ordered") {
  Scenario s = three_vehicle_scenario();
  s.steps = 45;
  const RunResult res = run_open_loop(s);
  bool upper_went_positive = false;
  for (const LogRow& row : res.log.rows) {
    if (row.s_upper <= kCostTol) {
      CHECK(row.s_lower <= kCostTol);
    } else {
      upper_went_positive = true;
    }
  }
  // Sustained braking by two vehicles and full throttle by the third drives
  // the upper bound positive.
  CHECK(upper_went_positive);
}

TEST_CASE("open loop on a collision course enters the bad set") {
  VehicleSpec a, b;
  a.id = 0;
  b.id = 1;
  a.drag_coeff = b.drag_coeff = 0.005;
  a.u_min = b.u_min = -2.0;
  a.u_max = b.u_max = 2.0;
  a.v_min = b.v_min = 9.0;
  a.v_max = b.v_max = 9.0;
  Scenario s;
  s.vehicles = {a, b};
  s.areas = {0};
  s.placements = {{0, 0, 20.0, 25.0}, {0, 1, 20.0, 25.0}};
  s.initial = {{0.0, 9.0}, {0.0, 9.0}};
  s.tau = 0.1;
  s.steps = 40;
  s.desired = {DesiredPolicy::constant(0.0), DesiredPolicy::constant(0.0)};
  HarnessOptions opt;
  opt.log_costs = false;
  const RunResult res = run_open_loop(s, opt);
  CHECK(res.bad_samples > 0);
  bool flagged = false;
  for (const LogRow& row : res.log.rows) flagged = flagged || row.in_bad;
  CHECK(flagged);
}

TEST_CASE("closed loop on the reference fixture overrides and stays safe") {
  Scenario s = three_vehicle_scenario();
  HarnessOptions opt;
  opt.log_costs = false;
  const RunResult res = run_closed_loop(s, opt);
  CHECK(res.override_count >= 1);
  CHECK(res.bad_samples == 0);
  CHECK(res.shrunk_samples == 0);
  CHECK(res.inflated_samples >= 1);
}

TEST_CASE("open and closed loop coincide until the first override") {
  Scenario s = three_vehicle_scenario();
  s.steps = 60;
  HarnessOptions opt;
  opt.log_costs = false;
  const RunResult open = run_open_loop(s, opt);
  const RunResult closed = run_closed_loop(s, opt);
  int first_override_step = s.steps;
  for (const LogRow& row : closed.log.rows) {
    if (row.overridden) {
      first_override_step = row.step;
      break;
    }
  }
  REQUIRE(first_override_step < s.steps);  // the supervisor does act
  for (std::size_t k = 0; k < open.log.rows.size(); ++k) {
    const LogRow& a = open.log.rows[k];
    const LogRow& b = closed.log.rows[k];
    if (a.step > first_override_step) break;
    CHECK(a.pos == b.pos);
    CHECK(a.speed == b.speed);
    if (a.step < first_override_step) CHECK(a.u_applied == b.u_applied);
  }
}

TEST_CASE("log determinism: identical scenario, identical bytes") {
  Scenario s = three_vehicle_scenario();
  s.steps = 30;
  HarnessOptions opt;
  opt.log_costs = true;
  const std::string a = log_to_csv(run_closed_loop(s, opt).log);
  const std::string b = log_to_csv(run_closed_loop(s, opt).log);
  CHECK(a == b);
}

TEST_CASE("harness rejects a subsample grid that does not divide tau") {
  Scenario s = three_vehicle_scenario();
  s.steps = 1;
  HarnessOptions opt;
  opt.subsample = 0.03;
  CHECK_THROWS_AS(run_open_loop(s, opt), std::invalid_argument);
}
