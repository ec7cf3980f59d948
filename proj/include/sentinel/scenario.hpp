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

#ifndef SENTINEL_SCENARIO_HPP_
#define SENTINEL_SCENARIO_HPP_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sentinel/dynamics.hpp"
#include "sentinel/intersection.hpp"

namespace sentinel {

/// Desired-input profile of one vehicle: value_at(t) is the last table entry
/// at or before t. A single entry at t=0 is a constant profile.
struct DesiredPolicy {
  std::vector<std::pair<double, double>> table;  // (time, input)

  static DesiredPolicy constant(double u) { return {{{0.0, u}}}; }
  double value_at(double t) const;

  friend bool operator==(const DesiredPolicy&, const DesiredPolicy&) = default;
};

/// A complete simulation setup: geometry, initial states, and run settings.
struct Scenario {
  std::vector<VehicleSpec> vehicles;
  std::vector<int> areas;
  std::vector<Placement> placements;
  std::vector<VehicleState> initial;
  double tau = 0.1;
  int steps = 0;
  std::vector<DesiredPolicy> desired;

  IntersectionModel model() const;
  void validate() const;
};

bool operator==(const Scenario& a, const Scenario& b);

/// Thrown by the scenario parser; the message names the offending field.
class ScenarioParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);
std::string scenario_to_json(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::string& path);

/// One row of the trajectory log (one per vehicle per step).
struct LogRow {
  int step = 0;
  double time = 0.0;
  int vehicle = 0;
  double pos = 0.0;
  double speed = 0.0;
  double u_applied = 0.0;
  bool overridden = false;
  double s_lower = 0.0;
  double s_upper = 0.0;
  bool in_bad = false;
  bool in_shrunk = false;
  bool in_inflated = false;
};

struct TrajectoryLog {
  std::vector<LogRow> rows;
};

/// CSV with the mandatory header row; floats with 9 significant digits.
std::string log_to_csv(const TrajectoryLog& log);

/// Atomic write: the file appears complete or not at all.
void write_log(const TrajectoryLog& log, const std::string& path);

/// Atomic plain-text write (temp file + rename).
void write_text(const std::string& content, const std::string& path);

/// Reference 3-vehicle fixture: three areas, pairwise crossing routes.
Scenario three_vehicle_scenario();

/// Representative 20-vehicle fixture: 48 areas, 120 operations.
Scenario twenty_vehicle_scenario();

}  // namespace sentinel

#endif  // SENTINEL_SCENARIO_HPP_
