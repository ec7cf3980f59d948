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

#include "sentinel/scenario.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sentinel {

using nlohmann::json;

double DesiredPolicy::value_at(double t) const {
  double u = table.front().second;
  for (const auto& [time, value] : table) {
    if (time <= t) {
      u = value;
    } else {
      break;
    }
  }
  return u;
}

IntersectionModel Scenario::model() const {
  return IntersectionModel(vehicles, placements);
}

void Scenario::validate() const {
  const IntersectionModel m = model();
  if (initial.size() != vehicles.size() || desired.size() != vehicles.size()) {
    throw ScenarioParseError(
        "scenario: initial states and desired profiles must match vehicles");
  }
  if (!(tau > 0.0)) {
    throw ScenarioParseError("scenario: sim.tau must be positive");
  }
  if (steps < 0) {
    throw ScenarioParseError("scenario: sim.steps must be non-negative");
  }
  for (std::size_t j = 0; j < vehicles.size(); ++j) {
    const VehicleSpec& spec = vehicles[j];
    if (initial[j].speed < spec.v_min || initial[j].speed > spec.v_max) {
      throw ScenarioParseError("scenario: initial speed outside bounds");
    }
    if (desired[j].table.empty()) {
      throw ScenarioParseError("scenario: empty desired profile");
    }
    for (const auto& [time, value] : desired[j].table) {
      if (value < spec.u_min || value > spec.u_max) {
        throw ScenarioParseError("scenario: desired input outside bounds");
      }
      static_cast<void>(time);
    }
  }
  for (const Placement& p : placements) {
    bool known = false;
    for (int a : areas) known = known || a == p.area;
    if (!known) {
      throw ScenarioParseError("scenario: placement references unknown area");
    }
  }
  static_cast<void>(m);
}

bool operator==(const Scenario& a, const Scenario& b) {
  auto spec_eq = [](const VehicleSpec& x, const VehicleSpec& y) {
    return x.id == y.id && x.accel_gain == y.accel_gain &&
           x.drag_coeff == y.drag_coeff && x.u_min == y.u_min &&
           x.u_max == y.u_max && x.v_min == y.v_min && x.v_max == y.v_max;
  };
  auto placement_eq = [](const Placement& x, const Placement& y) {
    return x.area == y.area && x.vehicle == y.vehicle && x.alpha == y.alpha &&
           x.beta == y.beta;
  };
  if (a.vehicles.size() != b.vehicles.size() || a.areas != b.areas ||
      a.placements.size() != b.placements.size() || a.initial != b.initial ||
      a.tau != b.tau || a.steps != b.steps || a.desired != b.desired) {
    return false;
  }
  for (std::size_t k = 0; k < a.vehicles.size(); ++k) {
    if (!spec_eq(a.vehicles[k], b.vehicles[k])) return false;
  }
  for (std::size_t k = 0; k < a.placements.size(); ++k) {
    if (!placement_eq(a.placements[k], b.placements[k])) return false;
  }
  return true;
}

namespace {

const json& field(const json& j, const char* name, const std::string& where) {
  const auto it = j.find(name);
  if (it == j.end()) {
    throw ScenarioParseError("scenario: missing field '" + where + name + "'");
  }
  return *it;
}

double num_field(const json& j, const char* name, const std::string& where) {
  const json& f = field(j, name, where);
  if (!f.is_number()) {
    throw ScenarioParseError("scenario: field '" + where + name +
                             "' must be a number");
  }
  return f.get<double>();
}

int int_field(const json& j, const char* name, const std::string& where) {
  const json& f = field(j, name, where);
  if (!f.is_number_integer()) {
    throw ScenarioParseError("scenario: field '" + where + name +
                             "' must be an integer");
  }
  return f.get<int>();
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ScenarioParseError(std::string("scenario: ") + e.what());
  }

  Scenario s;
  const json& vehicles = field(j, "vehicles", "");
  if (!vehicles.is_array() || vehicles.empty()) {
    throw ScenarioParseError("scenario: 'vehicles' must be a non-empty array");
  }
  int idx = 0;
  for (const json& v : vehicles) {
    const std::string where = "vehicles[" + std::to_string(idx) + "].";
    VehicleSpec spec;
    spec.id = int_field(v, "id", where);
    spec.accel_gain = num_field(v, "a", where);
    spec.drag_coeff = num_field(v, "b", where);
    spec.u_min = num_field(v, "u_min", where);
    spec.u_max = num_field(v, "u_max", where);
    spec.v_min = num_field(v, "v_min", where);
    spec.v_max = num_field(v, "v_max", where);
    s.vehicles.push_back(spec);
    s.initial.push_back(
        {num_field(v, "x0", where), num_field(v, "v0", where)});
    ++idx;
  }

  for (const json& a : field(j, "areas", "")) {
    if (!a.is_number_integer()) {
      throw ScenarioParseError("scenario: 'areas' entries must be integers");
    }
    s.areas.push_back(a.get<int>());
  }

  idx = 0;
  for (const json& p : field(j, "placements", "")) {
    const std::string where = "placements[" + std::to_string(idx) + "].";
    Placement pl;
    pl.area = int_field(p, "area", where);
    pl.vehicle = int_field(p, "vehicle", where);
    pl.alpha = num_field(p, "alpha", where);
    pl.beta = num_field(p, "beta", where);
    s.placements.push_back(pl);
    ++idx;
  }

  const json& sim = field(j, "sim", "");
  s.tau = num_field(sim, "tau", "sim.");
  s.steps = int_field(sim, "steps", "sim.");
  const json& desired = field(sim, "desired", "sim.");
  if (!desired.is_array() || desired.size() != s.vehicles.size()) {
    throw ScenarioParseError(
        "scenario: 'sim.desired' must list one profile per vehicle");
  }
  idx = 0;
  for (const json& d : desired) {
    DesiredPolicy policy;
    if (d.is_number()) {
      policy = DesiredPolicy::constant(d.get<double>());
    } else if (d.is_array()) {
      for (const json& row : d) {
        if (!row.is_array() || row.size() != 2 || !row[0].is_number() ||
            !row[1].is_number()) {
          throw ScenarioParseError("scenario: 'sim.desired[" +
                                   std::to_string(idx) +
                                   "]' rows must be [time, value]");
        }
        policy.table.push_back({row[0].get<double>(), row[1].get<double>()});
      }
      if (policy.table.empty() || policy.table.front().first != 0.0) {
        throw ScenarioParseError("scenario: 'sim.desired[" +
                                 std::to_string(idx) +
                                 "]' must start at time 0");
      }
    } else {
      throw ScenarioParseError("scenario: 'sim.desired[" +
                               std::to_string(idx) +
                               "]' must be a number or a table");
    }
    s.desired.push_back(std::move(policy));
    ++idx;
  }

  s.validate();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ScenarioParseError("scenario: cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["vehicles"] = json::array();
  for (std::size_t k = 0; k < s.vehicles.size(); ++k) {
    const VehicleSpec& v = s.vehicles[k];
    j["vehicles"].push_back({{"id", v.id},
                             {"x0", s.initial[k].pos},
                             {"v0", s.initial[k].speed},
                             {"v_min", v.v_min},
                             {"v_max", v.v_max},
                             {"u_min", v.u_min},
                             {"u_max", v.u_max},
                             {"a", v.accel_gain},
                             {"b", v.drag_coeff}});
  }
  j["areas"] = s.areas;
  j["placements"] = json::array();
  for (const Placement& p : s.placements) {
    j["placements"].push_back({{"area", p.area},
                               {"vehicle", p.vehicle},
                               {"alpha", p.alpha},
                               {"beta", p.beta}});
  }
  json desired = json::array();
  for (const DesiredPolicy& d : s.desired) {
    if (d.table.size() == 1 && d.table.front().first == 0.0) {
      desired.push_back(d.table.front().second);
    } else {
      json table = json::array();
      for (const auto& [t, u] : d.table) table.push_back({t, u});
      desired.push_back(table);
    }
  }
  j["sim"] = {{"tau", s.tau}, {"steps", s.steps}, {"desired", desired}};
  return j.dump(2) + "\n";
}

namespace {

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write '" + tmp + "'");
    }
    out << content;
    if (!out.good()) {
      throw std::runtime_error("short write to '" + tmp + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

void append_float(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  out += buf;
}

}  // namespace

void save_scenario(const Scenario& scenario, const std::string& path) {
  atomic_write(path, scenario_to_json(scenario));
}

std::string log_to_csv(const TrajectoryLog& log) {
  std::string out =
      "step,time,vehicle,pos,speed,u_applied,overridden,s_lower,s_upper,"
      "in_bad,in_shrunk,in_inflated\n";
  for (const LogRow& r : log.rows) {
    out += std::to_string(r.step);
    out += ',';
    append_float(out, r.time);
    out += ',';
    out += std::to_string(r.vehicle);
    out += ',';
    append_float(out, r.pos);
    out += ',';
    append_float(out, r.speed);
    out += ',';
    append_float(out, r.u_applied);
    out += ',';
    out += r.overridden ? '1' : '0';
    out += ',';
    append_float(out, r.s_lower);
    out += ',';
    append_float(out, r.s_upper);
    out += ',';
    out += r.in_bad ? '1' : '0';
    out += ',';
    out += r.in_shrunk ? '1' : '0';
    out += ',';
    out += r.in_inflated ? '1' : '0';
    out += '\n';
  }
  return out;
}

void write_log(const TrajectoryLog& log, const std::string& path) {
  atomic_write(path, log_to_csv(log));
}

void write_text(const std::string& content, const std::string& path) {
  atomic_write(path, content);
}

Scenario three_vehicle_scenario() {
  Scenario s;
  for (int j = 0; j < 3; ++j) {
    VehicleSpec spec;
    spec.id = j;
    spec.accel_gain = 1.0;
    spec.drag_coeff = 0.005;
    spec.u_min = -2.0;
    spec.u_max = 2.0;
    spec.v_min = 8.0;
    spec.v_max = 10.0;
    s.vehicles.push_back(spec);
  }
  s.areas = {1, 2, 3};
  // Crossing routes: each vehicle's first area starts at 20 m, areas are 5 m
  // long with a 1 m gap before the next entry.
  s.placements = {
      {1, 0, 20.0, 25.0}, {3, 0, 26.0, 31.0},  // vehicle 0: areas 1 then 3
      {2, 1, 20.0, 25.0}, {1, 1, 26.0, 31.0},  // vehicle 1: areas 2 then 1
      {3, 2, 20.0, 25.0}, {2, 2, 26.0, 31.0},  // vehicle 2: areas 3 then 2
  };
  s.initial = {{0.0, 10.0}, {0.0, 8.0}, {0.0, 8.0}};
  s.tau = 0.1;
  s.steps = 100;
  s.desired = {DesiredPolicy::constant(-2.0), DesiredPolicy::constant(-2.0),
               DesiredPolicy::constant(2.0)};
  return s;
}

Scenario twenty_vehicle_scenario() {
  Scenario s;
  const double x0[20] = {0, -2, 5, -5, 0, 5, 0, 1, 5, 4,
                         0, -2, 5, 5,  0, 5, -2, 0, -2, 0};
  for (int j = 0; j < 20; ++j) {
    VehicleSpec spec;
    spec.id = j;
    spec.accel_gain = 1.0;
    spec.drag_coeff = 0.005;
    spec.u_min = -2.0;
    spec.u_max = 2.0;
    spec.v_min = 1.0;
    spec.v_max = 10.0;
    s.vehicles.push_back(spec);
    s.initial.push_back({x0[j], 5.0});
    s.desired.push_back(DesiredPolicy::constant(2.0));
  }
  for (int a = 0; a < 48; ++a) s.areas.push_back(a);
  // Each route crosses six areas starting at 20 m with 6 m spacing; the
  // stride-11 area assignment spreads sharing across all routes (48 areas,
  // 120 operations, each area on 2-4 routes).
  for (int j = 0; j < 20; ++j) {
    for (int slot = 0; slot < 6; ++slot) {
      const int area = (11 * j + slot) % 48;
      const double alpha = 20.0 + 6.0 * slot;
      s.placements.push_back({area, j, alpha, alpha + 5.0});
    }
  }
  s.tau = 0.1;
  s.steps = 600;
  return s;
}

}  // namespace sentinel
