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

#include "sentinel/supervisor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "sentinel/schedparams.hpp"

namespace sentinel {

namespace {

constexpr double kArrivalTol = 1e-6;   // [s]
constexpr double kScheduleSlack = 1e-6;

// States of the constant-u_min trajectory at integrator-grid times, up to
// the crossing of `target`. at(t) reproduces step(start, u_min, t) exactly.
class BrakingSweep {
 public:
  BrakingSweep(const VehicleState& start, const VehicleSpec& spec,
               double target)
      : spec_(spec) {
    grid_.push_back(start);
    crossing_ = max_time_to(start, spec, target);
    VehicleState s = start;
    double t = 0.0;
    while (t + kIntegratorStep < crossing_) {
      s = step(s, spec_, spec_.u_min, kIntegratorStep);
      grid_.push_back(s);
      t += kIntegratorStep;
    }
  }

  double crossing() const { return crossing_; }

  VehicleState at(double t) const {
    const auto k = std::min<std::size_t>(
        static_cast<std::size_t>(t / kIntegratorStep), grid_.size() - 1);
    const double rest = t - static_cast<double>(k) * kIntegratorStep;
    if (rest <= 1e-12) return grid_[k];
    return step(grid_[k], spec_, spec_.u_min, rest);
  }

 private:
  const VehicleSpec& spec_;
  std::vector<VehicleState> grid_;
  double crossing_ = 0.0;
};

}  // namespace

std::vector<PiecewiseConstantInput> sigma(
    const std::vector<VehicleState>& states, const IntersectionModel& model,
    const std::map<int, double>& t_first) {
  const int n = static_cast<int>(model.vehicles().size());
  std::vector<PiecewiseConstantInput> out;
  out.reserve(n);
  for (int j = 0; j < n; ++j) {
    const VehicleSpec& spec = model.vehicle(j);

    // First active operation; vehicles past their route just floor it.
    const Placement* head = nullptr;
    for (const Placement& p : model.route(j)) {
      if (states[j].pos < p.beta) {
        head = &p;
        break;
      }
    }
    if (head == nullptr || states[j].pos >= head->alpha) {
      out.push_back(PiecewiseConstantInput::constant(spec.u_max));
      continue;
    }

    const auto it = t_first.find(j);
    if (it == t_first.end()) {
      throw std::invalid_argument("sigma: schedule missing a vehicle");
    }
    const double target_time = it->second;
    const double arrive_earliest = min_time_to(states[j], spec, head->alpha);
    if (target_time < arrive_earliest - kArrivalTol) {
      throw std::invalid_argument("sigma: scheduled time below release");
    }
    if (target_time <= arrive_earliest + kArrivalTol) {
      out.push_back(PiecewiseConstantInput::constant(spec.u_max));
      continue;
    }

    BrakingSweep braking(states[j], spec, head->alpha);
    if (target_time > braking.crossing() + kArrivalTol) {
      throw std::invalid_argument("sigma: scheduled time above deadline");
    }

    // Arrival time under "u_min until ts, then u_max" grows monotonically
    // with ts; bisect the switch time.
    auto arrival = [&](double ts) {
      return ts + min_time_to(braking.at(ts), spec, head->alpha);
    };
    double lo = 0.0, hi = braking.crossing();
    double ts = hi;
    for (int iter = 0; iter < 80; ++iter) {
      ts = 0.5 * (lo + hi);
      const double t = arrival(ts);
      if (std::abs(t - target_time) <= 0.5 * kArrivalTol) break;
      if (t < target_time) {
        lo = ts;
      } else {
        hi = ts;
      }
      if (hi - lo <= 1e-13) {
        ts = 0.5 * (lo + hi);
        break;
      }
    }
    if (ts <= 1e-12) {
      out.push_back(PiecewiseConstantInput::constant(spec.u_max));
    } else {
      out.push_back({{0.0, ts}, {spec.u_min, spec.u_max}});
    }
  }
  return out;
}

Supervisor::Supervisor(IntersectionModel model, Config config)
    : model_(std::move(model)), config_(config) {
  if (!(config_.tau > 0.0)) {
    throw std::invalid_argument("Supervisor: requires tau > 0");
  }
  if (!(config_.path_check_grid > 0.0)) {
    throw std::invalid_argument("Supervisor: requires path_check_grid > 0");
  }
  pair_graph_ = build_operation_graph(
      model_, std::vector<double>(model_.vehicles().size(), 0.0));
  nominal_ = nominal_variant(model_);
}

std::vector<VehicleState> Supervisor::predict(
    const std::vector<VehicleState>& measured,
    const std::vector<PiecewiseConstantInput>& inputs) const {
  std::vector<VehicleState> out(measured.size());
  for (std::size_t j = 0; j < measured.size(); ++j) {
    const auto traj = simulate_signal(measured[j], model_.vehicle(j),
                                      inputs[j], config_.tau, config_.tau);
    out[j] = traj.back().state;
  }
  return out;
}

// The upper-bound certificate speaks about the future from the predicted
// state; the drivers' path across the current period is checked directly.
bool Supervisor::path_enters_bad_set(
    const std::vector<VehicleState>& measured,
    const std::vector<PiecewiseConstantInput>& inputs) const {
  const std::size_t n = measured.size();
  std::vector<std::vector<TrajectorySample>> trajs(n);
  for (std::size_t j = 0; j < n; ++j) {
    trajs[j] = simulate_signal(measured[j], model_.vehicle(j), inputs[j],
                               config_.tau, config_.path_check_grid);
  }
  std::vector<double> x(n);
  for (std::size_t k = 0; k < trajs[0].size(); ++k) {
    for (std::size_t j = 0; j < n; ++j) x[j] = trajs[j][k].state.pos;
    if (in_bad_set(pair_graph_, nominal_, x)) return true;
  }
  return false;
}

void Supervisor::verify_shifted_schedule(
    const std::vector<VehicleState>& safe_states,
    const UpperSolution& previous) const {
  // Non-blocking argument: the previous schedule shifted by tau must stay
  // feasible at the safe-predicted state. Vehicles already inside the
  // intersection have a collapsed window, so their shifted entry is the
  // pinned release time.
  std::vector<double> x(safe_states.size());
  for (std::size_t j = 0; j < safe_states.size(); ++j) x[j] = safe_states[j].pos;
  const OperationGraph graph = build_operation_graph(model_, x);
  const UpperBoundParams params =
      upper_bound_params(model_, graph, safe_states);

  std::map<int, double> shifted;
  for (const Operation& op : graph.first_ops) {
    const UpperOpParams& prm = params.ops.at(op);
    const int j = op.vehicle;
    if (safe_states[j].pos >= model_.first_area_start(j)) {
      shifted[j] = prm.release;
      continue;
    }
    // Outside the intersection no operation completes, so the first op (and
    // the previous schedule entry) must persist.
    const auto it = previous.t_first.find(j);
    if (it == previous.t_first.end()) {
      throw std::logic_error("supervisor: shifted schedule lost a vehicle");
    }
    const double t = it->second - config_.tau;
    if (t < prm.release - kScheduleSlack || t > prm.deadline + kScheduleSlack) {
      throw std::logic_error(
          "supervisor: shifted schedule violates the entry window");
    }
    shifted[j] = t;
  }

  std::map<std::array<int, 3>, Side> side_of;
  for (std::size_t k = 0; k < previous.labels.size(); ++k) {
    side_of[previous.labels[k]] = previous.orientation[k];
  }
  for (const auto& [a, b] : graph.disjunctive) {
    const auto it = side_of.find({a.area, a.vehicle, b.vehicle});
    if (it == side_of.end()) continue;
    const UpperOpParams& pa = params.ops.at(a);
    const UpperOpParams& pb = params.ops.at(b);
    const double ta = shifted.at(a.vehicle), tb = shifted.at(b.vehicle);
    const bool ok =
        it->second == Side::kA
            ? ta + pa.exit_offset <= tb + pb.entry_offset + kScheduleSlack
            : tb + pb.exit_offset <= ta + pa.entry_offset + kScheduleSlack;
    if (!ok) {
      throw std::logic_error(
          "supervisor: shifted schedule violates a disjunction");
    }
  }
}

SupervisorStep Supervisor::step(const std::vector<VehicleState>& measured,
                                const std::vector<double>& desired_inputs) {
  if (measured.size() != model_.vehicles().size() ||
      desired_inputs.size() != measured.size()) {
    throw std::invalid_argument("Supervisor::step: one entry per vehicle");
  }
  std::vector<PiecewiseConstantInput> desired;
  desired.reserve(desired_inputs.size());
  for (std::size_t j = 0; j < desired_inputs.size(); ++j) {
    const VehicleSpec& spec = model_.vehicle(j);
    if (desired_inputs[j] < spec.u_min || desired_inputs[j] > spec.u_max) {
      throw std::invalid_argument("Supervisor::step: desired input out of bounds");
    }
    desired.push_back(PiecewiseConstantInput::constant(desired_inputs[j]));
  }

  SolveOptions opts;
  opts.feasibility_only = config_.feasibility_mode;

  const std::vector<VehicleState> predicted = predict(measured, desired);
  UpperSolution desired_check;
  if (path_enters_bad_set(measured, desired)) {
    desired_check.cost = std::numeric_limits<double>::infinity();
  } else {
    desired_check = solve_upper(model_, predicted, opts);
  }

  SupervisorStep result;
  if (desired_check.zero()) {
    safe_signal_ = sigma(predicted, model_, desired_check.t_first);
    last_schedule_ = desired_check;
    initialized_ = true;
    result.applied = std::move(desired);
    result.overridden = false;
  } else {
    if (!initialized_) {
      throw SupervisorInitError(
          "supervisor: initial desired prediction is not certifiably safe");
    }
    const std::vector<VehicleState> safe_states =
        predict(measured, safe_signal_);
    const UpperSolution safe_check = solve_upper(model_, safe_states, opts);
    if (!safe_check.zero()) {
      throw std::logic_error(
          "supervisor: safe-branch verification reported positive cost");
    }
    if (config_.check_shifted_schedule) {
      verify_shifted_schedule(safe_states, last_schedule_);
    }
    result.applied = safe_signal_;
    result.overridden = true;
    safe_signal_ = sigma(safe_states, model_, safe_check.t_first);
    last_schedule_ = safe_check;
  }

  // Keep only the [0, tau) restriction for the next period.
  for (auto& sig : safe_signal_) {
    while (sig.breakpoints.size() > 1 &&
           sig.breakpoints.back() >= config_.tau) {
      sig.breakpoints.pop_back();
      sig.values.pop_back();
    }
  }
  ++step_index_;
  return result;
}

}  // namespace sentinel
