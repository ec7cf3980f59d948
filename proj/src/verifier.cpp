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

#include "sentinel/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sentinel {

namespace {

std::vector<double> positions_of(const std::vector<VehicleState>& states) {
  std::vector<double> x(states.size());
  for (std::size_t j = 0; j < states.size(); ++j) x[j] = states[j].pos;
  return x;
}

int op_index(const std::vector<Operation>& ops, const Operation& op) {
  const auto it = std::lower_bound(ops.begin(), ops.end(), op);
  return static_cast<int>(it - ops.begin());
}

}  // namespace

DisjunctiveTemporalProblem build_lower_dtp(const OperationGraph& graph,
                                           const LowerBoundParams& params,
                                           bool soft_chained_deadlines) {
  // Variables: entry t and exit p per active operation, in (area, vehicle)
  // order: t(op) = 2*index, p(op) = 2*index + 1.
  DisjunctiveTemporalProblem dtp;
  const auto& ops = graph.active_ops;
  dtp.var_count = 2 * static_cast<int>(ops.size());
  auto t_var = [&](const Operation& op) { return 2 * op_index(ops, op); };
  auto p_var = [&](const Operation& op) { return 2 * op_index(ops, op) + 1; };

  for (const Operation& op : ops) {
    const LowerOpParams& prm = params.ops.at(op);
    const int t = t_var(op), pv = p_var(op);
    // Occupancy window.
    dtp.diff_constraints.push_back({pv, t, prm.proc_min});
    dtp.diff_constraints.push_back({t, pv, -prm.proc_max});
    if (prm.first) {
      dtp.lower_bounds.push_back({t, prm.release});
      dtp.due_dates.push_back({t, prm.deadline});
    }
  }
  for (const auto& [prev, op] : graph.conjunctive) {
    const LowerOpParams& prm = params.ops.at(op);
    dtp.diff_constraints.push_back({t_var(op), p_var(prev), prm.gap_fast});
    if (soft_chained_deadlines) {
      dtp.diff_due_dates.push_back({t_var(op), p_var(prev), prm.gap_slow});
    } else {
      dtp.diff_constraints.push_back({p_var(prev), t_var(op), -prm.gap_slow});
    }
  }
  for (const auto& [a, b] : graph.disjunctive) {
    Disjunction d;
    d.label = {a.area, a.vehicle, b.vehicle};
    d.a.push_back({t_var(b), p_var(a), 0.0});  // a's vehicle crosses first
    d.b.push_back({t_var(a), p_var(b), 0.0});
    dtp.disjunctions.push_back(std::move(d));
  }
  return dtp;
}

DisjunctiveTemporalProblem build_upper_dtp(const OperationGraph& graph,
                                           const UpperBoundParams& params) {
  // One variable per vehicle with active operations, in vehicle order.
  DisjunctiveTemporalProblem dtp;
  std::vector<int> vehicles;
  for (const Operation& op : graph.first_ops) vehicles.push_back(op.vehicle);
  std::sort(vehicles.begin(), vehicles.end());
  dtp.var_count = static_cast<int>(vehicles.size());
  auto var_of = [&](int vehicle) {
    return static_cast<int>(std::lower_bound(vehicles.begin(), vehicles.end(),
                                             vehicle) -
                            vehicles.begin());
  };

  for (const Operation& op : graph.first_ops) {
    const UpperOpParams& prm = params.ops.at(op);
    dtp.lower_bounds.push_back({var_of(op.vehicle), prm.release});
    dtp.due_dates.push_back({var_of(op.vehicle), prm.deadline});
  }
  for (const auto& [a, b] : graph.disjunctive) {
    const UpperOpParams& pa = params.ops.at(a);
    const UpperOpParams& pb = params.ops.at(b);
    const int va = var_of(a.vehicle), vb = var_of(b.vehicle);
    Disjunction d;
    d.label = {a.area, a.vehicle, b.vehicle};
    // a's vehicle exits before b's vehicle enters, or the reverse.
    d.a.push_back({vb, va, pa.exit_offset - pb.entry_offset});
    d.b.push_back({va, vb, pb.exit_offset - pa.entry_offset});
    dtp.disjunctions.push_back(std::move(d));
  }
  return dtp;
}

LowerSolution solve_lower(const IntersectionModel& model,
                          const std::vector<VehicleState>& states,
                          const SolveOptions& options) {
  const OperationGraph graph =
      build_operation_graph(model, positions_of(states));
  const LowerBoundParams params = lower_bound_params(model, graph, states);
  const DisjunctiveTemporalProblem dtp =
      build_lower_dtp(graph, params, options.soft_chained_deadlines);

  LowerSolution out;
  DtpSolution sol;
  if (options.feasibility_only) {
    auto witness = feasible_zero_lateness(dtp);
    if (!witness.has_value()) {
      out.cost = std::numeric_limits<double>::infinity();
      return out;
    }
    sol = std::move(*witness);
  } else {
    sol = min_max_lateness(dtp);
    if (!std::isfinite(sol.cost)) {
      throw std::logic_error(
          "solve_lower: no feasible orientation (cannot happen: dropping all "
          "disjunctions is feasible)");
    }
  }
  out.cost = sol.cost;
  out.orientation = sol.orientation;
  for (std::size_t k = 0; k < graph.disjunctive.size(); ++k) {
    const auto& [a, b] = graph.disjunctive[k];
    out.labels.push_back({a.area, a.vehicle, b.vehicle});
  }
  for (std::size_t k = 0; k < graph.active_ops.size(); ++k) {
    out.entry[graph.active_ops[k]] = sol.times[2 * k];
    out.exit[graph.active_ops[k]] = sol.times[2 * k + 1];
  }
  return out;
}

UpperSolution solve_upper(const IntersectionModel& model,
                          const std::vector<VehicleState>& states,
                          const SolveOptions& options) {
  const OperationGraph graph =
      build_operation_graph(model, positions_of(states));
  const UpperBoundParams params = upper_bound_params(model, graph, states);
  const DisjunctiveTemporalProblem dtp = build_upper_dtp(graph, params);

  UpperSolution out;
  DtpSolution sol;
  if (options.feasibility_only) {
    auto witness = feasible_zero_lateness(dtp);
    if (!witness.has_value()) {
      out.cost = std::numeric_limits<double>::infinity();
      return out;
    }
    sol = std::move(*witness);
  } else {
    sol = min_max_lateness(dtp);
    if (!std::isfinite(sol.cost)) {
      throw std::logic_error(
          "solve_upper: no feasible orientation (cannot happen: dropping all "
          "disjunctions is feasible)");
    }
  }
  out.cost = sol.cost;
  out.orientation = sol.orientation;
  for (std::size_t k = 0; k < graph.disjunctive.size(); ++k) {
    const auto& [a, b] = graph.disjunctive[k];
    out.labels.push_back({a.area, a.vehicle, b.vehicle});
  }
  std::vector<int> vehicles;
  for (const Operation& op : graph.first_ops) vehicles.push_back(op.vehicle);
  std::sort(vehicles.begin(), vehicles.end());
  for (std::size_t k = 0; k < vehicles.size(); ++k) {
    out.t_first[vehicles[k]] = sol.times[k];
  }
  return out;
}

Verdict classify(double s_lower, double s_upper) {
  if (s_lower < 0.0 || s_upper < 0.0) {
    throw std::invalid_argument("classify: costs must be non-negative");
  }
  if (s_lower > kCostTol && s_upper <= kCostTol) {
    throw std::logic_error(
        "classify: zero upper bound with positive lower bound");
  }
  Verdict v;
  v.s_lower = s_lower;
  v.s_upper = s_upper;
  if (s_upper <= kCostTol) {
    v.classification = SafetyClass::kSafe;
  } else if (s_lower > kCostTol) {
    v.classification = SafetyClass::kUnsafe;
  } else {
    v.classification = SafetyClass::kUndecided;
  }
  return v;
}

Verdict verify(const IntersectionModel& model,
               const std::vector<VehicleState>& states) {
  const LowerSolution lo = solve_lower(model, states);
  const UpperSolution up = solve_upper(model, states);
  return classify(lo.cost, up.cost);
}

namespace {

// Per-vehicle candidate signal with its occupancy sample-index ranges per
// route operation (empty range encoded lo > hi).
struct CandidateOccupancy {
  PiecewiseConstantInput signal;
  std::vector<std::pair<int, int>> inside;  // by route op index
};

std::vector<double> level_grid(const VehicleSpec& spec, int levels) {
  std::vector<double> out;
  if (levels <= 1) {
    out.push_back(spec.u_min);
    return out;
  }
  for (int i = 0; i < levels; ++i) {
    // Endpoints exactly; interior levels evenly spaced.
    if (i == levels - 1) {
      out.push_back(spec.u_max);
    } else {
      out.push_back(spec.u_min + (spec.u_max - spec.u_min) * i / (levels - 1));
    }
  }
  return out;
}

}  // namespace

std::optional<std::vector<PiecewiseConstantInput>> oracle_search(
    const IntersectionModel& model, const std::vector<VehicleState>& states,
    double horizon, int input_levels, double switch_grid,
    const BadSetVariant& variant) {
  const int n = static_cast<int>(model.vehicles().size());
  if (n > 3 || model.placements().size() > 6) {
    throw std::invalid_argument(
        "oracle_search: instance too large (max 3 vehicles, 6 operations)");
  }
  if (!(horizon > 0.0) || !(switch_grid > 0.0) || input_levels < 1) {
    throw std::invalid_argument("oracle_search: bad search parameters");
  }
  for (int j = 0; j < n; ++j) {
    const auto& route = model.route(j);
    if (route.empty()) continue;
    const double exit_bound =
        (route.back().beta - states[j].pos) / model.vehicle(j).v_min;
    if (horizon < exit_bound) {
      throw std::invalid_argument(
          "oracle_search: horizon does not cover route exits at v_min");
    }
  }

  const OperationGraph graph =
      build_operation_graph(model, positions_of(states));

  // Candidate signals per vehicle: constants first, then single-switch pairs
  // in (first level, second level, switch time) order.
  std::vector<std::vector<CandidateOccupancy>> cands(n);
  for (int j = 0; j < n; ++j) {
    const VehicleSpec& spec = model.vehicle(j);
    const std::vector<double> levels = level_grid(spec, input_levels);
    std::vector<PiecewiseConstantInput> signals;
    for (double u : levels) signals.push_back(PiecewiseConstantInput::constant(u));
    for (double ua : levels) {
      for (double ub : levels) {
        if (ua == ub) continue;
        for (double ts = switch_grid; ts < horizon; ts += switch_grid) {
          signals.push_back({{0.0, ts}, {ua, ub}});
        }
      }
    }
    for (auto& sig : signals) {
      CandidateOccupancy c;
      c.signal = std::move(sig);
      const auto traj =
          simulate_signal(states[j], spec, c.signal, horizon, 1e-3);
      for (const Placement& p : model.route(j)) {
        const auto* iv = variant.interval({p.area, j});
        if (iv == nullptr) {
          throw std::invalid_argument("oracle_search: missing variant interval");
        }
        int lo = 1, hi = 0;
        for (int k = 0; k < static_cast<int>(traj.size()); ++k) {
          const double x = traj[k].state.pos;
          if (x > iv->first && x < iv->second) {
            if (lo > hi) lo = k;
            hi = k;
          } else if (x >= iv->second) {
            break;
          }
        }
        c.inside.push_back({lo, hi});
      }
      cands[j].push_back(std::move(c));
    }
  }

  // Route-op index per operation for the occupancy lookup.
  std::map<Operation, int> route_idx;
  for (int j = 0; j < n; ++j) {
    int k = 0;
    for (const Placement& p : model.route(j)) route_idx[{p.area, j}] = k++;
  }

  std::vector<int> pick(n, 0);
  auto tuple_safe = [&]() {
    for (const auto& [a, b] : graph.shared_pairs) {
      const auto& ra =
          cands[a.vehicle][pick[a.vehicle]].inside[route_idx.at(a)];
      const auto& rb =
          cands[b.vehicle][pick[b.vehicle]].inside[route_idx.at(b)];
      if (ra.first > ra.second || rb.first > rb.second) continue;
      if (std::max(ra.first, rb.first) <= std::min(ra.second, rb.second)) {
        return false;
      }
    }
    return true;
  };

  // Lexicographic scan over the joint candidate space.
  while (true) {
    if (tuple_safe()) {
      std::vector<PiecewiseConstantInput> out;
      for (int j = 0; j < n; ++j) out.push_back(cands[j][pick[j]].signal);
      return out;
    }
    int j = n - 1;
    while (j >= 0) {
      if (++pick[j] < static_cast<int>(cands[j].size())) break;
      pick[j] = 0;
      --j;
    }
    if (j < 0) break;
  }
  return std::nullopt;
}

}  // namespace sentinel
