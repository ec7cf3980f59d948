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

#include "sentinel/schedparams.hpp"

#include <algorithm>
#include <stdexcept>

namespace sentinel {

namespace {

// Active operations of vehicle j in route order.
std::vector<Placement> active_route(const IntersectionModel& model,
                                    const OperationGraph& graph, int j) {
  std::vector<Placement> out;
  for (const Placement& p : model.route(j)) {
    if (graph.is_active({p.area, j})) out.push_back(p);
  }
  return out;
}

}  // namespace

LowerBoundParams lower_bound_params(const IntersectionModel& model,
                                    const OperationGraph& graph,
                                    const std::vector<VehicleState>& states) {
  if (states.size() != model.vehicles().size()) {
    throw std::invalid_argument("lower_bound_params: one state per vehicle");
  }
  LowerBoundParams out;
  const int n = static_cast<int>(model.vehicles().size());
  for (int j = 0; j < n; ++j) {
    const VehicleSpec& spec = model.vehicle(j);
    const VehicleState& state = states[j];
    const std::vector<Placement> chain = active_route(model, graph, j);
    for (std::size_t k = 0; k < chain.size(); ++k) {
      const Placement& p = chain[k];
      LowerOpParams op;
      // Occupancy window: remaining span for an operation already underway.
      const double span =
          state.pos > p.alpha ? p.beta - state.pos : p.beta - p.alpha;
      op.proc_min = span / spec.v_max;
      op.proc_max = span / spec.v_min;
      if (k == 0) {
        op.first = true;
        if (p.alpha <= state.pos) {
          op.release = 0.0;
          op.deadline = 0.0;
        } else {
          op.release = min_time_to(state, spec, p.alpha);
          op.deadline = max_time_to(state, spec, p.alpha);
        }
      } else {
        const Placement& prev = chain[k - 1];
        op.gap_fast = (p.alpha - prev.beta) / spec.v_max;
        op.gap_slow = (p.alpha - prev.beta) / spec.v_min;
      }
      out.ops[{p.area, j}] = op;
    }
  }
  return out;
}

UpperBoundParams upper_bound_params(const IntersectionModel& model,
                                    const OperationGraph& graph,
                                    const std::vector<VehicleState>& states) {
  if (states.size() != model.vehicles().size()) {
    throw std::invalid_argument("upper_bound_params: one state per vehicle");
  }
  UpperBoundParams out;
  const int n = static_cast<int>(model.vehicles().size());
  for (int j = 0; j < n; ++j) {
    const VehicleSpec& spec = model.vehicle(j);
    const VehicleState& state = states[j];
    const std::vector<Placement> chain = active_route(model, graph, j);
    if (chain.empty()) continue;
    const double a_min = model.first_area_start(j);
    const Placement& head = chain.front();

    if (state.pos < a_min) {
      // Vehicle outside the intersection; first active operation starts it.
      UpperOpParams first;
      first.first = true;
      first.release = min_time_to(state, spec, a_min);
      first.deadline = max_time_to(state, spec, a_min);
      first.entry_offset = 0.0;
      first.exit_offset = time_to_position({head.alpha, spec.v_min}, spec,
                                           spec.u_max, head.beta);
      out.ops[{head.area, j}] = first;

      if (chain.size() > 1) {
        // Minimum times from the first area start at the extremal speeds,
        // shared sweeps over the rest of the route.
        std::vector<double> alphas, betas;
        for (std::size_t k = 1; k < chain.size(); ++k) {
          alphas.push_back(chain[k].alpha);
          betas.push_back(chain[k].beta);
        }
        const std::vector<double> entry = times_to_positions(
            {a_min, spec.v_max}, spec, spec.u_max, alphas);
        const std::vector<double> exit = times_to_positions(
            {a_min, spec.v_min}, spec, spec.u_max, betas);
        for (std::size_t k = 1; k < chain.size(); ++k) {
          UpperOpParams op;
          op.entry_offset = entry[k - 1];
          op.exit_offset = exit[k - 1];
          out.ops[{chain[k].area, j}] = op;
        }
      }
    } else {
      // Vehicle inside the intersection: entry window collapses and all
      // offsets are minimum times from the current state.
      double release;
      if (head.alpha <= state.pos) {
        release = 0.0;
      } else {
        release = min_time_to(state, spec, head.alpha);
      }
      std::vector<double> targets;
      for (const Placement& p : chain) {
        if (p.alpha > state.pos) targets.push_back(p.alpha);
        targets.push_back(p.beta);
      }
      const std::vector<double> reach =
          times_to_positions(state, spec, spec.u_max, targets);
      std::size_t idx = 0;
      for (std::size_t k = 0; k < chain.size(); ++k) {
        UpperOpParams op;
        double entry_time = 0.0;
        if (chain[k].alpha > state.pos) entry_time = reach[idx++];
        const double exit_time = reach[idx++];
        if (k == 0) {
          op.first = true;
          op.release = release;
          op.deadline = release;
          op.entry_offset = 0.0;
        } else {
          op.entry_offset = entry_time - release;
        }
        op.exit_offset = exit_time - release;
        out.ops[{chain[k].area, j}] = op;
      }
    }
  }
  return out;
}

namespace {

double position_after(const VehicleState& start, const VehicleSpec& spec,
                      double u, double duration) {
  if (duration <= 0.0) return start.pos;
  return step(start, spec, u, duration).pos;
}

}  // namespace

BadSetVariant shrunk_areas(const IntersectionModel& model) {
  BadSetVariant v;
  v.tag = BadSetTag::kShrunk;
  const int n = static_cast<int>(model.vehicles().size());
  for (int j = 0; j < n; ++j) {
    const VehicleSpec& spec = model.vehicle(j);
    const auto& route = model.route(j);
    if (route.empty()) continue;
    const double a_min = route.front().alpha;
    for (std::size_t k = 0; k < route.size(); ++k) {
      const Placement& p = route[k];
      double lo, hi;
      if (k == 0) {
        lo = p.alpha;
        hi = position_after({p.alpha, spec.v_min}, spec, spec.u_min,
                            (p.beta - p.alpha) / spec.v_max);
      } else {
        lo = position_after({a_min, spec.v_max}, spec, spec.u_max,
                            (p.alpha - a_min) / spec.v_min);
        hi = position_after({a_min, spec.v_min}, spec, spec.u_min,
                            (p.beta - a_min) / spec.v_max);
      }
      // Numerical dust must not leak outside the nominal interval.
      lo = std::max(lo, p.alpha);
      hi = std::min(hi, p.beta);
      v.intervals[{p.area, j}] = {lo, hi};
    }
  }
  return v;
}

BadSetVariant inflated_areas(const IntersectionModel& model) {
  BadSetVariant v;
  v.tag = BadSetTag::kInflated;
  const int n = static_cast<int>(model.vehicles().size());
  for (int j = 0; j < n; ++j) {
    const VehicleSpec& spec = model.vehicle(j);
    const auto& route = model.route(j);
    if (route.empty()) continue;
    const double a_min = route.front().alpha;
    for (std::size_t k = 0; k < route.size(); ++k) {
      const Placement& p = route[k];
      double lo, hi;
      if (k == 0) {
        lo = p.alpha;
        const double exit_min = time_to_position({p.alpha, spec.v_min}, spec,
                                                 spec.u_max, p.beta);
        hi = position_after({p.alpha, spec.v_max}, spec, spec.u_max, exit_min);
      } else {
        const double entry_min = time_to_position({a_min, spec.v_max}, spec,
                                                  spec.u_max, p.alpha);
        lo = position_after({a_min, spec.v_min}, spec, spec.u_min, entry_min);
        const double exit_min = time_to_position({a_min, spec.v_min}, spec,
                                                 spec.u_max, p.beta);
        hi = position_after({a_min, spec.v_max}, spec, spec.u_max, exit_min);
      }
      lo = std::min(lo, p.alpha);
      hi = std::max(hi, p.beta);
      v.intervals[{p.area, j}] = {lo, hi};
    }
  }
  return v;
}

}  // namespace sentinel
