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

#include "sentinel/intersection.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace sentinel {

IntersectionModel::IntersectionModel(std::vector<VehicleSpec> vehicles,
                                     std::vector<Placement> placements)
    : vehicles_(std::move(vehicles)) {
  if (vehicles_.empty()) {
    throw std::invalid_argument("IntersectionModel: no vehicles");
  }
  for (std::size_t j = 0; j < vehicles_.size(); ++j) {
    if (vehicles_[j].id != static_cast<int>(j)) {
      throw std::invalid_argument(
          "IntersectionModel: vehicle ids must be 0..n-1 in order");
    }
    vehicles_[j].validate();
  }

  routes_.resize(vehicles_.size());
  std::set<int> areas;
  for (const Placement& p : placements) {
    if (!(p.alpha < p.beta)) {
      throw std::invalid_argument("IntersectionModel: requires alpha < beta");
    }
    if (p.vehicle < 0 || p.vehicle >= static_cast<int>(vehicles_.size())) {
      throw std::invalid_argument("IntersectionModel: unknown vehicle id");
    }
    routes_[p.vehicle].push_back(p);
    areas.insert(p.area);
  }
  area_count_ = static_cast<int>(areas.size());

  for (auto& route : routes_) {
    std::sort(route.begin(), route.end(),
              [](const Placement& a, const Placement& b) {
                return a.alpha < b.alpha;
              });
    for (std::size_t k = 0; k + 1 < route.size(); ++k) {
      if (!(route[k].beta <= route[k + 1].alpha)) {
        throw std::invalid_argument(
            "IntersectionModel: route placements overlap");
      }
      if (route[k].area == route[k + 1].area) {
        throw std::invalid_argument(
            "IntersectionModel: area repeated on one route");
      }
    }
    std::set<int> seen;
    for (const Placement& p : route) {
      if (!seen.insert(p.area).second) {
        throw std::invalid_argument(
            "IntersectionModel: area repeated on one route");
      }
    }
  }

  // Canonical placement order: by (area, vehicle).
  for (const auto& route : routes_) {
    placements_.insert(placements_.end(), route.begin(), route.end());
  }
  std::sort(placements_.begin(), placements_.end(),
            [](const Placement& a, const Placement& b) {
              return std::pair(a.area, a.vehicle) < std::pair(b.area, b.vehicle);
            });
  for (std::size_t k = 0; k < placements_.size(); ++k) {
    by_op_[{placements_[k].area, placements_[k].vehicle}] = k;
  }
}

const VehicleSpec& IntersectionModel::vehicle(int j) const {
  if (j < 0 || j >= static_cast<int>(vehicles_.size())) {
    throw std::invalid_argument("IntersectionModel: unknown vehicle id");
  }
  return vehicles_[j];
}

const std::vector<Placement>& IntersectionModel::route(int j) const {
  if (j < 0 || j >= static_cast<int>(routes_.size())) {
    throw std::invalid_argument("IntersectionModel: unknown vehicle id");
  }
  return routes_[j];
}

const Placement& IntersectionModel::placement(const Operation& op) const {
  auto it = by_op_.find({op.area, op.vehicle});
  if (it == by_op_.end()) {
    throw std::invalid_argument("IntersectionModel: unknown operation");
  }
  return placements_[it->second];
}

bool IntersectionModel::has_placement(const Operation& op) const {
  return by_op_.count({op.area, op.vehicle}) > 0;
}

double IntersectionModel::first_area_start(int j) const {
  const auto& r = route(j);
  if (r.empty()) {
    throw std::invalid_argument(
        "IntersectionModel: vehicle has no conflict areas");
  }
  return r.front().alpha;
}

bool OperationGraph::is_active(const Operation& op) const {
  return std::binary_search(active_ops.begin(), active_ops.end(), op);
}

bool OperationGraph::is_first(const Operation& op) const {
  return std::binary_search(first_ops.begin(), first_ops.end(), op);
}

const Operation* OperationGraph::first_of(int vehicle) const {
  for (const Operation& op : first_ops) {
    if (op.vehicle == vehicle) return &op;
  }
  return nullptr;
}

const Operation* OperationGraph::predecessor(const Operation& op) const {
  for (const auto& [from, to] : conjunctive) {
    if (to == op) return &from;
  }
  return nullptr;
}

OperationGraph build_operation_graph(const IntersectionModel& model,
                                     const std::vector<double>& positions) {
  if (positions.size() != model.vehicles().size()) {
    throw std::invalid_argument(
        "build_operation_graph: one position per vehicle required");
  }
  OperationGraph g;
  for (const Placement& p : model.placements()) {
    g.all_ops.push_back({p.area, p.vehicle});
    if (positions[p.vehicle] < p.beta) {
      g.active_ops.push_back({p.area, p.vehicle});
    }
  }

  const int n = static_cast<int>(model.vehicles().size());
  for (int j = 0; j < n; ++j) {
    std::vector<Operation> chain;
    for (const Placement& p : model.route(j)) {
      if (positions[j] < p.beta) chain.push_back({p.area, j});
    }
    if (chain.empty()) continue;
    g.first_ops.push_back(chain.front());
    g.last_ops.push_back(chain.back());
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      g.conjunctive.push_back({chain[k], chain[k + 1]});
    }
  }
  std::sort(g.first_ops.begin(), g.first_ops.end());
  std::sort(g.last_ops.begin(), g.last_ops.end());

  // Disjunctive pairs: same area, distinct vehicles, both ops in the set.
  auto pair_up = [](const std::vector<Operation>& ops) {
    std::vector<std::pair<Operation, Operation>> pairs;
    for (std::size_t x = 0; x < ops.size(); ++x) {
      for (std::size_t y = x + 1; y < ops.size(); ++y) {
        if (ops[x].area == ops[y].area && ops[x].vehicle != ops[y].vehicle) {
          pairs.push_back({ops[x], ops[y]});
        }
      }
    }
    return pairs;
  };
  g.disjunctive = pair_up(g.active_ops);
  g.shared_pairs = pair_up(g.all_ops);
  return g;
}

const std::pair<double, double>* BadSetVariant::interval(
    const Operation& op) const {
  auto it = intervals.find({op.area, op.vehicle});
  return it == intervals.end() ? nullptr : &it->second;
}

BadSetVariant nominal_variant(const IntersectionModel& model) {
  BadSetVariant v;
  v.tag = BadSetTag::kNominal;
  for (const Placement& p : model.placements()) {
    v.intervals[{p.area, p.vehicle}] = {p.alpha, p.beta};
  }
  return v;
}

bool in_bad_set(const OperationGraph& graph, const BadSetVariant& variant,
                const std::vector<double>& positions) {
  for (const auto& [a, b] : graph.shared_pairs) {
    const auto* ia = variant.interval(a);
    const auto* ib = variant.interval(b);
    if (ia == nullptr || ib == nullptr) {
      throw std::invalid_argument("in_bad_set: missing variant interval");
    }
    const double xa = positions.at(a.vehicle);
    const double xb = positions.at(b.vehicle);
    if (xa > ia->first && xa < ia->second && xb > ib->first &&
        xb < ib->second) {
      return true;
    }
  }
  return false;
}

}  // namespace sentinel
