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

#ifndef SENTINEL_INTERSECTION_HPP_
#define SENTINEL_INTERSECTION_HPP_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sentinel/dynamics.hpp"

namespace sentinel {

/// Vehicle j crossing conflict area i ("job on machine" in scheduling terms).
struct Operation {
  int area = 0;
  int vehicle = 0;

  friend auto operator<=>(const Operation&, const Operation&) = default;
};

/// Location of conflict area `area` on the path of `vehicle`: the open
/// interval (alpha, beta).
struct Placement {
  int area = 0;
  int vehicle = 0;
  double alpha = 0.0;  // [m]
  double beta = 0.0;   // [m]
};

/**
 * @brief Intersection geometry: vehicles on fixed paths crossing a set of
 * conflict areas.
 *
 * Placements along one vehicle's route must be disjoint and ordered by
 * increasing alpha; every area id must appear on at least one route.
 */
class IntersectionModel {
 public:
  IntersectionModel(std::vector<VehicleSpec> vehicles,
                    std::vector<Placement> placements);

  const std::vector<VehicleSpec>& vehicles() const { return vehicles_; }
  const VehicleSpec& vehicle(int j) const;

  /// All placements, route by route in alpha order.
  const std::vector<Placement>& placements() const { return placements_; }

  /// Placements of vehicle j in route order (increasing alpha).
  const std::vector<Placement>& route(int j) const;

  const Placement& placement(const Operation& op) const;
  bool has_placement(const Operation& op) const;

  /// Start of the first conflict area on vehicle j's route (alpha_{j,min}).
  /// Throws std::invalid_argument for a vehicle without any placement.
  double first_area_start(int j) const;

  int area_count() const { return area_count_; }

 private:
  std::vector<VehicleSpec> vehicles_;
  std::vector<Placement> placements_;
  std::vector<std::vector<Placement>> routes_;   // by vehicle id
  std::map<std::pair<int, int>, std::size_t> by_op_;
  int area_count_ = 0;
};

/**
 * @brief Operation graph of a scheduling instance.
 *
 * all_ops is the full operation set; active_ops keeps the operations still to
 * be processed given the vehicle positions (x_j < beta_ij). first_ops and
 * last_ops hold one operation per vehicle that has any active operation.
 * conjunctive links consecutive active operations of one vehicle; disjunctive
 * pairs active operations of distinct vehicles on a shared area. shared_pairs
 * lists the same pairing over all_ops and backs the bad-set predicates.
 * All sets are sorted by (area, vehicle) for reproducible iteration.
 */
struct OperationGraph {
  std::vector<Operation> all_ops;
  std::vector<Operation> active_ops;
  std::vector<Operation> first_ops;
  std::vector<Operation> last_ops;
  std::vector<std::pair<Operation, Operation>> conjunctive;
  std::vector<std::pair<Operation, Operation>> disjunctive;
  std::vector<std::pair<Operation, Operation>> shared_pairs;

  bool is_active(const Operation& op) const;
  bool is_first(const Operation& op) const;
  /// First active operation of vehicle j, if any.
  const Operation* first_of(int vehicle) const;
  /// Predecessor of `op` in the conjunctive chain, if any.
  const Operation* predecessor(const Operation& op) const;
};

/// Builds the operation graph for the given positions (one entry per
/// vehicle, indexed by vehicle id).
OperationGraph build_operation_graph(const IntersectionModel& model,
                                     const std::vector<double>& positions);

/// Which geometry a bad-set membership test runs against.
enum class BadSetTag { kNominal, kShrunk, kInflated };

/**
 * @brief Per-operation intervals of one bad-set geometry.
 *
 * An empty interval (lo >= hi) never contains a position. Nominal intervals
 * are the placements themselves; shrunk and inflated variants come from the
 * schedule-parameter module.
 */
struct BadSetVariant {
  BadSetTag tag = BadSetTag::kNominal;
  std::map<std::pair<int, int>, std::pair<double, double>> intervals;

  const std::pair<double, double>* interval(const Operation& op) const;
};

/// Nominal variant: intervals equal to the placements.
BadSetVariant nominal_variant(const IntersectionModel& model);

/**
 * @brief True iff two vehicles sit strictly inside the same conflict area.
 *
 * Evaluated over the shared-area pairs of the full operation set; interval
 * boundaries do not count as inside.
 */
bool in_bad_set(const OperationGraph& graph, const BadSetVariant& variant,
                const std::vector<double>& positions);

}  // namespace sentinel

#endif  // SENTINEL_INTERSECTION_HPP_
