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

#ifndef SENTINEL_SCHEDPARAMS_HPP_
#define SENTINEL_SCHEDPARAMS_HPP_

#include <map>
#include <vector>

#include "sentinel/dynamics.hpp"
#include "sentinel/intersection.hpp"

namespace sentinel {

/**
 * @brief Per-operation inputs of the lower-bound problem.
 *
 * First operations carry absolute release/deadline times computed from the
 * full dynamics. Non-first operations carry the travel-gap offsets relative
 * to the predecessor's exit time. Every operation carries its occupancy
 * window [proc_min, proc_max] under the first-order speed bounds; for an
 * operation already underway the window is measured from the current
 * position rather than the area entry.
 */
struct LowerOpParams {
  bool first = false;
  double release = 0.0;   // r [s], first ops
  double deadline = 0.0;  // d [s], first ops
  double gap_fast = 0.0;  // (alpha - beta_prev)/v_max [s], non-first ops
  double gap_slow = 0.0;  // (alpha - beta_prev)/v_min [s], non-first ops
  double proc_min = 0.0;  // [s]
  double proc_max = 0.0;  // [s]
};

struct LowerBoundParams {
  std::map<Operation, LowerOpParams> ops;
};

/**
 * @brief Per-operation inputs of the upper-bound problem.
 *
 * Entry and exit bounds are affine in the vehicle's first-entry variable:
 * entry_bound = T_first + entry_offset, exit_bound = T_first + exit_offset.
 * First operations additionally carry the absolute window [release,
 * deadline] for T_first; the two coincide for vehicles already past their
 * first area start.
 */
struct UpperOpParams {
  bool first = false;
  double release = 0.0;       // Rbar [s], first ops
  double deadline = 0.0;      // Dbar [s], first ops
  double entry_offset = 0.0;  // c^T [s]
  double exit_offset = 0.0;   // c^P [s]
};

struct UpperBoundParams {
  std::map<Operation, UpperOpParams> ops;
};

/// Lower-bound problem parameters for the active operations of `graph`.
LowerBoundParams lower_bound_params(const IntersectionModel& model,
                                    const OperationGraph& graph,
                                    const std::vector<VehicleState>& states);

/// Upper-bound problem parameters for the active operations of `graph`.
UpperBoundParams upper_bound_params(const IntersectionModel& model,
                                    const OperationGraph& graph,
                                    const std::vector<VehicleState>& states);

/**
 * @brief Shrunk conflict areas: the positions certainly swept while the
 * scheduled occupancy window elapses.
 *
 * State-independent (defined over the full operation set). An interval may
 * be empty, in which case it never reports membership.
 */
BadSetVariant shrunk_areas(const IntersectionModel& model);

/// Inflated conflict areas: all positions possibly occupied during the
/// extremal-input occupancy window. Contains the nominal area per operation.
BadSetVariant inflated_areas(const IntersectionModel& model);

}  // namespace sentinel

#endif  // SENTINEL_SCHEDPARAMS_HPP_
