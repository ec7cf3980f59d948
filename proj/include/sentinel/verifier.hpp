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

#ifndef SENTINEL_VERIFIER_HPP_
#define SENTINEL_VERIFIER_HPP_

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "sentinel/dtp.hpp"
#include "sentinel/dynamics.hpp"
#include "sentinel/intersection.hpp"
#include "sentinel/schedparams.hpp"

namespace sentinel {

enum class SafetyClass { kSafe, kUndecided, kUnsafe };

/// Three-way safety verdict from the two bound problems.
struct Verdict {
  double s_lower = 0.0;
  double s_upper = 0.0;
  SafetyClass classification = SafetyClass::kSafe;
};

struct SolveOptions {
  /// Stop at any zero-lateness orientation instead of proving the optimum;
  /// a positive optimum is then reported as +infinity.
  bool feasibility_only = false;
  /// Lower problem only: treat the chained deadlines of non-first operations
  /// as lateness terms instead of hard constraints.
  bool soft_chained_deadlines = false;
};

/// Solution of the lower-bound problem.
struct LowerSolution {
  double cost = 0.0;
  std::map<Operation, double> entry;  // t
  std::map<Operation, double> exit;   // p
  std::vector<std::array<int, 3>> labels;  // disjunction (area, j, j')
  std::vector<Side> orientation;
  bool zero() const { return cost <= kCostTol; }
};

/// Solution of the upper-bound problem.
struct UpperSolution {
  double cost = 0.0;
  std::map<int, double> t_first;  // first-area entry time by vehicle
  std::vector<std::array<int, 3>> labels;
  std::vector<Side> orientation;
  bool zero() const { return cost <= kCostTol; }
};

/// Lower-bound problem (first-order dynamics relaxation): entry/exit
/// variables per active operation, minimize maximum lateness.
LowerSolution solve_lower(const IntersectionModel& model,
                          const std::vector<VehicleState>& states,
                          const SolveOptions& options = {});

/// Upper-bound problem (restricted inputs inside the intersection): one
/// first-entry variable per vehicle, minimize maximum lateness.
UpperSolution solve_upper(const IntersectionModel& model,
                          const std::vector<VehicleState>& states,
                          const SolveOptions& options = {});

/**
 * @brief Three-way classification of the two bound costs.
 *
 * Safe iff s_upper is zero; Unsafe iff s_lower is positive; Undecided
 * otherwise. A zero upper bound with a positive lower bound is impossible
 * and throws std::logic_error.
 */
Verdict classify(double s_lower, double s_upper);

/// Solves both bounds (exact mode) and classifies.
Verdict verify(const IntersectionModel& model,
               const std::vector<VehicleState>& states);

/// The DTP instances behind the two solvers, for LP export and debugging.
DisjunctiveTemporalProblem build_lower_dtp(const OperationGraph& graph,
                                           const LowerBoundParams& params,
                                           bool soft_chained_deadlines = false);
DisjunctiveTemporalProblem build_upper_dtp(const OperationGraph& graph,
                                           const UpperBoundParams& params);

/// Default search grid of the trajectory oracle.
inline constexpr int kOracleLevels = 3;
inline constexpr double kOracleSwitchGrid = 0.25;  // [s]

/**
 * @brief Desk-scale exhaustive search for a collision-free input signal.
 *
 * Enumerates per-vehicle signals that are constant or switch once between
 * grid levels at switch-grid times, and returns the first joint signal whose
 * trajectory (sampled at 1e-3 s) never enters the given bad-set variant.
 * Finding a signal proves one exists; exhausting the grid does not prove
 * none does.
 *
 * Guards: at most 3 vehicles and 6 operations; horizon must cover every
 * route exit at v_min. Violations throw std::invalid_argument.
 */
std::optional<std::vector<PiecewiseConstantInput>> oracle_search(
    const IntersectionModel& model, const std::vector<VehicleState>& states,
    double horizon, int input_levels, double switch_grid,
    const BadSetVariant& variant);

}  // namespace sentinel

#endif  // SENTINEL_VERIFIER_HPP_
