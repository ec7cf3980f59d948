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

#ifndef SENTINEL_DTP_HPP_
#define SENTINEL_DTP_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace sentinel {

/// times[v] >= times[w] + gap
struct DiffConstraint {
  int v = 0;
  int w = 0;
  double gap = 0.0;
};

/// times[v] >= bound (every variable also carries an implicit >= 0)
struct VarLowerBound {
  int v = 0;
  double bound = 0.0;
};

/// Objective term max(times[v] - due, 0).
struct DueDate {
  int v = 0;
  double due = 0.0;
};

/// Soft deadline between two variables: max(times[v] - times[w] - due, 0).
struct DiffDueDate {
  int v = 0;
  int w = 0;
  double due = 0.0;
};

/**
 * @brief Two alternative constraint bundles, exactly one of which must hold.
 *
 * The label (area, vehicle, vehicle') orders disjunctions and fixes the
 * branching tie-breaks; synthetic instances may use any unique triple.
 */
struct Disjunction {
  std::vector<DiffConstraint> a;
  std::vector<DiffConstraint> b;
  std::array<int, 3> label{0, 0, 0};
};

/**
 * @brief Minimize-maximum-lateness problem over difference constraints with
 * disjunctive alternatives.
 *
 * All variables are non-negative times. The objective is the maximum over
 * due_dates of max(times[v] - due, 0) and over diff_due_dates of
 * max(times[v] - times[w] - due, 0); the constraint set is lower_bounds,
 * diff_constraints, and one orientation per disjunction.
 */
struct DisjunctiveTemporalProblem {
  int var_count = 0;
  std::vector<VarLowerBound> lower_bounds;
  std::vector<DiffConstraint> diff_constraints;
  std::vector<Disjunction> disjunctions;
  std::vector<DueDate> due_dates;
  std::vector<DiffDueDate> diff_due_dates;

  void validate() const;
};

enum class Side : unsigned char { kA, kB };

/// Optimal cost, times, and chosen orientation per disjunction. cost is
/// +infinity when every orientation is infeasible (times empty then).
struct DtpSolution {
  double cost = 0.0;
  std::vector<double> times;
  std::vector<Side> orientation;
};

/// Result of the least-solution computation for a difference system.
struct EarliestTimes {
  bool feasible = true;
  std::vector<double> times;      // componentwise-least solution if feasible
  std::vector<int> cycle_vars;    // variables on a positive cycle otherwise
};

/// Costs within this absolute tolerance count as equal; costs below it count
/// as zero.
inline constexpr double kCostTol = 1e-9;

/**
 * @brief Componentwise-least solution of a difference-constraint system.
 *
 * Longest-path label correction from a virtual source; every variable has an
 * implicit lower bound of 0. Reports a positive cycle (no finite solution)
 * with the variables on it.
 */
EarliestTimes earliest_times(const std::vector<VarLowerBound>& lower_bounds,
                             const std::vector<DiffConstraint>& constraints,
                             int var_count);

/**
 * @brief Exact minimum of the maximum lateness over all orientations.
 *
 * Depth-first branch and bound. The node relaxation drops unresolved
 * disjunctions, which can only lower earliest times, so its cost is a valid
 * lower bound. Branching picks the unresolved disjunction with the largest
 * relaxed overlap (smallest label on ties) and explores side A first.
 * Deterministic: identical input produces an identical solution.
 */
DtpSolution min_max_lateness(const DisjunctiveTemporalProblem& problem);

/**
 * @brief Exhaustive enumeration over all 2^|disjunctions| orientations.
 *
 * Testing oracle with the same contract as min_max_lateness. Throws
 * std::invalid_argument for more than 20 disjunctions.
 */
DtpSolution enumerate_exact(const DisjunctiveTemporalProblem& problem);

/**
 * @brief Any orientation whose earliest times meet every due date.
 *
 * Search with pruning: a node is abandoned as soon as its relaxed earliest
 * times violate a due date beyond kCostTol. Returns nullopt iff
 * min_max_lateness reports positive cost.
 */
std::optional<DtpSolution> feasible_zero_lateness(
    const DisjunctiveTemporalProblem& problem);

/**
 * @brief Text export in LP format with explicit big-M disjunctions, for
 * cross-checking against an external MILP solver.
 *
 * big-M is the sum of absolute constants plus the largest due date plus one.
 */
std::string export_lp(const DisjunctiveTemporalProblem& problem);

}  // namespace sentinel

#endif  // SENTINEL_DTP_HPP_
