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

#include "sentinel/dtp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sentinel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kViolEps = 1e-12;  // constraint slack below this is "satisfied"

void check_var(int v, int var_count) {
  if (v < 0 || v >= var_count) {
    throw std::invalid_argument("DTP: variable index out of range");
  }
}

}  // namespace

void DisjunctiveTemporalProblem::validate() const {
  if (var_count < 0) {
    throw std::invalid_argument("DTP: negative var_count");
  }
  for (const auto& lb : lower_bounds) check_var(lb.v, var_count);
  for (const auto& c : diff_constraints) {
    check_var(c.v, var_count);
    check_var(c.w, var_count);
  }
  for (const auto& d : disjunctions) {
    for (const auto& c : d.a) {
      check_var(c.v, var_count);
      check_var(c.w, var_count);
    }
    for (const auto& c : d.b) {
      check_var(c.v, var_count);
      check_var(c.w, var_count);
    }
  }
  for (const auto& d : due_dates) {
    check_var(d.v, var_count);
    if (!std::isfinite(d.due)) {
      throw std::invalid_argument("DTP: due dates must be finite");
    }
  }
  for (const auto& d : diff_due_dates) {
    check_var(d.v, var_count);
    check_var(d.w, var_count);
    if (!std::isfinite(d.due)) {
      throw std::invalid_argument("DTP: due dates must be finite");
    }
  }
}

EarliestTimes earliest_times(const std::vector<VarLowerBound>& lower_bounds,
                             const std::vector<DiffConstraint>& constraints,
                             int var_count) {
  EarliestTimes res;
  res.times.assign(var_count, 0.0);
  std::vector<int> pred(var_count, -1);

  for (const auto& lb : lower_bounds) {
    res.times[lb.v] = std::max(res.times[lb.v], lb.bound);
  }
  for (const auto& c : constraints) {
    if (c.v == c.w && c.gap > 0.0) {
      res.feasible = false;
      res.times.clear();
      res.cycle_vars = {c.v};
      return res;
    }
  }

  // Bellman-Ford longest-path relaxation. A label can only change var_count
  // times along simple paths, so a full pass that still relaxes after
  // var_count rounds certifies a positive cycle.
  int last_relaxed = -1;
  for (int round = 0; round <= var_count; ++round) {
    last_relaxed = -1;
    for (const auto& c : constraints) {
      if (c.v == c.w) continue;
      const double candidate = res.times[c.w] + c.gap;
      if (candidate > res.times[c.v]) {
        res.times[c.v] = candidate;
        pred[c.v] = c.w;
        last_relaxed = c.v;
      }
    }
    if (last_relaxed == -1) return res;
  }

  // Walk predecessors from the last relaxed variable into the cycle.
  int cur = last_relaxed;
  for (int i = 0; i < var_count && pred[cur] != -1; ++i) cur = pred[cur];
  std::vector<int> cycle;
  int walk = cur;
  do {
    cycle.push_back(walk);
    walk = pred[walk];
  } while (walk != -1 && walk != cur &&
           static_cast<int>(cycle.size()) <= var_count);
  std::sort(cycle.begin(), cycle.end());
  cycle.erase(std::unique(cycle.begin(), cycle.end()), cycle.end());
  res.feasible = false;
  res.times.clear();
  res.cycle_vars = std::move(cycle);
  return res;
}

namespace {

// Objective value at fixed times.
double cost_at(const DisjunctiveTemporalProblem& p,
               const std::vector<double>& times) {
  double cost = 0.0;
  for (const auto& d : p.due_dates) {
    cost = std::max(cost, times[d.v] - d.due);
  }
  for (const auto& d : p.diff_due_dates) {
    cost = std::max(cost, times[d.v] - times[d.w] - d.due);
  }
  return std::max(cost, 0.0);
}

// Feasibility of {constraints} + {deadlines slackened by s}, encoded with a
// virtual origin variable pinned at zero. Used only in soft-deadline mode.
bool deadlines_feasible(const DisjunctiveTemporalProblem& p,
                        const std::vector<VarLowerBound>& lbs,
                        const std::vector<DiffConstraint>& constraints,
                        double s, std::vector<double>* witness) {
  const int origin = p.var_count;
  std::vector<DiffConstraint> all = constraints;
  for (const auto& lb : lbs) {
    all.push_back({lb.v, origin, lb.bound});
  }
  for (const auto& d : p.due_dates) {
    all.push_back({origin, d.v, -(d.due + s)});  // times[v] <= due + s
  }
  for (const auto& d : p.diff_due_dates) {
    all.push_back({d.w, d.v, -(d.due + s)});  // times[v] - times[w] <= due + s
  }
  EarliestTimes res = earliest_times({}, all, p.var_count + 1);
  if (!res.feasible || res.times[origin] > kViolEps) return false;
  if (witness != nullptr) {
    witness->assign(res.times.begin(), res.times.begin() + p.var_count);
  }
  return true;
}

struct NodeEval {
  bool feasible = false;
  double cost = kInf;
  std::vector<double> times;
};

// Relaxed optimum of a fixed constraint set. With only plain due dates the
// componentwise-least solution is optimal because the objective is monotone
// non-decreasing in every variable. Soft difference deadlines trade off
// against each other, so their minimal slack is found by bisection on the
// slackened-deadline feasibility problem.
NodeEval evaluate(const DisjunctiveTemporalProblem& p,
                  const std::vector<DiffConstraint>& active) {
  NodeEval out;
  EarliestTimes least = earliest_times(p.lower_bounds, active, p.var_count);
  if (!least.feasible) return out;
  out.feasible = true;
  if (p.diff_due_dates.empty()) {
    out.times = std::move(least.times);
    out.cost = cost_at(p, out.times);
    return out;
  }

  double hi = cost_at(p, least.times);
  if (hi <= kViolEps) {
    out.times = std::move(least.times);
    out.cost = 0.0;
    return out;
  }
  double lo = 0.0;
  std::vector<double> witness = least.times;
  deadlines_feasible(p, p.lower_bounds, active, hi, &witness);
  for (int it = 0; it < 60 && hi - lo > 0.25 * kCostTol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (deadlines_feasible(p, p.lower_bounds, active, mid, &witness)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.cost = hi;
  out.times = std::move(witness);
  return out;
}

double bundle_violation(const std::vector<DiffConstraint>& bundle,
                        const std::vector<double>& times) {
  double v = 0.0;
  for (const auto& c : bundle) {
    v = std::max(v, times[c.w] + c.gap - times[c.v]);
  }
  return v;
}

class BranchAndBound {
 public:
  enum class Mode { kExact, kZeroFeasibility };

  BranchAndBound(const DisjunctiveTemporalProblem& p, Mode mode)
      : p_(p), mode_(mode) {
    active_ = p.diff_constraints;
    state_.assign(p.disjunctions.size(), -1);
  }

  DtpSolution run() {
    dfs();
    if (!best_found_) {
      return {kInf, {}, {}};
    }
    return best_;
  }

 private:
  void dfs() {
    if (done()) return;
    NodeEval eval = evaluate(p_, active_);
    if (!eval.feasible) return;
    if (mode_ == Mode::kZeroFeasibility && eval.cost > kCostTol) return;
    if (best_found_ && eval.cost >= best_.cost) return;

    // Branch on the unresolved disjunction with the largest overlap at the
    // relaxed times; smallest index wins ties. When every unresolved
    // disjunction already has a satisfied side, close the node with those
    // sides: adding satisfied constraints leaves the times (and thus the
    // bound) unchanged.
    int pick = -1;
    double pick_overlap = kViolEps;
    for (std::size_t k = 0; k < p_.disjunctions.size(); ++k) {
      if (state_[k] != -1) continue;
      const double va = bundle_violation(p_.disjunctions[k].a, eval.times);
      const double vb = bundle_violation(p_.disjunctions[k].b, eval.times);
      const double overlap = std::min(va, vb);
      if (overlap > pick_overlap) {
        pick_overlap = overlap;
        pick = static_cast<int>(k);
      }
    }

    if (pick == -1) {
      close_node(eval);
      return;
    }

    branch(pick, Side::kA);
    if (done()) return;
    branch(pick, Side::kB);
  }

  void branch(int k, Side side) {
    const auto& bundle =
        side == Side::kA ? p_.disjunctions[k].a : p_.disjunctions[k].b;
    const std::size_t mark = active_.size();
    active_.insert(active_.end(), bundle.begin(), bundle.end());
    state_[k] = side == Side::kA ? 0 : 1;
    dfs();
    active_.resize(mark);
    state_[k] = -1;
  }

  void close_node(const NodeEval& relaxed) {
    const std::size_t mark = active_.size();
    std::vector<int> undo;
    for (std::size_t k = 0; k < p_.disjunctions.size(); ++k) {
      if (state_[k] != -1) continue;
      const double va = bundle_violation(p_.disjunctions[k].a, relaxed.times);
      state_[k] = va <= kViolEps ? 0 : 1;
      undo.push_back(static_cast<int>(k));
      const auto& bundle =
          state_[k] == 0 ? p_.disjunctions[k].a : p_.disjunctions[k].b;
      active_.insert(active_.end(), bundle.begin(), bundle.end());
    }
    NodeEval leaf = evaluate(p_, active_);
    const bool acceptable =
        leaf.feasible &&
        (mode_ != Mode::kZeroFeasibility || leaf.cost <= kCostTol);
    if (acceptable && (!best_found_ || leaf.cost < best_.cost)) {
      best_found_ = true;
      best_.cost = leaf.cost;
      best_.times = leaf.times;
      best_.orientation.assign(state_.size(), Side::kA);
      for (std::size_t k = 0; k < state_.size(); ++k) {
        best_.orientation[k] = state_[k] == 1 ? Side::kB : Side::kA;
      }
    }
    for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
      state_[*it] = -1;
    }
    active_.resize(mark);
  }

  bool done() const { return best_found_ && best_.cost <= kCostTol; }

  const DisjunctiveTemporalProblem& p_;
  Mode mode_;
  std::vector<DiffConstraint> active_;
  std::vector<int> state_;  // -1 unresolved, 0 side A, 1 side B
  bool best_found_ = false;
  DtpSolution best_;
};

}  // namespace

DtpSolution min_max_lateness(const DisjunctiveTemporalProblem& problem) {
  problem.validate();
  return BranchAndBound(problem, BranchAndBound::Mode::kExact).run();
}

DtpSolution enumerate_exact(const DisjunctiveTemporalProblem& problem) {
  problem.validate();
  if (problem.disjunctions.size() > 20) {
    throw std::invalid_argument("enumerate_exact: more than 20 disjunctions");
  }
  DtpSolution best{kInf, {}, {}};
  bool found = false;
  const std::size_t n = problem.disjunctions.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<DiffConstraint> active = problem.diff_constraints;
    std::vector<Side> orientation(n, Side::kA);
    for (std::size_t k = 0; k < n; ++k) {
      const bool b = (mask >> k) & 1;
      orientation[k] = b ? Side::kB : Side::kA;
      const auto& bundle =
          b ? problem.disjunctions[k].b : problem.disjunctions[k].a;
      active.insert(active.end(), bundle.begin(), bundle.end());
    }
    NodeEval eval = evaluate(problem, active);
    if (eval.feasible && (!found || eval.cost < best.cost)) {
      found = true;
      best.cost = eval.cost;
      best.times = eval.times;
      best.orientation = orientation;
    }
  }
  return best;
}

std::optional<DtpSolution> feasible_zero_lateness(
    const DisjunctiveTemporalProblem& problem) {
  problem.validate();
  DtpSolution sol =
      BranchAndBound(problem, BranchAndBound::Mode::kZeroFeasibility).run();
  if (std::isfinite(sol.cost) && sol.cost <= kCostTol) {
    return sol;
  }
  return std::nullopt;
}

std::string export_lp(const DisjunctiveTemporalProblem& problem) {
  problem.validate();
  double big_m = 1.0;
  for (const auto& lb : problem.lower_bounds) big_m += std::abs(lb.bound);
  for (const auto& c : problem.diff_constraints) big_m += std::abs(c.gap);
  for (const auto& d : problem.disjunctions) {
    for (const auto& c : d.a) big_m += std::abs(c.gap);
    for (const auto& c : d.b) big_m += std::abs(c.gap);
  }
  double max_due = 0.0;
  for (const auto& d : problem.due_dates) max_due = std::max(max_due, d.due);
  for (const auto& d : problem.diff_due_dates) {
    max_due = std::max(max_due, d.due);
  }
  big_m += max_due;

  std::ostringstream lp;
  lp.precision(17);
  lp << "\\ disjunctive temporal problem, big-M = " << big_m << "\n";
  lp << "Minimize\n obj: s\nSubject To\n";
  int row = 0;
  for (const auto& lb : problem.lower_bounds) {
    lp << " lb" << row++ << ": x" << lb.v << " >= " << lb.bound << "\n";
  }
  row = 0;
  for (const auto& c : problem.diff_constraints) {
    lp << " dc" << row++ << ": x" << c.v << " - x" << c.w << " >= " << c.gap
       << "\n";
  }
  row = 0;
  for (const auto& d : problem.due_dates) {
    lp << " dd" << row++ << ": s - x" << d.v << " >= " << -d.due << "\n";
  }
  row = 0;
  for (const auto& d : problem.diff_due_dates) {
    lp << " sdd" << row++ << ": s - x" << d.v << " + x" << d.w
       << " >= " << -d.due << "\n";
  }
  for (std::size_t k = 0; k < problem.disjunctions.size(); ++k) {
    // binary bk = 0 selects side A, bk = 1 selects side B.
    int sub = 0;
    for (const auto& c : problem.disjunctions[k].a) {
      lp << " dj" << k << "a" << sub++ << ": x" << c.v << " - x" << c.w
         << " + " << big_m << " b" << k << " >= " << c.gap << "\n";
    }
    sub = 0;
    for (const auto& c : problem.disjunctions[k].b) {
      lp << " dj" << k << "b" << sub++ << ": x" << c.v << " - x" << c.w
         << " - " << big_m << " b" << k << " >= " << c.gap - big_m << "\n";
    }
  }
  lp << "Binary\n";
  for (std::size_t k = 0; k < problem.disjunctions.size(); ++k) {
    lp << " b" << k << "\n";
  }
  lp << "End\n";
  return lp.str();
}

}  // namespace sentinel
