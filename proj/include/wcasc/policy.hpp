#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wcasc/model.hpp"

namespace wcasc {

inline constexpr ItemIx kStopItem = -1;

struct PolicyNode {
  ItemIx item = kStopItem;  // kStopItem means "stop here"
  // Set when the node was chosen by the zero-density safeguard instead of a
  // positive-density argmax.
  bool fallback = false;
  // One entry per possible state at this node, ascending by state index; the
  // value is the child node index.
  std::vector<std::pair<StateIx, int>> branches;

  bool is_stop() const { return item == kStopItem; }
  bool operator==(const PolicyNode&) const = default;
};

// Materialized adaptive policy. Node 0 is the root; internal nodes select an
// item and branch on its observed state, leaves stop.
struct PolicyTree {
  std::vector<PolicyNode> nodes;

  static PolicyTree stop();
  const PolicyNode& root() const { return nodes.front(); }
  const PolicyNode& node(int ix) const { return nodes.at(ix); }
  bool operator==(const PolicyTree&) const = default;
};

struct TraceStep {
  ItemIx item;
  StateIx state;
  Rational cumulative_value;  // f(psi_t) after this observation
  Rational cost;
};

// One policy execution against one realization.
struct Trace {
  RealIx realization = -1;
  std::vector<TraceStep> steps;
  Rational total_cost = 0;
  Rational final_value = 0;
  bool zero_density_fallback_used = false;
};

// Follows the tree under phi's states until a stop node. Throws
// MalformedPolicy if a branch for the observed state is missing or an item
// repeats along the path.
Trace run_policy(const Instance& instance, const PolicyTree& tree, RealIx phi);

// min over U+ of the trace's final value, plus the smallest realization index
// attaining it.
std::pair<Rational, RealIx> worst_case_value(const Instance& instance,
                                             const PolicyTree& tree);

// max over U+ of the trace's total cost.
Rational worst_case_cost(const Instance& instance, const PolicyTree& tree);

// Density-greedy cover policy: at every node selects the unselected item with
// the largest Delta_wc(e|psi)/c(e) (smallest index on ties) until f(psi) >= Q
// on the branch. When the max density is exactly zero the smallest-index
// unselected item is taken and the node flagged as fallback. If f(E, phi)
// exceeds the goal for some phi the utility is truncated to min{goal, f}
// before running. Throws InputError (goal <= 0) or Infeasible (some phi with
// f(E, phi) < goal).
PolicyTree cover_greedy(const Instance& instance, const Rational& goal);

// Budgeted density-greedy policy. Per branch, repeatedly selects the density
// argmax, subtracts its cost from the remaining budget, and stops at the first
// item whose cost exceeds it; with relaxed=true that first over-budget item is
// still selected before stopping. Assumes callers already pruned items priced
// above the initial budget.
PolicyTree budget_greedy(const Instance& instance, const Rational& budget,
                         bool relaxed);

// Item maximizing Delta_wc(e | {}), smallest index on ties.
std::pair<ItemIx, Rational> best_singleton(const Instance& instance);

struct MaximizeResult {
  Instance pruned;                      // instance restricted to affordable items
  std::vector<std::string> pruned_ids;  // ids of items priced above the budget
  PolicyTree greedy_tree;
  PolicyTree relaxed_tree;
  Rational greedy_value;     // f_wc of the budgeted greedy policy
  Rational relaxed_value;    // f_wc of the relaxed policy
  std::string singleton_id;  // best affordable singleton
  Rational singleton_value;  // its Delta_wc(e | {})
  Rational combined_value;   // max(greedy_value, singleton_value)
};

// Runs both greedy variants and the best affordable singleton on the
// budget-pruned instance and combines them. Throws Infeasible when every item
// costs more than the budget.
MaximizeResult combined_max_policy(const Instance& instance, const Rational& budget);

struct LevelValue {
  long long items_started;  // t[l]: items with positive selection probability
  Rational value;           // h: interpolated utility of the truncated policy
};

// Level-l truncation of a trace with positive integer step costs: t[l] is the
// smallest t whose cumulative cost reaches l, and the value interpolates the
// in-progress item's gain by the fraction of its cost already spent. Throws
// InputError for non-integer costs or l outside [1, total_cost].
LevelValue truncated_trace_value(const Trace& trace, long long level);

// Multiplies every step cost by the least common denominator of all step
// costs, so rational-cost traces can feed truncated_trace_value; the level
// grid scales by the returned factor. Utilities are left untouched.
std::pair<Trace, BigInt> scale_costs_to_integers(const Trace& trace);

}  // namespace wcasc
