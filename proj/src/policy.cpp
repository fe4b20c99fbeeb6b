#include "wcasc/policy.hpp"

#include <algorithm>
#include <optional>

namespace wcasc {

PolicyTree PolicyTree::stop() {
  PolicyTree tree;
  tree.nodes.push_back(PolicyNode{});
  return tree;
}

Trace run_policy(const Instance& instance, const PolicyTree& tree, RealIx phi) {
  if (phi < 0 || phi >= instance.realization_count()) {
    throw InputError("unknown realization index " + std::to_string(phi));
  }
  Trace trace;
  trace.realization = phi;
  PartialRealization psi;
  int at = 0;
  while (!tree.node(at).is_stop()) {
    const PolicyNode& node = tree.node(at);
    ItemIx e = node.item;
    if (psi.has_item(e)) {
      throw MalformedPolicy("item " + instance.item(e).id + " repeats on the path");
    }
    StateIx o = instance.realization(phi).state[e];
    const auto branch =
        std::find_if(node.branches.begin(), node.branches.end(),
                     [o](const auto& b) { return b.first == o; });
    if (branch == node.branches.end()) {
      throw MalformedPolicy("no branch for state " + instance.state_id(o) +
                            " of item " + instance.item(e).id);
    }
    psi.append({e, o});
    trace.zero_density_fallback_used |= node.fallback;
    TraceStep step;
    step.item = e;
    step.state = o;
    step.cost = instance.item(e).cost;
    step.cumulative_value = conditional_expected_utility(instance, psi);
    trace.total_cost += step.cost;
    trace.final_value = step.cumulative_value;
    trace.steps.push_back(std::move(step));
    at = branch->second;
  }
  return trace;
}

std::pair<Rational, RealIx> worst_case_value(const Instance& instance,
                                             const PolicyTree& tree) {
  std::optional<Rational> worst;
  RealIx arg = 0;
  for (int phi = 0; phi < instance.realization_count(); ++phi) {
    Rational value = run_policy(instance, tree, phi).final_value;
    if (!worst || value < *worst) {
      worst = value;
      arg = phi;
    }
  }
  return {*worst, arg};
}

Rational worst_case_cost(const Instance& instance, const PolicyTree& tree) {
  Rational worst = 0;
  for (int phi = 0; phi < instance.realization_count(); ++phi) {
    worst = std::max(worst, run_policy(instance, tree, phi).total_cost);
  }
  return worst;
}

namespace {

// Unselected item with the largest Delta_wc/c, smallest index on ties.
// Returns (item, density).
std::pair<ItemIx, Rational> density_argmax(const Instance& instance,
                                           const PartialRealization& psi) {
  std::optional<Rational> best;
  ItemIx best_item = -1;
  for (int e = 0; e < instance.item_count(); ++e) {
    if (psi.has_item(e)) {
      continue;
    }
    Rational density = worst_case_marginal(instance, e, psi) / instance.item(e).cost;
    if (!best || density > *best) {
      best = density;
      best_item = e;
    }
  }
  return {best_item, *best};
}

ItemIx first_unselected(const Instance& instance, const PartialRealization& psi) {
  for (int e = 0; e < instance.item_count(); ++e) {
    if (!psi.has_item(e)) {
      return e;
    }
  }
  return -1;
}

struct CoverBuilder {
  const Instance& instance;
  const Rational& goal;
  PolicyTree tree;

  int build(const PartialRealization& psi) {
    int ix = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(PolicyNode{});
    if (conditional_expected_utility(instance, psi) >= goal) {
      return ix;  // stop node
    }
    auto [e, density] = density_argmax(instance, psi);
    bool fallback = density == 0;
    if (fallback) {
      e = first_unselected(instance, psi);
    }
    tree.nodes[ix].item = e;
    tree.nodes[ix].fallback = fallback;
    for (StateIx o : possible_states(instance, e, psi)) {
      int child = build(psi.extended({e, o}));
      tree.nodes[ix].branches.emplace_back(o, child);
    }
    return ix;
  }
};

struct BudgetBuilder {
  const Instance& instance;
  bool relaxed;
  PolicyTree tree;

  int build(const PartialRealization& psi, const Rational& remaining) {
    int ix = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(PolicyNode{});
    if (psi.size() == static_cast<std::size_t>(instance.item_count())) {
      return ix;  // everything selected
    }
    auto [e, density] = density_argmax(instance, psi);
    Rational left = remaining - instance.item(e).cost;
    if (left < 0 && !relaxed) {
      return ix;  // first over-budget item ends the branch
    }
    tree.nodes[ix].item = e;
    for (StateIx o : possible_states(instance, e, psi)) {
      int child;
      if (left < 0) {
        child = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back(PolicyNode{});  // keep the item, then stop
      } else {
        child = build(psi.extended({e, o}), left);
      }
      tree.nodes[ix].branches.emplace_back(o, child);
    }
    return ix;
  }
};

}  // namespace

PolicyTree cover_greedy(const Instance& instance, const Rational& goal) {
  if (!(goal > 0)) {
    throw InputError("goal must be strictly positive");
  }
  bool needs_truncation = false;
  for (int phi = 0; phi < instance.realization_count(); ++phi) {
    Rational full = evaluate_ground(instance, instance.all_items(), phi);
    if (full < goal) {
      throw Infeasible("realization " + instance.realization(phi).id +
                       " cannot reach the goal");
    }
    needs_truncation |= full > goal;
  }
  const Instance working =
      needs_truncation ? truncate_instance(instance, goal) : instance;
  CoverBuilder builder{working, goal, {}};
  builder.build(PartialRealization{});
  return std::move(builder.tree);
}

PolicyTree budget_greedy(const Instance& instance, const Rational& budget,
                         bool relaxed) {
  if (!(budget > 0)) {
    throw InputError("budget must be strictly positive");
  }
  BudgetBuilder builder{instance, relaxed, {}};
  builder.build(PartialRealization{}, budget);
  return std::move(builder.tree);
}

std::pair<ItemIx, Rational> best_singleton(const Instance& instance) {
  std::optional<Rational> best;
  ItemIx best_item = -1;
  PartialRealization empty;
  for (int e = 0; e < instance.item_count(); ++e) {
    Rational marginal = worst_case_marginal(instance, e, empty);
    if (!best || marginal > *best) {
      best = marginal;
      best_item = e;
    }
  }
  return {best_item, *best};
}

MaximizeResult combined_max_policy(const Instance& instance, const Rational& budget) {
  if (!(budget > 0)) {
    throw InputError("budget must be strictly positive");
  }
  ItemSet keep = 0;
  std::vector<std::string> pruned_ids;
  for (int e = 0; e < instance.item_count(); ++e) {
    if (instance.item(e).cost <= budget) {
      keep |= ItemSet{1} << e;
    } else {
      pruned_ids.push_back(instance.item(e).id);
    }
  }
  if (keep == 0) {
    throw Infeasible("every item costs more than the budget");
  }

  MaximizeResult result{.pruned = instance.restricted_to(keep),
                        .pruned_ids = std::move(pruned_ids)};
  result.greedy_tree = budget_greedy(result.pruned, budget, false);
  result.relaxed_tree = budget_greedy(result.pruned, budget, true);
  result.greedy_value = worst_case_value(result.pruned, result.greedy_tree).first;
  result.relaxed_value = worst_case_value(result.pruned, result.relaxed_tree).first;
  auto [singleton, marginal] = best_singleton(result.pruned);
  result.singleton_id = result.pruned.item(singleton).id;
  result.singleton_value = marginal;
  result.combined_value = std::max(result.greedy_value, result.singleton_value);
  return result;
}

LevelValue truncated_trace_value(const Trace& trace, long long level) {
  for (const TraceStep& step : trace.steps) {
    if (!is_integer(step.cost) || !(step.cost > 0)) {
      throw InputError("level truncation needs positive integer step costs");
    }
  }
  if (level < 1 || Rational(level) > trace.total_cost) {
    throw InputError("level outside [1, total_cost]");
  }
  Rational before = 0;  // cost of the first t[l]-1 items
  std::size_t t = 0;
  Rational reached = 0;
  for (; t < trace.steps.size(); ++t) {
    reached += trace.steps[t].cost;
    if (reached >= level) {
      break;
    }
    before = reached;
  }
  Rational f_prev = t == 0 ? Rational(0) : trace.steps[t - 1].cumulative_value;
  Rational f_cur = trace.steps[t].cumulative_value;
  Rational fraction = (Rational(level) - before) / trace.steps[t].cost;
  return {static_cast<long long>(t) + 1, f_prev + fraction * (f_cur - f_prev)};
}

std::pair<Trace, BigInt> scale_costs_to_integers(const Trace& trace) {
  BigInt factor = 1;
  for (const TraceStep& step : trace.steps) {
    BigInt den = denominator(step.cost);
    factor = factor / gcd(factor, den) * den;
  }
  Trace scaled = trace;
  scaled.total_cost = 0;
  for (TraceStep& step : scaled.steps) {
    step.cost *= factor;
    scaled.total_cost += step.cost;
  }
  return {std::move(scaled), factor};
}

}  // namespace wcasc
