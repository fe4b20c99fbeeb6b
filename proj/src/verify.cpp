#include "wcasc/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <utility>

namespace wcasc {

const char* property_name(PropertyKind kind) {
  switch (kind) {
    case PropertyKind::WorstCaseMonotone:
      return "worst-case-monotone";
    case PropertyKind::WorstCaseSubmodular:
      return "worst-case-submodular";
    case PropertyKind::MinimalDependency:
      return "minimal-dependency";
    case PropertyKind::PointwiseSubmodular:
      return "pointwise-submodular";
  }
  return "unknown";
}

namespace {

// Shared memo for expected utilities and worst-case marginals over canonical
// observation patterns; results are identical to the unmemoized core calls.
class Evaluator {
 public:
  explicit Evaluator(const Instance& instance) : instance_(instance) {}

  const Rational& f(const ObservationPattern& pattern) {
    auto it = f_.find(pattern);
    if (it == f_.end()) {
      it = f_.emplace(pattern, conditional_expected_utility(
                                   instance_, PartialRealization::from_pattern(pattern)))
               .first;
    }
    return it->second;
  }

  const Rational& delta(const ObservationPattern& pattern, ItemIx e) {
    auto key = std::make_pair(pattern, e);
    auto it = delta_.find(key);
    if (it != delta_.end()) {
      return it->second;
    }
    const Rational base = f(pattern);
    std::optional<Rational> worst;
    for (StateIx o :
         possible_states(instance_, e, PartialRealization::from_pattern(pattern))) {
      Rational gain = f(extended(pattern, {e, o})) - base;
      if (!worst || gain < *worst) {
        worst = gain;
      }
    }
    return delta_.emplace(std::move(key), *worst).first->second;
  }

  static ObservationPattern extended(const ObservationPattern& pattern,
                                     Observation obs) {
    ObservationPattern out = pattern;
    out.insert(std::upper_bound(out.begin(), out.end(), obs), obs);
    return out;
  }

 private:
  const Instance& instance_;
  std::map<ObservationPattern, Rational> f_;
  std::map<std::pair<ObservationPattern, ItemIx>, Rational> delta_;
};

ItemSet pattern_domain(const ObservationPattern& pattern) {
  ItemSet mask = 0;
  for (Observation o : pattern) {
    mask |= ItemSet{1} << o.item;
  }
  return mask;
}

}  // namespace

std::vector<ObservationPattern> enumerate_consistent_patterns(
    const Instance& instance, const CheckLimits& limits) {
  const int n = instance.item_count();
  if (n > 20) {
    throw TooLarge("pattern enumeration over more than 20 items");
  }
  std::set<ObservationPattern> patterns;
  for (int phi = 0; phi < instance.realization_count(); ++phi) {
    const Realization& real = instance.realization(phi);
    for (ItemSet mask = 0; mask < (ItemSet{1} << n); ++mask) {
      ObservationPattern pattern;
      for (int e = 0; e < n; ++e) {
        if (mask >> e & 1) {
          pattern.push_back({e, real.state[e]});
        }
      }
      patterns.insert(std::move(pattern));
      if (patterns.size() > limits.max_checks) {
        throw TooLarge("more than " + std::to_string(limits.max_checks) +
                       " consistent partial realizations");
      }
    }
  }
  return {patterns.begin(), patterns.end()};
}

PropertyReport check_worst_case_monotone(const Instance& instance,
                                         const CheckLimits& limits) {
  PropertyReport report{.property = PropertyKind::WorstCaseMonotone};
  const auto patterns = enumerate_consistent_patterns(instance, limits);
  const int n = instance.item_count();

  std::size_t planned = 0;
  for (const auto& pattern : patterns) {
    planned += n - pattern.size();
  }
  if (planned > limits.max_checks) {
    throw TooLarge("monotonicity check needs " + std::to_string(planned) +
                   " evaluations");
  }

  Evaluator eval(instance);
  for (const auto& pattern : patterns) {
    ItemSet dom = pattern_domain(pattern);
    for (int e = 0; e < n; ++e) {
      if (dom >> e & 1) {
        continue;
      }
      ++report.checked_count;
      const Rational& marginal = eval.delta(pattern, e);
      if (marginal < 0) {
        report.witness = PropertyWitness{
            .psi = PartialRealization::from_pattern(pattern),
            .item = e,
            .lhs = marginal,
            .rhs = Rational(0),
        };
        return report;
      }
    }
  }
  report.passed = true;
  return report;
}

PropertyReport check_worst_case_submodular(const Instance& instance,
                                           const CheckLimits& limits) {
  PropertyReport report{.property = PropertyKind::WorstCaseSubmodular};
  const auto patterns = enumerate_consistent_patterns(instance, limits);
  const int n = instance.item_count();

  std::size_t planned = 0;
  for (const auto& pattern : patterns) {
    planned += (std::size_t{1} << pattern.size()) * (n - pattern.size());
  }
  if (planned > limits.max_checks) {
    throw TooLarge("submodularity check needs " + std::to_string(planned) +
                   " evaluations");
  }

  Evaluator eval(instance);
  // Witness order: ascending superset psi', then ascending subset psi, then
  // ascending item index.
  for (const auto& superset : patterns) {
    ItemSet dom = pattern_domain(superset);
    const std::size_t k = superset.size();
    std::vector<ObservationPattern> subsets;
    subsets.reserve(std::size_t{1} << k);
    for (std::size_t bits = 0; bits < (std::size_t{1} << k); ++bits) {
      ObservationPattern subset;
      for (std::size_t i = 0; i < k; ++i) {
        if (bits >> i & 1) {
          subset.push_back(superset[i]);
        }
      }
      subsets.push_back(std::move(subset));
    }
    std::sort(subsets.begin(), subsets.end());
    for (const auto& subset : subsets) {
      for (int e = 0; e < n; ++e) {
        if (dom >> e & 1) {
          continue;
        }
        ++report.checked_count;
        const Rational& lhs = eval.delta(subset, e);
        const Rational& rhs = eval.delta(superset, e);
        if (lhs < rhs) {
          report.witness = PropertyWitness{
              .psi = PartialRealization::from_pattern(subset),
              .psi2 = PartialRealization::from_pattern(superset),
              .item = e,
              .lhs = lhs,
              .rhs = rhs,
          };
          return report;
        }
      }
    }
  }
  report.passed = true;
  return report;
}

PropertyReport check_minimal_dependency(const Instance& instance,
                                        const CheckLimits& limits) {
  PropertyReport report{.property = PropertyKind::MinimalDependency};
  const auto patterns = enumerate_consistent_patterns(instance, limits);

  std::size_t planned =
      patterns.size() * static_cast<std::size_t>(instance.realization_count());
  if (planned > limits.max_checks) {
    throw TooLarge("minimal-dependency check needs " + std::to_string(planned) +
                   " evaluations");
  }

  Evaluator eval(instance);
  for (const auto& pattern : patterns) {
    const PartialRealization psi = PartialRealization::from_pattern(pattern);
    ItemSet dom = pattern_domain(pattern);
    const Rational& expected = eval.f(pattern);
    for (int phi = 0; phi < instance.realization_count(); ++phi) {
      if (!consistent(instance, phi, psi)) {
        continue;
      }
      ++report.checked_count;
      Rational ground = evaluate_ground(instance, dom, phi);
      if (ground != expected) {
        report.witness = PropertyWitness{
            .psi = psi,
            .realization = phi,
            .lhs = ground,
            .rhs = expected,
        };
        return report;
      }
    }
  }
  report.passed = true;
  return report;
}

PropertyReport check_pointwise_submodular(const Instance& instance,
                                          const CheckLimits& limits) {
  PropertyReport report{.property = PropertyKind::PointwiseSubmodular};
  const int n = instance.item_count();
  if (n > limits.max_pointwise_items) {
    throw TooLarge("pointwise check over more than " +
                   std::to_string(limits.max_pointwise_items) + " items");
  }
  // (S, T, e) triples per realization: sum over T of 2^|T| * (n - |T|).
  std::size_t per_realization = 0;
  for (ItemSet t = 0; t < (ItemSet{1} << n); ++t) {
    per_realization += (std::size_t{1} << std::popcount(t)) *
                       static_cast<std::size_t>(n - std::popcount(t));
  }
  if (per_realization * instance.realization_count() > limits.max_checks) {
    throw TooLarge("pointwise check needs too many evaluations");
  }

  for (int phi = 0; phi < instance.realization_count(); ++phi) {
    std::vector<Rational> ground(std::size_t{1} << n);
    for (ItemSet mask = 0; mask < (ItemSet{1} << n); ++mask) {
      ground[mask] = evaluate_ground(instance, mask, phi);
    }
    const Realization& real = instance.realization(phi);
    auto as_pattern = [&](ItemSet mask) {
      ObservationPattern pattern;
      for (int e = 0; e < n; ++e) {
        if (mask >> e & 1) {
          pattern.push_back({e, real.state[e]});
        }
      }
      return pattern;
    };
    for (ItemSet t = 0; t < (ItemSet{1} << n); ++t) {
      for (int e = 0; e < n; ++e) {
        if (t >> e & 1) {
          continue;
        }
        const ItemSet bit = ItemSet{1} << e;
        const Rational upper_gain = ground[t | bit] - ground[t];
        // All S subseteq T via submask walk (including S = T handled above).
        ItemSet s = t;
        while (true) {
          ++report.checked_count;
          Rational lower_gain = ground[s | bit] - ground[s];
          if (lower_gain < upper_gain) {
            report.witness = PropertyWitness{
                .psi = PartialRealization::from_pattern(as_pattern(s)),
                .psi2 = PartialRealization::from_pattern(as_pattern(t)),
                .item = e,
                .realization = phi,
                .lhs = lower_gain,
                .rhs = upper_gain,
            };
            return report;
          }
          if (s == 0) {
            break;
          }
          s = (s - 1) & t;
        }
      }
    }
  }
  report.passed = true;
  return report;
}

Rational compute_eta(const Instance& instance, const Rational& goal,
                     const CheckLimits& limits) {
  const int n = instance.item_count();
  if (n > limits.max_value_enum_items) {
    throw TooLarge("value enumeration over more than " +
                   std::to_string(limits.max_value_enum_items) + " items");
  }
  const Instance truncated = truncate_instance(instance, std::max(goal, Rational(0)));
  std::optional<Rational> largest_below;
  for (int phi = 0; phi < instance.realization_count(); ++phi) {
    for (ItemSet mask = 0; mask < (ItemSet{1} << n); ++mask) {
      Rational value = evaluate_ground(truncated, mask, phi);
      if (value < goal && (!largest_below || value > *largest_below)) {
        largest_below = value;
      }
    }
  }
  return largest_below ? goal - *largest_below : goal;
}

namespace {

struct OracleChoice {
  Rational value;
  ItemIx item = kStopItem;
};

void require_oracle_preconditions(const Instance& instance, const CheckLimits& limits) {
  if (instance.item_count() > limits.max_oracle_items) {
    throw TooLarge("oracle over more than " +
                   std::to_string(limits.max_oracle_items) + " items");
  }
  if (!check_minimal_dependency(instance, limits).passed) {
    throw MinimalDependencyRequired(
        "the brute-force oracles require a minimal-dependent utility");
  }
}

class CoverOracle {
 public:
  CoverOracle(const Instance& instance, const Rational& goal)
      : instance_(instance), goal_(goal), eval_(instance) {}

  const OracleChoice& solve(const ObservationPattern& pattern) {
    auto it = memo_.find(pattern);
    if (it != memo_.end()) {
      return it->second;
    }
    OracleChoice choice;
    if (eval_.f(pattern) >= goal_) {
      choice.value = 0;
    } else {
      std::optional<Rational> best;
      ItemSet dom = pattern_domain(pattern);
      for (int e = 0; e < instance_.item_count(); ++e) {
        if (dom >> e & 1) {
          continue;
        }
        Rational worst_subtree = 0;
        for (StateIx o : possible_states(instance_, e,
                                         PartialRealization::from_pattern(pattern))) {
          worst_subtree = std::max(
              worst_subtree, solve(Evaluator::extended(pattern, {e, o})).value);
        }
        Rational candidate = instance_.item(e).cost + worst_subtree;
        if (!best || candidate < *best) {
          best = candidate;
          choice.item = e;
        }
      }
      choice.value = *best;
    }
    return memo_.emplace(pattern, std::move(choice)).first->second;
  }

  int build_tree(const ObservationPattern& pattern, PolicyTree& tree) {
    int ix = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(PolicyNode{});
    const OracleChoice& choice = solve(pattern);
    if (choice.item == kStopItem) {
      return ix;
    }
    tree.nodes[ix].item = choice.item;
    for (StateIx o : possible_states(instance_, choice.item,
                                     PartialRealization::from_pattern(pattern))) {
      int child = build_tree(Evaluator::extended(pattern, {choice.item, o}), tree);
      tree.nodes[ix].branches.emplace_back(o, child);
    }
    return ix;
  }

 private:
  const Instance& instance_;
  Rational goal_;
  Evaluator eval_;
  std::map<ObservationPattern, OracleChoice> memo_;
};

class BudgetOracle {
 public:
  explicit BudgetOracle(const Instance& instance) : instance_(instance), eval_(instance) {}

  const OracleChoice& solve(const ObservationPattern& pattern, const Rational& budget) {
    auto key = std::make_pair(pattern, budget);
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      return it->second;
    }
    OracleChoice choice;
    choice.value = eval_.f(pattern);  // stopping is always allowed
    ItemSet dom = pattern_domain(pattern);
    for (int e = 0; e < instance_.item_count(); ++e) {
      if ((dom >> e & 1) || instance_.item(e).cost > budget) {
        continue;
      }
      Rational left = budget - instance_.item(e).cost;
      std::optional<Rational> branch_worst;
      for (StateIx o :
           possible_states(instance_, e, PartialRealization::from_pattern(pattern))) {
        const Rational& sub = solve(Evaluator::extended(pattern, {e, o}), left).value;
        if (!branch_worst || sub < *branch_worst) {
          branch_worst = sub;
        }
      }
      if (*branch_worst > choice.value) {
        choice.value = *branch_worst;
        choice.item = e;
      }
    }
    return memo_.emplace(std::move(key), std::move(choice)).first->second;
  }

  int build_tree(const ObservationPattern& pattern, const Rational& budget,
                 PolicyTree& tree) {
    int ix = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(PolicyNode{});
    const OracleChoice& choice = solve(pattern, budget);
    if (choice.item == kStopItem) {
      return ix;
    }
    tree.nodes[ix].item = choice.item;
    Rational left = budget - instance_.item(choice.item).cost;
    for (StateIx o : possible_states(instance_, choice.item,
                                     PartialRealization::from_pattern(pattern))) {
      int child =
          build_tree(Evaluator::extended(pattern, {choice.item, o}), left, tree);
      tree.nodes[ix].branches.emplace_back(o, child);
    }
    return ix;
  }

 private:
  const Instance& instance_;
  Evaluator eval_;
  std::map<std::pair<ObservationPattern, Rational>, OracleChoice> memo_;
};

}  // namespace

OracleResult optimal_cover_cost(const Instance& instance, const Rational& goal,
                                const CheckLimits& limits) {
  require_oracle_preconditions(instance, limits);
  if (goal <= 0) {
    return {Rational(0), PolicyTree::stop()};
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
  const Instance working = needs_truncation ? truncate_instance(instance, goal) : instance;

  CoverOracle oracle(working, goal);
  OracleResult result;
  result.value = oracle.solve({}).value;
  oracle.build_tree({}, result.tree);
  return result;
}

OracleResult optimal_budgeted_value(const Instance& instance, const Rational& budget,
                                    const CheckLimits& limits) {
  require_oracle_preconditions(instance, limits);
  BudgetOracle oracle(instance);
  OracleResult result;
  result.value = oracle.solve({}, budget).value;
  oracle.build_tree({}, budget, result.tree);
  return result;
}

RatioReport cover_ratio_report(const Instance& instance, const Rational& goal,
                               const CheckLimits& limits) {
  if (goal < 0) {
    throw InputError("goal must be nonnegative");
  }
  RatioReport report;
  report.mode = RatioReport::Mode::Cover;
  report.monotone = check_worst_case_monotone(instance, limits);
  report.submodular = check_worst_case_submodular(instance, limits);
  report.minimal_dependency = check_minimal_dependency(instance, limits);
  report.properties_hold = report.monotone.passed && report.submodular.passed &&
                           report.minimal_dependency.passed;

  if (goal == 0) {
    // Already covered by the empty policy; ratio 1 by convention.
    report.greedy_metric = 0;
    report.oracle_metric = 0;
    report.ratio = 1;
    report.eta = 0;
    report.bound = 1.0;
    report.bound_satisfied = true;
    return report;
  }

  PolicyTree greedy = cover_greedy(instance, goal);
  report.greedy_metric = worst_case_cost(instance, greedy);
  report.oracle_metric = optimal_cover_cost(instance, goal, limits).value;
  report.eta = compute_eta(instance, goal, limits);
  report.ratio = report.greedy_metric / report.oracle_metric;
  report.bound = std::log(to_double(goal / report.eta)) + 1.0;
  report.bound_satisfied =
      to_double(report.ratio) <= report.bound * (1.0 + kBoundSlack);
  return report;
}

RatioReport max_ratio_report(const Instance& instance, const Rational& budget,
                             const CheckLimits& limits) {
  RatioReport report;
  report.mode = RatioReport::Mode::Maximize;
  report.monotone = check_worst_case_monotone(instance, limits);
  report.submodular = check_worst_case_submodular(instance, limits);
  report.minimal_dependency = check_minimal_dependency(instance, limits);
  report.properties_hold = report.monotone.passed && report.submodular.passed &&
                           report.minimal_dependency.passed;

  MaximizeResult max = combined_max_policy(instance, budget);
  report.greedy_metric = max.combined_value;
  report.greedy_value = max.greedy_value;
  report.relaxed_value = max.relaxed_value;
  report.best_singleton_id = max.singleton_id;
  report.best_singleton_value = max.singleton_value;
  report.pruned_ids = max.pruned_ids;

  report.oracle_metric = optimal_budgeted_value(instance, budget, limits).value;
  const double opt = to_double(report.oracle_metric);
  report.bound = (1.0 - std::exp(-1.0)) / 2.0;
  report.bound_satisfied =
      to_double(report.greedy_metric) >= opt * report.bound * (1.0 - kBoundSlack);
  report.relaxed_bound = 1.0 - std::exp(-1.0);
  report.relaxed_bound_satisfied =
      to_double(report.relaxed_value) >= opt * report.relaxed_bound * (1.0 - kBoundSlack);

  // Singleton inequality along the plain greedy's worst-case branch.
  RealIx phi = worst_case_value(max.pruned, max.greedy_tree).second;
  Trace greedy_trace = run_policy(max.pruned, max.greedy_tree, phi);
  Trace relaxed_trace = run_policy(max.pruned, max.relaxed_tree, phi);
  report.extra_item_marginal = 0;
  for (const TraceStep& step : relaxed_trace.steps) {
    bool in_greedy = false;
    for (const TraceStep& gstep : greedy_trace.steps) {
      if (gstep.item == step.item) {
        in_greedy = true;
        break;
      }
    }
    if (!in_greedy) {
      report.extra_item_id = max.pruned.item(step.item).id;
      report.extra_item_marginal =
          worst_case_marginal(max.pruned, step.item, PartialRealization{});
      break;
    }
  }
  report.singleton_inequality_holds =
      max.greedy_value + report.extra_item_marginal >= max.relaxed_value;
  return report;
}

bool min_clamp_inequality(const Rational& c1, const Rational& c2, const Rational& c3,
                          const Rational& c4, const Rational& x) {
  if (c1 < c2 || c3 < c4 || c1 - c2 < c3 - c4 || c2 > c4) {
    throw InputError("min-clamp preconditions violated");
  }
  Rational lhs = std::min(c1, x) - std::min(c2, x);
  Rational rhs = std::min(c3, x) - std::min(c4, x);
  return lhs >= rhs;
}

}  // namespace wcasc
