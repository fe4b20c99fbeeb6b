#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wcasc/model.hpp"
#include "wcasc/policy.hpp"

namespace wcasc {

// Relative slack applied to floating-point bounds, always in the direction
// that favors the bound; the exact rational side is never perturbed.
inline constexpr double kBoundSlack = 1e-9;

struct CheckLimits {
  // Cap on enumerated checks for the exhaustive property checkers.
  std::size_t max_checks = 200000;
  // Item caps: oracles, pointwise submodularity (3^n walk), value enumeration.
  int max_oracle_items = 8;
  int max_pointwise_items = 12;
  int max_value_enum_items = 20;
};

enum class PropertyKind {
  WorstCaseMonotone,
  WorstCaseSubmodular,
  MinimalDependency,
  PointwiseSubmodular,
};

const char* property_name(PropertyKind kind);

// Concrete counterexample; re-evaluating lhs/rhs through the core model
// reproduces the violation exactly.
struct PropertyWitness {
  PartialRealization psi;
  PartialRealization psi2;   // superset side, when the property compares two
  ItemIx item = -1;          // item being added, when applicable
  RealIx realization = -1;   // realization involved, when applicable
  Rational lhs;
  Rational rhs;
};

struct PropertyReport {
  PropertyKind property;
  bool passed = false;
  std::optional<PropertyWitness> witness;  // present iff !passed
  std::size_t checked_count = 0;
};

// Every consistent partial realization of the instance, deduplicated and in
// ascending canonical order (restrictions of U+ members to item subsets).
std::vector<ObservationPattern> enumerate_consistent_patterns(
    const Instance& instance, const CheckLimits& limits = {});

// Delta_wc(e | psi) >= 0 for every consistent psi and unobserved e.
PropertyReport check_worst_case_monotone(const Instance& instance,
                                         const CheckLimits& limits = {});

// Delta_wc(e | psi) >= Delta_wc(e | psi') for all consistent psi ⊆ psi' and
// e outside dom(psi').
PropertyReport check_worst_case_submodular(const Instance& instance,
                                           const CheckLimits& limits = {});

// f(dom(psi), phi) equals f(psi) for every consistent psi and phi ~ psi.
PropertyReport check_minimal_dependency(const Instance& instance,
                                        const CheckLimits& limits = {});

// f(., phi) is submodular as a set function for every phi in U+.
PropertyReport check_pointwise_submodular(const Instance& instance,
                                          const CheckLimits& limits = {});

// Largest eta such that f(S, phi) > goal - eta implies f(S, phi) = goal, with
// the utility truncated at the goal first (matching what the cover policy
// optimizes). Equals goal when no attainable value sits strictly below it.
Rational compute_eta(const Instance& instance, const Rational& goal,
                     const CheckLimits& limits = {});

struct OracleResult {
  Rational value;
  PolicyTree tree;
};

// Exact minimum worst-case cost over all adaptive policies reaching the goal
// on every realization, via memoized recursion over canonical observation
// sets. Requires a minimal-dependent utility and at most max_oracle_items
// items. Applies the same goal truncation as cover_greedy.
OracleResult optimal_cover_cost(const Instance& instance, const Rational& goal,
                                const CheckLimits& limits = {});

// Exact maximum worst-case value over all adaptive policies with worst-case
// cost at most the budget; stopping is always an option.
OracleResult optimal_budgeted_value(const Instance& instance, const Rational& budget,
                                    const CheckLimits& limits = {});

struct RatioReport {
  enum class Mode { Cover, Maximize };

  Mode mode = Mode::Cover;
  PropertyReport monotone;
  PropertyReport submodular;
  PropertyReport minimal_dependency;
  bool properties_hold = false;

  Rational greedy_metric;  // cover: c_wc(greedy); maximize: combined value
  Rational oracle_metric;  // cover: c*; maximize: OPT(B)
  Rational ratio;          // cover: greedy/oracle, defined as 1 when both are 0
  Rational eta;            // cover only
  double bound = 0.0;      // cover: ln(goal/eta)+1; maximize: (1-1/e)/2
  bool bound_satisfied = false;

  // Maximize-mode details.
  Rational greedy_value;   // f_wc of the plain budgeted greedy
  Rational relaxed_value;  // f_wc of the relaxed greedy
  double relaxed_bound = 0.0;
  bool relaxed_bound_satisfied = true;
  std::string best_singleton_id;
  Rational best_singleton_value;
  // Item the relaxed greedy adds on the plain greedy's worst-case branch
  // (empty when the branch never hits the budget), and the exact inequality
  // greedy_value + Delta_wc(extra | {}) >= relaxed_value.
  std::string extra_item_id;
  Rational extra_item_marginal;
  bool singleton_inequality_holds = true;
  std::vector<std::string> pruned_ids;
};

// Greedy cover cost against the brute-force optimum and the logarithmic
// bound. Degenerate goal 0 reports ratio 1 with bound 1.
RatioReport cover_ratio_report(const Instance& instance, const Rational& goal,
                               const CheckLimits& limits = {});

// Combined maximization policy against the brute-force optimum and the
// (1-1/e)/2 bound, plus the relaxed-policy bound and the exact singleton
// inequality.
RatioReport max_ratio_report(const Instance& instance, const Rational& budget,
                             const CheckLimits& limits = {});

// min{c1,x} - min{c2,x} >= min{c3,x} - min{c4,x}, evaluated exactly. The
// preconditions c1>=c2, c3>=c4, c1-c2>=c3-c4, c2<=c4 are validated and an
// InputError thrown on violation; under them the result is always true.
bool min_clamp_inequality(const Rational& c1, const Rational& c2, const Rational& c3,
                          const Rational& c4, const Rational& x);

}  // namespace wcasc
