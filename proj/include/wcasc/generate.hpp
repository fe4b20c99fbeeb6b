#pragma once

#include <cstdint>
#include <utility>

#include "wcasc/model.hpp"

namespace wcasc {

// SplitMix64: the fixed generator behind every random fixture, so identical
// configs produce byte-identical instances on every platform. Splitting
// derives an independent stream from the current one.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // Uniform-ish draw in [0, n); uses plain reduction, which is fine for
  // fixture generation and keeps the sequence trivially reproducible.
  std::uint64_t below(std::uint64_t n);
  long long in_range(long long lo, long long hi);  // inclusive
  SplitMix64 split() { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

struct GeneratorConfig {
  std::uint64_t seed = 1;
  int n_items = 4;
  int n_realizations = 4;
  int n_elements = 4;  // coverage only
  int n_states = 2;
  std::pair<long long, long long> cost_range{1, 4};    // positive integers
  std::pair<long long, long long> weight_range{1, 3};  // positive integers
};

// Three-item fixture separating pointwise from worst-case submodularity:
// e1 costs eps_a with a deterministic state worth the goal; e2 and e3 cost
// eps_b each, are worth the goal in state o1 and nothing in o2, and the two
// realizations put exactly one of them in o1. Selecting both e2 and e3 thus
// reaches the goal for cost 2*eps_b under either realization, while the
// density greedy always pays eps_a for e1.
Instance counterexample_instance(const Rational& eps_a, const Rational& eps_b,
                                 const Rational& goal);

// Weighted-coverage instance: every (item, state) covers a random subset of
// elements; realizations are independent uniform state draws, deduplicated
// with weights summed.
Instance random_coverage_instance(const GeneratorConfig& config);

// Hypothesis-identification instance: realizations are hypotheses, items are
// tests with random outcomes per hypothesis, and the utility counts ruled-out
// hypotheses. The canonical goal is realization_count() - 1. Throws InputError
// when fewer than two distinct hypotheses survive deduplication.
Instance identification_instance(const GeneratorConfig& config);

// Random nonnegative per-(item, state) values; exercises the checkers on both
// passing and failing cases.
Instance random_modular_instance(const GeneratorConfig& config);

}  // namespace wcasc
