#include "wcasc/generate.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace wcasc {

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t n) { return n <= 1 ? 0 : next() % n; }

long long SplitMix64::in_range(long long lo, long long hi) {
  return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

namespace {

// Two-digit zero-padded ids keep lexicographic and numeric order aligned.
std::string numbered_id(char prefix, int i) {
  std::string id(1, prefix);
  if (i < 10) {
    id += '0';
  }
  id += std::to_string(i);
  return id;
}

void validate_config(const GeneratorConfig& config) {
  if (config.n_items < 1 || config.n_items > 99 || config.n_realizations < 1 ||
      config.n_realizations > 99 || config.n_elements < 1 || config.n_elements > 99 ||
      config.n_states < 1 || config.n_states > 99) {
    throw InputError("generator counts must be in [1, 99]");
  }
  if (config.cost_range.first < 1 || config.cost_range.second < config.cost_range.first ||
      config.weight_range.first < 1 ||
      config.weight_range.second < config.weight_range.first) {
    throw InputError("generator ranges must be nonempty and positive");
  }
}

std::vector<Item> random_items(const GeneratorConfig& config, SplitMix64& rng) {
  std::vector<Item> items;
  for (int i = 0; i < config.n_items; ++i) {
    items.push_back(
        {numbered_id('e', i + 1),
         Rational(rng.in_range(config.cost_range.first, config.cost_range.second))});
  }
  return items;
}

std::vector<std::string> state_ids(const GeneratorConfig& config) {
  std::vector<std::string> states;
  for (int i = 0; i < config.n_states; ++i) {
    states.push_back(numbered_id('s', i + 1));
  }
  return states;
}

// Draws n_realizations uniform assignments and merges duplicates, summing
// their weights; ids are assigned in first-draw order.
std::vector<InstanceData::RealizationData> random_realizations(
    const GeneratorConfig& config, SplitMix64& rng,
    const std::vector<std::string>& states) {
  std::map<std::vector<int>, int> weight_by_assignment;
  std::vector<std::vector<int>> order;
  for (int r = 0; r < config.n_realizations; ++r) {
    std::vector<int> assignment;
    for (int e = 0; e < config.n_items; ++e) {
      assignment.push_back(static_cast<int>(rng.below(config.n_states)));
    }
    auto [it, inserted] = weight_by_assignment.emplace(assignment, 0);
    it->second += 1;
    if (inserted) {
      order.push_back(assignment);
    }
  }
  std::vector<InstanceData::RealizationData> realizations;
  for (std::size_t i = 0; i < order.size(); ++i) {
    InstanceData::RealizationData real;
    real.id = numbered_id('r', static_cast<int>(i) + 1);
    real.weight = Rational(weight_by_assignment.at(order[i]));
    for (int e = 0; e < config.n_items; ++e) {
      real.assignment.emplace_back(numbered_id('e', e + 1), states[order[i][e]]);
    }
    realizations.push_back(std::move(real));
  }
  return realizations;
}

}  // namespace

Instance counterexample_instance(const Rational& eps_a, const Rational& eps_b,
                                 const Rational& goal) {
  if (!(eps_a > 0) || !(eps_b > 0) || !(goal > 0)) {
    throw InputError("counterexample parameters must be strictly positive");
  }
  InstanceData data;
  data.items = {{"e1", eps_a}, {"e2", eps_b}, {"e3", eps_b}};
  data.states = {"o1", "o2"};
  data.realizations = {
      {"phi1", Rational(1), {{"e1", "o1"}, {"e2", "o1"}, {"e3", "o2"}}},
      {"phi2", Rational(1), {{"e1", "o1"}, {"e2", "o2"}, {"e3", "o1"}}},
  };
  data.utility_kind = InstanceData::UtilityKind::Modular;
  data.modular_values = {
      {"e1", "o1", goal},
      {"e2", "o1", goal},
      {"e3", "o1", goal},
  };
  return Instance::create(std::move(data));
}

Instance random_coverage_instance(const GeneratorConfig& config) {
  validate_config(config);
  SplitMix64 rng(config.seed);
  InstanceData data;
  data.items = random_items(config, rng);
  data.states = state_ids(config);
  for (int g = 0; g < config.n_elements; ++g) {
    data.elements.emplace_back(
        numbered_id('g', g + 1),
        Rational(rng.in_range(config.weight_range.first, config.weight_range.second)));
  }
  for (int e = 0; e < config.n_items; ++e) {
    for (int s = 0; s < config.n_states; ++s) {
      std::vector<std::string> covered;
      for (int g = 0; g < config.n_elements; ++g) {
        if (rng.below(2) == 1) {
          covered.push_back(numbered_id('g', g + 1));
        }
      }
      if (!covered.empty()) {
        data.covers.emplace_back(numbered_id('e', e + 1), data.states[s],
                                 std::move(covered));
      }
    }
  }
  data.realizations = random_realizations(config, rng, data.states);
  data.utility_kind = InstanceData::UtilityKind::Coverage;
  return Instance::create(std::move(data));
}

Instance identification_instance(const GeneratorConfig& config) {
  validate_config(config);
  if (config.n_realizations < 2) {
    throw InputError("identification needs at least two hypotheses");
  }
  SplitMix64 rng(config.seed);
  InstanceData data;
  data.items = random_items(config, rng);
  data.states = state_ids(config);
  data.realizations = random_realizations(config, rng, data.states);
  if (data.realizations.size() < 2) {
    throw InputError("fewer than two distinct hypotheses after deduplication");
  }
  data.utility_kind = InstanceData::UtilityKind::Identification;
  return Instance::create(std::move(data));
}

Instance random_modular_instance(const GeneratorConfig& config) {
  validate_config(config);
  SplitMix64 rng(config.seed);
  InstanceData data;
  data.items = random_items(config, rng);
  data.states = state_ids(config);
  for (int e = 0; e < config.n_items; ++e) {
    for (int s = 0; s < config.n_states; ++s) {
      Rational value(rng.in_range(0, config.weight_range.second));
      if (value != 0) {
        data.modular_values.emplace_back(numbered_id('e', e + 1), data.states[s],
                                         value);
      }
    }
  }
  data.realizations = random_realizations(config, rng, data.states);
  data.utility_kind = InstanceData::UtilityKind::Modular;
  return Instance::create(std::move(data));
}

}  // namespace wcasc
