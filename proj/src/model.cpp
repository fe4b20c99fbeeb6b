#include "wcasc/model.hpp"

#include <algorithm>
#include <set>

namespace wcasc {

PartialRealization::PartialRealization(std::initializer_list<Observation> obs) {
  for (Observation o : obs) {
    append(o);
  }
}

PartialRealization PartialRealization::from_pattern(const ObservationPattern& pattern) {
  PartialRealization psi;
  for (Observation o : pattern) {
    psi.append(o);
  }
  return psi;
}

void PartialRealization::append(Observation obs) {
  if (has_item(obs.item)) {
    throw InputError("duplicate observation for item index " +
                     std::to_string(obs.item));
  }
  observations_.push_back(obs);
}

PartialRealization PartialRealization::extended(Observation obs) const {
  PartialRealization next = *this;
  next.append(obs);
  return next;
}

bool PartialRealization::has_item(ItemIx item) const {
  return state_of(item).has_value();
}

std::optional<StateIx> PartialRealization::state_of(ItemIx item) const {
  for (const Observation& o : observations_) {
    if (o.item == item) {
      return o.state;
    }
  }
  return std::nullopt;
}

ItemSet PartialRealization::domain() const {
  ItemSet mask = 0;
  for (const Observation& o : observations_) {
    mask |= ItemSet{1} << o.item;
  }
  return mask;
}

ObservationPattern PartialRealization::canonical() const {
  ObservationPattern pattern = observations_;
  std::sort(pattern.begin(), pattern.end());
  return pattern;
}

bool is_subrealization(const PartialRealization& a, const PartialRealization& b) {
  for (const Observation& o : a.observations()) {
    if (b.state_of(o.item) != o.state) {
      return false;
    }
  }
  return true;
}

Utility truncate_utility(const Utility& utility, const Rational& cap) {
  if (cap < 0) {
    throw InputError("truncation cap must be nonnegative");
  }
  Utility result = utility;
  if (result.cap.has_value()) {
    result.cap = std::min(*result.cap, cap);
  } else {
    result.cap = cap;
  }
  return result;
}

namespace {

void validate_observation_range(const Instance& instance, const PartialRealization& psi) {
  for (const Observation& o : psi.observations()) {
    if (o.item < 0 || o.item >= instance.item_count()) {
      throw InputError("observation references unknown item index " +
                       std::to_string(o.item));
    }
    if (o.state < 0 || o.state >= instance.state_count()) {
      throw InputError("observation references unknown state index " +
                       std::to_string(o.state));
    }
  }
}

Rational base_ground_value(const Instance& instance, const BaseUtility& base,
                           ItemSet selected, RealIx phi) {
  const Realization& real = instance.realization(phi);
  if (const auto* modular = std::get_if<ModularUtility>(&base)) {
    Rational sum = 0;
    for (int e = 0; e < instance.item_count(); ++e) {
      if (selected >> e & 1) {
        sum += modular->value[e][real.state[e]];
      }
    }
    return sum;
  }
  if (const auto* coverage = std::get_if<CoverageUtility>(&base)) {
    std::vector<char> covered(coverage->element_ids.size(), 0);
    for (int e = 0; e < instance.item_count(); ++e) {
      if (selected >> e & 1) {
        for (int elem : coverage->covers[e][real.state[e]]) {
          covered[elem] = 1;
        }
      }
    }
    Rational sum = 0;
    for (std::size_t i = 0; i < covered.size(); ++i) {
      if (covered[i]) {
        sum += coverage->element_weight[i];
      }
    }
    return sum;
  }
  if (std::holds_alternative<IdentificationUtility>(base)) {
    // Realizations ruled out: those disagreeing with phi on some selected item.
    int ruled_out = 0;
    for (int r = 0; r < instance.realization_count(); ++r) {
      const Realization& other = instance.realization(r);
      for (int e = 0; e < instance.item_count(); ++e) {
        if ((selected >> e & 1) && other.state[e] != real.state[e]) {
          ++ruled_out;
          break;
        }
      }
    }
    return Rational(ruled_out);
  }
  const auto& table = std::get<TableUtility>(base);
  ObservationPattern pattern;
  for (int e = 0; e < instance.item_count(); ++e) {
    if (selected >> e & 1) {
      pattern.push_back({e, real.state[e]});
    }
  }
  auto it = table.entries.find(pattern);
  if (it == table.entries.end()) {
    throw MissingTableEntry("no table value for the selected observation pattern");
  }
  return it->second;
}

}  // namespace

Instance Instance::create(InstanceData data) {
  Instance instance;

  if (data.items.empty()) {
    throw InputError("instance needs at least one item");
  }
  if (static_cast<int>(data.items.size()) > kMaxItems) {
    throw InputError("instance exceeds the 64 item limit");
  }
  if (data.realizations.empty()) {
    throw InputError("instance needs at least one realization");
  }

  std::sort(data.items.begin(), data.items.end(),
            [](const Item& a, const Item& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < data.items.size(); ++i) {
    const Item& item = data.items[i];
    if (item.id.empty()) {
      throw InputError("empty item id");
    }
    if (!(item.cost > 0)) {
      throw InputError("item " + item.id + " must have strictly positive cost");
    }
    if (!instance.item_ix_by_id_.emplace(item.id, i).second) {
      throw InputError("duplicate item id " + item.id);
    }
  }
  instance.items_ = std::move(data.items);

  std::sort(data.states.begin(), data.states.end());
  for (std::size_t i = 0; i < data.states.size(); ++i) {
    if (data.states[i].empty()) {
      throw InputError("empty state id");
    }
    if (!instance.state_ix_by_id_.emplace(data.states[i], i).second) {
      throw InputError("duplicate state id " + data.states[i]);
    }
  }
  instance.states_ = std::move(data.states);

  std::sort(data.realizations.begin(), data.realizations.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < data.realizations.size(); ++i) {
    const auto& real_data = data.realizations[i];
    if (real_data.id.empty()) {
      throw InputError("empty realization id");
    }
    if (!instance.realization_ix_by_id_.emplace(real_data.id, i).second) {
      throw InputError("duplicate realization id " + real_data.id);
    }
    if (!(real_data.weight > 0)) {
      throw InputError("realization " + real_data.id +
                       " must have strictly positive weight");
    }
    Realization real;
    real.id = real_data.id;
    real.weight = real_data.weight;
    real.state.assign(instance.items_.size(), -1);
    for (const auto& [item_id, state_id] : real_data.assignment) {
      ItemIx e = instance.item_ix(item_id);
      if (real.state[e] != -1) {
        throw InputError("realization " + real.id + " assigns item " + item_id +
                         " twice");
      }
      real.state[e] = instance.state_ix(state_id);
    }
    for (std::size_t e = 0; e < instance.items_.size(); ++e) {
      if (real.state[e] == -1) {
        throw InputError("realization " + real.id + " misses item " +
                         instance.items_[e].id);
      }
    }
    instance.realizations_.push_back(std::move(real));
  }

  const int n = instance.item_count();
  const int s = instance.state_count();
  Utility utility;
  switch (data.utility_kind) {
    case InstanceData::UtilityKind::Modular: {
      ModularUtility modular;
      modular.value.assign(n, std::vector<Rational>(s, Rational(0)));
      for (const auto& [item_id, state_id, value] : data.modular_values) {
        if (value < 0) {
          throw InputError("modular value for " + item_id + " must be nonnegative");
        }
        modular.value[instance.item_ix(item_id)][instance.state_ix(state_id)] = value;
      }
      utility.base = std::move(modular);
      break;
    }
    case InstanceData::UtilityKind::Coverage: {
      CoverageUtility coverage;
      std::sort(data.elements.begin(), data.elements.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      std::map<std::string, int, std::less<>> element_ix;
      for (const auto& [id, weight] : data.elements) {
        if (id.empty()) {
          throw InputError("empty element id");
        }
        if (weight < 0) {
          throw InputError("element " + id + " must have nonnegative weight");
        }
        if (!element_ix.emplace(id, coverage.element_ids.size()).second) {
          throw InputError("duplicate element id " + id);
        }
        coverage.element_ids.push_back(id);
        coverage.element_weight.push_back(weight);
      }
      coverage.covers.assign(n, std::vector<std::vector<int>>(s));
      for (const auto& [item_id, state_id, covered] : data.covers) {
        auto& slot =
            coverage.covers[instance.item_ix(item_id)][instance.state_ix(state_id)];
        for (const std::string& elem : covered) {
          auto it = element_ix.find(elem);
          if (it == element_ix.end()) {
            throw InputError("unknown element id " + elem);
          }
          slot.push_back(it->second);
        }
        std::sort(slot.begin(), slot.end());
        slot.erase(std::unique(slot.begin(), slot.end()), slot.end());
      }
      utility.base = std::move(coverage);
      break;
    }
    case InstanceData::UtilityKind::Identification:
      utility.base = IdentificationUtility{};
      break;
    case InstanceData::UtilityKind::Table: {
      TableUtility table;
      for (const auto& [pattern_data, value] : data.table_entries) {
        if (value < 0) {
          throw InputError("table value must be nonnegative");
        }
        ObservationPattern pattern;
        for (const auto& [item_id, state_id] : pattern_data) {
          pattern.push_back({instance.item_ix(item_id), instance.state_ix(state_id)});
        }
        std::sort(pattern.begin(), pattern.end());
        for (std::size_t i = 1; i < pattern.size(); ++i) {
          if (pattern[i - 1].item == pattern[i].item) {
            throw InputError("table pattern assigns an item twice");
          }
        }
        if (!table.entries.emplace(std::move(pattern), value).second) {
          throw InputError("duplicate table pattern");
        }
      }
      auto empty_it = table.entries.find(ObservationPattern{});
      if (empty_it == table.entries.end() || empty_it->second != 0) {
        throw InputError("table utility must map the empty pattern to 0");
      }
      utility.base = std::move(table);
      break;
    }
  }
  if (data.cap.has_value()) {
    utility = truncate_utility(utility, *data.cap);
  }
  instance.utility_ = std::move(utility);
  return instance;
}

ItemIx Instance::item_ix(std::string_view id) const {
  auto it = item_ix_by_id_.find(id);
  if (it == item_ix_by_id_.end()) {
    throw InputError("unknown item id " + std::string(id));
  }
  return it->second;
}

StateIx Instance::state_ix(std::string_view id) const {
  auto it = state_ix_by_id_.find(id);
  if (it == state_ix_by_id_.end()) {
    throw InputError("unknown state id " + std::string(id));
  }
  return it->second;
}

RealIx Instance::realization_ix(std::string_view id) const {
  auto it = realization_ix_by_id_.find(id);
  if (it == realization_ix_by_id_.end()) {
    throw InputError("unknown realization id " + std::string(id));
  }
  return it->second;
}

ItemSet Instance::all_items() const {
  if (item_count() == kMaxItems) {
    return ~ItemSet{0};
  }
  return (ItemSet{1} << item_count()) - 1;
}

Rational Instance::total_cost() const {
  Rational total = 0;
  for (const Item& item : items_) {
    total += item.cost;
  }
  return total;
}

Rational Instance::min_item_cost() const {
  Rational best = items_.front().cost;
  for (const Item& item : items_) {
    best = std::min(best, item.cost);
  }
  return best;
}

Instance Instance::with_utility(Utility utility) const {
  Instance copy = *this;
  copy.utility_ = std::move(utility);
  return copy;
}

Instance Instance::restricted_to(ItemSet keep) const {
  std::vector<ItemIx> kept;
  std::vector<int> new_ix(item_count(), -1);
  for (int e = 0; e < item_count(); ++e) {
    if (keep >> e & 1) {
      new_ix[e] = static_cast<int>(kept.size());
      kept.push_back(e);
    }
  }
  if (kept.empty()) {
    throw InputError("cannot restrict an instance to zero items");
  }

  Instance out;
  for (ItemIx e : kept) {
    out.item_ix_by_id_.emplace(items_[e].id, out.items_.size());
    out.items_.push_back(items_[e]);
  }
  out.states_ = states_;
  out.state_ix_by_id_ = state_ix_by_id_;
  for (const Realization& real : realizations_) {
    Realization projected;
    projected.id = real.id;
    projected.weight = real.weight;
    for (ItemIx e : kept) {
      projected.state.push_back(real.state[e]);
    }
    out.realization_ix_by_id_.emplace(projected.id, out.realizations_.size());
    out.realizations_.push_back(std::move(projected));
  }

  Utility utility;
  utility.cap = utility_.cap;
  if (const auto* modular = std::get_if<ModularUtility>(&utility_.base)) {
    ModularUtility projected;
    for (ItemIx e : kept) {
      projected.value.push_back(modular->value[e]);
    }
    utility.base = std::move(projected);
  } else if (const auto* coverage = std::get_if<CoverageUtility>(&utility_.base)) {
    CoverageUtility projected;
    projected.element_ids = coverage->element_ids;
    projected.element_weight = coverage->element_weight;
    for (ItemIx e : kept) {
      projected.covers.push_back(coverage->covers[e]);
    }
    utility.base = std::move(projected);
  } else if (std::holds_alternative<IdentificationUtility>(utility_.base)) {
    utility.base = IdentificationUtility{};
  } else {
    const auto& table = std::get<TableUtility>(utility_.base);
    TableUtility projected;
    for (const auto& [pattern, value] : table.entries) {
      bool inside = true;
      ObservationPattern remapped;
      for (Observation o : pattern) {
        if (new_ix[o.item] == -1) {
          inside = false;
          break;
        }
        remapped.push_back({new_ix[o.item], o.state});
      }
      if (inside) {
        projected.entries.emplace(std::move(remapped), value);
      }
    }
    utility.base = std::move(projected);
  }
  out.utility_ = std::move(utility);
  return out;
}

bool Instance::operator==(const Instance& other) const {
  return items_ == other.items_ && states_ == other.states_ &&
         realizations_ == other.realizations_ && utility_ == other.utility_;
}

bool consistent(const Instance& instance, RealIx phi, const PartialRealization& psi) {
  validate_observation_range(instance, psi);
  const Realization& real = instance.realization(phi);
  for (const Observation& o : psi.observations()) {
    if (real.state[o.item] != o.state) {
      return false;
    }
  }
  return true;
}

std::vector<RealIx> consistent_realizations(const Instance& instance,
                                            const PartialRealization& psi) {
  std::vector<RealIx> result;
  for (int r = 0; r < instance.realization_count(); ++r) {
    if (consistent(instance, r, psi)) {
      result.push_back(r);
    }
  }
  return result;
}

std::vector<StateIx> possible_states(const Instance& instance, ItemIx e,
                                     const PartialRealization& psi) {
  if (e < 0 || e >= instance.item_count()) {
    throw InputError("unknown item index " + std::to_string(e));
  }
  if (psi.has_item(e)) {
    throw InputError("item " + instance.item(e).id + " is already observed");
  }
  std::set<StateIx> states;
  for (RealIx phi : consistent_realizations(instance, psi)) {
    states.insert(instance.realization(phi).state[e]);
  }
  if (states.empty()) {
    throw InconsistentObservation(
        "partial realization is inconsistent with every realization");
  }
  return {states.begin(), states.end()};
}

Rational evaluate_ground(const Instance& instance, ItemSet selected, RealIx phi) {
  Rational value = base_ground_value(instance, instance.utility().base, selected, phi);
  if (instance.utility().cap.has_value()) {
    value = std::min(*instance.utility().cap, value);
  }
  return value;
}

Rational conditional_expected_utility(const Instance& instance,
                                      const PartialRealization& psi) {
  std::vector<RealIx> support = consistent_realizations(instance, psi);
  if (support.empty()) {
    throw InconsistentObservation(
        "partial realization is inconsistent with every realization");
  }
  ItemSet dom = psi.domain();
  Rational weighted = 0;
  Rational total_weight = 0;
  for (RealIx phi : support) {
    const Rational& w = instance.realization(phi).weight;
    weighted += w * evaluate_ground(instance, dom, phi);
    total_weight += w;
  }
  return weighted / total_weight;
}

Rational worst_case_marginal(const Instance& instance, ItemIx e,
                             const PartialRealization& psi) {
  Rational base = conditional_expected_utility(instance, psi);
  std::optional<Rational> worst;
  for (StateIx o : possible_states(instance, e, psi)) {
    Rational gain = conditional_expected_utility(instance, psi.extended({e, o})) - base;
    if (!worst || gain < *worst) {
      worst = gain;
    }
  }
  return *worst;
}

Instance truncate_instance(const Instance& instance, const Rational& cap) {
  return instance.with_utility(truncate_utility(instance.utility(), cap));
}

Observation observation(const Instance& instance, std::string_view item_id,
                        std::string_view state_id) {
  return {instance.item_ix(item_id), instance.state_ix(state_id)};
}

ItemSet item_set(const Instance& instance, std::initializer_list<std::string_view> ids) {
  ItemSet mask = 0;
  for (std::string_view id : ids) {
    mask |= ItemSet{1} << instance.item_ix(id);
  }
  return mask;
}

}  // namespace wcasc
