#pragma once

#include <initializer_list>
#include <string_view>
#include <utility>

#include "wcasc/model.hpp"

// Hand-built fixtures, written out field by field on purpose: generator
// output is cross-checked against them.
namespace fixtures {

// Three items e1(4), e2(1), e3(1); two states; two equally weighted
// realizations. e1 is deterministically worth 6; e2/e3 are worth 6 in state
// o1 and 0 in o2, with exactly one of them in o1 under each realization, so
// {e2, e3} reaches 6 either way for cost 2 while the density greedy pays 4.
inline wcasc::Instance ce4() {
  wcasc::InstanceData data;
  data.items = {{"e1", 4}, {"e2", 1}, {"e3", 1}};
  data.states = {"o1", "o2"};
  data.realizations = {
      {"phi1", 1, {{"e1", "o1"}, {"e2", "o1"}, {"e3", "o2"}}},
      {"phi2", 1, {{"e1", "o1"}, {"e2", "o2"}, {"e3", "o1"}}},
  };
  data.utility_kind = wcasc::InstanceData::UtilityKind::Modular;
  data.modular_values = {{"e1", "o1", 6}, {"e2", "o1", 6}, {"e3", "o1", 6}};
  return wcasc::Instance::create(std::move(data));
}

// Two unit-cost items covering two unit-weight elements; goal 2. Densities tie
// at the root, the a=s2 branch already covers everything, the a=s1 branch
// needs b.
inline wcasc::Instance cov2() {
  wcasc::InstanceData data;
  data.items = {{"a", 1}, {"b", 1}};
  data.states = {"s1", "s2"};
  data.realizations = {
      {"phi1", 1, {{"a", "s1"}, {"b", "s1"}}},
      {"phi2", 1, {{"a", "s2"}, {"b", "s1"}}},
  };
  data.utility_kind = wcasc::InstanceData::UtilityKind::Coverage;
  data.elements = {{"x", 1}, {"y", 1}};
  data.covers = {
      {"a", "s1", {"x"}},
      {"a", "s2", {"x", "y"}},
      {"b", "s1", {"y"}},
      {"b", "s2", {"y"}},
  };
  return wcasc::Instance::create(std::move(data));
}

// Three hypotheses separated by two unit-cost binary tests.
inline wcasc::Instance id3() {
  wcasc::InstanceData data;
  data.items = {{"t1", 1}, {"t2", 1}};
  data.states = {"neg", "pos"};
  data.realizations = {
      {"h1", 1, {{"t1", "neg"}, {"t2", "neg"}}},
      {"h2", 1, {{"t1", "pos"}, {"t2", "neg"}}},
      {"h3", 1, {{"t1", "pos"}, {"t2", "pos"}}},
  };
  data.utility_kind = wcasc::InstanceData::UtilityKind::Identification;
  return wcasc::Instance::create(std::move(data));
}

// Table utility that decreases when b joins a: violates worst-case
// monotonicity with witness psi={a=s1}, e=b.
inline wcasc::Instance table_decreasing() {
  wcasc::InstanceData data;
  data.items = {{"a", 1}, {"b", 1}};
  data.states = {"s1"};
  data.realizations = {{"r1", 1, {{"a", "s1"}, {"b", "s1"}}}};
  data.utility_kind = wcasc::InstanceData::UtilityKind::Table;
  data.table_entries = {
      {{}, 0},
      {{{"a", "s1"}}, 2},
      {{{"b", "s1"}}, 2},
      {{{"a", "s1"}, {"b", "s1"}}, 1},
  };
  return wcasc::Instance::create(std::move(data));
}

// Strictly supermodular pair on a single realization: pointwise check fails.
inline wcasc::Instance table_supermodular() {
  wcasc::InstanceData data;
  data.items = {{"a", 1}, {"b", 1}};
  data.states = {"s1"};
  data.realizations = {{"r1", 1, {{"a", "s1"}, {"b", "s1"}}}};
  data.utility_kind = wcasc::InstanceData::UtilityKind::Table;
  data.table_entries = {
      {{}, 0},
      {{{"a", "s1"}}, 0},
      {{{"b", "s1"}}, 0},
      {{{"a", "s1"}, {"b", "s1"}}, 1},
  };
  return wcasc::Instance::create(std::move(data));
}

// Deterministic two-item modular instance: a beats b on density, both cost 2.
inline wcasc::Instance two_item_budget() {
  wcasc::InstanceData data;
  data.items = {{"a", 2}, {"b", 2}};
  data.states = {"s1"};
  data.realizations = {{"r1", 1, {{"a", "s1"}, {"b", "s1"}}}};
  data.utility_kind = wcasc::InstanceData::UtilityKind::Modular;
  data.modular_values = {{"a", "s1", 5}, {"b", "s1", 3}};
  return wcasc::Instance::create(std::move(data));
}

inline wcasc::PartialRealization obs(
    const wcasc::Instance& instance,
    std::initializer_list<std::pair<std::string_view, std::string_view>> pairs) {
  wcasc::PartialRealization psi;
  for (const auto& [item, state] : pairs) {
    psi.append(wcasc::observation(instance, item, state));
  }
  return psi;
}

}  // namespace fixtures
