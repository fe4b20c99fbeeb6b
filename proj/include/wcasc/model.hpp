#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "wcasc/errors.hpp"
#include "wcasc/rational.hpp"

namespace wcasc {

// Items, states and realizations are referred to by dense indices inside the
// library; symbolic ids live on the Instance and at the file-format boundary.
// An Instance sorts items, states and realizations by id at construction, so
// index order coincides with lexicographic id order everywhere (this is what
// makes "lexicographically smallest" tie-breaking a plain index comparison).
using ItemIx = int;
using StateIx = int;
using RealIx = int;

// Bitmask over item indices. Instances are capped at 64 items.
using ItemSet = std::uint64_t;

inline constexpr int kMaxItems = 64;

struct Observation {
  ItemIx item = -1;
  StateIx state = -1;
  auto operator<=>(const Observation&) const = default;
};

// Sorted-by-item observation list; the canonical key for memo tables and
// table-utility patterns.
using ObservationPattern = std::vector<Observation>;

// Ordered, duplicate-free observation history. Order records when each item
// was selected; consistency and subrealization tests use set semantics.
class PartialRealization {
 public:
  PartialRealization() = default;
  PartialRealization(std::initializer_list<Observation> obs);
  static PartialRealization from_pattern(const ObservationPattern& pattern);

  // Throws InputError if the item already has an observation.
  void append(Observation obs);
  PartialRealization extended(Observation obs) const;

  bool has_item(ItemIx item) const;
  std::optional<StateIx> state_of(ItemIx item) const;
  ItemSet domain() const;
  std::size_t size() const { return observations_.size(); }
  bool empty() const { return observations_.empty(); }
  const std::vector<Observation>& observations() const { return observations_; }
  ObservationPattern canonical() const;

  bool operator==(const PartialRealization&) const = default;

 private:
  std::vector<Observation> observations_;
};

// True iff dom(a) is a subset of dom(b) and the two agree on dom(a).
bool is_subrealization(const PartialRealization& a, const PartialRealization& b);

struct Item {
  std::string id;
  Rational cost;  // strictly positive
  bool operator==(const Item&) const = default;
};

struct Realization {
  std::string id;
  std::vector<StateIx> state;  // indexed by ItemIx, total
  Rational weight;             // strictly positive
  bool operator==(const Realization&) const = default;
};

struct ModularUtility {
  // value[item][state], dense, every entry >= 0
  std::vector<std::vector<Rational>> value;
  bool operator==(const ModularUtility&) const = default;
};

struct CoverageUtility {
  std::vector<std::string> element_ids;  // sorted
  std::vector<Rational> element_weight;  // >= 0, parallel to element_ids
  // covers[item][state] -> sorted unique element indices
  std::vector<std::vector<std::vector<int>>> covers;
  bool operator==(const CoverageUtility&) const = default;
};

// Value of (S, phi) = number of realizations in U+ inconsistent with phi|_S.
struct IdentificationUtility {
  bool operator==(const IdentificationUtility&) const = default;
};

struct TableUtility {
  // Canonical pattern -> value (>= 0). Must contain the empty pattern with
  // value 0. One value per pattern makes the family minimal dependent.
  std::map<ObservationPattern, Rational> entries;
  bool operator==(const TableUtility&) const = default;
};

using BaseUtility =
    std::variant<ModularUtility, CoverageUtility, IdentificationUtility, TableUtility>;

// A base family plus an optional truncation cap; storing the cap beside the
// base encodes the "no nested truncation" invariant structurally.
struct Utility {
  BaseUtility base;
  std::optional<Rational> cap;
  bool operator==(const Utility&) const = default;
};

// Wraps (or tightens) the utility with min{cap, f}. Throws InputError on a
// negative cap. Applying it to an already-truncated utility keeps the smaller
// of the two caps.
Utility truncate_utility(const Utility& utility, const Rational& cap);

// Name-keyed construction input, shared by the parser and the generators.
struct InstanceData {
  struct RealizationData {
    std::string id;
    Rational weight;
    std::vector<std::pair<std::string, std::string>> assignment;  // item -> state
  };

  enum class UtilityKind { Modular, Coverage, Identification, Table };

  std::vector<Item> items;
  std::vector<std::string> states;
  std::vector<RealizationData> realizations;

  UtilityKind utility_kind = UtilityKind::Modular;
  std::vector<std::tuple<std::string, std::string, Rational>> modular_values;
  std::vector<std::pair<std::string, Rational>> elements;
  std::vector<std::tuple<std::string, std::string, std::vector<std::string>>> covers;
  std::vector<std::pair<std::vector<std::pair<std::string, std::string>>, Rational>>
      table_entries;
  std::optional<Rational> cap;
};

// Immutable problem input: items with costs, the state alphabet, the
// explicitly enumerated realization set U+ with positive weights, and the
// utility. All operations on it are pure.
class Instance {
 public:
  // Validates every model invariant; throws InputError on violation.
  static Instance create(InstanceData data);

  int item_count() const { return static_cast<int>(items_.size()); }
  int state_count() const { return static_cast<int>(states_.size()); }
  int realization_count() const { return static_cast<int>(realizations_.size()); }

  const Item& item(ItemIx ix) const { return items_.at(ix); }
  const std::string& state_id(StateIx ix) const { return states_.at(ix); }
  const Realization& realization(RealIx ix) const { return realizations_.at(ix); }
  const std::vector<Item>& items() const { return items_; }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<Realization>& realizations() const { return realizations_; }
  const Utility& utility() const { return utility_; }

  // Id lookup; throws InputError for unknown ids.
  ItemIx item_ix(std::string_view id) const;
  StateIx state_ix(std::string_view id) const;
  RealIx realization_ix(std::string_view id) const;

  ItemSet all_items() const;
  Rational total_cost() const;
  Rational min_item_cost() const;

  // Same instance with a different utility (used for goal truncation).
  Instance with_utility(Utility utility) const;

  // Restricts the ground set to `keep`: drops the other items from the item
  // list, every realization assignment, and the utility tables. Realizations
  // keep their ids and weights; projections that collide are kept as distinct
  // entries so identification counts and conditional expectations are
  // unchanged for any policy over the kept items.
  Instance restricted_to(ItemSet keep) const;

  bool operator==(const Instance& other) const;

 private:
  Instance() = default;

  std::vector<Item> items_;
  std::vector<std::string> states_;
  std::vector<Realization> realizations_;
  Utility utility_;
  std::map<std::string, int, std::less<>> item_ix_by_id_;
  std::map<std::string, int, std::less<>> state_ix_by_id_;
  std::map<std::string, int, std::less<>> realization_ix_by_id_;
};

// phi agrees with psi everywhere on dom(psi). Throws InputError if psi
// mentions an item or state outside the instance.
bool consistent(const Instance& instance, RealIx phi, const PartialRealization& psi);

// Realization indices consistent with psi, ascending. May be empty.
std::vector<RealIx> consistent_realizations(const Instance& instance,
                                            const PartialRealization& psi);

// States item `e` can still take given psi, ascending. Throws InputError when
// e is already observed, InconsistentObservation when psi rules out all of U+.
std::vector<StateIx> possible_states(const Instance& instance, ItemIx e,
                                     const PartialRealization& psi);

// f(S, phi) for the instance's utility.
Rational evaluate_ground(const Instance& instance, ItemSet selected, RealIx phi);

// f(psi): expected utility of dom(psi) conditioned on psi, i.e. the
// weight-weighted average of f(dom(psi), phi) over consistent phi.
Rational conditional_expected_utility(const Instance& instance,
                                      const PartialRealization& psi);

// Delta_wc(e | psi): minimum utility gain of e over its possible states.
Rational worst_case_marginal(const Instance& instance, ItemIx e,
                             const PartialRealization& psi);

// min{cap, f} applied to the whole instance.
Instance truncate_instance(const Instance& instance, const Rational& cap);

// Helpers for building index-level observations from symbolic ids.
Observation observation(const Instance& instance, std::string_view item_id,
                        std::string_view state_id);
ItemSet item_set(const Instance& instance, std::initializer_list<std::string_view> ids);

}  // namespace wcasc
