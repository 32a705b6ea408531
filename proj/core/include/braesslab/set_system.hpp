#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "braesslab/errors.hpp"

namespace braesslab {

// Resources are referred to by their index into the ground set.  Subsets of
// the ground set are kept as sorted, duplicate-free index lists, so set
// equality is plain vector equality and the natural vector ordering doubles
// as the lexicographic order used for tie-breaking throughout.
using IndexSet = std::vector<int>;

// Ordered list of named resources.  The position of a name defines the
// canonical order used everywhere else.
class GroundSet {
 public:
  explicit GroundSet(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(static_cast<size_t>(i)); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<int> index_of(std::string_view name) const;

  bool operator==(const GroundSet& other) const { return names_ == other.names_; }
  bool operator!=(const GroundSet& other) const { return !(*this == other); }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int, std::less<>> index_;
};

// --- sorted index set helpers -------------------------------------------

bool contains(const IndexSet& s, int e);
bool is_subset(const IndexSet& a, const IndexSet& b);        // a <= b
bool is_proper_subset(const IndexSet& a, const IndexSet& b); // a < b
IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_difference(const IndexSet& a, const IndexSet& b);
IndexSet set_symmetric_difference(const IndexSet& a, const IndexSet& b);
// X - e + g, the exchange-step set.
IndexSet exchange(const IndexSet& x, int drop, int add);
std::uint64_t to_mask(const IndexSet& s);
IndexSet from_mask(std::uint64_t mask, int ground_size);

// Finite family of nonempty subsets of a ground set.  Members are stored
// sorted and the family itself is kept in lexicographic order, so the family
// order is canonical and duplicate members are rejected.
class SetSystem {
 public:
  SetSystem(GroundSet ground, std::vector<IndexSet> sets);

  // Convenience constructor resolving resource names against the ground set.
  static SetSystem from_names(GroundSet ground,
                              const std::vector<std::vector<std::string>>& sets);

  const GroundSet& ground() const { return ground_; }
  const std::vector<IndexSet>& sets() const { return sets_; }
  int size() const { return static_cast<int>(sets_.size()); }
  bool contains_set(const IndexSet& s) const;

  // Names of the members of one set, in canonical order.
  std::vector<std::string> set_names(int i) const;

 private:
  GroundSet ground_;
  std::vector<IndexSet> sets_;
};

// A set system whose members form an antichain: no member contains another.
class Clutter {
 public:
  explicit Clutter(SetSystem system);
  Clutter(GroundSet ground, std::vector<IndexSet> sets)
      : Clutter(SetSystem(std::move(ground), std::move(sets))) {}

  const GroundSet& ground() const { return system_.ground(); }
  const std::vector<IndexSet>& sets() const { return system_.sets(); }
  int size() const { return system_.size(); }
  bool contains_set(const IndexSet& s) const { return system_.contains_set(s); }
  const SetSystem& as_system() const { return system_; }

 private:
  SetSystem system_;
};

// Inclusion-wise minimal members of a system.  Since costs are nonnegative,
// a game on a system and the game on its clutter share equilibrium costs, so
// this is the canonical reduction applied before any matroid reasoning.
Clutter minimal_clutter(const SetSystem& system);

}  // namespace braesslab
