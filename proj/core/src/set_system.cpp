#include "braesslab/set_system.hpp"

#include <algorithm>
#include <iterator>

namespace braesslab {

GroundSet::GroundSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) {
    throw ValidationError("ground set must contain at least one resource");
  }
  for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
    if (names_[static_cast<size_t>(i)].empty()) {
      throw ValidationError("resource names must be nonempty");
    }
    auto [it, inserted] = index_.emplace(names_[static_cast<size_t>(i)], i);
    if (!inserted) {
      throw ValidationError("duplicate resource name '" + names_[static_cast<size_t>(i)] + "'");
    }
  }
}

std::optional<int> GroundSet::index_of(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool contains(const IndexSet& s, int e) {
  return std::binary_search(s.begin(), s.end(), e);
}

bool is_subset(const IndexSet& a, const IndexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool is_proper_subset(const IndexSet& a, const IndexSet& b) {
  return a.size() < b.size() && is_subset(a, b);
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IndexSet set_symmetric_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return out;
}

IndexSet exchange(const IndexSet& x, int drop, int add) {
  IndexSet out;
  out.reserve(x.size());
  for (int e : x) {
    if (e != drop) out.push_back(e);
  }
  auto pos = std::lower_bound(out.begin(), out.end(), add);
  if (pos == out.end() || *pos != add) out.insert(pos, add);
  return out;
}

std::uint64_t to_mask(const IndexSet& s) {
  std::uint64_t mask = 0;
  for (int e : s) mask |= std::uint64_t{1} << e;
  return mask;
}

IndexSet from_mask(std::uint64_t mask, int ground_size) {
  IndexSet out;
  for (int e = 0; e < ground_size; ++e) {
    if (mask & (std::uint64_t{1} << e)) out.push_back(e);
  }
  return out;
}

SetSystem::SetSystem(GroundSet ground, std::vector<IndexSet> sets)
    : ground_(std::move(ground)), sets_(std::move(sets)) {
  if (sets_.empty()) {
    throw ValidationError("set system must contain at least one set");
  }
  for (auto& s : sets_) {
    if (s.empty()) {
      throw ValidationError("set system members must be nonempty");
    }
    std::sort(s.begin(), s.end());
    for (size_t k = 0; k < s.size(); ++k) {
      if (s[k] < 0 || s[k] >= ground_.size()) {
        throw ValidationError("set member index " + std::to_string(s[k]) +
                              " is outside the ground set");
      }
      if (k > 0 && s[k] == s[k - 1]) {
        throw ValidationError("set contains resource '" + ground_.name(s[k]) +
                              "' more than once");
      }
    }
  }
  std::sort(sets_.begin(), sets_.end());
  for (size_t k = 1; k < sets_.size(); ++k) {
    if (sets_[k] == sets_[k - 1]) {
      throw ValidationError("set system contains a duplicate member");
    }
  }
}

SetSystem SetSystem::from_names(GroundSet ground,
                                const std::vector<std::vector<std::string>>& sets) {
  std::vector<IndexSet> index_sets;
  index_sets.reserve(sets.size());
  for (const auto& named : sets) {
    IndexSet s;
    s.reserve(named.size());
    for (const auto& n : named) {
      auto idx = ground.index_of(n);
      if (!idx) {
        throw ValidationError("unknown resource '" + n + "' in set system");
      }
      s.push_back(*idx);
    }
    index_sets.push_back(std::move(s));
  }
  return SetSystem(std::move(ground), std::move(index_sets));
}

bool SetSystem::contains_set(const IndexSet& s) const {
  return std::binary_search(sets_.begin(), sets_.end(), s);
}

std::vector<std::string> SetSystem::set_names(int i) const {
  std::vector<std::string> out;
  for (int e : sets_.at(static_cast<size_t>(i))) out.push_back(ground_.name(e));
  return out;
}

Clutter::Clutter(SetSystem system) : system_(std::move(system)) {
  const auto& sets = system_.sets();
  for (size_t i = 0; i < sets.size(); ++i) {
    for (size_t j = 0; j < sets.size(); ++j) {
      if (i != j && is_proper_subset(sets[i], sets[j])) {
        throw ValidationError("clutter members must form an antichain");
      }
    }
  }
}

Clutter minimal_clutter(const SetSystem& system) {
  const auto& sets = system.sets();
  std::vector<IndexSet> minimal;
  for (size_t i = 0; i < sets.size(); ++i) {
    bool has_smaller = false;
    for (size_t j = 0; j < sets.size() && !has_smaller; ++j) {
      if (i != j && is_proper_subset(sets[j], sets[i])) has_smaller = true;
    }
    if (!has_smaller) minimal.push_back(sets[i]);
  }
  return Clutter(SetSystem(system.ground(), std::move(minimal)));
}

}  // namespace braesslab
