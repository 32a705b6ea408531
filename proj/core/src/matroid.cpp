#include "braesslab/matroid.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <tuple>

namespace braesslab {

namespace {

// A violating triple: X, Y in f and e in X\Y such that no g in Y\X repairs
// the exchange.  Returns true and fills `bad_e` with the smallest such e.
bool find_violation(const Clutter& f, const IndexSet& x, const IndexSet& y, int* bad_e) {
  IndexSet x_minus_y = set_difference(x, y);
  IndexSet y_minus_x = set_difference(y, x);
  for (int e : x_minus_y) {
    bool repaired = false;
    for (int g : y_minus_x) {
      if (f.contains_set(exchange(x, e, g))) {
        repaired = true;
        break;
      }
    }
    if (!repaired) {
      *bad_e = e;
      return true;
    }
  }
  return false;
}

}  // namespace

bool is_matroid_base_family(const Clutter& f) {
  const auto& sets = f.sets();
  for (const auto& x : sets) {
    for (const auto& y : sets) {
      if (&x == &y) continue;
      int e = -1;
      if (find_violation(f, x, y, &e)) return false;
    }
  }
  return true;
}

NonMatroidWitness nonmatroid_witness(const Clutter& f) {
  const auto& sets = f.sets();
  // Track the violation with |Y\X| minimal; the family is lexicographically
  // sorted and e is scanned ascending, so the first hit at the minimal size
  // is the lexicographically smallest (X, Y, e).
  int best_size = -1;
  size_t best_xi = 0, best_yi = 0;
  int best_e = -1;
  for (size_t xi = 0; xi < sets.size(); ++xi) {
    for (size_t yi = 0; yi < sets.size(); ++yi) {
      if (xi == yi) continue;
      IndexSet y_minus_x = set_difference(sets[yi], sets[xi]);
      int size = static_cast<int>(y_minus_x.size());
      if (best_size >= 0 && size >= best_size) continue;
      int e = -1;
      if (find_violation(f, sets[xi], sets[yi], &e)) {
        best_size = size;
        best_xi = xi;
        best_yi = yi;
        best_e = e;
      }
    }
  }
  if (best_size < 0) {
    throw WitnessNotFound("clutter satisfies the basis exchange axiom; no witness exists");
  }

  const IndexSet& x = sets[best_xi];
  const IndexSet& y = sets[best_yi];
  NonMatroidWitness w;
  w.x = x;
  w.y = y;
  IndexSet y_minus_x = set_difference(y, x);
  if (y_minus_x.size() == 1) {
    // Y\X = {a}; the violation pins b and c inside X\Y.
    w.a = y_minus_x[0];
    IndexSet x_minus_y = set_difference(x, y);
    w.b = x_minus_y.at(0);
    w.c = x_minus_y.at(1);
  } else {
    w.a = best_e;
    w.b = y_minus_x.at(0);
    w.c = y_minus_x.at(1);
  }
  return w;
}

bool verify_witness(const Clutter& f, const NonMatroidWitness& w) {
  if (!f.contains_set(w.x) || !f.contains_set(w.y)) return false;
  if (w.a == w.b || w.a == w.c || w.b == w.c) return false;
  IndexSet sym = set_symmetric_difference(w.x, w.y);
  if (!contains(sym, w.a) || !contains(sym, w.b) || !contains(sym, w.c)) return false;
  IndexSet cover = set_union(w.x, w.y);
  for (const auto& z : f.sets()) {
    if (!is_subset(z, cover)) continue;
    bool has_a = contains(z, w.a);
    bool has_bc = contains(z, w.b) && contains(z, w.c);
    if (!has_a && !has_bc) return false;
  }
  return true;
}

Matroid::Matroid(Clutter bases) : bases_(std::move(bases)) {
  if (!is_matroid_base_family(bases_)) {
    throw NotAMatroid("clutter is not the basis family of a matroid");
  }
  full_rank_ = static_cast<int>(bases_.sets().front().size());
  if (bases_.ground().size() <= 64) {
    base_masks_.reserve(bases_.sets().size());
    for (const auto& b : bases_.sets()) base_masks_.push_back(to_mask(b));
  }
}

int Matroid::rank(const IndexSet& u) const {
  if (!base_masks_.empty()) return rank_of_mask(to_mask(u));
  int best = 0;
  for (const auto& b : bases_.sets()) {
    IndexSet common;
    std::set_intersection(b.begin(), b.end(), u.begin(), u.end(),
                          std::back_inserter(common));
    best = std::max(best, static_cast<int>(common.size()));
  }
  return best;
}

int Matroid::rank_of_mask(std::uint64_t u) const {
  int best = 0;
  for (std::uint64_t b : base_masks_) {
    best = std::max(best, std::popcount(b & u));
  }
  return best;
}

bool Matroid::is_independent(const IndexSet& s) const {
  for (const auto& b : bases_.sets()) {
    if (is_subset(s, b)) return true;
  }
  return false;
}

int matroid_rank(const Clutter& bases, const IndexSet& u) {
  return Matroid(bases).rank(u);
}

IndexSet min_weight_basis(const Matroid& m, std::span<const double> weights) {
  const int n = m.ground().size();
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return weights[static_cast<size_t>(a)] < weights[static_cast<size_t>(b)];
  });
  IndexSet basis;
  for (int e : order) {
    IndexSet candidate = basis;
    candidate.insert(std::lower_bound(candidate.begin(), candidate.end(), e), e);
    if (m.is_independent(candidate)) {
      basis = std::move(candidate);
      if (static_cast<int>(basis.size()) == m.rank()) break;
    }
  }
  return basis;
}

bool is_matroid_oracle_bruteforce(const Clutter& f) {
  const int n = f.ground().size();
  if (n > 20) {
    throw GroundSetTooLarge("brute-force matroid oracle is limited to 20 resources");
  }

  // Downward closure of the family.
  std::vector<char> independent(size_t{1} << n, 0);
  for (const auto& b : f.sets()) {
    std::uint32_t base = static_cast<std::uint32_t>(to_mask(b));
    // Enumerate all submasks of `base`, including the empty set.
    std::uint32_t sub = base;
    while (true) {
      independent[sub] = 1;
      if (sub == 0) break;
      sub = (sub - 1) & base;
    }
  }
  std::vector<std::uint32_t> members;
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << n); ++s) {
    if (independent[s]) members.push_back(s);
  }

  // Augmentation axiom on the closure.
  for (std::uint32_t big : members) {
    for (std::uint32_t small : members) {
      if (std::popcount(big) <= std::popcount(small)) continue;
      std::uint32_t candidates = big & ~small;
      bool augmented = false;
      while (candidates != 0) {
        std::uint32_t bit = candidates & (~candidates + 1);
        if (independent[small | bit]) {
          augmented = true;
          break;
        }
        candidates &= candidates - 1;
      }
      if (!augmented) return false;
    }
  }

  // The family must be exactly the maximal independent sets.
  std::vector<std::uint32_t> maximal;
  for (std::uint32_t s : members) {
    bool is_max = true;
    for (int e = 0; e < n && is_max; ++e) {
      std::uint32_t bit = std::uint32_t{1} << e;
      if (!(s & bit) && independent[s | bit]) is_max = false;
    }
    if (is_max) maximal.push_back(s);
  }
  std::vector<std::uint32_t> base_masks;
  for (const auto& b : f.sets()) base_masks.push_back(static_cast<std::uint32_t>(to_mask(b)));
  std::sort(base_masks.begin(), base_masks.end());
  std::sort(maximal.begin(), maximal.end());
  return base_masks == maximal;
}

}  // namespace braesslab
