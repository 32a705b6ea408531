#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "braesslab/set_system.hpp"

namespace braesslab {

// Decides whether the members of `f` are the bases of a matroid, via the
// basis exchange axiom: for all X, Y in f and every e in X\Y there is some
// g in Y\X with X - e + g in f.  Full enumeration, intended for desk-scale
// families.
bool is_matroid_base_family(const Clutter& f);

// Certificate that a clutter is not a matroid basis family.  X and Y are
// members, a, b, c are three distinct elements of their symmetric difference,
// and every member Z contained in X union Y contains a or contains both b
// and c.  This is exactly the structure the counterexample synthesizer
// needs: a forced choice between one marked resource and a marked pair.
struct NonMatroidWitness {
  IndexSet x;
  IndexSet y;
  int a = -1;
  int b = -1;
  int c = -1;
};

// Extracts a witness from a clutter that fails the exchange axiom.  Searches
// violating triples (X, Y, e) with |Y\X| minimal; among those the
// lexicographically smallest (X, Y, e, b, c) is returned.  For |Y\X| = 1 the
// single element of Y\X becomes a and b, c are picked from X\Y; otherwise
// a = e and b, c are picked from Y\X.  Throws WitnessNotFound when the
// clutter is a matroid basis family.
NonMatroidWitness nonmatroid_witness(const Clutter& f);

// Checks a witness by full enumeration: X, Y must be members, a, b, c
// distinct elements of the symmetric difference, and every member inside
// X union Y must contain a or both of b, c.
bool verify_witness(const Clutter& f, const NonMatroidWitness& w);

// Basis family validated once at construction, with rank queries.
class Matroid {
 public:
  explicit Matroid(Clutter bases);  // throws NotAMatroid

  const Clutter& bases() const { return bases_; }
  const GroundSet& ground() const { return bases_.ground(); }

  // rank(U) = max over bases |B intersect U|.
  int rank(const IndexSet& u) const;
  int rank_of_mask(std::uint64_t u) const;  // ground size <= 64 only
  int rank() const { return full_rank_; }

  // True when s extends to a basis.
  bool is_independent(const IndexSet& s) const;

 private:
  Clutter bases_;
  std::vector<std::uint64_t> base_masks_;  // empty when ground size > 64
  int full_rank_ = 0;
};

// One-shot rank query: validates the clutter (throws NotAMatroid) and ranks
// the subset.  Prefer constructing a Matroid when issuing many queries.
int matroid_rank(const Clutter& bases, const IndexSet& u);

// Minimum-weight basis by the matroid greedy: scan elements by ascending
// weight (ties by canonical order) and keep those that stay independent.
IndexSet min_weight_basis(const Matroid& m, std::span<const double> weights);

// Independent re-derivation of the matroid property from first principles:
// builds the downward closure of the family, checks the independence
// augmentation axiom by full enumeration, and checks that the family equals
// the maximal independent sets.  Exists purely to cross-check
// is_matroid_base_family; keep the two implementations separate.
// Throws GroundSetTooLarge beyond 20 resources.
bool is_matroid_oracle_bruteforce(const Clutter& f);

}  // namespace braesslab
