#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "braesslab/cost.hpp"
#include "braesslab/matroid.hpp"

namespace braesslab {

// Nonnegative-weighted sum of matroid rank functions over a shared ground
// set: rho(U) = sum_i weight_i * rank_i(U).  Such a rho is submodular,
// monotone and normalized, and its base polytope is the Minkowski sum of the
// scaled matroid base polytopes, which is exactly the load polytope of a
// congestion game whose populations are matroids.
struct WeightedRank {
  double weight = 0.0;
  Matroid matroid;
};

class WeightedRankSum {
 public:
  WeightedRankSum(GroundSet ground, std::vector<WeightedRank> terms);

  const GroundSet& ground() const { return ground_; }
  const std::vector<WeightedRank>& terms() const { return terms_; }

  double rho(const IndexSet& u) const;
  double rho_of_mask(std::uint64_t u) const;  // ground size <= 64 only
  double total() const;                       // rho of the full ground set

 private:
  GroundSet ground_;
  std::vector<WeightedRank> terms_;
};

// Point in resource space, one coordinate per ground-set element.
using BaseVector = std::vector<double>;

// Membership test for the base polytope { x >= 0 : x(U) <= rho(U) for all U,
// x(E) = rho(E) } by full subset enumeration.  Limited to 20 resources.
bool in_base_polytope(const WeightedRankSum& ws, const BaseVector& x, double tol = 1e-9);

struct ExchangeCapacity {
  int from = -1;
  int to = -1;
  double capacity = 0.0;
};

// Largest eps such that x + eps*(chi_to - chi_from) stays in the base
// polytope: min of x_from and of rho(U) - x(U) over subsets U containing
// `to` but not `from`.  Brute force over subsets; limited to 20 resources.
ExchangeCapacity exchange_capacity(const WeightedRankSum& ws, const BaseVector& x,
                                   int from, int to);

// Minimizer of <weights, x> over the base polytope.  Edmonds' greedy: sort
// elements by ascending weight (ties by canonical order) and take marginal
// gains of rho along the prefix chain.
BaseVector greedy_min_base(const WeightedRankSum& ws, std::span<const double> weights);

// One violated local-exchange optimality condition: mass could move from
// `from` to `to` (positive capacity) even though `from` is the strictly more
// expensive resource.
struct CostViolation {
  int from = -1;
  int to = -1;
  double capacity = 0.0;
  double cost_from = 0.0;
  double cost_to = 0.0;
};

struct CertificateReport {
  std::vector<CostViolation> violations;
  bool certified() const { return violations.empty(); }
};

// Local-exchange optimality certificate for loads x over the base polytope:
// x minimizes the potential iff no pair (from, to) with positive exchange
// capacity has cost_from > cost_to.  Lists every violating ordered pair with
// capacity > tol and cost gap > tol.  Limited to 20 resources.
CertificateReport certify_optimality(const WeightedRankSum& ws, const BaseVector& x,
                                     const std::vector<CostFunction>& costs, double tol);

}  // namespace braesslab
