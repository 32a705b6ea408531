#pragma once

#include <optional>
#include <string>
#include <vector>

#include "braesslab/cost.hpp"
#include "braesslab/matroid.hpp"
#include "braesslab/set_system.hpp"

namespace braesslab {

// Absolute tolerance for feasibility checks on strategy distributions.
inline constexpr double kFeasTol = 1e-9;
// A strategy counts as used when it carries more than this fraction of its
// population's demand.
inline constexpr double kUsedMassFraction = 1e-7;
// Default penalty constant standing in for "infinite" costs.
inline constexpr double kDefaultBigM = 1e6;

struct Population {
  std::string id;
  double demand = 0.0;
  SetSystem strategies;
};

// Nonatomic congestion game: resources with nondecreasing piecewise-linear
// costs and populations that each pick one strategy set from their system.
// The per-population minimal clutter and, where it exists, the matroid view
// of that clutter are computed once at construction; the solver and the
// paradox machinery read them from here.
class CongestionModel {
 public:
  CongestionModel(GroundSet ground, std::vector<CostFunction> costs,
                  std::vector<Population> populations);

  const GroundSet& ground() const { return ground_; }
  const std::vector<CostFunction>& costs() const { return costs_; }
  const CostFunction& cost(int e) const { return costs_.at(static_cast<size_t>(e)); }
  const std::vector<Population>& populations() const { return populations_; }
  const Population& population(int i) const { return populations_.at(static_cast<size_t>(i)); }
  int population_count() const { return static_cast<int>(populations_.size()); }
  std::optional<int> population_index(const std::string& id) const;

  const Clutter& population_clutter(int i) const;
  bool population_is_matroid(int i) const;
  // Null when the population's clutter is not a matroid basis family.
  const Matroid* population_matroid(int i) const;
  // Index of a strategy inside population i's system, or -1.
  int strategy_index(int i, const IndexSet& s) const;

  int total_strategy_count() const;

 private:
  GroundSet ground_;
  std::vector<CostFunction> costs_;
  std::vector<Population> populations_;
  std::vector<Clutter> clutters_;
  std::vector<std::optional<Matroid>> matroids_;
};

// Mass per (population, strategy), aligned with the population order and
// each population's canonical strategy order.
struct StrategyDistribution {
  std::vector<std::vector<double>> mass;
};

// All-population distribution putting each population's demand on one
// strategy index per population.
StrategyDistribution point_distribution(const CongestionModel& m,
                                        const std::vector<int>& strategy_per_population);

struct LoadVector {
  std::vector<double> load;                          // total load per resource
  std::vector<std::vector<double>> per_population;   // optional decomposition
};

// Aggregates strategy masses into resource loads.  Throws
// InfeasibleDistribution when a mass is negative or a population's masses do
// not sum to its demand (absolute tolerance kFeasTol).
LoadVector project_loads(const CongestionModel& m, const StrategyDistribution& x);

// Cost of one strategy at the given loads: sum of member resource costs.
double private_cost(const CongestionModel& m, const LoadVector& loads, const IndexSet& s);

// Convex potential whose minimizers over the distribution polytope are the
// Wardrop equilibria: sum over resources of the cost integral up to the load.
double beckmann_potential(const CongestionModel& m, const LoadVector& loads);

}  // namespace braesslab
