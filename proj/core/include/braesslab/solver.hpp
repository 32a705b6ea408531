#pragma once

#include <cstdint>
#include <functional>

#include "braesslab/model.hpp"

namespace braesslab {

struct IterationStats {
  long iteration = 0;
  double potential = 0.0;
  double gap = 0.0;
};

struct SolverConfig {
  double gap_tolerance = 1e-8;
  long max_iterations = 200000;
  double line_search_tolerance = 1e-12;
  bool away_steps = true;
  // Carried into result documents for reproducibility; the solver itself is
  // deterministic and does not draw random numbers.
  std::uint64_t seed = 0;
  // Optional per-iteration hook (potential is only computed when set).
  std::function<void(const IterationStats&)> on_iteration;
};

struct BestResponse {
  IndexSet strategy;
  double cost = 0.0;
};

// Cheapest strategy of population i at the given loads.  Populations whose
// clutter is a matroid basis family use the matroid greedy; the rest are
// enumerated in canonical order, so ties resolve to the lexicographically
// smallest strategy.  Since costs are nonnegative, the cheapest member of
// the minimal clutter is also cheapest in the full system.
BestResponse best_response(const CongestionModel& m, int population, const LoadVector& loads);

// Total violation of the equilibrium conditions: sum over populations and
// strategies of mass * (strategy cost - best-response cost).  Zero exactly
// at Wardrop equilibria.
double wardrop_gap(const CongestionModel& m, const StrategyDistribution& x);

struct WardropResult {
  StrategyDistribution distribution;
  LoadVector loads;
  std::vector<double> resource_costs;
  // Cheapest strategy cost per population at the final loads; reported for
  // zero-demand populations as well.
  std::vector<double> population_costs;
  double gap = 0.0;
  double potential = 0.0;
  long iterations = 0;
  bool converged = false;
};

// Minimizes the potential by Frank-Wolfe over the product of scaled
// simplices.  Each iteration sweeps the populations one at a time: with
// away_steps enabled (the default) a population shifts mass from its most
// expensive supported strategy onto its best response — combining the toward
// and away directions into one swap, which removes penalty strategies
// exactly and avoids the zig-zagging of joint steps; with away_steps
// disabled it blends toward the best-response vertex instead.  Step sizes
// come from bisection on the monotone directional derivative of the
// potential.  Starts with all mass on each population's lexicographically
// first strategy.  Never throws on slow convergence: the best iterate is
// returned with converged = false.
WardropResult solve(const CongestionModel& m, const SolverConfig& cfg = {});
WardropResult solve_from(const CongestionModel& m, const SolverConfig& cfg,
                         StrategyDistribution initial);

// True when every strategy carrying more than kUsedMassFraction of its
// population's demand costs at most tol more than that population's best
// response.  Vacuously true for zero-demand populations.
bool check_equilibrium(const CongestionModel& m, const StrategyDistribution& x, double tol);

}  // namespace braesslab
