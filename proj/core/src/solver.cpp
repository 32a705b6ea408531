#include "braesslab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace braesslab {

namespace {

std::vector<double> resource_costs_at(const CongestionModel& m, const LoadVector& loads) {
  std::vector<double> rc(static_cast<size_t>(m.ground().size()));
  for (int e = 0; e < m.ground().size(); ++e) {
    rc[static_cast<size_t>(e)] = m.cost(e).value(loads.load[static_cast<size_t>(e)]);
  }
  return rc;
}

double strategy_cost(const IndexSet& s, const std::vector<double>& rc) {
  double sum = 0.0;
  for (int e : s) sum += rc[static_cast<size_t>(e)];
  return sum;
}

int best_response_index(const CongestionModel& m, int i, const std::vector<double>& rc,
                        double* cost_out) {
  const auto& sets = m.population(i).strategies.sets();
  if (const Matroid* matroid = m.population_matroid(i)) {
    IndexSet basis = min_weight_basis(*matroid, rc);
    int idx = m.strategy_index(i, basis);
    // The greedy returns a member of the minimal clutter, which is always a
    // strategy of the population.
    *cost_out = strategy_cost(basis, rc);
    return idx;
  }
  int best = 0;
  double best_cost = strategy_cost(sets[0], rc);
  for (size_t s = 1; s < sets.size(); ++s) {
    double cost = strategy_cost(sets[s], rc);
    if (cost < best_cost) {
      best_cost = cost;
      best = static_cast<int>(s);
    }
  }
  *cost_out = best_cost;
  return best;
}

// Directional derivative of the potential along delta at offset gamma.
double derivative_along(const CongestionModel& m, const std::vector<double>& load,
                        const std::vector<double>& delta, double gamma) {
  double h = 0.0;
  for (size_t e = 0; e < load.size(); ++e) {
    if (delta[e] == 0.0) continue;
    h += m.cost(static_cast<int>(e)).value(load[e] + gamma * delta[e]) * delta[e];
  }
  return h;
}

// Largest step in [0, gamma_max] that keeps the potential nonincreasing:
// the derivative is nondecreasing in gamma, so bisect for its zero crossing
// and return the lower end of the bracket.
double line_search(const CongestionModel& m, const std::vector<double>& load,
                   const std::vector<double>& delta, double gamma_max, double tol) {
  if (derivative_along(m, load, delta, gamma_max) <= 0.0) return gamma_max;
  if (derivative_along(m, load, delta, 0.0) >= 0.0) return 0.0;
  double lo = 0.0, hi = gamma_max;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at machine resolution
    if (derivative_along(m, load, delta, mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// Steepest segment of a cost function.  Used to scale line-search tolerances
// so a step is located to roughly constant *cost* precision: near-vertical
// segments need a much finer bracket on the step size itself.
double max_slope(const CostFunction& c) {
  double s = c.final_slope();
  const auto& bps = c.breakpoints();
  for (size_t i = 1; i < bps.size(); ++i) {
    s = std::max(s, (bps[i].second - bps[i - 1].second) / (bps[i].first - bps[i - 1].first));
  }
  return s;
}

}  // namespace

BestResponse best_response(const CongestionModel& m, int population, const LoadVector& loads) {
  std::vector<double> rc = resource_costs_at(m, loads);
  double cost = 0.0;
  int idx = best_response_index(m, population, rc, &cost);
  return {m.population(population).strategies.sets()[static_cast<size_t>(idx)], cost};
}

double wardrop_gap(const CongestionModel& m, const StrategyDistribution& x) {
  LoadVector loads = project_loads(m, x);
  std::vector<double> rc = resource_costs_at(m, loads);
  double gap = 0.0;
  for (int i = 0; i < m.population_count(); ++i) {
    const auto& pop = m.population(i);
    if (pop.demand == 0.0) continue;
    double best_cost = 0.0;
    best_response_index(m, i, rc, &best_cost);
    const auto& masses = x.mass[static_cast<size_t>(i)];
    for (size_t s = 0; s < masses.size(); ++s) {
      if (masses[s] == 0.0) continue;
      gap += masses[s] * (strategy_cost(pop.strategies.sets()[s], rc) - best_cost);
    }
  }
  return std::max(gap, 0.0);
}

WardropResult solve(const CongestionModel& m, const SolverConfig& cfg) {
  // All mass on the lexicographically first strategy; the swap steps will
  // drain it even when it is an expensive one.
  std::vector<int> first(static_cast<size_t>(m.population_count()), 0);
  return solve_from(m, cfg, point_distribution(m, first));
}

WardropResult solve_from(const CongestionModel& m, const SolverConfig& cfg,
                         StrategyDistribution initial) {
  if (m.total_strategy_count() > 100000) {
    throw ValidationError("solver enumerates strategies and is limited to 100000 in total");
  }
  StrategyDistribution x = std::move(initial);
  project_loads(m, x);  // validates feasibility of the start point

  const int n = m.population_count();
  const size_t ne = static_cast<size_t>(m.ground().size());
  double gap = std::numeric_limits<double>::infinity();
  bool converged = false;
  long iter = 0;

  std::vector<double> delta(ne);
  std::vector<double> steepness(ne);
  for (size_t e = 0; e < ne; ++e) steepness[e] = max_slope(m.cost(static_cast<int>(e)));

  for (; iter < cfg.max_iterations; ++iter) {
    // Fresh projection at every sweep start so incremental load updates
    // cannot accumulate drift.
    LoadVector loads = project_loads(m, x);
    std::vector<double> rc = resource_costs_at(m, loads);

    double fw_gap = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto& pop = m.population(i);
      if (pop.demand == 0.0) continue;
      double best_cost = 0.0;
      best_response_index(m, i, rc, &best_cost);
      const auto& masses = x.mass[static_cast<size_t>(i)];
      const auto& sets = pop.strategies.sets();
      double mass_cost = 0.0;
      for (size_t s = 0; s < masses.size(); ++s) {
        if (masses[s] <= 0.0) continue;
        mass_cost += masses[s] * strategy_cost(sets[s], rc);
      }
      fw_gap += mass_cost - pop.demand * best_cost;
    }
    gap = std::max(fw_gap, 0.0);

    if (cfg.on_iteration) {
      cfg.on_iteration({iter, beckmann_potential(m, loads), gap});
    }
    if (gap <= cfg.gap_tolerance) {
      converged = true;
      break;
    }

    // One pass over the populations, each taking its own exact step while the
    // others stay fixed.  Moving populations one at a time avoids the
    // zig-zagging a joint step suffers when populations share resources.
    bool moved = false;
    for (int i = 0; i < n; ++i) {
      const auto& pop = m.population(i);
      if (pop.demand == 0.0) continue;
      rc = resource_costs_at(m, loads);
      auto& masses = x.mass[static_cast<size_t>(i)];
      const auto& sets = pop.strategies.sets();
      auto& pl = loads.per_population[static_cast<size_t>(i)];
      int away = -1;
      double away_cost = 0.0;
      for (size_t s = 0; s < masses.size(); ++s) {
        if (masses[s] <= 0.0) continue;
        double cost = strategy_cost(sets[s], rc);
        if (away < 0 || cost > away_cost) {
          away = static_cast<int>(s);
          away_cost = cost;
        }
      }
      if (away < 0) continue;
      int target = -1;
      double gamma_max = 1.0;
      std::fill(delta.begin(), delta.end(), 0.0);
      if (cfg.away_steps) {
        // Swap step: shift mass from the costliest supported strategy onto a
        // cheaper one.  The target is chosen by the largest drop predicted
        // from a local quadratic model of the potential; picking the cheapest
        // strategy outright stalls when it differs from the source by a
        // near-vertical cost segment, where a hair of mass erases the entire
        // cost advantage.
        const IndexSet& from = sets[static_cast<size_t>(away)];
        double away_mass = masses[static_cast<size_t>(away)];
        double target_gain = 0.0;
        for (size_t s = 0; s < sets.size(); ++s) {
          if (static_cast<int>(s) == away) continue;
          double drop = away_cost - strategy_cost(sets[s], rc);
          if (drop <= 0.0) continue;
          // Curvature along the swap: one-sided cost slopes over the
          // symmetric difference, by a merge walk of the sorted sets.
          const IndexSet& to = sets[s];
          double kappa = 0.0;
          size_t a = 0, b = 0;
          while (a < from.size() || b < to.size()) {
            int ea = a < from.size() ? from[a] : std::numeric_limits<int>::max();
            int eb = b < to.size() ? to[b] : std::numeric_limits<int>::max();
            if (ea == eb) {
              ++a, ++b;  // shared resource: load unchanged
            } else if (ea < eb) {
              kappa += m.cost(ea).slope_below(loads.load[static_cast<size_t>(ea)]);
              ++a;
            } else {
              kappa += m.cost(eb).slope_above(loads.load[static_cast<size_t>(eb)]);
              ++b;
            }
          }
          double step = away_mass;
          if (kappa > 0.0) step = std::min(step, drop / kappa);
          double gain = (drop - 0.5 * kappa * step) * step;
          if (target < 0 || gain > target_gain) {
            target = static_cast<int>(s);
            target_gain = gain;
          }
        }
        // No cheaper strategy at all: this population is optimal against the
        // current loads.
        if (target < 0) continue;
        for (int e : sets[static_cast<size_t>(target)]) delta[static_cast<size_t>(e)] += 1.0;
        for (int e : from) delta[static_cast<size_t>(e)] -= 1.0;
        gamma_max = away_mass;
      } else {
        // Plain conditional gradient: blend toward the best-response vertex.
        double best_cost = 0.0;
        target = best_response_index(m, i, rc, &best_cost);
        if (target == away) continue;
        for (size_t e = 0; e < ne; ++e) delta[e] = -pl[e];
        for (int e : sets[static_cast<size_t>(target)]) {
          delta[static_cast<size_t>(e)] += pop.demand;
        }
      }
      // Bracket the step to constant cost precision, not step precision: a
      // steep segment turns a loose step bracket into a large cost error.
      double steep = 0.0;
      for (size_t e = 0; e < ne; ++e) {
        if (delta[e] != 0.0) steep += std::abs(delta[e]) * steepness[e];
      }
      double tol = cfg.line_search_tolerance / std::max(1.0, steep);
      double gamma = line_search(m, loads.load, delta, gamma_max, tol);
      if (gamma <= 0.0) continue;
      moved = true;
      if (cfg.away_steps) {
        masses[static_cast<size_t>(away)] -= gamma;
        masses[static_cast<size_t>(target)] += gamma;
        // Snap a vanishing remainder onto the target so drops are exact.
        double residual = masses[static_cast<size_t>(away)];
        if (residual > 0.0 && residual < 1e-12 * std::max(1.0, pop.demand)) {
          masses[static_cast<size_t>(away)] = 0.0;
          masses[static_cast<size_t>(target)] += residual;
          gamma += residual;
        }
      } else {
        for (double& mass : masses) mass *= 1.0 - gamma;
        masses[static_cast<size_t>(target)] += gamma * pop.demand;
      }
      for (size_t e = 0; e < ne; ++e) {
        if (delta[e] == 0.0) continue;
        loads.load[e] += gamma * delta[e];
        pl[e] += gamma * delta[e];
      }
    }
    if (!moved) break;  // numerically stuck; report the best iterate
  }

  WardropResult result;
  result.loads = project_loads(m, x);
  result.resource_costs = resource_costs_at(m, result.loads);
  result.population_costs.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double cost = 0.0;
    best_response_index(m, i, result.resource_costs, &cost);
    result.population_costs[static_cast<size_t>(i)] = cost;
  }
  result.distribution = std::move(x);
  result.gap = wardrop_gap(m, result.distribution);
  result.potential = beckmann_potential(m, result.loads);
  result.iterations = iter;
  result.converged = converged;
  return result;
}

bool check_equilibrium(const CongestionModel& m, const StrategyDistribution& x, double tol) {
  LoadVector loads = project_loads(m, x);
  std::vector<double> rc = resource_costs_at(m, loads);
  for (int i = 0; i < m.population_count(); ++i) {
    const auto& pop = m.population(i);
    if (pop.demand == 0.0) continue;
    double best_cost = 0.0;
    best_response_index(m, i, rc, &best_cost);
    const auto& masses = x.mass[static_cast<size_t>(i)];
    for (size_t s = 0; s < masses.size(); ++s) {
      if (masses[s] <= kUsedMassFraction * pop.demand) continue;
      if (strategy_cost(pop.strategies.sets()[s], rc) > best_cost + tol) return false;
    }
  }
  return true;
}

}  // namespace braesslab
