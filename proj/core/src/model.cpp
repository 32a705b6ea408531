#include "braesslab/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace braesslab {

CongestionModel::CongestionModel(GroundSet ground, std::vector<CostFunction> costs,
                                 std::vector<Population> populations)
    : ground_(std::move(ground)), costs_(std::move(costs)),
      populations_(std::move(populations)) {
  if (static_cast<int>(costs_.size()) != ground_.size()) {
    throw ValidationError("every resource needs exactly one cost function");
  }
  if (populations_.empty()) {
    throw ValidationError("model needs at least one population");
  }
  std::set<std::string> ids;
  for (const auto& pop : populations_) {
    if (pop.id.empty()) {
      throw ValidationError("population ids must be nonempty");
    }
    if (!ids.insert(pop.id).second) {
      throw ValidationError("duplicate population id '" + pop.id + "'");
    }
    if (!std::isfinite(pop.demand) || pop.demand < 0.0) {
      throw ValidationError("population '" + pop.id + "' needs a finite nonnegative demand");
    }
    if (pop.strategies.ground() != ground_) {
      throw ValidationError("population '" + pop.id +
                            "' is defined over a different ground set than the model");
    }
  }
  clutters_.reserve(populations_.size());
  matroids_.reserve(populations_.size());
  for (const auto& pop : populations_) {
    Clutter clutter = minimal_clutter(pop.strategies);
    if (is_matroid_base_family(clutter)) {
      matroids_.emplace_back(Matroid(clutter));
    } else {
      matroids_.emplace_back(std::nullopt);
    }
    clutters_.push_back(std::move(clutter));
  }
}

std::optional<int> CongestionModel::population_index(const std::string& id) const {
  for (int i = 0; i < population_count(); ++i) {
    if (populations_[static_cast<size_t>(i)].id == id) return i;
  }
  return std::nullopt;
}

const Clutter& CongestionModel::population_clutter(int i) const {
  return clutters_.at(static_cast<size_t>(i));
}

bool CongestionModel::population_is_matroid(int i) const {
  return matroids_.at(static_cast<size_t>(i)).has_value();
}

const Matroid* CongestionModel::population_matroid(int i) const {
  const auto& m = matroids_.at(static_cast<size_t>(i));
  return m ? &*m : nullptr;
}

int CongestionModel::strategy_index(int i, const IndexSet& s) const {
  const auto& sets = population(i).strategies.sets();
  auto it = std::lower_bound(sets.begin(), sets.end(), s);
  if (it != sets.end() && *it == s) return static_cast<int>(it - sets.begin());
  return -1;
}

int CongestionModel::total_strategy_count() const {
  int total = 0;
  for (const auto& pop : populations_) total += pop.strategies.size();
  return total;
}

StrategyDistribution point_distribution(const CongestionModel& m,
                                        const std::vector<int>& strategy_per_population) {
  if (static_cast<int>(strategy_per_population.size()) != m.population_count()) {
    throw ValidationError("need one strategy index per population");
  }
  StrategyDistribution x;
  x.mass.resize(strategy_per_population.size());
  for (int i = 0; i < m.population_count(); ++i) {
    const auto& pop = m.population(i);
    x.mass[static_cast<size_t>(i)].assign(static_cast<size_t>(pop.strategies.size()), 0.0);
    int s = strategy_per_population[static_cast<size_t>(i)];
    if (s < 0 || s >= pop.strategies.size()) {
      throw ValidationError("strategy index out of range for population '" + pop.id + "'");
    }
    x.mass[static_cast<size_t>(i)][static_cast<size_t>(s)] = pop.demand;
  }
  return x;
}

LoadVector project_loads(const CongestionModel& m, const StrategyDistribution& x) {
  const int n = m.population_count();
  if (static_cast<int>(x.mass.size()) != n) {
    throw InfeasibleDistribution("distribution has the wrong number of populations");
  }
  LoadVector out;
  out.load.assign(static_cast<size_t>(m.ground().size()), 0.0);
  out.per_population.assign(static_cast<size_t>(n),
                            std::vector<double>(static_cast<size_t>(m.ground().size()), 0.0));
  for (int i = 0; i < n; ++i) {
    const auto& pop = m.population(i);
    const auto& masses = x.mass[static_cast<size_t>(i)];
    if (static_cast<int>(masses.size()) != pop.strategies.size()) {
      throw InfeasibleDistribution("population '" + pop.id +
                                   "' has the wrong number of strategy masses");
    }
    double total = 0.0;
    for (size_t s = 0; s < masses.size(); ++s) {
      double mass = masses[s];
      if (!std::isfinite(mass) || mass < -kFeasTol) {
        throw InfeasibleDistribution("population '" + pop.id + "' has a negative strategy mass");
      }
      total += mass;
      if (mass == 0.0) continue;
      for (int e : pop.strategies.sets()[s]) {
        out.per_population[static_cast<size_t>(i)][static_cast<size_t>(e)] += mass;
      }
    }
    if (std::abs(total - pop.demand) > kFeasTol) {
      throw InfeasibleDistribution("population '" + pop.id + "' routes " +
                                   std::to_string(total) + " instead of its demand " +
                                   std::to_string(pop.demand));
    }
    for (size_t e = 0; e < out.load.size(); ++e) {
      out.load[e] += out.per_population[static_cast<size_t>(i)][e];
    }
  }
  return out;
}

double private_cost(const CongestionModel& m, const LoadVector& loads, const IndexSet& s) {
  double sum = 0.0;
  for (int e : s) {
    sum += m.cost(e).value(loads.load.at(static_cast<size_t>(e)));
  }
  return sum;
}

double beckmann_potential(const CongestionModel& m, const LoadVector& loads) {
  double sum = 0.0;
  for (int e = 0; e < m.ground().size(); ++e) {
    sum += m.cost(e).integral(loads.load.at(static_cast<size_t>(e)));
  }
  return sum;
}

}  // namespace braesslab
