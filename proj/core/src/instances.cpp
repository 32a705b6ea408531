#include "braesslab/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace braesslab {

namespace {

void subsets_of_size(int ground_size, int r, int start, IndexSet& current,
                     std::vector<IndexSet>& out) {
  if (static_cast<int>(current.size()) == r) {
    out.push_back(current);
    return;
  }
  for (int e = start; e <= ground_size - (r - static_cast<int>(current.size())); ++e) {
    current.push_back(e);
    subsets_of_size(ground_size, r, e + 1, current, out);
    current.pop_back();
  }
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[static_cast<size_t>(a)] != a) {
      parent[static_cast<size_t>(a)] = parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
      a = parent[static_cast<size_t>(a)];
    }
    return a;
  }
  // False when a and b are already connected.
  bool unite(int a, int b) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return false;
    parent[static_cast<size_t>(ra)] = rb;
    return true;
  }
};

std::vector<std::string> numbered_names(const char* prefix, int count) {
  std::vector<std::string> names;
  names.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) names.push_back(prefix + std::to_string(i));
  return names;
}

}  // namespace

std::vector<IndexSet> uniform_bases(int ground_size, int r) {
  if (r < 1 || r > ground_size) {
    throw ValidationError("uniform matroid rank must be between 1 and the ground size");
  }
  std::vector<IndexSet> out;
  IndexSet current;
  subsets_of_size(ground_size, r, 0, current, out);
  return out;
}

std::vector<IndexSet> partition_bases(const std::vector<IndexSet>& blocks,
                                      const std::vector<int>& capacities) {
  if (blocks.size() != capacities.size()) {
    throw ValidationError("need one capacity per partition block");
  }
  std::vector<IndexSet> out{{}};
  for (size_t j = 0; j < blocks.size(); ++j) {
    int cap = capacities[j];
    if (cap < 0 || cap > static_cast<int>(blocks[j].size())) {
      throw ValidationError("partition capacity out of range");
    }
    if (cap == 0) continue;
    std::vector<IndexSet> picks;
    IndexSet current;
    // Choose `cap` positions within the block.
    std::vector<IndexSet> position_sets;
    subsets_of_size(static_cast<int>(blocks[j].size()), cap, 0, current, position_sets);
    for (const auto& positions : position_sets) {
      IndexSet pick;
      for (int p : positions) pick.push_back(blocks[j][static_cast<size_t>(p)]);
      std::sort(pick.begin(), pick.end());
      picks.push_back(std::move(pick));
    }
    std::vector<IndexSet> next;
    next.reserve(out.size() * picks.size());
    for (const auto& base : out) {
      for (const auto& pick : picks) {
        next.push_back(set_union(base, pick));
      }
    }
    out = std::move(next);
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const IndexSet& s) { return s.empty(); }),
            out.end());
  if (out.empty()) {
    throw ValidationError("partition matroid has no nonempty base; raise a capacity");
  }
  return out;
}

std::vector<IndexSet> spanning_trees(int num_vertices,
                                     const std::vector<std::pair<int, int>>& edges) {
  if (num_vertices < 2) {
    throw ValidationError("spanning trees need at least two vertices");
  }
  const int tree_size = num_vertices - 1;
  std::vector<IndexSet> candidates;
  IndexSet current;
  subsets_of_size(static_cast<int>(edges.size()), tree_size, 0, current, candidates);
  std::vector<IndexSet> out;
  for (const auto& subset : candidates) {
    UnionFind uf(num_vertices);
    bool acyclic = true;
    for (int e : subset) {
      auto [u, v] = edges[static_cast<size_t>(e)];
      if (!uf.unite(u, v)) {
        acyclic = false;
        break;
      }
    }
    if (acyclic) out.push_back(subset);  // n-1 acyclic edges always span
  }
  if (out.empty()) {
    throw ValidationError("graph is not connected; it has no spanning tree");
  }
  return out;
}

std::vector<std::pair<int, int>> complete_graph_edges(int num_vertices) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < num_vertices; ++u) {
    for (int v = u + 1; v < num_vertices; ++v) edges.emplace_back(u, v);
  }
  return edges;
}

CostFunction queueing_delay_fit(double mu, double t_max, int segments, double* fit_error) {
  if (mu <= t_max) {
    throw ValidationError("queueing delay fit needs mu above the load range");
  }
  std::vector<std::pair<double, double>> bps;
  bps.reserve(static_cast<size_t>(segments) + 1);
  for (int k = 0; k <= segments; ++k) {
    double t = t_max * k / segments;
    bps.emplace_back(t, 1.0 / (mu - t));
  }
  double slope_at_end = 1.0 / ((mu - t_max) * (mu - t_max));
  CostFunction fit(std::move(bps), slope_at_end);
  if (fit_error) {
    double worst = 0.0;
    const int probes = segments * 64;
    for (int k = 0; k <= probes; ++k) {
      double t = t_max * k / probes;
      worst = std::max(worst, std::abs(fit.value(t) - 1.0 / (mu - t)));
    }
    *fit_error = worst;
  }
  return fit;
}

CostFunction random_cost_function(std::mt19937_64& rng, double load_scale) {
  std::uniform_int_distribution<int> extra_bps(0, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int k = extra_bps(rng);
  std::vector<double> loads;
  for (int i = 0; i < k; ++i) loads.push_back(unit(rng) * load_scale);
  std::sort(loads.begin(), loads.end());
  loads.erase(std::unique(loads.begin(), loads.end()), loads.end());
  loads.erase(std::remove_if(loads.begin(), loads.end(),
                             [](double t) { return t <= 0.0; }),
              loads.end());

  std::vector<std::pair<double, double>> bps;
  double value = 2.0 * unit(rng);
  bps.emplace_back(0.0, value);
  for (double t : loads) {
    value += 2.0 * unit(rng);  // nondecreasing jumps between segments
    bps.emplace_back(t, value);
  }
  // Keep a strictly positive tail slope; flat tails make equilibria
  // degenerate without exercising anything new.
  double final_slope = 0.05 + 2.0 * unit(rng);
  return CostFunction(std::move(bps), final_slope);
}

std::vector<IndexSet> random_matroid_bases(std::mt19937_64& rng, int ground_size) {
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<int> rank(1, ground_size);
  switch (kind(rng)) {
    case 0:
      return uniform_bases(ground_size, rank(rng));
    case 1: {
      // Random partition of the ground set with random capacities.
      std::uniform_int_distribution<int> block_count(1, ground_size);
      int nblocks = block_count(rng);
      std::vector<IndexSet> blocks(static_cast<size_t>(nblocks));
      std::uniform_int_distribution<int> block_of(0, nblocks - 1);
      for (int e = 0; e < ground_size; ++e) {
        blocks[static_cast<size_t>(block_of(rng))].push_back(e);
      }
      blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                                  [](const IndexSet& b) { return b.empty(); }),
                   blocks.end());
      std::vector<int> capacities;
      bool any = false;
      for (const auto& b : blocks) {
        std::uniform_int_distribution<int> cap(0, static_cast<int>(b.size()));
        int c = cap(rng);
        any = any || c > 0;
        capacities.push_back(c);
      }
      if (!any) capacities[0] = 1;
      return partition_bases(blocks, capacities);
    }
    default: {
      // Random connected multigraph with ground_size edges: a spanning tree
      // plus random extras.
      std::uniform_int_distribution<int> vertex_count(2, std::max(2, ground_size));
      int v = std::min(vertex_count(rng), ground_size + 1);
      std::vector<std::pair<int, int>> edges;
      for (int u = 1; u < v; ++u) {
        std::uniform_int_distribution<int> attach(0, u - 1);
        edges.emplace_back(attach(rng), u);
      }
      std::uniform_int_distribution<int> endpoint(0, v - 1);
      while (static_cast<int>(edges.size()) < ground_size) {
        int a = endpoint(rng), b = endpoint(rng);
        if (a == b) continue;
        edges.emplace_back(std::min(a, b), std::max(a, b));
      }
      return spanning_trees(v, edges);
    }
  }
}

CongestionModel random_matroid_model(std::mt19937_64& rng, int max_resources,
                                     int max_populations) {
  std::uniform_int_distribution<int> resources(2, max_resources);
  std::uniform_int_distribution<int> pops(1, max_populations);
  std::uniform_real_distribution<double> demand(0.1, 3.0);
  int m = resources(rng);
  int n = pops(rng);
  GroundSet ground(numbered_names("r", m));
  std::vector<CostFunction> costs;
  for (int e = 0; e < m; ++e) costs.push_back(random_cost_function(rng));
  std::vector<Population> populations;
  for (int i = 0; i < n; ++i) {
    populations.push_back(Population{"p" + std::to_string(i + 1), demand(rng),
                                     SetSystem(ground, random_matroid_bases(rng, m))});
  }
  return CongestionModel(std::move(ground), std::move(costs), std::move(populations));
}

CongestionModel random_system_model(std::mt19937_64& rng, int max_resources,
                                    int max_populations) {
  std::uniform_int_distribution<int> resources(2, max_resources);
  std::uniform_int_distribution<int> pops(1, max_populations);
  std::uniform_real_distribution<double> demand(0.1, 3.0);
  int m = resources(rng);
  int n = pops(rng);
  GroundSet ground(numbered_names("r", m));
  std::vector<CostFunction> costs;
  for (int e = 0; e < m; ++e) costs.push_back(random_cost_function(rng));
  std::vector<Population> populations;
  std::uniform_int_distribution<int> set_count(1, 5);
  std::uniform_int_distribution<int> element(0, m - 1);
  std::uniform_int_distribution<int> set_size(1, m);
  for (int i = 0; i < n; ++i) {
    std::vector<IndexSet> sets;
    // A ground set with m elements only has 2^m - 1 distinct nonempty subsets.
    int want = std::min(set_count(rng), (1 << m) - 1);
    while (static_cast<int>(sets.size()) < want) {
      IndexSet s;
      int size = set_size(rng);
      for (int k = 0; k < size; ++k) s.push_back(element(rng));
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      if (s.empty()) continue;
      if (std::find(sets.begin(), sets.end(), s) == sets.end()) sets.push_back(std::move(s));
    }
    populations.push_back(Population{"p" + std::to_string(i + 1), demand(rng),
                                     SetSystem(ground, std::move(sets))});
  }
  return CongestionModel(std::move(ground), std::move(costs), std::move(populations));
}

Reduction random_cost_reduction(std::mt19937_64& rng, const CongestionModel& m) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Reduction r;
  for (int e = 0; e < m.ground().size(); ++e) {
    if (unit(rng) < 0.5) continue;
    double factor = unit(rng);
    if (unit(rng) < 0.15) factor = 0.0;  // occasionally remove a cost entirely
    r.cost_overrides.emplace(m.ground().name(e), m.cost(e).scaled(factor));
  }
  return r;
}

Reduction random_demand_reduction(std::mt19937_64& rng, const CongestionModel& m) {
  std::uniform_int_distribution<int> pick(0, m.population_count() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto& pop = m.population(pick(rng));
  Reduction r;
  double u = unit(rng);
  if (u < 0.1) u = 0.0;  // sometimes remove the population entirely
  r.demand_overrides.emplace(pop.id, u * pop.demand);
  return r;
}

std::vector<IndexSet> random_antichain(std::mt19937_64& rng, int ground_size) {
  std::uniform_int_distribution<int> set_count(1, 2 * ground_size);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (true) {
    std::vector<IndexSet> sets;
    int want = set_count(rng);
    for (int k = 0; k < want; ++k) {
      IndexSet s;
      for (int e = 0; e < ground_size; ++e) {
        if (unit(rng) < 0.4) s.push_back(e);
      }
      if (!s.empty()) sets.push_back(std::move(s));
    }
    if (sets.empty()) continue;
    // Keep the inclusion-wise minimal sets; the result is an antichain.
    std::vector<IndexSet> minimal;
    for (size_t i = 0; i < sets.size(); ++i) {
      bool keep = true;
      for (size_t j = 0; j < sets.size() && keep; ++j) {
        if (i == j) continue;
        if (is_proper_subset(sets[j], sets[i])) keep = false;
        if (sets[j] == sets[i] && j < i) keep = false;  // drop duplicates once
      }
      if (keep) minimal.push_back(sets[i]);
    }
    if (!minimal.empty()) return minimal;
  }
}

}  // namespace braesslab
