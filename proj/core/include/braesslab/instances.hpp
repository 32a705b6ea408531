#pragma once

#include <random>
#include <utility>
#include <vector>

#include "braesslab/braess.hpp"
#include "braesslab/model.hpp"

namespace braesslab {

// --- deterministic family builders ---------------------------------------

// All r-subsets of the ground set (bases of the uniform matroid).
std::vector<IndexSet> uniform_bases(int ground_size, int r);

// Bases of a partition matroid: pick exactly capacity[j] elements from the
// j-th block.  Blocks must partition a subset of the ground indices.
std::vector<IndexSet> partition_bases(const std::vector<IndexSet>& blocks,
                                      const std::vector<int>& capacities);

// Spanning trees of a multigraph on vertices 0..num_vertices-1; edges[i]
// is the endpoint pair of ground element i (bases of the graphic matroid).
std::vector<IndexSet> spanning_trees(int num_vertices,
                                     const std::vector<std::pair<int, int>>& edges);

std::vector<std::pair<int, int>> complete_graph_edges(int num_vertices);

// Piecewise-linear interpolation of the M/M/1-style delay 1/(mu - t) on
// [0, t_max] with `segments` equal pieces; extended past t_max with the
// true derivative.  `fit_error`, when given, receives the maximum absolute
// deviation from the exact function on a dense grid.
CostFunction queueing_delay_fit(double mu, double t_max, int segments,
                                double* fit_error = nullptr);

// --- randomized generators ------------------------------------------------

// Nondecreasing piecewise-linear cost with a few random breakpoints.
// load_scale controls where the breakpoints live.
CostFunction random_cost_function(std::mt19937_64& rng, double load_scale = 2.0);

// Bases of a random uniform, partition or graphic matroid over the ground.
std::vector<IndexSet> random_matroid_bases(std::mt19937_64& rng, int ground_size);

// Model whose populations are all matroid basis systems (the immune class).
CongestionModel random_matroid_model(std::mt19937_64& rng, int max_resources = 8,
                                     int max_populations = 3);

// Model with arbitrary random strategy systems, matroid or not.
CongestionModel random_system_model(std::mt19937_64& rng, int max_resources = 6,
                                    int max_populations = 3);

// Scales a random subset of the costs down by random factors in [0, 1].
Reduction random_cost_reduction(std::mt19937_64& rng, const CongestionModel& m);

// Reduces one random population's demand to a random value in [0, demand).
Reduction random_demand_reduction(std::mt19937_64& rng, const CongestionModel& m);

// Random antichain of nonempty subsets over a ground set of the given size.
std::vector<IndexSet> random_antichain(std::mt19937_64& rng, int ground_size);

}  // namespace braesslab
