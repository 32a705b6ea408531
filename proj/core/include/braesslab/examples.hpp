#pragma once

#include <string>
#include <vector>

#include "braesslab/braess.hpp"
#include "braesslab/model.hpp"

namespace braesslab {

// Built-in model/reduction pairs used by the CLI and the test suite.
//
//   fig1     classic road network where opening a free crossing raises every
//            driver's equilibrium cost (strong paradox under a cost reduction)
//   fig2     three populations; retiring the middle one doubles the total
//            equilibrium cost (strong paradox under a demand reduction)
//   fig3     two populations sharing one congestible link; freeing a detour
//            doubles the second population's cost
//   mst-k4   spanning trees of the complete graph on four vertices; a matroid,
//            so reductions can only help (no paradox)
//   queue    parallel queueing servers with saturating delay curves; rank-one
//            matroids, immune as well
struct ExamplePair {
  std::string name;
  std::string description;
  CongestionModel model;
  Reduction reduction;
};

std::vector<std::string> example_names();

// Throws ValidationError for unknown names.
ExamplePair build_example(const std::string& name);

}  // namespace braesslab
