#include "braesslab/examples.hpp"

#include <utility>

#include "braesslab/instances.hpp"

namespace braesslab {

namespace {

ExamplePair fig1() {
  GroundSet ground({"su", "sv", "uv", "ut", "vt"});
  std::vector<CostFunction> costs{CostFunction::linear(1.0), CostFunction::constant(1.0),
                                  CostFunction::constant(kDefaultBigM),
                                  CostFunction::constant(1.0), CostFunction::linear(1.0)};
  SetSystem paths = SetSystem::from_names(ground, {{"su", "ut"}, {"sv", "vt"},
                                                   {"su", "uv", "vt"}});
  CongestionModel model(std::move(ground), std::move(costs),
                        {Population{"p1", 1.0, std::move(paths)}});
  Reduction reduction;
  reduction.cost_overrides.emplace("uv", CostFunction::constant(0.0));
  return {"fig1",
          "two-route road network; making the crossing free raises everyone's cost",
          std::move(model), std::move(reduction)};
}

ExamplePair fig2() {
  GroundSet ground({"s1t1", "s1t2", "t2t1"});
  std::vector<CostFunction> costs{CostFunction::constant(2.0), CostFunction::linear(1.0),
                                  CostFunction({{0.0, 0.0}, {10.0, 0.0}}, 1.0)};
  SetSystem chooser = SetSystem::from_names(ground, {{"s1t1"}, {"s1t2", "t2t1"}});
  SetSystem upper = SetSystem::from_names(ground, {{"s1t2"}});
  SetSystem lower = SetSystem::from_names(ground, {{"t2t1"}});
  CongestionModel model(std::move(ground), std::move(costs),
                        {Population{"p1", 1.0, std::move(chooser)},
                         Population{"p2", 2.0, std::move(upper)},
                         Population{"p3", 10.0, std::move(lower)}});
  Reduction reduction;
  reduction.demand_overrides.emplace("p2", 0.0);
  return {"fig2",
          "retiring the middle population frees its link but overloads the shared one",
          std::move(model), std::move(reduction)};
}

ExamplePair fig3() {
  GroundSet ground({"s1t", "s2t", "s1s2"});
  std::vector<CostFunction> costs{CostFunction::constant(1.0), CostFunction::linear(1.0),
                                  CostFunction::constant(3.0)};
  SetSystem chooser = SetSystem::from_names(ground, {{"s1t"}, {"s1s2", "s2t"}});
  SetSystem pinned = SetSystem::from_names(ground, {{"s2t"}});
  CongestionModel model(std::move(ground), std::move(costs),
                        {Population{"p1", 0.5, std::move(chooser)},
                         Population{"p2", 0.5, std::move(pinned)}});
  Reduction reduction;
  reduction.cost_overrides.emplace("s1s2", CostFunction::constant(0.0));
  return {"fig3",
          "freeing the detour pulls population 1 onto population 2's only link",
          std::move(model), std::move(reduction)};
}

ExamplePair mst_k4() {
  auto edges = complete_graph_edges(4);
  std::vector<std::string> names;
  names.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    names.push_back("e" + std::to_string(u) + std::to_string(v));
  }
  GroundSet ground(names);
  std::vector<CostFunction> costs{CostFunction::linear(1.0),
                                  CostFunction::linear(0.2, 0.5),
                                  CostFunction::linear(0.5),
                                  CostFunction::linear(0.1, 0.3),
                                  CostFunction::linear(2.0),
                                  CostFunction::linear(0.5, 0.8)};
  SetSystem trees(ground, spanning_trees(4, edges));
  CongestionModel model(std::move(ground), std::move(costs),
                        {Population{"p1", 1.0, std::move(trees)}});
  Reduction reduction;
  reduction.cost_overrides.emplace("e01", CostFunction::constant(0.0));
  reduction.cost_overrides.emplace("e23", CostFunction::linear(0.5, 0.8).scaled(0.25));
  return {"mst-k4",
          "spanning trees of the complete graph on four vertices; cheaper edges never hurt",
          std::move(model), std::move(reduction)};
}

ExamplePair queue() {
  GroundSet ground({"q1", "q2", "q3"});
  std::vector<CostFunction> costs{queueing_delay_fit(3.0, 2.0, 64),
                                  queueing_delay_fit(4.0, 2.0, 64),
                                  queueing_delay_fit(5.0, 2.0, 64)};
  SetSystem left = SetSystem::from_names(ground, {{"q1"}, {"q2"}});
  SetSystem right = SetSystem::from_names(ground, {{"q2"}, {"q3"}});
  CongestionModel model(std::move(ground), std::move(costs),
                        {Population{"p1", 1.0, std::move(left)},
                         Population{"p2", 0.8, std::move(right)}});
  Reduction reduction;
  // A faster first server: the saturating delay curve of the higher rate sits
  // below the old one on the shared fitting grid.
  reduction.cost_overrides.emplace("q1", queueing_delay_fit(3.5, 2.0, 64));
  return {"queue",
          "parallel servers with saturating delay curves; speeding one up never hurts",
          std::move(model), std::move(reduction)};
}

}  // namespace

std::vector<std::string> example_names() {
  return {"fig1", "fig2", "fig3", "mst-k4", "queue"};
}

ExamplePair build_example(const std::string& name) {
  if (name == "fig1") return fig1();
  if (name == "fig2") return fig2();
  if (name == "fig3") return fig3();
  if (name == "mst-k4") return mst_k4();
  if (name == "queue") return queue();
  throw ValidationError("unknown example '" + name +
                        "'; available: fig1, fig2, fig3, mst-k4, queue");
}

}  // namespace braesslab
