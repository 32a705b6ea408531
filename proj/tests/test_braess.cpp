#include <map>
#include <random>
#include <string>
#include <vector>

#include "braesslab/braess.hpp"
#include "braesslab/examples.hpp"
#include "braesslab/instances.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace braesslab;

namespace {

// Two overlapping populations where lowering costs helps every population but
// still drives one resource's equilibrium cost up: a weak paradox with no
// strong one.
ExamplePair weak_only_fixture() {
  GroundSet ground({"a", "b", "c", "d"});
  std::vector<CostFunction> costs{
      CostFunction::constant(1.9),
      CostFunction::linear(1.0),
      CostFunction::constant(1.0),
      CostFunction::constant(1.5),
  };
  std::vector<Population> pops{
      {"p1", 1.5, SetSystem(ground, {{0}, {1, 2}})},
      {"p2", 1.0, SetSystem(ground, {{1}, {3}})},
  };
  Reduction r;
  r.cost_overrides.emplace("c", CostFunction::constant(0.0));
  r.cost_overrides.emplace("d", CostFunction::constant(0.9));
  return {"weak-only", "", CongestionModel(ground, costs, pops), r};
}

SetSystem forced_pair_system() {
  GroundSet g({"x", "y", "z"});
  return SetSystem(g, {{0}, {1, 2}});
}

SetSystem singleton_system(const std::string& name) {
  GroundSet g({name});
  return SetSystem(g, {{0}});
}

}  // namespace

TEST_CASE("reduction validation names the offending entry") {
  ExamplePair fig1 = build_example("fig1");
  CHECK_NOTHROW(validate_reduction(fig1.model, fig1.reduction));
  CHECK_NOTHROW(validate_reduction(fig1.model, Reduction{}));

  Reduction unknown_resource;
  unknown_resource.cost_overrides.emplace("xx", CostFunction::constant(0.0));
  CHECK_THROWS_WITH_AS(validate_reduction(fig1.model, unknown_resource),
                       doctest::Contains("xx"), InvalidReduction);

  Reduction not_lower;
  not_lower.cost_overrides.emplace("su", CostFunction::constant(5.0));
  CHECK_THROWS_WITH_AS(validate_reduction(fig1.model, not_lower),
                       doctest::Contains("su"), InvalidReduction);

  Reduction unknown_population;
  unknown_population.demand_overrides.emplace("p7", 0.5);
  CHECK_THROWS_WITH_AS(validate_reduction(fig1.model, unknown_population),
                       doctest::Contains("p7"), InvalidReduction);

  Reduction negative_demand;
  negative_demand.demand_overrides.emplace("p1", -0.25);
  CHECK_THROWS_AS(validate_reduction(fig1.model, negative_demand), InvalidReduction);

  Reduction raised_demand;
  raised_demand.demand_overrides.emplace("p1", 2.0);
  CHECK_THROWS_AS(validate_reduction(fig1.model, raised_demand), InvalidReduction);
}

TEST_CASE("applying a reduction rewrites costs and demands only") {
  ExamplePair fig1 = build_example("fig1");
  CongestionModel reduced = apply_reduction(fig1.model, fig1.reduction);
  int uv = *reduced.ground().index_of("uv");
  CHECK(reduced.cost(uv).value(0.7) == doctest::Approx(0.0));
  CHECK(reduced.population(0).demand == doctest::Approx(1.0));
  CHECK(reduced.population(0).strategies.sets() == fig1.model.population(0).strategies.sets());

  ExamplePair fig2 = build_example("fig2");
  CongestionModel fig2_reduced = apply_reduction(fig2.model, fig2.reduction);
  int p2 = *fig2_reduced.population_index("p2");
  CHECK(fig2_reduced.population(p2).demand == doctest::Approx(0.0));
}

TEST_CASE("paradox detection reproduces the pinned example verdicts") {
  ExamplePair fig1 = build_example("fig1");
  ParadoxReport r1 = detect_paradox(fig1.model, fig1.reduction);
  REQUIRE(r1.reliable);
  CHECK(r1.verdict_weak);
  CHECK(r1.verdict_strong);
  REQUIRE(r1.strong.size() == 1);
  CHECK(r1.strong[0].population == "p1");
  CHECK(r1.strong[0].cost_before == doctest::Approx(1.5).epsilon(1e-4));
  CHECK(r1.strong[0].cost_after == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(r1.total_cost_before == doctest::Approx(1.5).epsilon(1e-4));
  CHECK(r1.total_cost_after == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(r1.zero_demand_populations.empty());

  ExamplePair fig2 = build_example("fig2");
  ParadoxReport r2 = detect_paradox(fig2.model, fig2.reduction);
  REQUIRE(r2.reliable);
  CHECK(r2.verdict_strong);
  REQUIRE(r2.zero_demand_populations == std::vector<std::string>{"p2"});
  bool saw_p3 = false;
  for (const StrongParadoxEntry& s : r2.strong) {
    CHECK(s.population != "p2");  // departed population is excluded
    if (s.population == "p3") {
      saw_p3 = true;
      CHECK(s.cost_before == doctest::Approx(0.0).epsilon(1e-4));
      CHECK(s.cost_after == doctest::Approx(1.0).epsilon(1e-4));
    }
  }
  CHECK(saw_p3);
  CHECK(r2.total_cost_before == doctest::Approx(6.0).epsilon(1e-4));
  CHECK(r2.total_cost_after == doctest::Approx(12.0).epsilon(1e-4));

  ExamplePair fig3 = build_example("fig3");
  ParadoxReport r3 = detect_paradox(fig3.model, fig3.reduction);
  REQUIRE(r3.reliable);
  CHECK(r3.verdict_strong);
  REQUIRE(r3.strong.size() == 1);
  CHECK(r3.strong[0].population == "p2");
  CHECK(r3.strong[0].cost_before == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(r3.strong[0].cost_after == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r3.total_cost_before == doctest::Approx(0.75).epsilon(1e-4));
  CHECK(r3.total_cost_after == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("matroid examples are immune to their reductions") {
  for (const char* name : {"mst-k4", "queue"}) {
    ExamplePair ex = build_example(name);
    ParadoxReport r = detect_paradox(ex.model, ex.reduction);
    REQUIRE(r.reliable);
    CHECK_FALSE(r.verdict_weak);
    CHECK_FALSE(r.verdict_strong);
    CHECK(r.weak.empty());
    CHECK(r.strong.empty());
  }
}

TEST_CASE("a strong paradox always comes with a weak one") {
  for (const char* name : {"fig1", "fig2", "fig3"}) {
    ExamplePair ex = build_example(name);
    ParadoxReport r = detect_paradox(ex.model, ex.reduction);
    REQUIRE(r.verdict_strong);
    CHECK(r.verdict_weak);
  }
}

TEST_CASE("weak paradoxes can occur without any population losing") {
  ExamplePair fixture = weak_only_fixture();
  ParadoxReport r = detect_paradox(fixture.model, fixture.reduction);
  REQUIRE(r.reliable);
  CHECK(r.verdict_weak);
  CHECK_FALSE(r.verdict_strong);
  REQUIRE(r.weak.size() == 1);
  CHECK(r.weak[0].resource == "b");
  CHECK(r.weak[0].cost_before == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r.weak[0].cost_after == doctest::Approx(1.5).epsilon(1e-4));
}

TEST_CASE("paradox reports flag unconverged comparisons as unreliable") {
  ExamplePair fig1 = build_example("fig1");
  SolverConfig cfg;
  cfg.max_iterations = 1;
  ParadoxReport r = detect_paradox(fig1.model, fig1.reduction, cfg);
  CHECK_FALSE(r.reliable);
}

TEST_CASE("per-instance checker lists cost increases") {
  ExamplePair fig1 = build_example("fig1");
  bool reliable = false;
  std::vector<SensitivityViolation> v =
      cost_increase_violations(fig1.model, fig1.reduction, SolverConfig{}, 1e-4, &reliable);
  CHECK(reliable);
  REQUIRE_FALSE(v.empty());
  bool saw_su = false;
  for (const SensitivityViolation& violation : v) {
    if (violation.resource == "su") {
      saw_su = true;
      CHECK(violation.cost_after > violation.cost_before + 1e-4);
    }
  }
  CHECK(saw_su);

  ExamplePair mst = build_example("mst-k4");
  v = cost_increase_violations(mst.model, mst.reduction, SolverConfig{}, 1e-4, &reliable);
  CHECK(reliable);
  CHECK(v.empty());
}

TEST_CASE("randomized matroid sensitivity sweeps find no violations") {
  SensitivityReport cost_report = verify_cost_sensitivity(40, 20260814);
  CHECK(cost_report.trials == 40);
  CHECK(cost_report.ok());
  CHECK(cost_report.unreliable_trials.empty());

  SensitivityReport demand_report = verify_demand_sensitivity(40, 20260815);
  CHECK(demand_report.trials == 40);
  CHECK(demand_report.ok());
  CHECK(demand_report.unreliable_trials.empty());

  // Same seed, same outcome.
  SensitivityReport again = verify_cost_sensitivity(40, 20260814);
  CHECK(again.trials == cost_report.trials);
  CHECK(again.violations.size() == cost_report.violations.size());
  CHECK(again.unreliable_trials == cost_report.unreliable_trials);
}

TEST_CASE("trial caps are validated") {
  CHECK_THROWS_AS(verify_cost_sensitivity(1, 1, TrialCaps{12, 3}), ValidationError);
  CHECK_THROWS_AS(verify_cost_sensitivity(1, 1, TrialCaps{8, 5}), ValidationError);
  CHECK_THROWS_AS(verify_demand_sensitivity(1, 1, TrialCaps{1, 1}), ValidationError);
}

TEST_CASE("cost-mode synthesis rejects unusable families") {
  CHECK_THROWS_AS(synthesize_counterexample({forced_pair_system()}), EmptySystem);
  GroundSet g({"a", "b", "c", "d"});
  SetSystem matroid_first(g, uniform_bases(4, 2));
  CHECK_THROWS_AS(synthesize_counterexample({matroid_first, singleton_system("w")}),
                  NotANonMatroid);
}

TEST_CASE("cost-mode synthesis on the forced pair reproduces the two-route paradox") {
  std::vector<SetSystem> family{forced_pair_system(), singleton_system("w")};
  SynthesizedCounterexample cx = synthesize_counterexample(family);

  CHECK(cx.witness.x == IndexSet{1, 2});
  CHECK(cx.witness.y == IndexSet{0});
  CHECK(verify_witness(minimal_clutter(family[0]), cx.witness));
  CHECK(cx.marked_e == "p1.x");
  CHECK(cx.marked_f == "p1.y");
  CHECK(cx.marked_g == "p1.z");

  const CongestionModel& m = cx.base_model;
  // 3 + 1 source elements, one of them redirected onto f: one pad fills up.
  CHECK(m.ground().size() == 4);
  CHECK(m.ground().index_of("pad0").has_value());
  REQUIRE(m.population_count() == 2);
  CHECK(m.population(0).demand == doctest::Approx(0.5));
  CHECK(m.population(1).demand == doctest::Approx(0.5));
  int e = *m.ground().index_of(cx.marked_e);
  int f = *m.ground().index_of(cx.marked_f);
  int g = *m.ground().index_of(cx.marked_g);
  CHECK(m.cost(e).value(0.0) == doctest::Approx(1.0));
  CHECK(m.cost(e).value(4.0) == doctest::Approx(1.0));
  CHECK(m.cost(f).value(0.25) == doctest::Approx(0.25));
  CHECK(m.cost(g).value(0.0) == doctest::Approx(3.0));
  // Population 2 was pinned onto the marked middle resource.
  CHECK(m.population(1).strategies.sets() == std::vector<IndexSet>{{f}});

  REQUIRE(cx.reduction.cost_overrides.size() == 1);
  REQUIRE(cx.reduction.cost_overrides.count(cx.marked_g) == 1);
  CHECK(cx.reduction.cost_overrides.at(cx.marked_g).value(2.0) == doctest::Approx(0.0));
  CHECK(cx.reduction.demand_overrides.empty());

  ParadoxReport r = detect_paradox(cx.base_model, cx.reduction);
  REQUIRE(r.reliable);
  REQUIRE(r.verdict_strong);
  bool saw_p2 = false;
  for (const StrongParadoxEntry& s : r.strong) {
    if (s.population == "p2") {
      saw_p2 = true;
      CHECK(s.cost_before == doctest::Approx(0.5).epsilon(1e-3));
      CHECK(s.cost_after == doctest::Approx(1.0).epsilon(1e-3));
    }
  }
  CHECK(saw_p2);
}

TEST_CASE("cost-mode synthesis works for random non-matroid families") {
  std::mt19937_64 rng(1501);
  int built = 0;
  while (built < 15) {
    int n = 4 + static_cast<int>(rng() % 4);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("r" + std::to_string(i));
    GroundSet ground(names);
    std::vector<IndexSet> sets = random_antichain(rng, n);
    if (is_matroid_base_family(Clutter(ground, sets))) continue;
    std::vector<SetSystem> family{SetSystem(ground, sets), singleton_system("w")};
    if (rng() % 2 == 0) family.push_back(forced_pair_system());

    SynthesizedCounterexample cx = synthesize_counterexample(family);
    CHECK(verify_witness(minimal_clutter(family[0]), cx.witness));
    for (const auto& mapping : cx.embeddings) {
      std::map<std::string, int> seen;
      for (const auto& [original, image] : mapping) {
        CHECK(cx.base_model.ground().index_of(image).has_value());
        ++seen[image];
      }
      for (const auto& [image, count] : seen) CHECK(count == 1);
    }
    ParadoxReport r = detect_paradox(cx.base_model, cx.reduction);
    REQUIRE(r.reliable);
    CHECK(r.verdict_strong);
    double increase = 0.0;
    for (const StrongParadoxEntry& s : r.strong) {
      if (s.population == "p2") increase = s.cost_after - s.cost_before;
    }
    CHECK(increase == doctest::Approx(0.5).epsilon(1e-3));
    ++built;
  }
}

TEST_CASE("synthesis refuses penalty constants too small to pin strategies") {
  GroundSet g({"r0", "r1", "r2", "r3"});
  // {r3} is a member outside the witness cover, so it must be penalized.
  SetSystem first(g, {{0}, {1, 2}, {3}});
  std::vector<SetSystem> family{first, singleton_system("w")};
  CHECK_THROWS_AS(synthesize_counterexample(family, 0.05), BigMTooSmall);

  SynthesizedCounterexample cx = synthesize_counterexample(family);
  WardropResult r = solve(cx.base_model);
  REQUIRE(r.converged);
  int off_cover = *cx.base_model.ground().index_of("p1.r3");
  CHECK(r.loads.load[static_cast<size_t>(off_cover)] <= 1e-9);
}

TEST_CASE("demand-mode synthesis needs three systems") {
  CHECK_THROWS_AS(
      synthesize_demand_counterexample({forced_pair_system(), singleton_system("w")}),
      NeedThreePopulations);
}

TEST_CASE("demand-mode synthesis builds the departing-population paradox") {
  ExamplePair fig1 = build_example("fig1");
  GroundSet mg({"m1", "m2"});
  SetSystem second(mg, {{0}, {1}, {0, 1}});
  std::vector<SetSystem> family{fig1.model.population(0).strategies, second,
                                singleton_system("n1")};
  SynthesizedCounterexample cx = synthesize_demand_counterexample(family);

  CHECK(cx.marked_e == "p1.ut");
  CHECK(cx.marked_f == "p1.uv");
  CHECK(cx.marked_g == "p1.vt");
  const CongestionModel& m = cx.base_model;
  CHECK(m.ground().size() == 8);  // 5 + 3 source elements, two redirected
  CHECK(m.ground().index_of("p2.m2").has_value());
  CHECK(m.ground().index_of("pad0").has_value());
  CHECK(m.ground().index_of("pad1").has_value());
  REQUIRE(m.population_count() == 3);
  CHECK(m.population(0).demand == doctest::Approx(1.0));
  CHECK(m.population(1).demand == doctest::Approx(2.0));
  CHECK(m.population(2).demand == doctest::Approx(10.0));

  int e = *m.ground().index_of(cx.marked_e);
  int f = *m.ground().index_of(cx.marked_f);
  int g = *m.ground().index_of(cx.marked_g);
  CHECK(m.cost(e).value(0.0) == doctest::Approx(2.0));
  CHECK(m.cost(f).value(1.5) == doctest::Approx(1.5));
  CHECK(m.cost(g).value(10.0) == doctest::Approx(0.0));
  CHECK(m.cost(g).value(11.0) == doctest::Approx(1.0));
  int helper = *m.ground().index_of("p2.m2");
  CHECK(m.cost(helper).value(0.0) == doctest::Approx(kDefaultBigM));

  REQUIRE(cx.reduction.demand_overrides.size() == 1);
  CHECK(cx.reduction.demand_overrides.at("p2") == doctest::Approx(0.0));
  CHECK(cx.reduction.cost_overrides.empty());

  ParadoxReport r = detect_paradox(cx.base_model, cx.reduction);
  REQUIRE(r.reliable);
  REQUIRE(r.verdict_strong);
  CHECK(r.zero_demand_populations == std::vector<std::string>{"p2"});
  bool saw_p3 = false;
  for (const StrongParadoxEntry& s : r.strong) {
    if (s.population == "p3") {
      saw_p3 = true;
      CHECK(s.cost_before == doctest::Approx(0.0).epsilon(1e-3));
      CHECK(s.cost_after == doctest::Approx(1.0).epsilon(1e-3));
    }
  }
  CHECK(saw_p3);
  CHECK(r.total_cost_before == doctest::Approx(6.0).epsilon(1e-3));
  CHECK(r.total_cost_after == doctest::Approx(12.0).epsilon(1e-3));
}

TEST_CASE("equilibrium costs only depend on the minimal clutters") {
  std::mt19937_64 rng(1601);
  for (int trial = 0; trial < 12; ++trial) {
    CongestionModel full = random_system_model(rng);
    std::vector<Population> reduced_pops;
    for (const Population& pop : full.populations()) {
      int i = static_cast<int>(reduced_pops.size());
      reduced_pops.push_back(
          {pop.id, pop.demand, SetSystem(full.ground(), full.population_clutter(i).sets())});
    }
    CongestionModel trimmed(full.ground(), full.costs(), reduced_pops);
    WardropResult a = solve(full);
    WardropResult b = solve(trimmed);
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    for (int e = 0; e < full.ground().size(); ++e) {
      CHECK(a.resource_costs[static_cast<size_t>(e)] ==
            doctest::Approx(b.resource_costs[static_cast<size_t>(e)]).epsilon(1e-4));
    }
  }
}
