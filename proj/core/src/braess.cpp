#include "braesslab/braess.hpp"

#include <algorithm>
#include <future>
#include <random>
#include <string>

#include "braesslab/instances.hpp"
#include "braesslab/util.hpp"

namespace braesslab {

void validate_reduction(const CongestionModel& m, const Reduction& r) {
  for (const auto& [name, cost] : r.cost_overrides) {
    auto e = m.ground().index_of(name);
    if (!e) {
      throw InvalidReduction("cost override names unknown resource '" + name + "'");
    }
    if (!pointwise_leq(cost, m.cost(*e))) {
      throw InvalidReduction("cost override for resource '" + name +
                             "' is not pointwise below the original cost");
    }
  }
  for (const auto& [id, demand] : r.demand_overrides) {
    auto i = m.population_index(id);
    if (!i) {
      throw InvalidReduction("demand override names unknown population '" + id + "'");
    }
    if (!(demand >= 0.0)) {
      throw InvalidReduction("demand override for population '" + id + "' is negative");
    }
    if (demand > m.population(*i).demand) {
      throw InvalidReduction("demand override for population '" + id +
                             "' exceeds the original demand");
    }
  }
}

CongestionModel apply_reduction(const CongestionModel& m, const Reduction& r) {
  validate_reduction(m, r);
  std::vector<CostFunction> costs;
  costs.reserve(static_cast<size_t>(m.ground().size()));
  for (int e = 0; e < m.ground().size(); ++e) {
    auto it = r.cost_overrides.find(m.ground().name(e));
    costs.push_back(it != r.cost_overrides.end() ? it->second : m.cost(e));
  }
  std::vector<Population> populations = m.populations();
  for (auto& pop : populations) {
    auto it = r.demand_overrides.find(pop.id);
    if (it != r.demand_overrides.end()) pop.demand = it->second;
  }
  return CongestionModel(m.ground(), std::move(costs), std::move(populations));
}

ParadoxReport detect_paradox(const CongestionModel& m, const Reduction& r,
                             const SolverConfig& cfg, double tol) {
  CongestionModel reduced = apply_reduction(m, r);

  // The two solves are independent; run them concurrently.  The iteration
  // hook is not forwarded since it would interleave across threads.
  SolverConfig solve_cfg = cfg;
  solve_cfg.on_iteration = nullptr;
  auto task = std::async(std::launch::async,
                         [&]() { return solve(reduced, solve_cfg); });
  WardropResult before = solve(m, solve_cfg);
  WardropResult after = task.get();

  ParadoxReport report;
  report.gap_before = before.gap;
  report.gap_after = after.gap;
  report.reliable = before.converged && after.converged;

  for (int e = 0; e < m.ground().size(); ++e) {
    double cb = before.resource_costs[static_cast<size_t>(e)];
    double ca = after.resource_costs[static_cast<size_t>(e)];
    if (ca > cb + tol) {
      report.weak.push_back({m.ground().name(e), cb, ca});
    }
  }
  for (int i = 0; i < m.population_count(); ++i) {
    const auto& pop = m.population(i);
    double reduced_demand = reduced.population(i).demand;
    report.total_cost_before += pop.demand * before.population_costs[static_cast<size_t>(i)];
    report.total_cost_after += reduced_demand * after.population_costs[static_cast<size_t>(i)];
    if (reduced_demand == 0.0) {
      report.zero_demand_populations.push_back(pop.id);
      continue;
    }
    double cb = before.population_costs[static_cast<size_t>(i)];
    double ca = after.population_costs[static_cast<size_t>(i)];
    if (ca > cb + tol) {
      report.strong.push_back({pop.id, cb, ca});
    }
  }
  report.verdict_weak = !report.weak.empty();
  report.verdict_strong = !report.strong.empty();
  report.before = std::move(before);
  report.after = std::move(after);
  return report;
}

std::vector<SensitivityViolation> cost_increase_violations(const CongestionModel& m,
                                                           const Reduction& r,
                                                           const SolverConfig& cfg,
                                                           double tol, bool* reliable) {
  CongestionModel reduced = apply_reduction(m, r);
  SolverConfig solve_cfg = cfg;
  solve_cfg.on_iteration = nullptr;
  WardropResult before = solve(m, solve_cfg);
  WardropResult after = solve(reduced, solve_cfg);
  if (reliable) *reliable = before.converged && after.converged;
  std::vector<SensitivityViolation> violations;
  for (int e = 0; e < m.ground().size(); ++e) {
    double cb = before.resource_costs[static_cast<size_t>(e)];
    double ca = after.resource_costs[static_cast<size_t>(e)];
    if (ca > cb + tol) {
      violations.push_back({-1, m.ground().name(e), cb, ca});
    }
  }
  return violations;
}

namespace {

void check_caps(const TrialCaps& caps) {
  if (caps.max_resources < 2 || caps.max_resources > 8 ||
      caps.max_populations < 1 || caps.max_populations > 3) {
    throw ValidationError("sensitivity trials are capped at 8 resources and 3 populations");
  }
}

SensitivityReport run_sensitivity(int trials, std::uint64_t seed, const TrialCaps& caps,
                                  const SolverConfig& cfg, double tol, bool reduce_demand) {
  check_caps(caps);
  std::vector<std::vector<SensitivityViolation>> per_trial(static_cast<size_t>(trials));
  std::vector<char> reliable(static_cast<size_t>(trials), 1);
  parallel_for(trials, [&](int t) {
    std::mt19937_64 rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
    CongestionModel model =
        random_matroid_model(rng, caps.max_resources, caps.max_populations);
    Reduction reduction = reduce_demand ? random_demand_reduction(rng, model)
                                        : random_cost_reduction(rng, model);
    bool trial_ok = true;
    per_trial[static_cast<size_t>(t)] =
        cost_increase_violations(model, reduction, cfg, tol, &trial_ok);
    reliable[static_cast<size_t>(t)] = trial_ok ? 1 : 0;
  });
  SensitivityReport report;
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    for (auto v : per_trial[static_cast<size_t>(t)]) {
      v.trial = t;
      report.violations.push_back(std::move(v));
    }
    if (!reliable[static_cast<size_t>(t)]) report.unreliable_trials.push_back(t);
  }
  return report;
}

// Shared scaffolding for both synthesizers: embeddings of each system into a
// fresh ground set, with selected source elements redirected onto already
// existing target resources.
struct EmbeddingPlan {
  std::vector<std::string> ground_names;
  std::vector<std::map<int, std::string>> images;  // per population: index -> new name
  std::vector<std::vector<std::pair<std::string, std::string>>> pairs;
  int total_source_elements = 0;
};

// Builds the injective embeddings. redirects[i] maps a source element of
// population i to the name it must share; everything else gets a fresh
// "p<i+1>.<name>" resource.  Pads the ground set so its size equals the sum
// of the embedded element counts.
EmbeddingPlan build_embeddings(const std::vector<SetSystem>& family,
                               const std::vector<std::map<int, std::string>>& redirects) {
  EmbeddingPlan plan;
  plan.images.resize(family.size());
  plan.pairs.resize(family.size());
  for (size_t i = 0; i < family.size(); ++i) {
    // Elements actually used by the system; idle ground elements are not
    // part of the construction.
    IndexSet used;
    for (const auto& s : family[i].sets()) used = set_union(used, s);
    plan.total_source_elements += static_cast<int>(used.size());
    for (int e : used) {
      const std::string& orig = family[i].ground().name(e);
      auto redirect = redirects[i].find(e);
      std::string image;
      if (redirect != redirects[i].end()) {
        image = redirect->second;
      } else {
        image = "p" + std::to_string(i + 1) + "." + orig;
        plan.ground_names.push_back(image);
      }
      plan.images[i][e] = image;
      plan.pairs[i].emplace_back(orig, image);
    }
  }
  int pad = plan.total_source_elements - static_cast<int>(plan.ground_names.size());
  for (int p = 0; p < pad; ++p) {
    plan.ground_names.push_back("pad" + std::to_string(p));
  }
  return plan;
}

std::vector<IndexSet> embed_sets(const SetSystem& system, const std::map<int, std::string>& image,
                                 const GroundSet& ground) {
  std::vector<IndexSet> out;
  out.reserve(static_cast<size_t>(system.size()));
  for (const auto& s : system.sets()) {
    IndexSet t;
    t.reserve(s.size());
    for (int e : s) t.push_back(*ground.index_of(image.at(e)));
    std::sort(t.begin(), t.end());
    out.push_back(std::move(t));
  }
  return out;
}

// Lexicographically first minimum-cardinality member of a clutter, plus its
// smallest element.  This anchors the pinned populations.
std::pair<IndexSet, int> min_cardinality_anchor(const Clutter& clutter) {
  const IndexSet* best = nullptr;
  for (const auto& s : clutter.sets()) {
    if (!best || s.size() < best->size()) best = &s;
  }
  return {*best, best->front()};
}

void check_penalty_loads(const CongestionModel& model, const Reduction& reduction,
                         const std::vector<std::string>& penalty_resources, double big_m) {
  SolverConfig cfg;
  WardropResult before = solve(model, cfg);
  WardropResult after = solve(apply_reduction(model, reduction), cfg);
  for (const auto& name : penalty_resources) {
    int e = *model.ground().index_of(name);
    double load = std::max(before.loads.load[static_cast<size_t>(e)],
                           after.loads.load[static_cast<size_t>(e)]);
    if (load > 1e-9) {
      throw BigMTooSmall("penalty resource '" + name + "' carries load " +
                         std::to_string(load) + "; raise the penalty above " +
                         std::to_string(big_m));
    }
  }
}

}  // namespace

SensitivityReport verify_cost_sensitivity(int trials, std::uint64_t seed,
                                          const TrialCaps& caps, const SolverConfig& cfg,
                                          double tol) {
  return run_sensitivity(trials, seed, caps, cfg, tol, /*reduce_demand=*/false);
}

SensitivityReport verify_demand_sensitivity(int trials, std::uint64_t seed,
                                            const TrialCaps& caps, const SolverConfig& cfg,
                                            double tol) {
  return run_sensitivity(trials, seed, caps, cfg, tol, /*reduce_demand=*/true);
}

SynthesizedCounterexample synthesize_counterexample(const std::vector<SetSystem>& family,
                                                    double big_m) {
  if (family.size() < 2) {
    throw EmptySystem("counterexample synthesis needs at least two set systems");
  }
  Clutter clutter1 = minimal_clutter(family[0]);
  if (is_matroid_base_family(clutter1)) {
    throw NotANonMatroid(
        "the first system's clutter is a matroid basis family; such families admit "
        "no paradox counterexample");
  }
  NonMatroidWitness witness = nonmatroid_witness(clutter1);

  // Population 2 is pinned through one anchor element whose image coincides
  // with the image of b, the linear-cost resource.
  auto [anchor_set, anchor] = min_cardinality_anchor(minimal_clutter(family[1]));
  const std::string f_name = "p1." + family[0].ground().name(witness.b);
  std::vector<std::map<int, std::string>> redirects(family.size());
  redirects[1][anchor] = f_name;
  EmbeddingPlan plan = build_embeddings(family, redirects);

  GroundSet ground(plan.ground_names);
  const std::string e_name = "p1." + family[0].ground().name(witness.a);
  const std::string g_name = "p1." + family[0].ground().name(witness.c);
  IndexSet cover = set_union(witness.x, witness.y);

  std::vector<CostFunction> costs(static_cast<size_t>(ground.size()),
                                  CostFunction::constant(0.0));
  std::vector<std::string> penalties;
  auto set_cost = [&](const std::string& name, CostFunction cost) {
    costs[static_cast<size_t>(*ground.index_of(name))] = std::move(cost);
  };
  set_cost(e_name, CostFunction::constant(1.0));
  set_cost(f_name, CostFunction::linear(1.0));
  set_cost(g_name, CostFunction::constant(3.0));
  for (const auto& [orig, image] : plan.images[0]) {
    if (image == e_name || image == f_name || image == g_name) continue;
    if (!contains(cover, orig)) {
      set_cost(image, CostFunction::constant(big_m));
      penalties.push_back(image);
    }
    // Elements of the cover other than the marked three stay free.
  }
  for (const auto& [orig, image] : plan.images[1]) {
    if (image != f_name) set_cost(image, CostFunction::constant(2.0));
  }
  // Populations beyond the second carry no demand; their resources stay free.

  std::vector<Population> populations;
  for (size_t i = 0; i < family.size(); ++i) {
    double demand = (i < 2) ? 0.5 : 0.0;
    populations.push_back(Population{
        "p" + std::to_string(i + 1), demand,
        SetSystem(ground, embed_sets(family[i], plan.images[i], ground))});
  }

  SynthesizedCounterexample out{
      CongestionModel(std::move(ground), std::move(costs), std::move(populations)),
      Reduction{}, witness, e_name, f_name, g_name, plan.pairs};
  out.reduction.cost_overrides.emplace(g_name, CostFunction::constant(0.0));
  check_penalty_loads(out.base_model, out.reduction, penalties, big_m);
  return out;
}

SynthesizedCounterexample synthesize_demand_counterexample(const std::vector<SetSystem>& family,
                                                           double big_m) {
  if (family.size() < 3) {
    throw NeedThreePopulations(
        "the demand-reduction counterexample pins two helper populations and needs at "
        "least three set systems");
  }
  Clutter clutter1 = minimal_clutter(family[0]);
  if (is_matroid_base_family(clutter1)) {
    throw NotANonMatroid(
        "the first system's clutter is a matroid basis family; such families admit "
        "no paradox counterexample");
  }
  NonMatroidWitness witness = nonmatroid_witness(clutter1);
  const double kink = 10.0;  // capacity of the shared back resource

  auto [anchor2_set, anchor2] = min_cardinality_anchor(minimal_clutter(family[1]));
  auto [anchor3_set, anchor3] = min_cardinality_anchor(minimal_clutter(family[2]));
  const std::string f_name = "p1." + family[0].ground().name(witness.b);
  const std::string g_name = "p1." + family[0].ground().name(witness.c);
  std::vector<std::map<int, std::string>> redirects(family.size());
  redirects[1][anchor2] = f_name;
  redirects[2][anchor3] = g_name;
  EmbeddingPlan plan = build_embeddings(family, redirects);

  GroundSet ground(plan.ground_names);
  const std::string e_name = "p1." + family[0].ground().name(witness.a);
  IndexSet cover = set_union(witness.x, witness.y);

  std::vector<CostFunction> costs(static_cast<size_t>(ground.size()),
                                  CostFunction::constant(0.0));
  std::vector<std::string> penalties;
  auto set_cost = [&](const std::string& name, CostFunction cost) {
    costs[static_cast<size_t>(*ground.index_of(name))] = std::move(cost);
  };
  set_cost(e_name, CostFunction::constant(2.0));
  set_cost(f_name, CostFunction::linear(1.0));
  set_cost(g_name, CostFunction({{0.0, 0.0}, {kink, 0.0}}, 1.0));
  for (const auto& [orig, image] : plan.images[0]) {
    if (image == e_name || image == f_name || image == g_name) continue;
    if (!contains(cover, orig)) {
      set_cost(image, CostFunction::constant(big_m));
      penalties.push_back(image);
    }
  }
  // The helper populations are pinned onto their anchor sets: resources
  // inside the anchor are free, everything else is priced out.
  for (int helper = 1; helper <= 2; ++helper) {
    const IndexSet& anchor_set = (helper == 1) ? anchor2_set : anchor3_set;
    for (const auto& [orig, image] : plan.images[static_cast<size_t>(helper)]) {
      if (image == f_name || image == g_name) continue;
      if (!contains(anchor_set, orig)) {
        set_cost(image, CostFunction::constant(big_m));
        penalties.push_back(image);
      }
    }
  }

  std::vector<Population> populations;
  for (size_t i = 0; i < family.size(); ++i) {
    double demand = 0.0;
    if (i == 0) demand = 1.0;
    if (i == 1) demand = 2.0;
    if (i == 2) demand = kink;
    populations.push_back(Population{
        "p" + std::to_string(i + 1), demand,
        SetSystem(ground, embed_sets(family[i], plan.images[i], ground))});
  }

  SynthesizedCounterexample out{
      CongestionModel(std::move(ground), std::move(costs), std::move(populations)),
      Reduction{}, witness, e_name, f_name, g_name, plan.pairs};
  out.reduction.demand_overrides.emplace("p2", 0.0);
  check_penalty_loads(out.base_model, out.reduction, penalties, big_m);
  return out;
}

}  // namespace braesslab
