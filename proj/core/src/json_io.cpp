#include "braesslab/json_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>

#include "json.hpp"

namespace braesslab {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

void check_fields(const Json& j, std::initializer_list<const char*> allowed,
                  const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* a : allowed) {
      if (it.key() == a) {
        known = true;
        break;
      }
    }
    if (!known) fail(path, "unexpected field '" + it.key() + "'");
  }
}

const Json& require(const Json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing field '" + std::string(key) + "'");
  return *it;
}

std::string get_string(const Json& j, const char* key, const std::string& path) {
  const Json& v = require(j, key, path);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

double as_finite(const Json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  double d = v.get<double>();
  if (!std::isfinite(d)) fail(path, "expected a finite number");
  return d;
}

double get_number(const Json& j, const char* key, const std::string& path) {
  return as_finite(require(j, key, path), path + "." + key);
}

const Json& get_array(const Json& j, const char* key, const std::string& path) {
  const Json& v = require(j, key, path);
  if (!v.is_array()) fail(path + "." + key, "expected an array");
  return v;
}

void check_version(const Json& j, const std::string& path) {
  std::string version = get_string(j, "version", path);
  if (version != kFormatVersion) {
    fail(path + ".version",
         "expected '" + std::string(kFormatVersion) + "', got '" + version + "'");
  }
}

std::vector<std::string> get_name_list(const Json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of strings");
  std::vector<std::string> names;
  names.reserve(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    const Json& s = v[i];
    if (!s.is_string()) fail(path + "[" + std::to_string(i) + "]", "expected a string");
    names.push_back(s.get<std::string>());
  }
  return names;
}

CostFunction parse_cost(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected a cost object");
  check_fields(j, {"breakpoints", "final_slope"}, path);
  const Json& bps = get_array(j, "breakpoints", path);
  std::vector<std::pair<double, double>> points;
  points.reserve(bps.size());
  for (size_t i = 0; i < bps.size(); ++i) {
    std::string bp_path = path + ".breakpoints[" + std::to_string(i) + "]";
    const Json& bp = bps[i];
    if (!bp.is_array() || bp.size() != 2) fail(bp_path, "expected a [load, value] pair");
    points.emplace_back(as_finite(bp[0], bp_path + "[0]"), as_finite(bp[1], bp_path + "[1]"));
  }
  double final_slope = get_number(j, "final_slope", path);
  try {
    return CostFunction(std::move(points), final_slope);
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
}

Json cost_json(const CostFunction& c) {
  Json bps = Json::array();
  for (const auto& [load, value] : c.breakpoints()) {
    bps.push_back(Json::array({load, value}));
  }
  return Json{{"breakpoints", std::move(bps)}, {"final_slope", c.final_slope()}};
}

Json name_set_json(const GroundSet& ground, const IndexSet& s) {
  Json out = Json::array();
  for (int e : s) out.push_back(ground.name(e));
  return out;
}

// Resolves an array of name arrays into sets over `ground`; `field` is the
// key the sets came from, used in error paths.
std::vector<IndexSet> parse_sets(const Json& sets, const GroundSet& ground,
                                 const std::string& path, const char* field) {
  if (!sets.is_array()) fail(path + "." + field, "expected an array");
  std::vector<IndexSet> members;
  members.reserve(sets.size());
  for (size_t k = 0; k < sets.size(); ++k) {
    std::string set_path = path + "." + field + "[" + std::to_string(k) + "]";
    IndexSet member;
    for (const std::string& name : get_name_list(sets[k], set_path)) {
      auto idx = ground.index_of(name);
      if (!idx) fail(set_path, "unknown resource '" + name + "'");
      member.push_back(*idx);
    }
    members.push_back(std::move(member));
  }
  return members;
}

Json result_json(const WardropResult& result, const CongestionModel& m,
                 const SolverConfig& cfg) {
  Json loads = Json::object();
  Json resource_costs = Json::object();
  for (int e = 0; e < m.ground().size(); ++e) {
    loads[m.ground().name(e)] = result.loads.load[static_cast<size_t>(e)];
    resource_costs[m.ground().name(e)] = result.resource_costs[static_cast<size_t>(e)];
  }
  Json population_costs = Json::object();
  Json distribution = Json::array();
  for (int i = 0; i < m.population_count(); ++i) {
    const Population& pop = m.population(i);
    population_costs[pop.id] = result.population_costs[static_cast<size_t>(i)];
    Json strategies = Json::array();
    const auto& mass = result.distribution.mass[static_cast<size_t>(i)];
    double threshold = kUsedMassFraction * pop.demand;
    for (size_t k = 0; k < mass.size(); ++k) {
      if (mass[k] <= threshold) continue;
      strategies.push_back(
          Json{{"set", name_set_json(m.ground(), pop.strategies.sets()[k])},
               {"mass", mass[k]}});
    }
    distribution.push_back(Json{{"population", pop.id}, {"strategies", std::move(strategies)}});
  }
  Json solver{{"gap_tolerance", cfg.gap_tolerance},
              {"max_iterations", cfg.max_iterations},
              {"line_search_tolerance", cfg.line_search_tolerance},
              {"away_steps", cfg.away_steps},
              {"seed", cfg.seed}};
  return Json{{"version", kFormatVersion},
              {"converged", result.converged},
              {"iterations", result.iterations},
              {"gap", result.gap},
              {"potential", result.potential},
              {"solver", std::move(solver)},
              {"loads", std::move(loads)},
              {"resource_costs", std::move(resource_costs)},
              {"population_costs", std::move(population_costs)},
              {"distribution", std::move(distribution)}};
}

Json model_json(const CongestionModel& m) {
  Json costs = Json::object();
  for (int e = 0; e < m.ground().size(); ++e) {
    costs[m.ground().name(e)] = cost_json(m.cost(e));
  }
  Json populations = Json::array();
  for (const Population& pop : m.populations()) {
    Json strategies = Json::array();
    for (const IndexSet& s : pop.strategies.sets()) {
      strategies.push_back(name_set_json(pop.strategies.ground(), s));
    }
    populations.push_back(Json{{"id", pop.id},
                               {"demand", pop.demand},
                               {"strategies", std::move(strategies)}});
  }
  return Json{{"version", kFormatVersion},
              {"resources", m.ground().names()},
              {"costs", std::move(costs)},
              {"populations", std::move(populations)}};
}

Json reduction_json(const Reduction& r) {
  Json costs = Json::object();
  for (const auto& [name, cost] : r.cost_overrides) costs[name] = cost_json(cost);
  Json demands = Json::object();
  for (const auto& [id, demand] : r.demand_overrides) demands[id] = demand;
  return Json{{"version", kFormatVersion},
              {"cost_overrides", std::move(costs)},
              {"demand_overrides", std::move(demands)}};
}

Json witness_json(const NonMatroidWitness& w, const GroundSet& ground) {
  return Json{{"x", name_set_json(ground, w.x)},
              {"y", name_set_json(ground, w.y)},
              {"a", ground.name(w.a)},
              {"b", ground.name(w.b)},
              {"c", ground.name(w.c)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error("failed reading '" + path + "'");
  return std::move(buffer).str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out.good()) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error("failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw Error("cannot move temporary file onto '" + path + "': " + ec.message());
  }
}

CongestionModel parse_model(const std::string& text) {
  Json j = parse_text(text);
  const std::string path = "$";
  check_fields(j, {"version", "resources", "costs", "populations"}, path);
  check_version(j, path);

  GroundSet ground = [&]() {
    try {
      return GroundSet(get_name_list(require(j, "resources", path), path + ".resources"));
    } catch (const ValidationError& e) {
      fail(path + ".resources", e.what());
    }
  }();

  const Json& costs_obj = require(j, "costs", path);
  if (!costs_obj.is_object()) fail(path + ".costs", "expected an object");
  for (auto it = costs_obj.begin(); it != costs_obj.end(); ++it) {
    if (!ground.index_of(it.key())) {
      fail(path + ".costs", "unknown resource '" + it.key() + "'");
    }
  }
  std::vector<CostFunction> costs;
  costs.reserve(static_cast<size_t>(ground.size()));
  for (int e = 0; e < ground.size(); ++e) {
    const std::string& name = ground.name(e);
    auto it = costs_obj.find(name);
    if (it == costs_obj.end()) {
      fail(path + ".costs", "missing cost for resource '" + name + "'");
    }
    costs.push_back(parse_cost(*it, path + ".costs." + name));
  }

  const Json& populations = get_array(j, "populations", path);
  std::vector<Population> pops;
  for (size_t i = 0; i < populations.size(); ++i) {
    std::string ppath = path + ".populations[" + std::to_string(i) + "]";
    check_fields(populations[i], {"id", "demand", "strategies"}, ppath);
    std::string id = get_string(populations[i], "id", ppath);
    double demand = get_number(populations[i], "demand", ppath);
    std::vector<IndexSet> sets =
        parse_sets(require(populations[i], "strategies", ppath), ground, ppath, "strategies");
    try {
      pops.push_back(Population{std::move(id), demand, SetSystem(ground, std::move(sets))});
    } catch (const ValidationError& e) {
      fail(ppath + ".strategies", e.what());
    }
  }
  try {
    return CongestionModel(std::move(ground), std::move(costs), std::move(pops));
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

std::string serialize_model(const CongestionModel& m) { return dump(model_json(m)); }

Reduction parse_reduction(const std::string& text) {
  Json j = parse_text(text);
  const std::string path = "$";
  check_fields(j, {"version", "cost_overrides", "demand_overrides"}, path);
  check_version(j, path);

  Reduction r;
  if (j.contains("cost_overrides")) {
    const Json& costs = j["cost_overrides"];
    if (!costs.is_object()) fail(path + ".cost_overrides", "expected an object");
    for (auto it = costs.begin(); it != costs.end(); ++it) {
      r.cost_overrides.emplace(it.key(),
                               parse_cost(*it, path + ".cost_overrides." + it.key()));
    }
  }
  if (j.contains("demand_overrides")) {
    const Json& demands = j["demand_overrides"];
    if (!demands.is_object()) fail(path + ".demand_overrides", "expected an object");
    for (auto it = demands.begin(); it != demands.end(); ++it) {
      r.demand_overrides.emplace(it.key(),
                                 as_finite(*it, path + ".demand_overrides." + it.key()));
    }
  }
  return r;
}

std::string serialize_reduction(const Reduction& r) { return dump(reduction_json(r)); }

std::vector<SetSystem> parse_family(const std::string& text) {
  Json j = parse_text(text);
  const std::string path = "$";
  check_fields(j, {"version", "systems"}, path);
  check_version(j, path);
  const Json& systems = get_array(j, "systems", path);
  if (systems.empty()) fail(path + ".systems", "expected at least one system");
  std::vector<SetSystem> family;
  for (size_t i = 0; i < systems.size(); ++i) {
    std::string spath = path + ".systems[" + std::to_string(i) + "]";
    check_fields(systems[i], {"resources", "sets"}, spath);
    GroundSet ground = [&]() {
      try {
        return GroundSet(
            get_name_list(require(systems[i], "resources", spath), spath + ".resources"));
      } catch (const ValidationError& e) {
        fail(spath + ".resources", e.what());
      }
    }();
    std::vector<IndexSet> sets =
        parse_sets(require(systems[i], "sets", spath), ground, spath, "sets");
    try {
      family.emplace_back(std::move(ground), std::move(sets));
    } catch (const ValidationError& e) {
      fail(spath + ".sets", e.what());
    }
  }
  return family;
}

std::string serialize_family(const std::vector<SetSystem>& family) {
  Json systems = Json::array();
  for (const SetSystem& system : family) {
    Json sets = Json::array();
    for (const IndexSet& s : system.sets()) {
      sets.push_back(name_set_json(system.ground(), s));
    }
    systems.push_back(Json{{"resources", system.ground().names()}, {"sets", std::move(sets)}});
  }
  return dump(Json{{"version", kFormatVersion}, {"systems", std::move(systems)}});
}

std::string serialize_result(const WardropResult& result, const CongestionModel& m,
                             const SolverConfig& cfg) {
  return dump(result_json(result, m, cfg));
}

std::string serialize_paradox_report(const ParadoxReport& report, const CongestionModel& m,
                                     const SolverConfig& cfg) {
  Json weak = Json::array();
  for (const auto& entry : report.weak) {
    weak.push_back(Json{{"resource", entry.resource},
                        {"cost_before", entry.cost_before},
                        {"cost_after", entry.cost_after}});
  }
  Json strong = Json::array();
  for (const auto& entry : report.strong) {
    strong.push_back(Json{{"population", entry.population},
                          {"cost_before", entry.cost_before},
                          {"cost_after", entry.cost_after}});
  }
  return dump(Json{{"version", kFormatVersion},
                   {"verdict_weak", report.verdict_weak},
                   {"verdict_strong", report.verdict_strong},
                   {"weak", std::move(weak)},
                   {"strong", std::move(strong)},
                   {"zero_demand_populations", report.zero_demand_populations},
                   {"reliable", report.reliable},
                   {"gap_before", report.gap_before},
                   {"gap_after", report.gap_after},
                   {"total_cost_before", report.total_cost_before},
                   {"total_cost_after", report.total_cost_after},
                   {"before", result_json(report.before, m, cfg)},
                   {"after", result_json(report.after, m, cfg)}});
}

std::string serialize_matroid_checks(const std::vector<MatroidCheck>& checks) {
  Json populations = Json::array();
  bool all = true;
  for (const MatroidCheck& check : checks) {
    Json clutter = Json::array();
    for (const IndexSet& s : check.clutter->sets()) {
      clutter.push_back(name_set_json(check.clutter->ground(), s));
    }
    Json entry{{"population", check.label},
               {"is_matroid", check.is_matroid},
               {"clutter", std::move(clutter)}};
    if (check.witness) {
      entry["witness"] = witness_json(*check.witness, check.clutter->ground());
    } else {
      entry["witness"] = nullptr;
    }
    populations.push_back(std::move(entry));
    all = all && check.is_matroid;
  }
  return dump(Json{{"version", kFormatVersion},
                   {"all_matroids", all},
                   {"populations", std::move(populations)}});
}

namespace {

Json witness_summary_json(const SynthesizedCounterexample& cx, const GroundSet& witness_ground,
                          const std::string& mode) {
  Json embeddings = Json::array();
  for (size_t i = 0; i < cx.embeddings.size(); ++i) {
    Json pairs = Json::array();
    for (const auto& [orig, image] : cx.embeddings[i]) {
      pairs.push_back(Json::array({orig, image}));
    }
    embeddings.push_back(Json{{"population", cx.base_model.population(static_cast<int>(i)).id},
                              {"map", std::move(pairs)}});
  }
  return Json{{"version", kFormatVersion},
              {"mode", mode},
              {"witness", witness_json(cx.witness, witness_ground)},
              {"marked", Json{{"e", cx.marked_e}, {"f", cx.marked_f}, {"g", cx.marked_g}}},
              {"embeddings", std::move(embeddings)}};
}

}  // namespace

std::string serialize_witness_summary(const SynthesizedCounterexample& cx,
                                      const GroundSet& witness_ground,
                                      const std::string& mode) {
  return dump(witness_summary_json(cx, witness_ground, mode));
}

std::string serialize_counterexample(const SynthesizedCounterexample& cx,
                                     const GroundSet& witness_ground,
                                     const std::string& mode) {
  Json combined = witness_summary_json(cx, witness_ground, mode);
  combined["model"] = model_json(cx.base_model);
  combined["reduction"] = reduction_json(cx.reduction);
  return dump(combined);
}

}  // namespace braesslab
