// braess-lab: Wardrop equilibria, matroid recognition, paradox detection and
// strong-paradox counterexample synthesis for congestion games on set systems.
//
// Exit codes: 0 success / matroid / no paradox; 1 non-matroid / weak paradox
// only; 2 usage, parse or validation error; 3 solver stopped before reaching
// the gap tolerance; 4 strong paradox.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "braesslab/braess.hpp"
#include "braesslab/examples.hpp"
#include "braesslab/json_io.hpp"
#include "braesslab/matroid.hpp"
#include "braesslab/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFinding = 1;   // non-matroid / weak paradox
constexpr int kExitError = 2;     // parse, validation, usage
constexpr int kExitNotConverged = 3;
constexpr int kExitStrong = 4;

// Machine output goes to --out (atomically) or standard output; everything
// else goes to standard error.
void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    braesslab::write_file_atomic(out_path, content);
    std::cerr << "wrote " << out_path << "\n";
  }
}

struct SolveArgs {
  std::string model_path;
  std::string out_path;
  braesslab::SolverConfig cfg;
};

int cmd_solve(const SolveArgs& args) {
  braesslab::CongestionModel model =
      braesslab::parse_model(braesslab::read_file(args.model_path));
  braesslab::WardropResult result = braesslab::solve(model, args.cfg);
  emit(args.out_path, braesslab::serialize_result(result, model, args.cfg));
  std::cerr << (result.converged ? "converged" : "NOT converged") << " after "
            << result.iterations << " iterations; gap " << result.gap << ", potential "
            << result.potential << "\n";
  return result.converged ? kExitOk : kExitNotConverged;
}

struct CheckMatroidArgs {
  std::string model_path;
  std::string population;
  std::string out_path;
};

int cmd_check_matroid(const CheckMatroidArgs& args) {
  braesslab::CongestionModel model =
      braesslab::parse_model(braesslab::read_file(args.model_path));
  std::vector<int> indices;
  if (args.population.empty()) {
    for (int i = 0; i < model.population_count(); ++i) indices.push_back(i);
  } else {
    auto idx = model.population_index(args.population);
    if (!idx) {
      throw braesslab::ValidationError("unknown population '" + args.population + "'");
    }
    indices.push_back(*idx);
  }
  std::vector<braesslab::MatroidCheck> checks;
  bool all = true;
  for (int i : indices) {
    braesslab::MatroidCheck check;
    check.label = model.population(i).id;
    check.clutter = &model.population_clutter(i);
    check.is_matroid = model.population_is_matroid(i);
    if (!check.is_matroid) {
      check.witness = braesslab::nonmatroid_witness(*check.clutter);
      const auto& g = check.clutter->ground();
      std::cerr << "population " << check.label << ": non-matroid (witness a="
                << g.name(check.witness->a) << ", b=" << g.name(check.witness->b)
                << ", c=" << g.name(check.witness->c) << ")\n";
      all = false;
    } else {
      std::cerr << "population " << check.label << ": matroid basis family\n";
    }
    checks.push_back(std::move(check));
  }
  emit(args.out_path, braesslab::serialize_matroid_checks(checks));
  return all ? kExitOk : kExitFinding;
}

struct ParadoxArgs {
  std::string model_path;
  std::string reduction_path;
  std::string out_path;
  double tol = 1e-4;
  braesslab::SolverConfig cfg;
};

int cmd_paradox(const ParadoxArgs& args) {
  braesslab::CongestionModel model =
      braesslab::parse_model(braesslab::read_file(args.model_path));
  braesslab::Reduction reduction =
      braesslab::parse_reduction(braesslab::read_file(args.reduction_path));
  braesslab::ParadoxReport report =
      braesslab::detect_paradox(model, reduction, args.cfg, args.tol);

  emit(args.out_path, braesslab::serialize_paradox_report(report, model, args.cfg));

  std::cerr << "paradox report (tolerance " << args.tol << ")\n";
  std::cerr << "  weak:   " << (report.verdict_weak ? "YES" : "no") << "\n";
  for (const auto& entry : report.weak) {
    std::cerr << "    " << entry.resource << ": " << entry.cost_before << " -> "
              << entry.cost_after << "\n";
  }
  std::cerr << "  strong: " << (report.verdict_strong ? "YES" : "no") << "\n";
  for (const auto& entry : report.strong) {
    std::cerr << "    " << entry.population << ": " << entry.cost_before << " -> "
              << entry.cost_after << "\n";
  }
  for (const auto& id : report.zero_demand_populations) {
    std::cerr << "  (population " << id << " has zero demand after the reduction)\n";
  }
  std::cerr << "  total cost: " << report.total_cost_before << " -> "
            << report.total_cost_after << "\n";
  if (!report.reliable) {
    std::cerr << "  WARNING: a solve stopped before the gap tolerance; verdicts are "
                 "unreliable\n";
    return kExitNotConverged;
  }
  if (report.verdict_strong) return kExitStrong;
  if (report.verdict_weak) return kExitFinding;
  return kExitOk;
}

struct SynthesizeArgs {
  std::string family_path;
  std::string mode = "cost";
  double big_m = braesslab::kDefaultBigM;
  std::string out_path;
  std::string out_dir;
};

int cmd_synthesize(const SynthesizeArgs& args) {
  std::vector<braesslab::SetSystem> family =
      braesslab::parse_family(braesslab::read_file(args.family_path));
  braesslab::SynthesizedCounterexample cx =
      args.mode == "demand" ? braesslab::synthesize_demand_counterexample(family, args.big_m)
                            : braesslab::synthesize_counterexample(family, args.big_m);
  std::cerr << "strong-paradox pair built from the first system's witness; marked e="
            << cx.marked_e << ", f=" << cx.marked_f << ", g=" << cx.marked_g << "\n";
  if (!args.out_dir.empty()) {
    namespace fs = std::filesystem;
    fs::create_directories(args.out_dir);
    auto path = [&](const char* leaf) { return (fs::path(args.out_dir) / leaf).string(); };
    braesslab::write_file_atomic(path("model.json"),
                                 braesslab::serialize_model(cx.base_model));
    braesslab::write_file_atomic(path("reduction.json"),
                                 braesslab::serialize_reduction(cx.reduction));
    braesslab::write_file_atomic(
        path("witness.json"),
        braesslab::serialize_witness_summary(cx, family[0].ground(), args.mode));
    std::cerr << "wrote " << path("model.json") << ", " << path("reduction.json") << ", "
              << path("witness.json") << "\n";
  } else {
    emit(args.out_path,
         braesslab::serialize_counterexample(cx, family[0].ground(), args.mode));
  }
  return kExitOk;
}

struct ExampleArgs {
  std::string name;
  std::string out_dir = ".";
  bool list = false;
};

int cmd_example(const ExampleArgs& args) {
  if (args.list) {
    for (const std::string& name : braesslab::example_names()) {
      std::cout << name << "  " << braesslab::build_example(name).description << "\n";
    }
    return kExitOk;
  }
  braesslab::ExamplePair example = braesslab::build_example(args.name);
  namespace fs = std::filesystem;
  fs::create_directories(args.out_dir);
  std::string model_path = (fs::path(args.out_dir) / (example.name + ".model.json")).string();
  std::string reduction_path =
      (fs::path(args.out_dir) / (example.name + ".reduction.json")).string();
  braesslab::write_file_atomic(model_path, braesslab::serialize_model(example.model));
  braesslab::write_file_atomic(reduction_path,
                               braesslab::serialize_reduction(example.reduction));
  std::cerr << example.name << ": " << example.description << "\n";
  std::cerr << "wrote " << model_path << " and " << reduction_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nonatomic congestion games on set systems: Wardrop equilibria, matroid "
               "recognition, paradox detection, counterexample synthesis"};
  app.set_version_flag("--version", "braess-lab 0.1.0");
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "compute a Wardrop equilibrium");
  solve->add_option("model", solve_args.model_path, "model document (JSON)")->required();
  solve->add_option("--tol", solve_args.cfg.gap_tolerance, "equilibrium gap tolerance");
  solve->add_option("--max-iter", solve_args.cfg.max_iterations, "iteration budget");
  solve->add_option("--seed", solve_args.cfg.seed, "seed recorded in the result document");
  solve->add_flag("--no-away-steps",
                  [&](size_t) { solve_args.cfg.away_steps = false; },
                  "plain toward steps only");
  solve->add_option("--out", solve_args.out_path, "write the result document here");

  CheckMatroidArgs check_args;
  CLI::App* check = app.add_subcommand(
      "check-matroid", "test whether population strategy clutters are matroid basis families");
  check->add_option("model", check_args.model_path, "model document (JSON)")->required();
  check->add_option("--population", check_args.population,
                    "check only this population (default: all)");
  check->add_option("--out", check_args.out_path, "write the check document here");

  ParadoxArgs paradox_args;
  CLI::App* paradox = app.add_subcommand(
      "paradox", "compare equilibria before and after a cost/demand reduction");
  paradox->add_option("model", paradox_args.model_path, "model document (JSON)")->required();
  paradox->add_option("reduction", paradox_args.reduction_path, "reduction document (JSON)")
      ->required();
  paradox->add_option("--tol", paradox_args.tol, "strict-increase tolerance");
  paradox->add_option("--max-iter", paradox_args.cfg.max_iterations, "iteration budget");
  paradox->add_option("--seed", paradox_args.cfg.seed,
                      "seed recorded in the result documents");
  paradox->add_option("--out", paradox_args.out_path, "write the report document here");

  SynthesizeArgs synth_args;
  CLI::App* synth = app.add_subcommand(
      "synthesize", "build a strong-paradox model/reduction pair for a non-matroid family");
  synth->add_option("family", synth_args.family_path, "family document (JSON)")->required();
  synth->add_option("--mode", synth_args.mode, "cost (default) or demand reduction")
      ->check(CLI::IsMember({"cost", "demand"}));
  synth->add_option("--big-m", synth_args.big_m, "penalty cost for priced-out resources");
  synth->add_option("--out", synth_args.out_path, "write the combined document here");
  synth->add_option("--out-dir", synth_args.out_dir,
                    "write model.json, reduction.json and witness.json here instead");

  ExampleArgs example_args;
  CLI::App* example = app.add_subcommand("example", "write a built-in model/reduction pair");
  example->add_option("name", example_args.name, "fig1, fig2, fig3, mst-k4 or queue");
  example->add_flag("--list", example_args.list, "list available examples");
  example->add_option("--out-dir", example_args.out_dir, "output directory (default: .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (app.got_subcommand(solve)) return cmd_solve(solve_args);
    if (app.got_subcommand(check)) return cmd_check_matroid(check_args);
    if (app.got_subcommand(paradox)) return cmd_paradox(paradox_args);
    if (app.got_subcommand(synth)) return cmd_synthesize(synth_args);
    if (app.got_subcommand(example)) {
      if (!example_args.list && example_args.name.empty()) {
        std::cerr << "error: example needs a name or --list\n";
        return kExitError;
      }
      return cmd_example(example_args);
    }
  } catch (const braesslab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
