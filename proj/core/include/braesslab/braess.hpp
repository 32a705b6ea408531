#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "braesslab/model.hpp"
#include "braesslab/solver.hpp"

namespace braesslab {

// Pointwise cost reductions and demand reductions, keyed by resource and
// population id.  Valid against a model when every cost override is
// pointwise <= the original cost and every demand override lies in
// [0, original demand].
struct Reduction {
  std::map<std::string, CostFunction> cost_overrides;
  std::map<std::string, double> demand_overrides;
};

// Throws InvalidReduction naming the first offending entry.
void validate_reduction(const CongestionModel& m, const Reduction& r);

// Model with the overrides applied; strategy systems are unchanged.
CongestionModel apply_reduction(const CongestionModel& m, const Reduction& r);

struct WeakParadoxEntry {
  std::string resource;
  double cost_before = 0.0;
  double cost_after = 0.0;
};

struct StrongParadoxEntry {
  std::string population;
  double cost_before = 0.0;
  double cost_after = 0.0;
};

// Outcome of comparing the equilibria before and after a reduction.  "Weak"
// lists resources whose equilibrium cost strictly increased, "strong" lists
// populations whose cheapest-strategy cost strictly increased.  Populations
// whose demand was reduced to zero have no players left to be worse off and
// are excluded from the strong comparison but listed for transparency.
struct ParadoxReport {
  std::vector<WeakParadoxEntry> weak;
  std::vector<StrongParadoxEntry> strong;
  std::vector<std::string> zero_demand_populations;
  bool verdict_weak = false;
  bool verdict_strong = false;
  double gap_before = 0.0;
  double gap_after = 0.0;
  // Informational: total cost sum_i d_i * population_cost_i on both sides.
  double total_cost_before = 0.0;
  double total_cost_after = 0.0;
  // False when either solve stopped before reaching the gap tolerance; the
  // verdicts are then not trustworthy.
  bool reliable = false;
  WardropResult before;
  WardropResult after;
};

// Solves the model and the reduced model (concurrently) and compares
// equilibrium costs with absolute tolerance tol.
ParadoxReport detect_paradox(const CongestionModel& m, const Reduction& r,
                             const SolverConfig& cfg = {}, double tol = 1e-4);

// One observed monotonicity violation in a randomized trial.
struct SensitivityViolation {
  int trial = -1;
  std::string resource;
  double cost_before = 0.0;
  double cost_after = 0.0;
};

struct SensitivityReport {
  int trials = 0;
  std::vector<SensitivityViolation> violations;
  // Trials whose solves missed the gap tolerance; their comparisons are
  // recorded anyway but should be treated with suspicion.
  std::vector<int> unreliable_trials;
  bool ok() const { return violations.empty(); }
};

struct TrialCaps {
  int max_resources = 8;
  int max_populations = 3;
};

// Per-instance checker: resources whose equilibrium cost rose by more than
// tol after the reduction.  For matroid populations no such resource should
// exist, whatever the reduction.
std::vector<SensitivityViolation> cost_increase_violations(const CongestionModel& m,
                                                           const Reduction& r,
                                                           const SolverConfig& cfg,
                                                           double tol,
                                                           bool* reliable = nullptr);

// Randomized harnesses over matroid-population instances (uniform,
// partition and graphic matroids).  Trials run in parallel with per-trial
// seeds derived deterministically from `seed`, so reports are reproducible.
// Violations are report content, not errors.
SensitivityReport verify_cost_sensitivity(int trials, std::uint64_t seed,
                                          const TrialCaps& caps = {},
                                          const SolverConfig& cfg = {}, double tol = 1e-4);
SensitivityReport verify_demand_sensitivity(int trials, std::uint64_t seed,
                                            const TrialCaps& caps = {},
                                            const SolverConfig& cfg = {}, double tol = 1e-4);

// A ready-to-run strong-paradox instance built around an exchange-axiom
// violation of the first system's clutter.
struct SynthesizedCounterexample {
  CongestionModel base_model;
  Reduction reduction;
  NonMatroidWitness witness;          // witness inside the first input system
  std::string marked_e, marked_f, marked_g;
  // Per population: (original resource name, embedded resource name).
  std::vector<std::vector<std::pair<std::string, std::string>>> embeddings;
};

// Embeds the family into a fresh ground set and prices the witness elements
// so that lowering the cost of the marked resource g from 3 to 0 raises
// population 2's equilibrium cost from 1/2 to 1.  Population 1 must not be
// a matroid basis family (throws NotANonMatroid otherwise); the family
// needs at least two systems.  After building, both equilibria are solved
// and BigMTooSmall is thrown if any penalty resource carries mass.
SynthesizedCounterexample synthesize_counterexample(const std::vector<SetSystem>& family,
                                                    double big_m = kDefaultBigM);

// Demand-reduction variant: three or more systems are pinned into the
// three-population shape whose second population's departure doubles the
// total equilibrium cost (demand of population 2 drops from 2 to 0).
SynthesizedCounterexample synthesize_demand_counterexample(const std::vector<SetSystem>& family,
                                                           double big_m = kDefaultBigM);

}  // namespace braesslab
