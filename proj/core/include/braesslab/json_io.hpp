#pragma once

#include <optional>
#include <string>
#include <vector>

#include "braesslab/braess.hpp"
#include "braesslab/matroid.hpp"
#include "braesslab/model.hpp"
#include "braesslab/solver.hpp"

namespace braesslab {

// All documents are JSON objects carrying {"version": "braess-lab/1"}.
// Parsers are strict: unknown fields, missing fields, wrong types, and
// non-finite numbers raise ParseError naming the offending path.  Serializers
// emit canonical form (two-space indent, trailing newline, sorted strategy
// sets, shortest lossless number rendering), so serializing a parsed
// canonical document reproduces it byte for byte.
//
// Model document:
//   { "version": "braess-lab/1",
//     "resources": ["su", "sv", ...],
//     "costs": { "su": {"breakpoints": [[0.0, 0.0]], "final_slope": 1.0}, ... },
//     "populations": [ {"id": "p1", "demand": 1.0,
//                       "strategies": [["su", "ut"], ...]} ] }
//
// Reduction document:
//   { "version": "braess-lab/1",
//     "cost_overrides": { "uv": {"breakpoints": ..., "final_slope": ...} },
//     "demand_overrides": { "p2": 0.0 } }
//
// Family document (input to the counterexample synthesizer):
//   { "version": "braess-lab/1",
//     "systems": [ {"resources": [...], "sets": [[...], ...]}, ... ] }
inline constexpr const char* kFormatVersion = "braess-lab/1";

std::string read_file(const std::string& path);
// Writes via a temporary file in the same directory plus an atomic rename.
void write_file_atomic(const std::string& path, const std::string& content);

CongestionModel parse_model(const std::string& text);
std::string serialize_model(const CongestionModel& m);

Reduction parse_reduction(const std::string& text);
std::string serialize_reduction(const Reduction& r);

std::vector<SetSystem> parse_family(const std::string& text);
std::string serialize_family(const std::vector<SetSystem>& family);

// Result document: solver metadata plus loads, resource costs, population
// costs and the per-strategy masses above the used-mass threshold.
std::string serialize_result(const WardropResult& result, const CongestionModel& m,
                             const SolverConfig& cfg);
std::string serialize_paradox_report(const ParadoxReport& report, const CongestionModel& m,
                                     const SolverConfig& cfg);

// One entry per checked population: its minimal clutter, the verdict, and the
// witness when the clutter is not a matroid basis family.
struct MatroidCheck {
  std::string label;
  const Clutter* clutter = nullptr;
  bool is_matroid = false;
  std::optional<NonMatroidWitness> witness;
};
std::string serialize_matroid_checks(const std::vector<MatroidCheck>& checks);

// witness_ground names the elements of the source system the witness indexes.
std::string serialize_counterexample(const SynthesizedCounterexample& cx,
                                     const GroundSet& witness_ground,
                                     const std::string& mode);
// The counterexample document without the embedded model and reduction; used
// when the three pieces are written to separate files.
std::string serialize_witness_summary(const SynthesizedCounterexample& cx,
                                      const GroundSet& witness_ground,
                                      const std::string& mode);

}  // namespace braesslab
