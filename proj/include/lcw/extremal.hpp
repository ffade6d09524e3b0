#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcw/typespace.hpp"

namespace lcw {

/// A subset of points together with the induced structure. Construction
/// fails unless the subset is closed under constants and functions.
struct SubmodelCandidate {
  std::vector<int> points;  // ambient indices, increasing
  FiniteStructure induced;
};

/// Nullopt when closed; otherwise the name of the violating symbol.
std::optional<std::string> closure_defect(const FiniteStructure& S,
                                          const std::vector<int>& points);

SubmodelCandidate induce_submodel(const FiniteStructure& S,
                                  std::vector<int> points);

struct ElementarityResult {
  bool ok = false;
  // First mismatch: basis formula, ambient tuple into K, and the two
  // evaluations (inner = induced structure, outer = ambient).
  Formula witness;
  std::vector<int> tuple;
  Value inner, outer;
};

/// Fragment-relative elementarity: every basis formula evaluated at every
/// tuple of K, with quantifiers ranging over K, matches the ambient value.
ElementarityResult is_elementary_submodel(const FiniteStructure& S,
                                          const SubmodelCandidate& K,
                                          const Fragment& F,
                                          int n_max = -1);

/// Default closure family: d(x,p1) and d(x,p1) + d(x,p2). The first free
/// variable of a template is the optimization variable; the rest are
/// parameter slots instantiated over the current set.
std::vector<Formula> default_closure_family();

/// Iterates adding every argmax (and argmin when requested) of each
/// instantiated template until a fixed point. Ties add all maximizers.
std::vector<int> maximizer_closure(const FiniteStructure& S,
                                   const std::vector<int>& seeds,
                                   const std::vector<Formula>& family = {},
                                   bool also_min = false);

enum class MinimalStrategy { Exhaustive, Greedy };

/// Smallest elementary submodel: exhaustive scans subsets by cardinality
/// then lexicographically (ambient size at most 12); greedy drops points
/// while elementarity holds and may return a local minimum.
SubmodelCandidate minimal_submodel(const FiniteStructure& S, const Fragment& F,
                                   MinimalStrategy strategy =
                                       MinimalStrategy::Exhaustive);

struct ExtremalResult {
  bool extremal = true;
  int n = -1;                // context of the first failure
  std::vector<int> witness;  // first realizer of a non-extreme vector
};

/// True iff every realized type vector is extreme for each context up to
/// n_max.
ExtremalResult is_extremal(const FiniteStructure& S, const Fragment& F,
                           int n_max);

/// Seeded generator for suite fuzzing: 2 to 4 points, at most two
/// relations and one constant, rational grid metric repaired by
/// shortest-path completion, relations scaled into their Lipschitz bound.
FiniteStructure random_structure(std::uint64_t seed);

// ---------------------------------------------------------------------------
// Property suites

struct Counterexample {
  int case_index = -1;
  std::string case_name;
  std::uint64_t seed = 0;  // regenerates the structure when nonzero
  std::string detail;
};

struct SuiteReport {
  std::string name;
  int cases = 0;
  int skipped_unsaturated = 0;
  std::vector<Counterexample> counterexamples;
  bool passed() const { return counterexamples.empty(); }
};

struct SuiteParams {
  int random_cases = 100;
  std::uint64_t seed = 1;
  bool parallel = true;  // serial reference path when false
  FragmentParams frag;
  // Named structures checked before the random ones.
  std::vector<std::pair<std::string, const FiniteStructure*>> fixed;
};

/// name in {"restriction-extreme", "pair-extreme", "over-symmetry",
/// "face-parameter", "face-combinators"}.
SuiteReport run_suite(const std::string& name, const SuiteParams& params);

}  // namespace lcw
