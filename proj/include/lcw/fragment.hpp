#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "lcw/linalg.hpp"
#include "lcw/structure.hpp"

namespace lcw {

struct TermEntry {
  Term term;
  std::vector<int> table;  // point per tuple of M^m, last variable fastest
};

/// All distinct term functions M^m -> M up to the depth cap, closed under
/// function application (fixed point; finitely many functions exist).
std::vector<TermEntry> term_closure(const FiniteStructure& S, int m,
                                    int depth_cap = 2);

struct FragmentParams {
  enum Mode { Listed, Enumerated, Saturated } mode = Saturated;
  int term_depth = 2;
  int rounds = 8;         // generation passes
  int samples = 32;       // random combinations per context and pass
  std::uint64_t seed = 1;
  int extra_contexts = 2; // quantifier headroom above the requested arity
  std::vector<std::string> listed;  // Listed mode formulas

  // Largest permitted value table; deeper contexts are dropped.
  size_t table_budget = size_t(1) << 14;
};

struct BasisElement {
  Formula formula;
  Vec table;  // values over M^m, last variable fastest
};

struct FragmentContext {
  int arity = 0;
  std::vector<BasisElement> basis;
  SpanBasis span;  // coords over basis order
  // Generated formulas whose tables were linearly dependent on the basis.
  // Their ambient values carry no new information, but their evaluations
  // on substructures can differ, so elementarity checks need them.
  std::vector<BasisElement> probes;
};

/// A finite-dimensional, symbolically backed inner approximation of the
/// formula space, one context per variable count. The basis of context m
/// is a prefix of the basis of context m+1 (tables extended by ignoring
/// the last coordinate), which makes type restriction a coordinate
/// projection.
class Fragment {
 public:
  const FiniteStructure& structure() const { return *S_; }
  int max_context() const { return int(contexts_.size()) - 1; }
  const FragmentContext& context(int m) const { return contexts_.at(m); }
  bool saturated() const { return saturated_; }
  const FragmentParams& params() const { return params_; }
  std::vector<int> dims() const {
    std::vector<int> d;
    for (int m = 1; m <= max_context(); ++m)
      d.push_back(int(contexts_[m].basis.size()));
    return d;
  }

  /// Variable name of coordinate i (0-based), "x1", "x2", ...
  static std::string var_name(int i) { return "x" + std::to_string(i + 1); }

 private:
  friend Fragment generate_fragment(const FiniteStructure& S, int n,
                                    const FragmentParams& p);
  const FiniteStructure* S_ = nullptr;
  std::vector<FragmentContext> contexts_;  // index 0 unused
  bool saturated_ = false;
  FragmentParams params_;
};

Fragment generate_fragment(const FiniteStructure& S, int n,
                           const FragmentParams& p = {});

}  // namespace lcw
