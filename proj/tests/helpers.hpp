#pragma once

// Shared generators and independent oracles for the test binaries. The
// oracles deliberately avoid the library's LP and span code paths.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lcw/formula.hpp"
#include "lcw/hull.hpp"
#include "lcw/structure.hpp"

namespace testutil {

using lcw::Rat;
using lcw::Value;
using lcw::Vec;

inline std::mt19937_64 seeded_rng(std::uint64_t seed) {
  return std::mt19937_64(seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
}

inline int pick(std::mt19937_64& rng, int lo, int hi) {
  return int(rng() % std::uint64_t(hi - lo + 1)) + lo;
}

inline Value rnd_rat(std::mt19937_64& rng, int lo_num, int hi_num,
                     int max_den) {
  int den = pick(rng, 1, max_den);
  int num = pick(rng, lo_num * den, hi_num * den);
  return Value(Rat(num, den));
}

// ---------------------------------------------------------------------------
// Random formulas over a signature. Bound variables are u1, u2, ... so they
// never collide with the free pool or with declared symbols.

struct FormulaGen {
  std::mt19937_64 rng;
  const lcw::Signature* sig = nullptr;
  std::vector<std::string> free_pool = {"x1", "x2", "x3"};
  int bound_counter = 0;

  FormulaGen(std::uint64_t seed, const lcw::Signature& s)
      : rng(seeded_rng(seed)), sig(&s) {}

  lcw::Term term(const std::vector<std::string>& scope, int depth) {
    int roll = pick(rng, 0, 9);
    if (depth > 0 && !sig->functions().empty() && roll < 3) {
      const auto& fn = sig->functions()[rng() % sig->functions().size()];
      std::vector<lcw::Term> args;
      for (int i = 0; i < fn.arity; ++i) args.push_back(term(scope, depth - 1));
      return lcw::make_apply(fn.name, std::move(args));
    }
    if (!sig->constants().empty() && roll < 5)
      return lcw::make_const_term(
          sig->constants()[rng() % sig->constants().size()]);
    return lcw::make_var(scope[rng() % scope.size()]);
  }

  lcw::Formula gen(std::vector<std::string> scope, int depth, int qdepth) {
    int roll = pick(rng, 0, 9);
    if (depth <= 0 || roll < 2) {
      if (roll % 2 == 0 || sig->relations().empty()) {
        if (roll < 1) return lcw::make_value(rnd_rat(rng, -1, 1, 4));
        return lcw::make_dist(term(scope, 1), term(scope, 1));
      }
      const auto& rel = sig->relations()[rng() % sig->relations().size()];
      std::vector<lcw::Term> args;
      for (int i = 0; i < rel.arity; ++i) args.push_back(term(scope, 1));
      return lcw::make_rel(rel.name, std::move(args));
    }
    if (qdepth > 0 && roll < 4) {
      std::string v = "u" + std::to_string(++bound_counter);
      scope.push_back(v);
      lcw::Formula body = gen(scope, depth - 1, qdepth - 1);
      return roll == 2 ? lcw::make_sup(v, body) : lcw::make_inf(v, body);
    }
    if (roll < 6) {
      Value c = rnd_rat(rng, -2, 2, 3);
      if (c.is_zero()) c = Value(1);
      return lcw::make_scale(c, gen(scope, depth - 1, qdepth));
    }
    lcw::Formula l = gen(scope, depth - 1, qdepth);
    lcw::Formula r = gen(scope, depth - 1, qdepth);
    return roll < 8 ? lcw::make_add(l, r) : lcw::make_sub(l, r);
  }

  lcw::Formula operator()(int depth, int qdepth) {
    return gen(free_pool, depth, qdepth);
  }
};

// ---------------------------------------------------------------------------
// Random structure families sharing one signature, for averaging tests.
// Positive grid distances are at least 1/4 and the tuple metric halves
// later coordinates, so Lipschitz constants of 8 cover every table.

inline lcw::Signature random_signature(std::mt19937_64& rng) {
  lcw::Signature sig;
  if (pick(rng, 0, 2) > 0) sig.add_constant("c0");
  int nrel = pick(rng, 1, 2);
  for (int i = 0; i < nrel; ++i)
    sig.add_relation("R" + std::to_string(i), pick(rng, 1, 2), Value(8));
  if (pick(rng, 0, 2) == 0) sig.add_function("f0", 1, Value(4));
  return sig;
}

inline lcw::FiniteStructure random_factor(std::mt19937_64& rng,
                                          const lcw::Signature& sig,
                                          int npoints) {
  std::vector<std::string> labels;
  for (int i = 0; i < npoints; ++i) labels.push_back("p" + std::to_string(i));
  std::vector<Vec> metric(npoints, Vec(npoints, Value(0)));
  for (int i = 0; i < npoints; ++i)
    for (int j = i + 1; j < npoints; ++j)
      metric[i][j] = metric[j][i] = Value(Rat(pick(rng, 1, 4), 4));
  for (int k = 0; k < npoints; ++k)  // shortest-path triangle repair
    for (int i = 0; i < npoints; ++i)
      for (int j = 0; j < npoints; ++j) {
        if (i == j) continue;
        Value via = metric[i][k] + metric[k][j];
        if (cmp(via, metric[i][j]) < 0) metric[i][j] = via;
      }
  lcw::FiniteStructure S(sig, labels, metric);
  if (sig.is_constant("c0")) S.set_constant("c0", pick(rng, 0, npoints - 1));
  for (const auto& fn : sig.functions()) {
    std::vector<int> table(npoints);
    for (auto& v : table) v = pick(rng, 0, npoints - 1);
    S.set_function(fn.name, table);
  }
  for (const auto& rel : sig.relations()) {
    size_t count = 1;
    for (int i = 0; i < rel.arity; ++i) count *= size_t(npoints);
    Vec table(count);
    for (auto& v : table) v = Value(Rat(pick(rng, 0, 4), 4));
    S.set_relation(rel.name, table);
  }
  return S;
}

// ---------------------------------------------------------------------------
// Caratheodory oracle for hull membership: v lies in conv(pts) iff some
// affinely independent subset of at most dim+1 points carries it with a
// unique nonnegative barycentric solution. Plain rational elimination,
// independent of the library's simplex.

inline std::optional<std::vector<Rat>> solve_unique(
    std::vector<std::vector<Rat>> A, std::vector<Rat> b) {
  size_t rows = A.size(), cols = rows ? A[0].size() : 0;
  std::vector<int> pivot_col(rows, -1);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && A[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(A[p], A[r]);
    std::swap(b[p], b[r]);
    Rat inv = A[r][c];
    for (size_t j = c; j < cols; ++j) A[r][j] /= inv;
    b[r] /= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || A[i][c] == 0) continue;
      Rat f = A[i][c];
      for (size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
      b[i] -= f * b[r];
    }
    pivot_col[r] = int(c);
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;  // inconsistent
  if (r < cols) return std::nullopt;     // underdetermined
  std::vector<Rat> x(cols);
  for (size_t i = 0; i < r; ++i) x[size_t(pivot_col[i])] = b[i];
  return x;
}

inline bool hull_member_oracle(const Vec& v, const std::vector<Vec>& pts) {
  size_t dim = v.size();
  size_t cap = std::min(pts.size(), dim + 1);
  std::vector<size_t> idx;
  // combinations of size k in lexicographic order
  for (size_t k = 1; k <= cap; ++k) {
    idx.assign(k, 0);
    for (size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<std::vector<Rat>> A(dim + 1, std::vector<Rat>(k));
      std::vector<Rat> b(dim + 1);
      for (size_t c = 0; c < k; ++c) {
        for (size_t rr = 0; rr < dim; ++rr) A[rr][c] = pts[idx[c]][rr].rat();
        A[dim][c] = 1;
      }
      for (size_t rr = 0; rr < dim; ++rr) b[rr] = v[rr].rat();
      b[dim] = 1;
      if (auto lam = solve_unique(A, b)) {
        bool nonneg = true;
        for (const Rat& l : *lam)
          if (l < 0) nonneg = false;
        if (nonneg) return true;
      }
      size_t i = k;
      while (i > 0 && idx[i - 1] == pts.size() - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return false;
}

inline bool extreme_oracle(const std::vector<Vec>& V, size_t i) {
  std::vector<Vec> others;
  for (size_t j = 0; j < V.size(); ++j)
    if (cmp(V[j], V[i]) != 0) others.push_back(V[j]);
  if (others.empty()) return true;
  return !hull_member_oracle(V[i], others);
}

// ---------------------------------------------------------------------------
// Seeded structure mutations with the axiom each one must trip.

inline std::vector<Vec> metric_of(const lcw::FiniteStructure& S) {
  std::vector<Vec> m(S.size(), Vec(S.size()));
  for (int i = 0; i < S.size(); ++i)
    for (int j = 0; j < S.size(); ++j) m[i][j] = S.dist(i, j);
  return m;
}

inline lcw::FiniteStructure rebuild(const lcw::FiniteStructure& S,
                                    std::vector<Vec> metric) {
  lcw::FiniteStructure T(S.signature(), S.labels(), std::move(metric));
  for (const auto& c : S.signature().constants())
    T.set_constant(c, S.constant(c));
  for (const auto& fn : S.signature().functions())
    T.set_function(fn.name, S.function_table(fn.name));
  for (const auto& rel : S.signature().relations())
    T.set_relation(rel.name, S.relation_table(rel.name));
  if (!S.exact_mode()) T.set_float_mode(S.eps());
  return T;
}

struct Mutation {
  std::string axiom;
  std::vector<int> points;  // sorted witness the validator must report
  lcw::FiniteStructure mutated;
};

/// kind in 0..6; nullopt when the kind does not apply to the structure.
inline std::optional<Mutation> mutate(const lcw::FiniteStructure& S, int kind,
                                      std::mt19937_64& rng) {
  const int n = S.size();
  auto m = metric_of(S);
  const Value q4 = Value::ratio(1, 4);
  switch (kind) {
    case 0: {  // one-sided bump breaks symmetry
      if (n < 2) return std::nullopt;
      int i = pick(rng, 0, n - 1), j = pick(rng, 0, n - 2);
      if (j >= i) ++j;
      m[i][j] += q4;
      return Mutation{"metric-symmetric", {std::min(i, j), std::max(i, j)},
                      rebuild(S, std::move(m))};
    }
    case 1: {
      int i = pick(rng, 0, n - 1);
      m[i][i] = q4;
      return Mutation{"metric-reflexive", {i}, rebuild(S, std::move(m))};
    }
    case 2: {  // distinct points at distance zero
      if (n < 2) return std::nullopt;
      int i = pick(rng, 0, n - 1), j = pick(rng, 0, n - 2);
      if (j >= i) ++j;
      m[i][j] = m[j][i] = Value(0);
      return Mutation{"metric-identity", {std::min(i, j), std::max(i, j)},
                      rebuild(S, std::move(m))};
    }
    case 3: {
      if (n < 2) return std::nullopt;
      int i = pick(rng, 0, n - 1), j = pick(rng, 0, n - 2);
      if (j >= i) ++j;
      m[i][j] = m[j][i] = Value(2);
      return Mutation{"metric-diameter", {std::min(i, j), std::max(i, j)},
                      rebuild(S, std::move(m))};
    }
    case 4: {  // shortcut two sides under a long third side
      const Value q8 = Value::ratio(1, 8);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c) {
            if (a == b || b == c || a == c) continue;
            if (cmp(S.dist(a, c), q8 + q8) <= 0) continue;
            m[a][b] = m[b][a] = q8;
            m[b][c] = m[c][b] = q8;
            std::vector<int> w = {a, b, c};
            std::sort(w.begin(), w.end());
            return Mutation{"metric-triangle", w, rebuild(S, std::move(m))};
          }
      return std::nullopt;
    }
    case 5: {  // relation value above the unit bound
      if (S.signature().relations().empty()) return std::nullopt;
      const auto& rel =
          S.signature().relations()[rng() % S.signature().relations().size()];
      Vec table = S.relation_table(rel.name);
      size_t i = rng() % table.size();
      table[i] = Value(2);
      lcw::FiniteStructure T = rebuild(S, std::move(m));
      T.set_relation(rel.name, std::move(table));
      return Mutation{"relation-bound", S.tuple_of_index(i, rel.arity),
                      std::move(T)};
    }
    case 6: {  // relation jump exceeding its Lipschitz bound
      for (const auto& rel : S.signature().relations()) {
        size_t count = S.tuple_count(rel.arity);
        for (size_t i = 0; i < count; ++i)
          for (size_t j = i + 1; j < count; ++j) {
            auto ta = S.tuple_of_index(i, rel.arity);
            auto tb = S.tuple_of_index(j, rel.arity);
            Value cap = rel.lipschitz * tuple_metric(S, ta, tb);
            if (cmp(cap, Value(1)) >= 0) continue;
            Vec table = S.relation_table(rel.name);
            table[i] = Value(0);
            table[j] = Value(1);
            lcw::FiniteStructure T = rebuild(S, std::move(m));
            T.set_relation(rel.name, std::move(table));
            std::vector<int> w = ta;
            w.insert(w.end(), tb.begin(), tb.end());
            return Mutation{"relation-lipschitz", w, std::move(T)};
          }
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

/// The validator reports the expected axiom with the expected witness.
inline bool mutation_detected(const Mutation& mu) {
  auto report = lcw::validate_structure(mu.mutated);
  for (const auto& v : report) {
    if (v.axiom != mu.axiom) continue;
    std::vector<int> w = v.witness;
    if (mu.axiom == "metric-lipschitz" || mu.axiom == "relation-lipschitz") {
      if (w == mu.points) return true;
      continue;
    }
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    std::vector<int> e = mu.points;
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    if (w == e) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------

inline std::vector<std::string> corpus_formula_set(const std::string& name) {
  if (name == "M2" || name == "U2")
    return {"P(x1)",
            "d(x1, c0)",
            "sup u1 . P(u1)",
            "inf u1 . (P(u1) + d(u1, c0))",
            "1/2 * P(x1) + 1/2 * P(x2)",
            "sup u1 . (d(x1, u1) - P(u1))"};
  if (name == "DC3" || name == "DC3-open")
    return {"d(x1, k0)", "d(x1, k1) + d(x1, k2)", "sup u1 . d(x1, u1)",
            "inf u1 . (d(u1, k0) + d(u1, x1))"};
  if (name == "C8")
    return {"d(x1, x2)", "sup u1 . d(x1, u1)",
            "inf u1 . (d(x1, u1) + d(u1, x2))"};
  return {"d(x1, x1)", "sup u1 . d(x1, u1)"};
}

}  // namespace testutil
