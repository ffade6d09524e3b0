#include "lcw/extremal.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace lcw {

std::optional<std::string> closure_defect(const FiniteStructure& S,
                                          const std::vector<int>& points) {
  std::set<int> in(points.begin(), points.end());
  for (auto& c : S.signature().constants())
    if (!in.count(S.constant(c))) return c;
  for (auto& fn : S.signature().functions()) {
    const auto& table = S.function_table(fn.name);
    size_t count = S.tuple_count(fn.arity);
    for (size_t idx = 0; idx < count; ++idx) {
      auto t = S.tuple_of_index(idx, fn.arity);
      bool inside = true;
      for (int p : t) inside = inside && in.count(p);
      if (inside && !in.count(table[idx])) return fn.name;
    }
  }
  return std::nullopt;
}

SubmodelCandidate induce_submodel(const FiniteStructure& S,
                                  std::vector<int> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.empty())
    throw std::invalid_argument("induce_submodel: empty point set");
  if (auto defect = closure_defect(S, points))
    throw std::invalid_argument("induce_submodel: subset not closed under " +
                                *defect);

  const int k = int(points.size());
  std::vector<int> local(S.size(), -1);
  for (int i = 0; i < k; ++i) local[points[i]] = i;

  std::vector<std::string> labels;
  for (int p : points) labels.push_back(S.label(p));
  std::vector<std::vector<Value>> metric(k, std::vector<Value>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) metric[i][j] = S.dist(points[i], points[j]);

  FiniteStructure K(S.signature(), std::move(labels), std::move(metric));
  if (!S.exact_mode()) K.set_float_mode(S.eps());
  for (auto& c : S.signature().constants())
    K.set_constant(c, local[S.constant(c)]);
  for (auto& fn : S.signature().functions()) {
    const auto& amb = S.function_table(fn.name);
    size_t count = K.tuple_count(fn.arity);
    std::vector<int> table(count);
    for (size_t idx = 0; idx < count; ++idx) {
      auto t = K.tuple_of_index(idx, fn.arity);
      for (int& p : t) p = points[p];
      table[idx] = local[amb[S.tuple_index(t)]];
    }
    K.set_function(fn.name, std::move(table));
  }
  for (auto& rel : S.signature().relations()) {
    const auto& amb = S.relation_table(rel.name);
    size_t count = K.tuple_count(rel.arity);
    Vec table(count);
    for (size_t idx = 0; idx < count; ++idx) {
      auto t = K.tuple_of_index(idx, rel.arity);
      for (int& p : t) p = points[p];
      table[idx] = amb[S.tuple_index(t)];
    }
    K.set_relation(rel.name, std::move(table));
  }
  return {std::move(points), std::move(K)};
}

ElementarityResult is_elementary_submodel(const FiniteStructure& S,
                                          const SubmodelCandidate& K,
                                          const Fragment& F, int n_max) {
  if (&F.structure() != &S)
    throw std::invalid_argument("is_elementary_submodel: foreign fragment");
  if (n_max < 0) n_max = F.max_context();
  const int k = int(K.points.size());
  for (int m = 1; m <= n_max; ++m) {
    const auto& ctx = F.context(m);
    const size_t count = K.induced.tuple_count(m);
    std::vector<const BasisElement*> formulas;
    for (auto& e : ctx.basis) formulas.push_back(&e);
    for (auto& e : ctx.probes) formulas.push_back(&e);
    for (const BasisElement* ep : formulas) {
      const BasisElement& e = *ep;
      for (size_t idx = 0; idx < count; ++idx) {
        auto t = K.induced.tuple_of_index(idx, m);
        Assignment asg;
        for (int i = 0; i < m; ++i) asg[Fragment::var_name(i)] = t[i];
        Value inner = eval_formula(e.formula, K.induced, asg);
        std::vector<int> amb = t;
        for (int& p : amb) p = K.points[p];
        Value outer = e.table[S.tuple_index(amb)];
        if (cmp(inner, outer, S.eps()) != 0)
          return {false, e.formula, amb, inner, outer};
      }
    }
  }
  (void)k;
  return {true, nullptr, {}, Value(), Value()};
}

std::vector<Formula> default_closure_family() {
  Term x = make_var("x"), p1 = make_var("p1"), p2 = make_var("p2");
  return {make_dist(x, p1),
          make_add(make_dist(x, p1), make_dist(x, p2))};
}

std::vector<int> maximizer_closure(const FiniteStructure& S,
                                   const std::vector<int>& seeds,
                                   const std::vector<Formula>& family,
                                   bool also_min) {
  if (seeds.empty())
    throw std::invalid_argument("maximizer_closure: empty seed set");
  const std::vector<Formula>& fam =
      family.empty() ? default_closure_family() : family;
  std::set<int> cur(seeds.begin(), seeds.end());

  for (bool changed = true; changed;) {
    changed = false;
    for (auto& tmpl : fam) {
      auto fv = free_variables(tmpl);
      if (fv.empty())
        throw std::invalid_argument("maximizer_closure: closed template");
      const std::string& xvar = fv[0];
      const int nparams = int(fv.size()) - 1;
      std::vector<int> pts(cur.begin(), cur.end());
      size_t combos = 1;
      for (int i = 0; i < nparams; ++i) combos *= pts.size();
      for (size_t c = 0; c < combos; ++c) {
        Assignment asg;
        size_t rest = c;
        for (int i = nparams - 1; i >= 0; --i) {
          asg[fv[size_t(i) + 1]] = pts[rest % pts.size()];
          rest /= pts.size();
        }
        Vec vals(S.size());
        for (int x = 0; x < S.size(); ++x) {
          asg[xvar] = x;
          vals[x] = eval_formula(tmpl, S, asg);
        }
        for (int pass = 0; pass < (also_min ? 2 : 1); ++pass) {
          Value best = vals[0];
          for (int x = 1; x < S.size(); ++x) {
            int s = cmp(vals[x], best, S.eps());
            if (pass == 0 ? s > 0 : s < 0) best = vals[x];
          }
          for (int x = 0; x < S.size(); ++x)
            if (cmp(vals[x], best, S.eps()) == 0 && cur.insert(x).second)
              changed = true;
        }
      }
    }
  }
  return {cur.begin(), cur.end()};
}

namespace {

bool next_combination(std::vector<int>& c, int n) {
  const int k = int(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[i] < n - (k - i)) {
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

SubmodelCandidate minimal_submodel(const FiniteStructure& S, const Fragment& F,
                                   MinimalStrategy strategy) {
  const int n = S.size();
  if (strategy == MinimalStrategy::Exhaustive) {
    if (n > 12)
      throw std::invalid_argument(
          "minimal_submodel: exhaustive strategy limited to 12 points");
    for (int k = 1; k <= n; ++k) {
      std::vector<int> c(k);
      for (int i = 0; i < k; ++i) c[i] = i;
      do {
        if (closure_defect(S, c)) continue;
        SubmodelCandidate cand = induce_submodel(S, c);
        if (is_elementary_submodel(S, cand, F).ok) return cand;
      } while (next_combination(c, n));
    }
    throw std::logic_error("minimal_submodel: full set not elementary");
  }

  std::vector<int> cur(n);
  for (int i = 0; i < n; ++i) cur[i] = i;
  for (bool changed = true; changed && cur.size() > 1;) {
    changed = false;
    for (size_t drop = 0; drop < cur.size(); ++drop) {
      std::vector<int> c = cur;
      c.erase(c.begin() + drop);
      if (closure_defect(S, c)) continue;
      SubmodelCandidate cand = induce_submodel(S, c);
      if (is_elementary_submodel(S, cand, F).ok) {
        cur = std::move(c);
        changed = true;
        break;
      }
    }
  }
  return induce_submodel(S, cur);
}

ExtremalResult is_extremal(const FiniteStructure& S, const Fragment& F,
                           int n_max) {
  for (int n = 1; n <= n_max; ++n) {
    TypeSpace TS = realized_types(F, n);
    auto ext = extreme_types(TS);
    std::vector<bool> is_ext(TS.vectors.size(), false);
    for (int e : ext) is_ext[size_t(e)] = true;
    for (size_t idx = 0; idx < TS.class_of.size(); ++idx)
      if (!is_ext[size_t(TS.class_of[idx])])
        return {false, n, S.tuple_of_index(idx, n)};
  }
  return {true, -1, {}};
}

FiniteStructure random_structure(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = 2 + int(rng() % 3);

  std::vector<std::vector<Value>> metric(n, std::vector<Value>(n, Value(0)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      metric[i][j] = metric[j][i] = Value::ratio(1 + long(rng() % 4), 4);
  // Shortest-path completion restores the triangle inequality.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Value via = metric[i][k] + metric[k][j];
        if (i != j && cmp(via, metric[i][j]) < 0) metric[i][j] = via;
      }

  Signature sig;
  const int nconst = int(rng() % 2);
  if (nconst) sig.add_constant("c0");
  const int nrel = int(rng() % 3);
  std::vector<int> rel_arity;
  for (int r = 0; r < nrel; ++r) {
    rel_arity.push_back(1 + int(rng() % 2));
    sig.add_relation("R" + std::to_string(r), rel_arity.back(), Value(1));
  }

  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("m" + std::to_string(i));
  FiniteStructure S(sig, std::move(labels), std::move(metric));
  if (nconst) S.set_constant("c0", int(rng() % uint64_t(n)));

  for (int r = 0; r < nrel; ++r) {
    const int arity = rel_arity[size_t(r)];
    const size_t count = S.tuple_count(arity);
    Vec table(count);
    for (size_t i = 0; i < count; ++i)
      table[i] = Value::ratio(long(rng() % 5), 4);
    // Scale into the Lipschitz bound.
    Rat worst(1);
    for (size_t i = 0; i < count; ++i)
      for (size_t j = i + 1; j < count; ++j) {
        Value diff = (table[i] - table[j]).abs();
        Value dist = tuple_metric(S, S.tuple_of_index(i, arity),
                                  S.tuple_of_index(j, arity));
        if (dist.is_zero()) continue;
        Rat ratio = (diff / dist).rat();
        if (ratio > worst) worst = ratio;
      }
    if (worst > 1)
      for (auto& v : table) v = v / Value(worst);
    S.set_relation("R" + std::to_string(r), std::move(table));
  }
  return S;
}

// ---------------------------------------------------------------------------
// Suites

namespace {

struct CaseOutcome {
  enum Status { Pass, Skip, Fail } status = Pass;
  std::string detail;
};

Vec seeded_functional(std::mt19937_64& rng, size_t dim) {
  Vec c(dim, Value(0));
  for (size_t i = 0; i < dim; ++i) {
    long num = long(rng() % 7) - 3;
    c[i] = Value::ratio(num, 1 + long(rng() % 3));
  }
  return c;
}

// Exposed face of conv(V): the argmax region of a linear functional.
std::vector<LinearConstraint> exposed_face(const std::vector<Vec>& V,
                                           const Vec& c, double eps) {
  Value m = dot(c, V[0]);
  for (auto& v : V) {
    Value s = dot(c, v);
    if (cmp(s, m, eps) > 0) m = s;
  }
  Vec neg(c.size());
  for (size_t i = 0; i < c.size(); ++i) neg[i] = -c[i];
  return {{std::move(neg), LinearConstraint::LE, -m}};
}

CaseOutcome case_restriction_extreme(const FiniteStructure& S,
                                     const FragmentParams& fp) {
  Fragment F = generate_fragment(S, 1, fp);
  if (!F.saturated()) return {CaseOutcome::Skip, "unsaturated fragment"};
  if (F.max_context() < 2) return {CaseOutcome::Skip, "no 2-context"};
  TypeSpace T1 = realized_types(F, 1), T2 = realized_types(F, 2);
  auto e1 = extreme_types(T1), e2 = extreme_types(T2);
  std::vector<bool> ext1(T1.vectors.size(), false);
  for (int e : e1) ext1[size_t(e)] = true;
  for (int v : e2) {
    Vec r = restrict_type(F, 2, T2.vectors[size_t(v)].coords);
    int cls = -1;
    for (size_t k = 0; k < T1.vectors.size(); ++k)
      if (cmp(T1.vectors[k].coords, r, S.eps()) == 0) cls = int(k);
    if (cls < 0 || !ext1[size_t(cls)])
      return {CaseOutcome::Fail,
              "extreme 2-vector with non-extreme restriction, realizer " +
                  vec_str(T2.vectors[size_t(v)].coords)};
  }
  return {};
}

CaseOutcome case_pair_extreme(const FiniteStructure& S,
                              const FragmentParams& fp) {
  Fragment F = generate_fragment(S, 2, fp);
  if (!F.saturated()) return {CaseOutcome::Skip, "unsaturated fragment"};
  TypeSpace T1 = realized_types(F, 1), T2 = realized_types(F, 2);
  auto e1 = extreme_types(T1), e2 = extreme_types(T2);
  std::vector<bool> ext1(T1.vectors.size(), false),
      ext2(T2.vectors.size(), false);
  for (int e : e1) ext1[size_t(e)] = true;
  for (int e : e2) ext2[size_t(e)] = true;
  for (int a = 0; a < S.size(); ++a)
    for (int b = 0; b < S.size(); ++b) {
      bool lhs = ext2[size_t(type_of(T2, {a, b}))];
      bool rhs = ext1[size_t(type_of(T1, {b}))] && is_extreme_over(F, {a}, {b});
      if (lhs != rhs)
        return {CaseOutcome::Fail,
                "pair (" + S.label(a) + "," + S.label(b) + "): tp(ab) " +
                    (lhs ? "extreme" : "not extreme") +
                    " but decomposition says otherwise"};
    }
  return {};
}

CaseOutcome case_over_symmetry(const FiniteStructure& S,
                               const FragmentParams& fp) {
  Fragment F = generate_fragment(S, 2, fp);
  if (!F.saturated()) return {CaseOutcome::Skip, "unsaturated fragment"};
  for (int a = 0; a < S.size(); ++a)
    for (int b = 0; b < S.size(); ++b) {
      bool ab = is_extreme_over(F, {a}, {b});
      bool ba = is_extreme_over(F, {b}, {a});
      if (ab != ba)
        return {CaseOutcome::Fail, "asymmetry at (" + S.label(a) + "," +
                                       S.label(b) + "): " +
                                       std::to_string(ab) + " vs " +
                                       std::to_string(ba)};
    }
  return {};
}

CaseOutcome case_face_parameter(const FiniteStructure& S,
                                const FragmentParams& fp,
                                std::uint64_t rng_seed) {
  Fragment F = generate_fragment(S, 2, fp);
  if (!F.saturated()) return {CaseOutcome::Skip, "unsaturated fragment"};
  TypeSpace T2 = realized_types(F, 2);
  std::vector<Vec> V;
  for (auto& v : T2.vectors) V.push_back(v.coords);
  std::mt19937_64 rng(rng_seed);
  for (int trial = 0; trial < 3; ++trial) {
    auto cons = exposed_face(V, seeded_functional(rng, V[0].size()), S.eps());
    FaceVerdict base = is_face_region(V, cons, S.eps());
    if (base.status != FaceVerdict::Face)
      return {CaseOutcome::Fail, "exposed region not recognized as a face"};
    for (int b = 0; b < S.size(); ++b) {
      std::vector<Vec> Vb;
      for (int c = 0; c < S.size(); ++c) Vb.push_back(tp_over(F, {c}, {b}));
      FaceVerdict inst = is_face_region(Vb, cons, S.eps());
      if (inst.status == FaceVerdict::NotFace)
        return {CaseOutcome::Fail,
                "face does not instantiate to a face at parameter " +
                    S.label(b)};
    }
  }
  return {};
}

CaseOutcome case_face_combinators(const FiniteStructure& S,
                                  const FragmentParams& fp,
                                  std::uint64_t rng_seed) {
  Fragment F = generate_fragment(S, 1, fp);
  if (!F.saturated()) return {CaseOutcome::Skip, "unsaturated fragment"};
  TypeSpace T1 = realized_types(F, 1);
  std::vector<Vec> V;
  for (auto& v : T1.vectors) V.push_back(v.coords);
  std::mt19937_64 rng(rng_seed);
  for (int trial = 0; trial < 4; ++trial) {
    Vec c1 = seeded_functional(rng, V[0].size());
    Vec c2 = seeded_functional(rng, V[0].size());
    auto g1 = exposed_face(V, c1, S.eps());
    auto g2 = exposed_face(V, c2, S.eps());
    FaceVerdict f1 = is_face_region(V, g1, S.eps());
    if (f1.status != FaceVerdict::Face)
      return {CaseOutcome::Fail, "exposed region not recognized as a face"};

    std::vector<LinearConstraint> both = g1;
    both.insert(both.end(), g2.begin(), g2.end());
    FaceVerdict u = is_face_region(V, both, S.eps());
    if (u.status == FaceVerdict::NotFace)
      return {CaseOutcome::Fail, "conjunction of two faces is not a face"};

    // Augment the first face by a functional that tops out at 0 on it.
    Vec theta = seeded_functional(rng, V[0].size());
    Value m;
    bool first = true;
    for (int j : f1.vertex_set) {
      Value s = dot(theta, V[size_t(j)]);
      if (first || cmp(s, m, S.eps()) > 0) m = s;
      first = false;
    }
    Vec neg(theta.size());
    for (size_t i = 0; i < theta.size(); ++i) neg[i] = -theta[i];
    std::vector<LinearConstraint> aug = g1;
    aug.push_back({std::move(neg), LinearConstraint::LE, -m});
    FaceVerdict a = is_face_region(V, aug, S.eps());
    if (a.status == FaceVerdict::NotFace)
      return {CaseOutcome::Fail, "augmented face is neither face nor empty"};
  }
  return {};
}

struct SuiteCase {
  std::string name;
  const FiniteStructure* fixed = nullptr;
  std::uint64_t seed = 0;  // structure seed when fixed == nullptr
};

CaseOutcome eval_case(const std::string& suite, const SuiteCase& sc,
                      const SuiteParams& params) {
  std::optional<FiniteStructure> generated;
  if (!sc.fixed) generated.emplace(random_structure(sc.seed));
  const FiniteStructure& S = sc.fixed ? *sc.fixed : *generated;
  std::uint64_t rng_seed = sc.seed ^ (params.seed * 0x9e3779b97f4a7c15ULL + 1);
  try {
    if (suite == "restriction-extreme")
      return case_restriction_extreme(S, params.frag);
    if (suite == "pair-extreme") return case_pair_extreme(S, params.frag);
    if (suite == "over-symmetry") return case_over_symmetry(S, params.frag);
    if (suite == "face-parameter")
      return case_face_parameter(S, params.frag, rng_seed);
    if (suite == "face-combinators")
      return case_face_combinators(S, params.frag, rng_seed);
  } catch (const std::exception& e) {
    return {CaseOutcome::Fail, std::string("exception: ") + e.what()};
  }
  throw std::invalid_argument("unknown suite: " + suite);
}

}  // namespace

SuiteReport run_suite(const std::string& name, const SuiteParams& params) {
  // Validate the suite name before spawning work.
  static const char* known[] = {"restriction-extreme", "pair-extreme",
                                "over-symmetry", "face-parameter",
                                "face-combinators"};
  bool ok = false;
  for (auto* k : known) ok = ok || name == k;
  if (!ok) throw std::invalid_argument("unknown suite: " + name);

  std::vector<SuiteCase> cases;
  for (auto& [label, S] : params.fixed) cases.push_back({label, S, 0});
  for (int i = 0; i < params.random_cases; ++i) {
    std::uint64_t s = params.seed + std::uint64_t(i);
    cases.push_back({"random-" + std::to_string(s), nullptr, s});
  }

  std::vector<CaseOutcome> outcomes(cases.size());
  const int total = int(cases.size());
  if (params.parallel) {
#ifdef LCW_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < total; ++i) outcomes[i] = eval_case(name, cases[i], params);
  } else {
    for (int i = 0; i < total; ++i) outcomes[i] = eval_case(name, cases[i], params);
  }

  SuiteReport rep;
  rep.name = name;
  rep.cases = total;
  for (int i = 0; i < total; ++i) {
    switch (outcomes[i].status) {
      case CaseOutcome::Pass:
        break;
      case CaseOutcome::Skip:
        ++rep.skipped_unsaturated;
        break;
      case CaseOutcome::Fail:
        rep.counterexamples.push_back(
            {i, cases[i].name, cases[i].seed, outcomes[i].detail});
        break;
    }
  }
  return rep;
}

}  // namespace lcw
