// Acceptance harness: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "lcw/corpus.hpp"
#include "lcw/extremal.hpp"
#include "lcw/parser.hpp"
#include "lcw/typespace.hpp"
#include "lcw/ultramean.hpp"

using namespace lcw;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", criterion, ok ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void guarded(int criterion, const std::function<void(int)>& body) {
  try {
    body(criterion);
  } catch (const std::exception& e) {
    report(criterion, false, std::string("exception: ") + e.what());
  }
}

FiniteStructure to_float(const FiniteStructure& S, double eps) {
  std::vector<Vec> m(S.size(), Vec(S.size()));
  for (int i = 0; i < S.size(); ++i)
    for (int j = 0; j < S.size(); ++j) m[i][j] = Value(S.dist(i, j).to_double());
  FiniteStructure T(S.signature(), S.labels(), std::move(m));
  for (const auto& c : S.signature().constants())
    T.set_constant(c, S.constant(c));
  for (const auto& fn : S.signature().functions())
    T.set_function(fn.name, S.function_table(fn.name));
  for (const auto& rel : S.signature().relations()) {
    Vec t = S.relation_table(rel.name);
    for (auto& v : t) v = Value(v.to_double());
    T.set_relation(rel.name, std::move(t));
  }
  T.set_float_mode(eps);
  return T;
}

// 1. averaging identity on random families, exact and float
void criterion1(int id) {
  auto t0 = Clock::now();
  int cases = 0, bad = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    auto rng = testutil::seeded_rng(seed);
    Signature sig = testutil::random_signature(rng);
    bool float_mode = seed % 4 == 3;
    int nf = testutil::pick(rng, 1, 3);
    std::vector<FiniteStructure> factors;
    for (int i = 0; i < nf; ++i) {
      auto F = testutil::random_factor(rng, sig, testutil::pick(rng, 1, 4));
      factors.push_back(float_mode ? to_float(F, 1e-9) : F);
    }
    std::vector<const FiniteStructure*> fp;
    for (auto& f : factors) fp.push_back(&f);
    Vec w(nf);
    int total = 0;
    std::vector<int> ks(nf);
    for (int i = 0; i < nf; ++i) total += ks[i] = testutil::pick(rng, 0, 4);
    if (total == 0) ks[0] = total = 1;
    for (int i = 0; i < nf; ++i)
      w[i] = float_mode ? Value(double(ks[i]) / double(total))
                        : Value(Rat(ks[i], total));
    Charge mu{w};
    auto um = build_ultramean(fp, mu);
    testutil::FormulaGen gen(seed + 31337, sig);
    Formula phi = gen(3, 2);
    auto fv = free_variables(phi);
    std::vector<int> classes;
    for (size_t k = 0; k < fv.size(); ++k)
      classes.push_back(int(rng() % um.quotient.size()));
    auto lc = check_los(phi, fp, mu, um, classes);
    ++cases;
    bool ok = float_mode ? cmp(lc.lhs, lc.rhs, 1e-9) == 0
                         : (lc.equal && lc.lhs == lc.rhs);
    if (!ok) ++bad;
  }
  double dt = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "averaging identity: %d/%d cases agree in %.1fs", cases - bad,
                cases, dt);
  report(id, bad == 0 && dt < 30.0, buf);
}

// 2. point-mass charges reproduce the chosen factor
void criterion2(int id) {
  auto names = corpus_names();
  int bad = 0;
  for (int c = 0; c < 100; ++c) {
    auto rng = testutil::seeded_rng(std::uint64_t(c) + 5000);
    const auto& name = names[size_t(c) % names.size()];
    FiniteStructure S = load_corpus(name).structure;
    int copies = testutil::pick(rng, 1, 3);
    int j = testutil::pick(rng, 0, copies - 1);
    std::vector<const FiniteStructure*> fp(size_t(copies), &S);
    auto um = build_ultramean(fp, Charge::point_mass(copies, j));
    for (const auto& text : testutil::corpus_formula_set(name)) {
      Formula phi = parse_formula(text, S.signature());
      auto fv = free_variables(phi);
      std::vector<int> classes;
      for (size_t k = 0; k < fv.size(); ++k)
        classes.push_back(int(rng() % um.quotient.size()));
      auto lc = check_los(phi, fp, Charge::point_mass(copies, j), um, classes);
      Assignment asg;
      for (size_t k = 0; k < fv.size(); ++k)
        asg[fv[k]] = um.reps[size_t(classes[k])][size_t(j)];
      Value direct = eval_formula(phi, S, asg);
      if (!(cmp(lc.lhs, direct, S.eps()) == 0 &&
            cmp(lc.rhs, direct, S.eps()) == 0))
        ++bad;
    }
  }
  report(id, bad == 0,
         "point-mass degeneration matches factor evaluation on all corpus "
         "formula sets (100 cases)");
}

// 3. the two-coin pipeline end to end
void criterion3(int id) {
  auto t0 = Clock::now();
  auto U2 = load_corpus("U2").structure;
  FragmentParams lp;
  lp.mode = FragmentParams::Listed;
  lp.listed = {"P(x1)", "d(x1, c0)"};
  Fragment FL = generate_fragment(U2, 1, lp);
  TypeSpace TS = realized_types(FL, 1);
  Formula fP = parse_formula("P(x1)", U2.signature());
  Formula fd = parse_formula("d(x1, c0)", U2.signature());
  auto pair_of = [&](const TypeVector& tv) {
    Assignment asg{{"x1", tv.realizers[0][0]}};
    return eval_formula(fP, U2, asg).str() + "," +
           eval_formula(fd, U2, asg).str();
  };
  std::set<std::string> shown;
  for (const auto& tv : TS.vectors) shown.insert(pair_of(tv));
  bool vecs_ok = shown == std::set<std::string>{"0/1,0/1", "1/2,1/2", "1/1,1/1"};
  auto ext = extreme_types(TS);
  std::set<std::string> ext_shown;
  for (int e : ext) ext_shown.insert(pair_of(TS.vectors[size_t(e)]));
  bool ext_ok = ext_shown == std::set<std::string>{"0/1,0/1", "1/1,1/1"};
  Fragment FS = generate_fragment(U2, 1);
  auto mini = minimal_submodel(U2, FS);
  std::vector<std::string> labels;
  for (int p : mini.points) labels.push_back(U2.label(p));
  bool mini_ok =
      labels == std::vector<std::string>{"[a0a0]", "[a1a1]"};
  std::set<int> realized;
  for (int p : mini.points) realized.insert(type_of(TS, {p}));
  bool shadow_ok = realized == std::set<int>(ext.begin(), ext.end());
  double dt = seconds_since(t0);
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "two-coin pipeline (vectors %s, extremes %s, minimal %s, "
                "shadow %s) in %.1fs",
                vecs_ok ? "ok" : "BAD", ext_ok ? "ok" : "BAD",
                mini_ok ? "ok" : "BAD", shadow_ok ? "ok" : "BAD", dt);
  report(id, vecs_ok && ext_ok && mini_ok && shadow_ok && dt < 5.0, buf);
}

// 4. the three-constant face with a re-verified certificate
void criterion4(int id) {
  auto DC3 = load_corpus("DC3").structure;
  Fragment F = generate_fragment(DC3, 1);
  TypeSpace TS = realized_types(F, 1);
  auto conds = parse_conditions("d(x, k0) = 1; d(x, k1) = 1; d(x, k2) = 1",
                                DC3.signature());
  auto verdict = is_face_partial_type(TS, compile_partial_type(TS, conds));
  bool ok = verdict.status == FaceVerdict::Face &&
            verdict.vertex_set.size() == 1;
  if (ok) {
    const Vec& v = TS.vectors[size_t(verdict.vertex_set[0])].coords;
    for (size_t k = 1; k < v.size(); ++k) ok = ok && v[k] == Value(1);
  }
  ok = ok && verdict.functional.has_value();
  if (ok) {
    std::vector<Vec> V;
    for (const auto& tv : TS.vectors) V.push_back(tv.coords);
    ok = verify_functional(V, verdict.vertex_set, *verdict.functional);
  }
  report(id, ok,
         "pinned-distance face has the unique all-ones vertex and a "
         "re-verified supporting functional");
}

// 5. chord cycle closure and minimality
void criterion5(int id) {
  auto t0 = Clock::now();
  auto C8 = load_corpus("C8").structure;
  bool closure_ok = true;
  for (int s = 0; s < 8; ++s)
    closure_ok = closure_ok && maximizer_closure(C8, {s}).size() == 8;
  Fragment F = generate_fragment(C8, 1);
  bool minimal_ok =
      minimal_submodel(C8, F, MinimalStrategy::Exhaustive).points.size() == 8;
  double dt = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "chord cycle: closure from every seed %s, exhaustive minimal "
                "model %s, %.1fs",
                closure_ok ? "reaches all 8" : "BAD",
                minimal_ok ? "keeps all 8" : "BAD", dt);
  report(id, closure_ok && minimal_ok && dt < 60.0, buf);
}

// 6. restriction of extreme types, 200 random structures
void criterion6(int id) {
  SuiteParams sp;
  sp.random_cases = 200;
  sp.seed = 7;
  auto r = run_suite("restriction-extreme", sp);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "restriction suite: %zu counterexamples, %d/%d unsaturated",
                r.counterexamples.size(), r.skipped_unsaturated, r.cases);
  report(id, r.passed() && r.skipped_unsaturated * 5 < r.cases, buf);
}

// 7. pair extremity and its parameter-swapped variant
void criterion7(int id) {
  auto M2 = load_corpus("M2").structure;
  auto U2 = load_corpus("U2").structure;
  auto DC3 = load_corpus("DC3").structure;
  auto single = load_corpus("singleton").structure;

  SuiteParams pairp;
  pairp.random_cases = 100;
  pairp.seed = 11;
  pairp.fixed = {{"M2", &M2}, {"U2", &U2}, {"DC3", &DC3},
                 {"singleton", &single}};
  auto pair = run_suite("pair-extreme", pairp);

  SuiteParams symp;
  symp.random_cases = 100;
  symp.seed = 11;
  symp.fixed = {{"M2", &M2}, {"DC3", &DC3}, {"singleton", &single}};
  auto sym = run_suite("over-symmetry", symp);

  // The mixed class of the two-coin structure averages over the diagonal
  // parameter but not conversely; no finite witness pair can transfer the
  // decomposition. The asymmetry is a stable fact of this structure, so it
  // is pinned here: the suite must find exactly it, and both directions
  // must re-verify.
  SuiteParams u2p;
  u2p.random_cases = 0;
  u2p.fixed = {{"U2", &U2}};
  auto symu2 = run_suite("over-symmetry", u2p);
  bool pinned = symu2.counterexamples.size() == 1 &&
                symu2.counterexamples[0].detail.find("[a0a0]") !=
                    std::string::npos &&
                symu2.counterexamples[0].detail.find("[a0a1]") !=
                    std::string::npos;
  Fragment FU = generate_fragment(U2, 2);
  int diag = U2.point_by_label("[a0a0]");
  int mixed = U2.point_by_label("[a0a1]");
  bool reverified = is_extreme_over(FU, {diag}, {mixed}) &&
                    !is_extreme_over(FU, {mixed}, {diag});

  char buf[240];
  std::snprintf(
      buf, sizeof buf,
      "pair-extreme clean (%d cases); parameter-swap clean (%d cases) except "
      "the known two-coin asymmetry, which re-verifies (%s)",
      pair.cases, sym.cases, pinned && reverified ? "yes" : "NO");
  report(id, pair.passed() && sym.passed() && pinned && reverified, buf);
}

// 8. pinned-pair faces with marginal checks, all extreme pairs
void criterion8(int id) {
  int pairs = 0, bad = 0;
  for (const auto& name : corpus_names()) {
    auto S = load_corpus(name).structure;
    Fragment F = generate_fragment(S, 2);
    TypeSpace TS = realized_types(F, 1);
    auto ext = extreme_types(TS);
    for (int p : ext)
      for (int q : ext) {
        auto r = sigma_face(F, TS, p, q);
        ++pairs;
        if (!(r.verdict.status == FaceVerdict::Face && r.marginals_ok)) ++bad;
      }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "pinned-pair regions: %d/%d extreme pairs give faces with "
                "matching marginals",
                pairs - bad, pairs);
  report(id, bad == 0 && pairs > 0, buf);
}

// 9. printer and parser agree on 500 random formulas
void criterion9(int id) {
  Signature sig;
  sig.add_constant("c0");
  sig.add_relation("P", 1, Value(1));
  sig.add_relation("Q", 2, Value(2));
  sig.add_function("f", 1, Value(1));
  testutil::FormulaGen gen(99, sig);
  int bad = 0;
  for (int i = 0; i < 500; ++i) {
    Formula f = gen(3, 2);
    Formula g = parse_formula(print_formula(f), sig);
    if (!formula_equal(f, g)) ++bad;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "parser round trip: %d/500 formulas survive",
                500 - bad);
  report(id, bad == 0, buf);
}

// 10. seeded mutations are all caught with the right axiom and witness
void criterion10(int id) {
  const char* names[] = {"M2", "U2", "DC3"};
  int done = 0, bad = 0;
  std::uint64_t seed = 0;
  while (done < 100) {
    auto rng = testutil::seeded_rng(seed++);
    auto S = load_corpus(names[seed % 3]).structure;
    auto mu = testutil::mutate(S, int(rng() % 7), rng);
    if (!mu) continue;  // kind not applicable to this structure
    ++done;
    if (!testutil::mutation_detected(*mu)) ++bad;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "validator mutations: %d/100 detected",
                100 - bad);
  report(id, bad == 0, buf);
}

}  // namespace

int main() {
  guarded(1, criterion1);
  guarded(2, criterion2);
  guarded(3, criterion3);
  guarded(4, criterion4);
  guarded(5, criterion5);
  guarded(6, criterion6);
  guarded(7, criterion7);
  guarded(8, criterion8);
  guarded(9, criterion9);
  guarded(10, criterion10);
  if (failures) std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
