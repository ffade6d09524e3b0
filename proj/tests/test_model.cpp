#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "lcw/corpus.hpp"
#include "lcw/extremal.hpp"
#include "lcw/parser.hpp"
#include "lcw/typespace.hpp"

using namespace lcw;
using testutil::seeded_rng;

static std::vector<int> tuple_at(std::mt19937_64& rng,
                                 const FiniteStructure& S, int n) {
  std::vector<int> t(n);
  for (auto& p : t) p = int(rng() % S.size());
  return t;
}

TEST_CASE("saturated fragments on the corpus") {
  auto M2 = load_corpus("M2").structure;
  Fragment F = generate_fragment(M2, 1);
  CHECK(F.saturated());
  CHECK(F.dims()[0] == 2);
  CHECK(F.context(1).basis[0].formula->kind == FormulaNode::Const);
  CHECK(F.context(1).basis[0].formula->value == Value(1));

  auto U2 = load_corpus("U2").structure;
  Fragment FU = generate_fragment(U2, 2);
  CHECK(FU.saturated());
  // averaging bounds the one-variable space at constants plus P
  CHECK(FU.dims()[0] == 2);

  auto DC3 = load_corpus("DC3").structure;
  Fragment FD = generate_fragment(DC3, 1);
  CHECK(FD.saturated());
  CHECK(FD.dims()[0] == 4);  // 1 and the three distances to constants
}

TEST_CASE("basis tables agree with direct evaluation") {
  auto rng = seeded_rng(21);
  for (const auto& name : {"M2", "U2", "DC3-open"}) {
    auto S = load_corpus(name).structure;
    Fragment F = generate_fragment(S, 2);
    for (int m = 1; m <= F.max_context(); ++m) {
      const auto& ctx = F.context(m);
      for (const auto& be : ctx.basis) {
        auto t = tuple_at(rng, S, m);
        Assignment asg;
        for (int i = 0; i < m; ++i) asg[Fragment::var_name(i)] = t[i];
        CAPTURE(print_formula(be.formula));
        CHECK(cmp(eval_formula(be.formula, S, asg),
                  be.table[S.tuple_index(t)], S.eps()) == 0);
      }
    }
  }
}

TEST_CASE("context bases embed as prefixes") {
  auto DC3 = load_corpus("DC3").structure;
  Fragment F = generate_fragment(DC3, 2);
  for (int m = 1; m < F.max_context(); ++m) {
    const auto& lo = F.context(m);
    const auto& hi = F.context(m + 1);
    REQUIRE(lo.basis.size() <= hi.basis.size());
    for (size_t i = 0; i < lo.basis.size(); ++i) {
      CHECK(formula_equal(lo.basis[i].formula, hi.basis[i].formula));
      // the extended table ignores the new last coordinate
      for (size_t idx = 0; idx < hi.basis[i].table.size(); ++idx)
        CHECK(hi.basis[i].table[idx] ==
              lo.basis[i].table[idx / size_t(DC3.size())]);
    }
  }
}

TEST_CASE("listed fragments normalize variables and reject junk") {
  auto M2 = load_corpus("M2").structure;
  FragmentParams p;
  p.mode = FragmentParams::Listed;
  p.listed = {"P(y)", "d(y, z)"};  // renamed to x1, x2 by first appearance
  Fragment F = generate_fragment(M2, 2, p);
  CHECK(F.dims()[1] >= 2);
  auto fv = free_variables(F.context(2).basis[1].formula);
  CHECK(fv == std::vector<std::string>{"x1"});

  FragmentParams bad;
  bad.mode = FragmentParams::Listed;
  bad.listed = {"Z(x1)"};
  CHECK_THROWS(generate_fragment(M2, 1, bad));
}

TEST_CASE("type vectors, dedup, and restriction") {
  auto rng = seeded_rng(5);
  auto U2 = load_corpus("U2").structure;
  Fragment F = generate_fragment(U2, 2);
  TypeSpace TS2 = realized_types(F, 2);
  for (size_t idx = 0; idx < U2.tuple_count(2); ++idx) {
    auto t = U2.tuple_of_index(idx, 2);
    int cls = TS2.class_of[idx];
    CHECK(cmp(TS2.vectors[size_t(cls)].coords, tp(F, t)) == 0);
    CHECK(type_of(TS2, t) == cls);
  }
  for (int trial = 0; trial < 20; ++trial) {
    auto ab = tuple_at(rng, U2, 2);
    CHECK(cmp(restrict_type(F, 2, tp(F, ab)), tp(F, {ab[0]})) == 0);
    CHECK(cmp(tp_over(F, {ab[0]}, {ab[1]}), tp(F, ab)) == 0);
  }
}

TEST_CASE("U2 one-variable types in listed coordinates") {
  auto U2 = load_corpus("U2").structure;
  FragmentParams p;
  p.mode = FragmentParams::Listed;
  p.listed = {"P(x1)", "d(x1, c0)"};
  Fragment F = generate_fragment(U2, 1, p);
  // on U2 the distance to c0 coincides with P, so it spans no new direction
  CHECK(F.dims()[0] == 2);
  CHECK(F.context(1).probes.size() >= 1);
  TypeSpace TS = realized_types(F, 1);
  REQUIRE(TS.vectors.size() == 3);
  Formula fP = parse_formula("P(x1)", U2.signature());
  Formula fd = parse_formula("d(x1, c0)", U2.signature());
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& tv : TS.vectors) {
    Assignment asg{{"x1", tv.realizers[0][0]}};
    pairs.push_back({eval_formula(fP, U2, asg).str(),
                     eval_formula(fd, U2, asg).str()});
  }
  CHECK(pairs[0] == std::pair<std::string, std::string>{"0/1", "0/1"});
  CHECK(pairs[1] == std::pair<std::string, std::string>{"1/2", "1/2"});
  CHECK(pairs[2] == std::pair<std::string, std::string>{"1/1", "1/1"});
  CHECK(extreme_types(TS) == std::vector<int>{0, 2});
  CHECK(TS.vectors[1].realizers.size() == 2);  // the two mixed classes
}

TEST_CASE("extreme type detection matches the hull oracle") {
  for (const auto& name : {"M2", "U2", "DC3", "DC3-open"}) {
    auto S = load_corpus(name).structure;
    Fragment F = generate_fragment(S, 1);
    TypeSpace TS = realized_types(F, 1);
    std::vector<Vec> V;
    for (const auto& tv : TS.vectors) V.push_back(tv.coords);
    auto ext = extreme_types(TS);
    for (size_t i = 0; i < V.size(); ++i) {
      bool reported = std::find(ext.begin(), ext.end(), int(i)) != ext.end();
      CAPTURE(name);
      CHECK(reported == testutil::extreme_oracle(V, i));
    }
  }
}

TEST_CASE("partial types compile into the fragment span") {
  auto DC3 = load_corpus("DC3").structure;
  Fragment F = generate_fragment(DC3, 1);
  TypeSpace TS = realized_types(F, 1);
  Signature sig = DC3.signature();
  auto conds =
      parse_conditions("d(x, k0) = 1; d(x, k1) = 1; d(x, k2) = 1", sig);
  auto pt = compile_partial_type(TS, conds);
  CHECK(pt.constraints.size() == 3);
  auto verdict = is_face_partial_type(TS, pt);
  REQUIRE(verdict.status == FaceVerdict::Face);
  REQUIRE(verdict.vertex_set.size() == 1);
  const Vec& v = TS.vectors[size_t(verdict.vertex_set[0])].coords;
  for (size_t k = 1; k < v.size(); ++k) CHECK(v[k] == Value(1));
  REQUIRE(verdict.functional.has_value());
  std::vector<Vec> V;
  for (const auto& tv : TS.vectors) V.push_back(tv.coords);
  CHECK(verify_functional(V, verdict.vertex_set, *verdict.functional));
}

TEST_CASE("out-of-span conditions are rejected") {
  auto DC3 = load_corpus("DC3").structure;
  FragmentParams p;
  p.mode = FragmentParams::Listed;
  p.listed = {"d(x1, k0)"};
  Fragment F = generate_fragment(DC3, 1, p);
  TypeSpace TS = realized_types(F, 1);
  auto conds = parse_conditions("d(x, k1) = 1", DC3.signature());
  CHECK_THROWS_AS(compile_partial_type(TS, conds), std::invalid_argument);
}

TEST_CASE("type metric minimizes over realizer pairs") {
  auto U2 = load_corpus("U2").structure;
  Fragment F = generate_fragment(U2, 1);
  TypeSpace TS = realized_types(F, 1);
  CHECK(type_metric(TS, 0, 1) == Value::ratio(1, 2));
  CHECK(type_metric(TS, 0, 2) == Value(1));
  CHECK(type_metric(TS, 1, 1) == Value(0));
}

TEST_CASE("pinned pair regions are faces with correct marginals") {
  auto M2 = load_corpus("M2").structure;
  Fragment F = generate_fragment(M2, 2);
  TypeSpace TS = realized_types(F, 1);
  auto ext = extreme_types(TS);
  for (int p : ext)
    for (int q : ext) {
      auto r = sigma_face(F, TS, p, q);
      CAPTURE(p);
      CAPTURE(q);
      CHECK(r.verdict.status == FaceVerdict::Face);
      CHECK(r.marginals_ok);
    }
}

TEST_CASE("parameter extremity is not symmetric at finite scale") {
  // The mixed class of U2 sits midway between the diagonal classes, so it
  // is an average over parameter [a0a0]; over parameter [a0a1] the four
  // parameter types form a diamond with no averaging relation.
  auto U2 = load_corpus("U2").structure;
  Fragment F = generate_fragment(U2, 2);
  int diag = U2.point_by_label("[a0a0]");
  int mixed = U2.point_by_label("[a0a1]");
  REQUIRE(diag >= 0);
  REQUIRE(mixed >= 0);
  CHECK(is_extreme_over(F, {diag}, {mixed}));
  CHECK(!is_extreme_over(F, {mixed}, {diag}));
}

// ---------------------------------------------------------------------------
// Extremal analysis

TEST_CASE("submodel closure and induction") {
  auto M2 = load_corpus("M2").structure;
  CHECK(closure_defect(M2, {1}) == std::string("c0"));
  CHECK(!closure_defect(M2, {0}).has_value());
  CHECK_THROWS(induce_submodel(M2, {1}));
  auto K = induce_submodel(M2, {0, 1});
  CHECK(K.induced.size() == 2);
  CHECK(K.induced.dist(0, 1) == Value(1));

  auto C8 = load_corpus("C8").structure;
  auto K2 = induce_submodel(C8, {0, 3, 5});
  CHECK(K2.induced.size() == 3);
  CHECK(!K2.induced.exact_mode());
}

TEST_CASE("elementarity detects the lost supremum") {
  auto M2 = load_corpus("M2").structure;
  Fragment F = generate_fragment(M2, 1);
  auto full = is_elementary_submodel(M2, induce_submodel(M2, {0, 1}), F);
  CHECK(full.ok);
  auto half = is_elementary_submodel(M2, induce_submodel(M2, {0}), F);
  REQUIRE(!half.ok);
  // some quantified witness separates {a0}; its kind must be a quantifier
  CHECK((half.witness->kind == FormulaNode::Sup ||
         half.witness->kind == FormulaNode::Inf));
  CHECK(cmp(half.inner, half.outer) != 0);
}

TEST_CASE("maximizer closure saturates the chord cycle") {
  auto C8 = load_corpus("C8").structure;
  for (int s = 0; s < 8; ++s) {
    auto closed = maximizer_closure(C8, {s});
    CAPTURE(s);
    CHECK(closed.size() == 8);
  }
  auto M2 = load_corpus("M2").structure;
  CHECK(maximizer_closure(M2, {0}).size() == 2);
}

TEST_CASE("minimal submodels") {
  auto single = load_corpus("singleton").structure;
  Fragment Fs = generate_fragment(single, 1);
  CHECK(minimal_submodel(single, Fs).points == std::vector<int>{0});

  auto U2 = load_corpus("U2").structure;
  Fragment Fu = generate_fragment(U2, 1);
  auto mu = minimal_submodel(U2, Fu);
  std::vector<std::string> labels;
  for (int p : mu.points) labels.push_back(U2.label(p));
  CHECK(labels == std::vector<std::string>{"[a0a0]", "[a1a1]"});
  auto greedy = minimal_submodel(U2, Fu, MinimalStrategy::Greedy);
  CHECK(is_elementary_submodel(U2, greedy, Fu).ok);
}

TEST_CASE("extremal models") {
  auto M2 = load_corpus("M2").structure;
  Fragment Fm = generate_fragment(M2, 2);
  CHECK(is_extremal(M2, Fm, 2).extremal);

  auto U2 = load_corpus("U2").structure;
  Fragment Fu = generate_fragment(U2, 1);
  auto r = is_extremal(U2, Fu, 1);
  REQUIRE(!r.extremal);
  CHECK(r.n == 1);
  // the witness realizes the non-extreme midpoint type
  CHECK(U2.label(r.witness[0]).find("a0a1") != std::string::npos);
}

TEST_CASE("minimal submodel of an extremal structure realizes the extremes") {
  auto M2 = load_corpus("M2").structure;
  Fragment F = generate_fragment(M2, 1);
  TypeSpace TS = realized_types(F, 1);
  auto mini = minimal_submodel(M2, F);
  std::vector<int> realized;
  for (int p : mini.points) realized.push_back(type_of(TS, {p}));
  std::sort(realized.begin(), realized.end());
  realized.erase(std::unique(realized.begin(), realized.end()),
                 realized.end());
  CHECK(realized == extreme_types(TS));
}

TEST_CASE("random structures validate for many seeds") {
  for (std::uint64_t s = 1; s <= 40; ++s) {
    auto S = random_structure(s);
    CAPTURE(s);
    CHECK(validate_structure(S).empty());
    CHECK(S.size() >= 2);
    CHECK(S.size() <= 4);
  }
}

TEST_CASE("suite runs are deterministic across serial and parallel") {
  auto M2 = load_corpus("M2").structure;
  SuiteParams sp;
  sp.random_cases = 6;
  sp.seed = 3;
  sp.fixed = {{"M2", &M2}};
  sp.parallel = true;
  auto a = run_suite("restriction-extreme", sp);
  sp.parallel = false;
  auto b = run_suite("restriction-extreme", sp);
  CHECK(a.cases == b.cases);
  CHECK(a.cases == 7);
  CHECK(a.skipped_unsaturated == b.skipped_unsaturated);
  CHECK(a.counterexamples.size() == b.counterexamples.size());
  CHECK(a.passed());
  CHECK_THROWS(run_suite("no-such-suite", sp));
}

TEST_CASE("pair extremity law holds on small random cases") {
  SuiteParams sp;
  sp.random_cases = 8;
  sp.seed = 17;
  auto r = run_suite("pair-extreme", sp);
  CHECK(r.passed());
}
