#include "lcw/typespace.hpp"

#include <algorithm>
#include <stdexcept>

namespace lcw {

Vec tp(const Fragment& F, const std::vector<int>& tuple) {
  const int m = int(tuple.size());
  if (m < 1 || m > F.max_context())
    throw std::invalid_argument("tp: no context of size " +
                                std::to_string(m));
  const auto& ctx = F.context(m);
  size_t idx = F.structure().tuple_index(tuple);
  Vec out;
  out.reserve(ctx.basis.size());
  for (auto& e : ctx.basis) out.push_back(e.table[idx]);
  return out;
}

TypeSpace realized_types(const Fragment& F, int n) {
  const FiniteStructure& S = F.structure();
  if (n < 1 || n > F.max_context())
    throw std::invalid_argument("realized_types: no context of size " +
                                std::to_string(n));
  TypeSpace TS;
  TS.frag = &F;
  TS.n = n;
  const size_t count = S.tuple_count(n);
  TS.class_of.resize(count);
  for (size_t idx = 0; idx < count; ++idx) {
    auto tuple = S.tuple_of_index(idx, n);
    Vec v = tp(F, tuple);
    int cls = -1;
    for (size_t k = 0; k < TS.vectors.size(); ++k)
      if (cmp(TS.vectors[k].coords, v, S.eps()) == 0) {
        cls = int(k);
        break;
      }
    if (cls < 0) {
      cls = int(TS.vectors.size());
      TS.vectors.push_back({std::move(v), {}});
    }
    TS.vectors[cls].realizers.push_back(std::move(tuple));
    TS.class_of[idx] = cls;
  }
  return TS;
}

int type_of(const TypeSpace& TS, const std::vector<int>& tuple) {
  return TS.class_of.at(TS.frag->structure().tuple_index(tuple));
}

std::vector<int> extreme_types(const TypeSpace& TS) {
  std::vector<Vec> V;
  for (auto& v : TS.vectors) V.push_back(v.coords);
  return extreme_subset(V, TS.frag->structure().eps());
}

CompiledPartialType compile_partial_type(const TypeSpace& TS,
                                         const std::vector<Condition>& conds) {
  const Fragment& F = *TS.frag;
  const FiniteStructure& S = F.structure();
  const auto& ctx = F.context(TS.n);

  std::vector<std::string> order;
  auto note_vars = [&](const Formula& f) {
    for (auto& v : free_variables(f))
      if (std::find(order.begin(), order.end(), v) == order.end())
        order.push_back(v);
  };
  for (auto& c : conds) {
    check_formula(c.left, S.signature());
    check_formula(c.right, S.signature());
    note_vars(c.left);
    note_vars(c.right);
  }
  if (int(order.size()) > TS.n)
    throw std::invalid_argument("partial type uses " +
                                std::to_string(order.size()) +
                                " variables in a context of size " +
                                std::to_string(TS.n));
  std::map<std::string, std::string> sub;
  for (size_t i = 0; i < order.size(); ++i)
    sub[order[i]] = Fragment::var_name(int(i));

  CompiledPartialType out;
  for (auto& c : conds) {
    Condition nc{c.rel, rename_free(c.left, sub), rename_free(c.right, sub)};
    Formula diff = make_sub(nc.left, nc.right);
    Vec table(S.tuple_count(TS.n));
    for (size_t idx = 0; idx < table.size(); ++idx) {
      auto tuple = S.tuple_of_index(idx, TS.n);
      Assignment asg;
      for (int i = 0; i < TS.n; ++i) asg[Fragment::var_name(i)] = tuple[i];
      table[idx] = eval_formula(diff, S, asg);
    }
    auto coords = ctx.span.coords(table);
    if (!coords)
      throw std::invalid_argument("condition outside fragment span: " +
                                  print_condition(c));
    coords->resize(ctx.basis.size(), Value(0));
    LinearConstraint lc;
    lc.coeffs = std::move(*coords);
    lc.rel = c.rel == Condition::EQ ? LinearConstraint::EQ
                                    : LinearConstraint::LE;
    lc.rhs = Value(0);
    out.conditions.push_back(std::move(nc));
    out.constraints.push_back(std::move(lc));
  }
  return out;
}

FaceVerdict is_face_partial_type(const TypeSpace& TS,
                                 const CompiledPartialType& pt) {
  std::vector<Vec> V;
  for (auto& v : TS.vectors) V.push_back(v.coords);
  return is_face_region(V, pt.constraints, TS.frag->structure().eps());
}

Value type_metric(const TypeSpace& TS, int p, int q) {
  const FiniteStructure& S = TS.frag->structure();
  const auto& rp = TS.vectors.at(p).realizers;
  const auto& rq = TS.vectors.at(q).realizers;
  Value best;
  bool first = true;
  for (auto& a : rp)
    for (auto& b : rq) {
      Value d = tuple_metric(S, a, b);
      if (first || cmp(d, best, S.eps()) < 0) {
        best = d;
        first = false;
      }
    }
  return best;
}

SigmaFaceResult sigma_face(const Fragment& F, const TypeSpace& TS, int p,
                           int q) {
  const FiniteStructure& S = F.structure();
  const int n = TS.n;
  if (2 * n > F.max_context())
    throw std::invalid_argument("sigma_face: no context of size " +
                                std::to_string(2 * n));
  SigmaFaceResult out;
  out.r = type_metric(TS, p, q);
  out.doubled = realized_types(F, 2 * n);
  const auto& ctx2 = F.context(2 * n);
  const size_t dim_n = F.context(n).basis.size();
  const size_t dim_2n = ctx2.basis.size();
  const size_t count2 = S.tuple_count(2 * n);

  // p pinned on the first n variables: the context n basis is the prefix
  // of the context 2n basis.
  for (size_t i = 0; i < dim_n; ++i) {
    LinearConstraint lc;
    lc.coeffs.assign(dim_2n, Value(0));
    lc.coeffs[i] = Value(1);
    lc.rel = LinearConstraint::EQ;
    lc.rhs = TS.vectors.at(p).coords[i];
    out.constraints.push_back(std::move(lc));
  }
  // q pinned on the last n variables: shift each context n basis table to
  // the suffix coordinates and express it over the 2n basis.
  for (size_t i = 0; i < dim_n; ++i) {
    const Vec& base = F.context(n).basis[i].table;
    Vec shifted(count2);
    for (size_t idx = 0; idx < count2; ++idx) {
      auto tuple = S.tuple_of_index(idx, 2 * n);
      std::vector<int> suffix(tuple.begin() + n, tuple.end());
      shifted[idx] = base[S.tuple_index(suffix)];
    }
    auto coords = ctx2.span.coords(shifted);
    if (!coords)
      throw std::invalid_argument(
          "sigma_face: shifted basis element outside the doubled context");
    coords->resize(dim_2n, Value(0));
    LinearConstraint lc;
    lc.coeffs = std::move(*coords);
    lc.rel = LinearConstraint::EQ;
    lc.rhs = TS.vectors.at(q).coords[i];
    out.constraints.push_back(std::move(lc));
  }
  // Weighted distance between the variable blocks at most r.
  {
    Vec dtab(count2);
    for (size_t idx = 0; idx < count2; ++idx) {
      auto tuple = S.tuple_of_index(idx, 2 * n);
      std::vector<int> a(tuple.begin(), tuple.begin() + n);
      std::vector<int> b(tuple.begin() + n, tuple.end());
      dtab[idx] = tuple_metric(S, a, b);
    }
    auto coords = ctx2.span.coords(dtab);
    if (!coords)
      throw std::invalid_argument(
          "sigma_face: block distance outside the doubled context");
    coords->resize(dim_2n, Value(0));
    LinearConstraint lc;
    lc.coeffs = std::move(*coords);
    lc.rel = LinearConstraint::LE;
    lc.rhs = out.r;
    out.constraints.push_back(std::move(lc));
  }

  std::vector<Vec> V;
  for (auto& v : out.doubled.vectors) V.push_back(v.coords);
  out.verdict = is_face_region(V, out.constraints, S.eps());

  if (out.verdict.status == FaceVerdict::Face) {
    out.marginals_ok = true;
    for (int j : out.verdict.vertex_set) {
      const auto& t = out.doubled.vectors[j].realizers.front();
      std::vector<int> a(t.begin(), t.begin() + n);
      std::vector<int> b(t.begin() + n, t.end());
      if (cmp(tp(F, a), TS.vectors.at(p).coords, S.eps()) != 0 ||
          cmp(tp(F, b), TS.vectors.at(q).coords, S.eps()) != 0)
        out.marginals_ok = false;
    }
  }
  return out;
}

Vec restrict_type(const Fragment& F, int n_from, const Vec& v) {
  if (n_from < 2 || n_from > F.max_context())
    throw std::invalid_argument("restrict_type: bad source context");
  auto d = F.dims();
  if (v.size() != size_t(d[n_from - 1]))
    throw std::invalid_argument("restrict_type: vector dimension mismatch");
  return Vec(v.begin(), v.begin() + d[n_from - 2]);
}

Vec tp_over(const Fragment& F, const std::vector<int>& a,
            const std::vector<int>& b) {
  std::vector<int> cat(a);
  cat.insert(cat.end(), b.begin(), b.end());
  return tp(F, cat);
}

bool is_extreme_over(const Fragment& F, const std::vector<int>& a,
                     const std::vector<int>& b) {
  const FiniteStructure& S = F.structure();
  const int m = int(a.size());
  if (m < 1) throw std::invalid_argument("is_extreme_over: empty tuple");
  std::vector<Vec> V;
  const size_t count = S.tuple_count(m);
  for (size_t idx = 0; idx < count; ++idx)
    V.push_back(tp_over(F, S.tuple_of_index(idx, m), b));
  const size_t pos = S.tuple_index(a);
  auto ext = extreme_subset(V, S.eps());
  for (int e : ext)
    if (cmp(V[pos], V[e], S.eps()) == 0) return true;
  return false;
}

}  // namespace lcw
