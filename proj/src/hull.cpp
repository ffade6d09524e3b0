#include "lcw/hull.hpp"

#include <algorithm>
#include <stdexcept>

namespace lcw {

namespace {

// Constraints on simplex weights mu over V expressing that the combined
// point sum(mu_j V_j) lies in the region cut out by C.
std::vector<LinearConstraint> weight_constraints(
    const std::vector<Vec>& V, const std::vector<LinearConstraint>& C) {
  const int nv = int(V.size());
  std::vector<LinearConstraint> cons;
  LinearConstraint total{Vec(nv, Value(1)), LinearConstraint::EQ, Value(1)};
  cons.push_back(std::move(total));
  for (auto& c : C) {
    LinearConstraint row;
    row.rel = c.rel;
    row.rhs = c.rhs;
    row.coeffs.resize(nv);
    for (int j = 0; j < nv; ++j) row.coeffs[j] = dot(c.coeffs, V[j]);
    cons.push_back(std::move(row));
  }
  return cons;
}

Vec combine(const std::vector<Vec>& V, const Vec& mu) {
  Vec x(V[0].size(), Value(0));
  for (size_t j = 0; j < V.size(); ++j)
    for (size_t i = 0; i < x.size(); ++i) x[i] += mu[j] * V[j][i];
  return x;
}

}  // namespace

std::optional<Vec> in_hull(const Vec& v, const std::vector<Vec>& V,
                           double eps) {
  if (V.empty()) throw std::invalid_argument("in_hull: empty point list");
  const int nv = int(V.size());
  std::vector<LinearConstraint> cons;
  cons.push_back({Vec(nv, Value(1)), LinearConstraint::EQ, Value(1)});
  for (size_t i = 0; i < v.size(); ++i) {
    LinearConstraint row;
    row.rel = LinearConstraint::EQ;
    row.rhs = v[i];
    row.coeffs.resize(nv);
    for (int j = 0; j < nv; ++j) {
      if (V[j].size() != v.size())
        throw std::invalid_argument("in_hull: dimension mismatch");
      row.coeffs[j] = V[j][i];
    }
    cons.push_back(std::move(row));
  }
  LpResult r = lp_solve(nv, cons, {}, false, std::vector<bool>(nv, true), eps);
  if (r.status != LpResult::Optimal) return std::nullopt;
  return r.x;
}

std::vector<int> extreme_subset(const std::vector<Vec>& V, double eps) {
  if (V.empty()) throw std::invalid_argument("extreme_subset: empty list");
  // Merge duplicates, keep first indices.
  std::vector<int> rep;  // indices of distinct points
  std::vector<int> group(V.size());
  for (size_t i = 0; i < V.size(); ++i) {
    int g = -1;
    for (size_t k = 0; k < rep.size(); ++k)
      if (cmp(V[i], V[rep[k]], eps) == 0) {
        g = int(k);
        break;
      }
    if (g < 0) {
      g = int(rep.size());
      rep.push_back(int(i));
    }
    group[i] = g;
  }

  std::vector<int> out;
  if (rep.size() == 1) return {rep[0]};
  for (size_t k = 0; k < rep.size(); ++k) {
    std::vector<Vec> others;
    for (size_t j = 0; j < rep.size(); ++j)
      if (j != k) others.push_back(V[rep[j]]);
    if (!in_hull(V[rep[k]], others, eps)) out.push_back(rep[k]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Functional> supporting_functional(const std::vector<Vec>& V,
                                                const std::vector<int>& E,
                                                double eps) {
  if (E.empty())
    throw std::invalid_argument("supporting_functional: empty E");
  std::vector<bool> in_e(V.size(), false);
  for (int i : E) {
    if (i < 0 || i >= int(V.size()))
      throw std::invalid_argument("supporting_functional: E not within V");
    in_e[size_t(i)] = true;
  }
  const int k = int(V[0].size());
  // Unknowns: the k functional coefficients, then the level m.
  std::vector<LinearConstraint> cons;
  for (size_t j = 0; j < V.size(); ++j) {
    LinearConstraint row;
    row.coeffs = V[j];
    row.coeffs.push_back(Value(-1));  // ... - m
    if (in_e[j]) {
      row.rel = LinearConstraint::EQ;
      row.rhs = Value(0);
    } else {
      row.rel = LinearConstraint::LE;
      row.rhs = Value(-1);
    }
    cons.push_back(std::move(row));
  }
  LpResult r = lp_solve_free(k + 1, cons, {}, false, eps);
  if (r.status != LpResult::Optimal) return std::nullopt;
  Functional f;
  f.level = r.x.back();
  r.x.pop_back();
  f.coeffs = std::move(r.x);
  return f;
}

bool verify_functional(const std::vector<Vec>& V, const std::vector<int>& E,
                       const Functional& f, double eps) {
  std::vector<bool> in_e(V.size(), false);
  for (int i : E) in_e[size_t(i)] = true;
  for (size_t j = 0; j < V.size(); ++j) {
    Value v = dot(f.coeffs, V[j]);
    if (in_e[j]) {
      if (cmp(v, f.level, eps) != 0) return false;
    } else {
      if (cmp(v, f.level - Value(1), eps) > 0) return false;
    }
  }
  return true;
}

FaceVerdict is_face_region(const std::vector<Vec>& V,
                           const std::vector<LinearConstraint>& C,
                           double eps) {
  if (V.empty()) throw std::invalid_argument("is_face_region: empty V");
  for (auto& c : C)
    if (c.coeffs.size() != V[0].size())
      throw std::invalid_argument("is_face_region: dimension mismatch");

  FaceVerdict out;
  const int nv = int(V.size());
  auto cons = weight_constraints(V, C);

  LpResult feas =
      lp_solve(nv, cons, {}, false, std::vector<bool>(nv, true), eps);
  if (feas.status != LpResult::Optimal) {
    out.status = FaceVerdict::Empty;
    return out;
  }

  for (int j = 0; j < nv; ++j)
    if (satisfies_all(V[j], C, eps)) out.vertex_set.push_back(j);
  std::vector<bool> in_e(nv, false);
  for (int j : out.vertex_set) in_e[j] = true;

  // The region is a face iff no point of it admits a hull decomposition
  // with positive weight on a vertex outside the region: maximize that
  // weight for each outside vertex.
  for (int u = 0; u < nv; ++u) {
    if (in_e[u]) continue;
    Vec obj(nv, Value(0));
    obj[u] = Value(1);
    LpResult r =
        lp_solve(nv, cons, obj, true, std::vector<bool>(nv, true), eps);
    if (r.status == LpResult::Optimal && cmp(r.objective, Value(0), eps) > 0) {
      out.status = FaceVerdict::NotFace;
      out.violating_vertex = u;
      out.violating_coeffs = r.x;
      out.violating_point = combine(V, r.x);
      return out;
    }
  }

  out.status = FaceVerdict::Face;
  out.functional = supporting_functional(V, out.vertex_set, eps);
  return out;
}

bool midpoint_screen(const std::vector<Vec>& V,
                     const std::vector<LinearConstraint>& C,
                     const std::vector<int>& E, double eps) {
  std::vector<bool> in_e(V.size(), false);
  for (int i : E) in_e[size_t(i)] = true;
  const Value half = Value::ratio(1, 2);
  for (size_t a = 0; a < V.size(); ++a) {
    for (size_t b = a; b < V.size(); ++b) {
      if (in_e[a] && in_e[b]) continue;
      Vec mid(V[a].size());
      for (size_t i = 0; i < mid.size(); ++i)
        mid[i] = half * (V[a][i] + V[b][i]);
      if (satisfies_all(mid, C, eps)) return false;
    }
  }
  return true;
}

}  // namespace lcw
