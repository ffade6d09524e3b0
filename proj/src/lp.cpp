#include "lcw/lp.hpp"

#include <stdexcept>

namespace lcw {

bool satisfies(const Vec& x, const LinearConstraint& c, double eps) {
  Value lhs = dot(c.coeffs, x);
  int s = cmp(lhs, c.rhs, eps);
  return c.rel == LinearConstraint::EQ ? s == 0 : s <= 0;
}

bool satisfies_all(const Vec& x, const std::vector<LinearConstraint>& cons,
                   double eps) {
  for (auto& c : cons)
    if (!satisfies(x, c, eps)) return false;
  return true;
}

namespace {

// Dense tableau; rows are constraints, the last row is the (minimization)
// cost row. basis[i] is the column basic in row i.
struct Tableau {
  int m = 0, n = 0;  // constraint rows, columns (excluding rhs)
  std::vector<Vec> a;  // m rows of n coefficients
  Vec b;               // rhs, kept >= 0
  Vec cost;            // reduced cost row, length n
  Value cost_rhs;      // negated objective value
  std::vector<int> basis;
  double eps;

  void pivot(int row, int col) {
    Value inv = Value(1) / a[row][col];
    for (int j = 0; j < n; ++j) a[row][j] *= inv;
    b[row] *= inv;
    a[row][col] = Value(1);
    for (int i = 0; i < m; ++i) {
      if (i == row) continue;
      Value f = a[i][col];
      if (f.is_zero(eps)) continue;
      for (int j = 0; j < n; ++j) a[i][j] -= f * a[row][j];
      b[i] -= f * b[row];
      a[i][col] = Value(0);
    }
    Value f = cost[col];
    if (!f.is_zero(eps)) {
      for (int j = 0; j < n; ++j) cost[j] -= f * a[row][j];
      cost_rhs -= f * b[row];
      cost[col] = Value(0);
    }
    basis[row] = col;
  }

  // Minimizes the cost row over allowed columns. Returns false if
  // unbounded. Bland's rule throughout.
  bool run(const std::vector<bool>& allowed) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < n; ++j) {
        if (!allowed[j]) continue;
        if (cmp(cost[j], Value(0), eps) < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Value best_ratio;
      for (int i = 0; i < m; ++i) {
        if (cmp(a[i][enter], Value(0), eps) <= 0) continue;
        Value ratio = b[i] / a[i][enter];
        if (leave < 0 || cmp(ratio, best_ratio, eps) < 0 ||
            (cmp(ratio, best_ratio, eps) == 0 && basis[i] < basis[leave]))
        {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult lp_solve(int num_vars, const std::vector<LinearConstraint>& cons,
                  const Vec& objective, bool maximize,
                  const std::vector<bool>& nonneg, double eps) {
  if (num_vars < 1) throw std::invalid_argument("lp_solve: need >= 1 unknown");
  if (!objective.empty() && int(objective.size()) != num_vars)
    throw std::invalid_argument("lp_solve: objective dimension mismatch");
  for (auto& c : cons)
    if (int(c.coeffs.size()) != num_vars)
      throw std::invalid_argument("lp_solve: constraint dimension mismatch");

  std::vector<bool> nn = nonneg;
  nn.resize(num_vars, false);

  // Column layout: for each variable a positive part and, if free, a
  // negative part; then one slack/surplus per inequality row; then
  // artificials.
  std::vector<int> pos_col(num_vars), neg_col(num_vars, -1);
  int n = 0;
  for (int i = 0; i < num_vars; ++i) {
    pos_col[i] = n++;
    if (!nn[i]) neg_col[i] = n++;
  }
  const int struct_cols = n;
  const int m = int(cons.size());

  // Row data in standard form with b >= 0.
  std::vector<Vec> rowc(m);
  Vec rowb(m);
  std::vector<int> rowkind(m);  // 0 = LE, 1 = GE, 2 = EQ
  for (int i = 0; i < m; ++i) {
    rowc[i] = cons[i].coeffs;
    rowb[i] = cons[i].rhs;
    rowkind[i] = cons[i].rel == LinearConstraint::EQ ? 2 : 0;
    if (cmp(rowb[i], Value(0), eps) < 0) {
      for (auto& v : rowc[i]) v = -v;
      rowb[i] = -rowb[i];
      if (rowkind[i] == 0) rowkind[i] = 1;
    }
  }
  int n_slack = 0;
  for (int i = 0; i < m; ++i)
    if (rowkind[i] != 2) ++n_slack;
  int n_art = 0;
  for (int i = 0; i < m; ++i)
    if (rowkind[i] != 0) ++n_art;

  Tableau t;
  t.m = m;
  t.n = struct_cols + n_slack + n_art;
  t.eps = eps;
  t.a.assign(m, Vec(t.n, Value(0)));
  t.b = rowb;
  t.basis.assign(m, -1);

  int slack_at = struct_cols;
  int art_at = struct_cols + n_slack;
  std::vector<bool> is_art(t.n, false);
  for (int i = 0; i < m; ++i) {
    for (int v = 0; v < num_vars; ++v) {
      t.a[i][pos_col[v]] = rowc[i][v];
      if (neg_col[v] >= 0) t.a[i][neg_col[v]] = -rowc[i][v];
    }
    if (rowkind[i] == 0) {
      t.a[i][slack_at] = Value(1);
      t.basis[i] = slack_at++;
    } else if (rowkind[i] == 1) {
      t.a[i][slack_at++] = Value(-1);
      t.a[i][art_at] = Value(1);
      is_art[art_at] = true;
      t.basis[i] = art_at++;
    } else {
      t.a[i][art_at] = Value(1);
      is_art[art_at] = true;
      t.basis[i] = art_at++;
    }
  }

  std::vector<bool> allowed(t.n, true);

  // Phase 1: minimize the sum of artificials.
  if (n_art > 0) {
    t.cost.assign(t.n, Value(0));
    t.cost_rhs = Value(0);
    for (int j = 0; j < t.n; ++j)
      if (is_art[j]) t.cost[j] = Value(1);
    for (int i = 0; i < m; ++i) {
      if (!is_art[t.basis[i]]) continue;
      for (int j = 0; j < t.n; ++j) t.cost[j] -= t.a[i][j];
      t.cost_rhs -= t.b[i];
    }
    t.run(allowed);  // bounded below by 0, cannot be unbounded
    Value p1 = -t.cost_rhs;
    if (cmp(p1, Value(0), eps) > 0)
      return {LpResult::Infeasible, Value(0), {}};
    // Drive remaining artificials out of the basis; rows with no
    // structural entry are redundant and stay put harmlessly because the
    // artificial columns are barred from re-entering.
    for (int i = 0; i < m; ++i) {
      if (!is_art[t.basis[i]]) continue;
      int col = -1;
      for (int j = 0; j < struct_cols + n_slack; ++j) {
        if (!t.a[i][j].is_zero(eps)) {
          col = j;
          break;
        }
      }
      if (col >= 0) t.pivot(i, col);
    }
    for (int j = 0; j < t.n; ++j)
      if (is_art[j]) allowed[j] = false;
  }

  auto extract = [&]() {
    Vec x(num_vars, Value(0));
    Vec colval(t.n, Value(0));
    for (int i = 0; i < m; ++i)
      if (t.basis[i] >= 0) colval[t.basis[i]] = t.b[i];
    for (int v = 0; v < num_vars; ++v) {
      x[v] = colval[pos_col[v]];
      if (neg_col[v] >= 0) x[v] -= colval[neg_col[v]];
    }
    return x;
  };

  if (objective.empty()) {
    return {LpResult::Optimal, Value(0), extract()};
  }

  // Phase 2.
  t.cost.assign(t.n, Value(0));
  t.cost_rhs = Value(0);
  for (int v = 0; v < num_vars; ++v) {
    Value c = maximize ? -objective[v] : objective[v];
    t.cost[pos_col[v]] = c;
    if (neg_col[v] >= 0) t.cost[neg_col[v]] = -c;
  }
  for (int i = 0; i < m; ++i) {
    int bcol = t.basis[i];
    Value f = t.cost[bcol];
    if (f.is_zero(eps)) continue;
    for (int j = 0; j < t.n; ++j) t.cost[j] -= f * t.a[i][j];
    t.cost_rhs -= f * t.b[i];
    t.cost[bcol] = Value(0);
  }
  if (!t.run(allowed)) return {LpResult::Unbounded, Value(0), {}};

  Value opt = -t.cost_rhs;   // value of the internal minimization cost
  if (maximize) opt = -opt;  // internal cost was the negated objective
  return {LpResult::Optimal, opt, extract()};
}

LpResult lp_solve_free(int num_vars, const std::vector<LinearConstraint>& cons,
                       const Vec& objective, bool maximize, double eps) {
  return lp_solve(num_vars, cons, objective, maximize, {}, eps);
}

}  // namespace lcw
