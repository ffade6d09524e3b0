#pragma once

#include <vector>

#include "lcw/value.hpp"

namespace lcw {

struct LinearConstraint {
  Vec coeffs;
  enum Rel { LE, EQ } rel;
  Value rhs;
};

struct LpResult {
  enum Status { Infeasible, Unbounded, Optimal } status;
  Value objective;
  Vec x;  // witness, satisfies all constraints exactly in rational mode
};

/// Exact two-phase dense simplex with Bland's anti-cycling rule.
/// Variables are free unless flagged nonnegative. Pass an empty objective
/// for a pure feasibility check (status Optimal means feasible).
LpResult lp_solve(int num_vars, const std::vector<LinearConstraint>& cons,
                  const Vec& objective, bool maximize,
                  const std::vector<bool>& nonneg = {}, double eps = 0.0);

/// Convenience: all variables free.
LpResult lp_solve_free(int num_vars, const std::vector<LinearConstraint>& cons,
                       const Vec& objective, bool maximize, double eps = 0.0);

bool satisfies(const Vec& x, const LinearConstraint& c, double eps = 0.0);
bool satisfies_all(const Vec& x, const std::vector<LinearConstraint>& cons,
                   double eps = 0.0);

}  // namespace lcw
