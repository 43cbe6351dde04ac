// Exact linear programming over Q (dense two-phase simplex, Bland's rule).
#pragma once

#include "torusx/ratlin.hpp"

namespace torusx {

/// maximize objective . x  subject to  le_rows x <= le_rhs,  eq_rows x = eq_rhs,
/// with every variable free. An empty objective means pure feasibility.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<RatVector> le_rows;
  RatVector le_rhs;
  std::vector<RatVector> eq_rows;
  RatVector eq_rhs;
  RatVector objective;

  void add_le(RatVector row, Rational rhs) {
    le_rows.push_back(std::move(row));
    le_rhs.push_back(std::move(rhs));
  }
  void add_eq(RatVector row, Rational rhs) {
    eq_rows.push_back(std::move(row));
    eq_rhs.push_back(std::move(rhs));
  }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  RatVector x;
  Rational value;
};

LpSolution solve(const LinearProgram& lp);

}  // namespace torusx
