#include "torusx/lp.hpp"

#include <stdexcept>

namespace torusx {

namespace {

struct Tableau {
  std::vector<RatVector> rows;  // each has width + 1 entries, the last is the rhs
  std::vector<std::size_t> basis;
  RatVector obj;                // reduced costs; obj[width] = -(objective value)
  std::size_t width = 0;
  std::vector<bool> allowed;

  void pivot(std::size_t p, std::size_t q) {
    RatVector& pr = rows[p];
    Rational inv = 1 / pr[q];
    for (auto& x : pr) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == p || rows[i][q] == 0) continue;
      Rational f = rows[i][q];
      for (std::size_t j = 0; j <= width; ++j)
        if (pr[j] != 0) rows[i][j] -= f * pr[j];
    }
    if (obj[q] != 0) {
      Rational f = obj[q];
      for (std::size_t j = 0; j <= width; ++j)
        if (pr[j] != 0) obj[j] -= f * pr[j];
    }
    basis[p] = q;
  }

  void set_objective(const RatVector& cost) {
    obj.assign(width + 1, Rational(0));
    for (std::size_t j = 0; j < width; ++j) obj[j] = cost[j];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Rational& cb = cost[basis[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= width; ++j) obj[j] -= cb * rows[i][j];
    }
  }

  // Returns false when unbounded.
  bool run() {
    for (;;) {
      std::size_t q = width;
      for (std::size_t j = 0; j < width; ++j) {
        if (allowed[j] && obj[j] > 0) {
          q = j;
          break;
        }
      }
      if (q == width) return true;
      std::size_t p = rows.size();
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][q] <= 0) continue;
        Rational ratio = rows[i][width] / rows[i][q];
        if (p == rows.size() || ratio < best || (ratio == best && basis[i] < basis[p])) {
          p = i;
          best = ratio;
        }
      }
      if (p == rows.size()) return false;
      pivot(p, q);
    }
  }
};

}  // namespace

LpSolution solve(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars;
  const std::size_t m_le = lp.le_rows.size(), m_eq = lp.eq_rows.size();
  if (lp.le_rhs.size() != m_le || lp.eq_rhs.size() != m_eq)
    throw std::invalid_argument("solve: constraint/rhs count mismatch");
  if (!lp.objective.empty() && lp.objective.size() != n)
    throw std::invalid_argument("solve: objective length mismatch");

  // Columns: x+ (n), x- (n), slacks (m_le), artificials (one per row that needs one).
  const std::size_t m = m_le + m_eq;
  std::vector<bool> needs_art(m, false);
  for (std::size_t i = 0; i < m_le; ++i) needs_art[i] = lp.le_rhs[i] < 0;
  for (std::size_t i = m_le; i < m; ++i) needs_art[i] = true;
  std::size_t n_art = 0;
  for (bool b : needs_art) n_art += b;
  const std::size_t art0 = 2 * n + m_le;
  const std::size_t width = art0 + n_art;

  Tableau t;
  t.width = width;
  t.rows.assign(m, RatVector(width + 1));
  t.basis.assign(m, 0);
  std::size_t next_art = art0;
  for (std::size_t i = 0; i < m; ++i) {
    const RatVector& a = i < m_le ? lp.le_rows[i] : lp.eq_rows[i - m_le];
    const Rational& b = i < m_le ? lp.le_rhs[i] : lp.eq_rhs[i - m_le];
    if (a.size() != n) throw std::invalid_argument("solve: constraint row length mismatch");
    Rational sign = b < 0 ? -1 : 1;
    RatVector& r = t.rows[i];
    for (std::size_t j = 0; j < n; ++j) {
      r[j] = sign * a[j];
      r[n + j] = -r[j];
    }
    if (i < m_le) r[2 * n + i] = sign;
    r[width] = sign * b;
    if (needs_art[i]) {
      r[next_art] = 1;
      t.basis[i] = next_art++;
    } else {
      t.basis[i] = 2 * n + i;
    }
  }

  t.allowed.assign(width, true);
  if (n_art > 0) {
    RatVector cost(width, Rational(0));
    for (std::size_t j = art0; j < width; ++j) cost[j] = -1;
    t.set_objective(cost);
    t.run();
    if (t.obj[width] != 0) return {LpStatus::infeasible, {}, {}};
    // Drive zero-valued artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < t.rows.size();) {
      if (t.basis[i] < art0) {
        ++i;
        continue;
      }
      std::size_t q = art0;
      for (std::size_t j = 0; j < art0; ++j)
        if (t.rows[i][j] != 0) {
          q = j;
          break;
        }
      if (q == art0) {
        t.rows.erase(t.rows.begin() + i);
        t.basis.erase(t.basis.begin() + i);
        continue;
      }
      t.pivot(i, q);
      ++i;
    }
    for (std::size_t j = art0; j < width; ++j) t.allowed[j] = false;
  }

  RatVector cost(width, Rational(0));
  if (!lp.objective.empty()) {
    for (std::size_t j = 0; j < n; ++j) {
      cost[j] = lp.objective[j];
      cost[n + j] = -lp.objective[j];
    }
  }
  t.set_objective(cost);
  bool bounded = t.run();

  LpSolution sol;
  sol.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    std::size_t b = t.basis[i];
    if (b < n) sol.x[b] += t.rows[i][width];
    else if (b < 2 * n) sol.x[b - n] -= t.rows[i][width];
  }
  if (!bounded) {
    sol.status = LpStatus::unbounded;
    return sol;
  }
  sol.status = LpStatus::optimal;
  sol.value = -t.obj[width];
  return sol;
}

}  // namespace torusx
