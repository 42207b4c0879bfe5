#pragma once

#include <stdexcept>
#include <vector>

#include "fw/rational.hpp"

namespace fw {

/// Result of max c.x s.t. A x <= b, x >= 0 with b >= 0 (slack basis feasible).
struct LpResult {
  Rational objective;
  std::vector<Rational> x;     // primal solution
  std::vector<Rational> dual;  // dual solution y (one value per row)
};

/// Dense tableau simplex over exact rationals, Bland's rule. Instances here
/// are tiny (tens of rows/columns), so no effort is made to be sparse.
inline LpResult simplex_max(const std::vector<std::vector<Rational>>& A,
                            const std::vector<Rational>& b,
                            const std::vector<Rational>& c) {
  size_t m = A.size(), n = c.size();
  for (const auto& bi : b)
    if (bi < 0) throw std::invalid_argument("simplex_max needs b >= 0");
  // Tableau: rows 0..m-1 constraints, row m objective.
  // Columns 0..n-1 structural, n..n+m-1 slack, n+m RHS.
  std::vector<std::vector<Rational>> t(m + 1, std::vector<Rational>(n + m + 1, 0));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) t[i][j] = A[i][j];
    t[i][n + i] = 1;
    t[i][n + m] = b[i];
  }
  for (size_t j = 0; j < n; ++j) t[m][j] = -c[j];
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) basis[i] = n + i;

  for (;;) {
    // Bland: entering = lowest-index column with negative objective row.
    size_t enter = n + m;
    for (size_t j = 0; j < n + m; ++j)
      if (t[m][j] < 0) { enter = j; break; }
    if (enter == n + m) break;  // optimal
    // Leaving: min ratio, ties by lowest basis index.
    size_t leave = m;
    Rational best;
    for (size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][n + m] / t[i][enter];
      if (leave == m || ratio < best ||
          (ratio == best && basis[i] < basis[leave]))
        { leave = i; best = ratio; }
    }
    if (leave == m) throw std::runtime_error("LP unbounded");
    // Pivot.
    Rational piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (size_t i = 0; i <= m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (size_t j = 0; j <= n + m; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  LpResult res;
  res.objective = t[m][n + m];
  res.x.assign(n, 0);
  for (size_t i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = t[i][n + m];
  res.dual.assign(m, 0);
  for (size_t i = 0; i < m; ++i) res.dual[i] = t[m][n + i];
  return res;
}

/// Value and optimal mixed strategies of the zero-sum game with 0/1 payoff
/// matrix A (row player receives A[i][j]; row maximizes, column minimizes).
/// Requires every column to contain a 1 so the value is positive.
struct GameSolution {
  Rational value;
  std::vector<Rational> row_strategy;  // probability vector over rows
  std::vector<Rational> col_strategy;  // probability vector over columns
};

inline GameSolution solve_matrix_game(const std::vector<std::vector<int>>& A) {
  size_t m = A.size();
  if (m == 0) throw std::invalid_argument("game needs at least one row");
  size_t n = A[0].size();
  if (n == 0) throw std::invalid_argument("game needs at least one column");
  for (size_t j = 0; j < n; ++j) {
    bool one = false;
    for (size_t i = 0; i < m; ++i)
      if (A[i][j] != 0) { one = true; break; }
    if (!one) throw std::invalid_argument("game column is identically zero");
  }
  // Scaled form: max 1.y s.t. A y <= 1, y >= 0. Value = 1/sum(y), column
  // strategy = y/sum(y), row strategy from the duals.
  std::vector<std::vector<Rational>> Aq(m, std::vector<Rational>(n));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < n; ++j) Aq[i][j] = A[i][j];
  std::vector<Rational> b(m, 1), c(n, 1);
  LpResult lp = simplex_max(Aq, b, c);
  if (lp.objective <= 0) throw std::runtime_error("game value not positive");
  GameSolution g;
  g.value = 1 / lp.objective;
  g.col_strategy.resize(n);
  for (size_t j = 0; j < n; ++j) g.col_strategy[j] = lp.x[j] * g.value;
  g.row_strategy.resize(m);
  for (size_t i = 0; i < m; ++i) g.row_strategy[i] = lp.dual[i] * g.value;
  return g;
}

}  // namespace fw
