#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "tpj/rational.hpp"

namespace tpj {

/// Solves the square system A x = b exactly.  Returns the unique solution, or
/// nothing when A is singular.
inline std::optional<RationalVector> solve_linear_system(std::vector<RationalVector> a,
                                                         RationalVector b) {
  const int n = static_cast<int>(b.size());
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("non-square system");
  if (static_cast<int>(a.size()) != n) throw std::invalid_argument("non-square system");
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return std::nullopt;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    const Rational p = a[col][col];
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / p;
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  RationalVector x(n);
  for (int i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

/// One constraint of a feasibility program over nonnegative variables.
struct LpRow {
  RationalVector coeffs;
  Rational rhs;
  bool equality = false;  // false: coeffs . x <= rhs
};

/// Exact phase-1 simplex with Bland's rule: decides whether some x >= 0
/// satisfies every row, returning a witness when one exists.  All pivoting is
/// over arbitrary-precision rationals, so the verdict is exact; Bland's rule
/// guarantees termination.
inline std::optional<RationalVector> lp_feasible(int num_vars, std::vector<LpRow> rows) {
  for (auto& r : rows) {
    if (static_cast<int>(r.coeffs.size()) != num_vars)
      throw std::invalid_argument("row width mismatch");
    if (r.rhs < 0) {  // normalize to nonnegative right-hand sides
      for (auto& c : r.coeffs) c = -c;
      r.rhs = -r.rhs;
      if (!r.equality) {
        // "<= with negative rhs" became ">=": keep as equality plus surplus.
        r.coeffs.push_back(-1);
      }
    }
  }
  // Column layout: originals, per-row extras (slack or surplus), artificials.
  const int m = static_cast<int>(rows.size());
  int total = num_vars;
  std::vector<int> extra_col(m, -1), art_col(m, -1);
  for (int i = 0; i < m; ++i) {
    bool surplus = static_cast<int>(rows[i].coeffs.size()) == num_vars + 1;
    if (surplus || !rows[i].equality) extra_col[i] = total++;
  }
  int first_artificial = total;
  for (int i = 0; i < m; ++i) {
    bool slack_basis = !rows[i].equality &&
                       static_cast<int>(rows[i].coeffs.size()) == num_vars;
    if (!slack_basis) art_col[i] = total++;
  }

  std::vector<RationalVector> t(m, RationalVector(total + 1, 0));
  std::vector<int> basis(m, -1);
  for (int i = 0; i < m; ++i) {
    bool surplus = static_cast<int>(rows[i].coeffs.size()) == num_vars + 1;
    for (int j = 0; j < num_vars; ++j) t[i][j] = rows[i].coeffs[j];
    if (surplus) t[i][extra_col[i]] = -1;
    else if (extra_col[i] >= 0) t[i][extra_col[i]] = 1;
    if (art_col[i] >= 0) t[i][art_col[i]] = 1;
    t[i][total] = rows[i].rhs;
    basis[i] = art_col[i] >= 0 ? art_col[i] : extra_col[i];
  }

  // Objective: minimize the sum of artificials, written in terms of the
  // nonbasic columns.  w = wconst + sum_j wcoef[j] x_j.
  RationalVector wcoef(total, 0);
  Rational wconst = 0;
  for (int i = 0; i < m; ++i) {
    if (art_col[i] < 0) continue;
    for (int j = 0; j < total; ++j)
      if (j != art_col[i]) wcoef[j] -= t[i][j];
    wconst += t[i][total];
  }

  while (true) {
    int enter = -1;
    for (int j = 0; j < first_artificial; ++j)
      if (wcoef[j] < 0) {
        enter = j;  // Bland: smallest improving index
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    Rational best;
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][total] / t[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0)
      throw std::logic_error("phase-1 objective unbounded: impossible for artificial cost");
    const Rational piv = t[leave][enter];
    for (int j = 0; j <= total; ++j) t[leave][j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (int j = 0; j <= total; ++j) t[i][j] -= f * t[leave][j];
    }
    {
      // Substitute the pivot row into w = wconst + sum_j wcoef[j] x_j so the
      // entering column's coefficient returns to zero.
      const Rational f = wcoef[enter];
      if (f != 0) {
        for (int j = 0; j < total; ++j) wcoef[j] -= f * t[leave][j];
        wconst += f * t[leave][total];
      }
    }
    basis[leave] = enter;
  }

  Rational w = wconst;  // value with all nonbasic at zero
  if (w != 0) return std::nullopt;
  RationalVector x(num_vars, 0);
  for (int i = 0; i < m; ++i)
    if (basis[i] < num_vars) x[basis[i]] = t[i][total];
  return x;
}

}  // namespace tpj
