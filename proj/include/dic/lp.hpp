#pragma once

#include "dic/common.hpp"

namespace dic {

// Feasibility of {x >= 0 : A x = b} for a small dense system, by phase-1
// simplex with Bland's rule (no cycling). On infeasibility returns a Farkas
// certificate y with y.A <= 0 componentwise and y.b > 0.
struct LpFeasibility {
  bool feasible = false;
  std::vector<double> x;  // a feasible point when feasible
  std::vector<double> y;  // separating multipliers otherwise
};

inline LpFeasibility lp_feasible(std::vector<std::vector<double>> cols, std::vector<double> b,
                                 double tol = 1e-9) {
  const size_t m = b.size();
  const size_t n = cols.size();
  for (auto& c : cols)
    if (c.size() != m) throw usage_error("lp_feasible: ragged column");

  // Normalize to b >= 0 by flipping rows.
  std::vector<double> rowsign(m, 1.0);
  for (size_t i = 0; i < m; ++i)
    if (b[i] < 0.0) {
      rowsign[i] = -1.0;
      b[i] = -b[i];
      for (auto& c : cols) c[i] = -c[i];
    }

  // Tableau over columns [original | artificial], artificial basis.
  const size_t total = n + m;
  std::vector<std::vector<double>> T(m, std::vector<double>(total + 1, 0.0));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) T[i][j] = cols[j][i];
    T[i][n + i] = 1.0;
    T[i][total] = b[i];
  }
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) basis[i] = n + i;

  // Objective: minimize sum of artificials; maintain reduced-cost row z.
  std::vector<double> z(total + 1, 0.0);
  for (size_t j = 0; j <= total; ++j) {
    double s = 0.0;
    for (size_t i = 0; i < m; ++i) s += T[i][j];
    z[j] = (j < n ? 0.0 : (j < total ? 1.0 : 0.0)) - s;
  }
  // z[j] = c_j - sum_i T[i][j] since all basic costs are 1.

  for (int iter = 0; iter < 10000; ++iter) {
    // Bland: smallest-index column with negative reduced cost.
    size_t enter = total;
    for (size_t j = 0; j < total; ++j)
      if (z[j] < -tol) {
        enter = j;
        break;
      }
    if (enter == total) break;
    size_t leave = m;
    double best = 0.0;
    for (size_t i = 0; i < m; ++i)
      if (T[i][enter] > tol) {
        double ratio = T[i][total] / T[i][enter];
        if (leave == m || ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
    if (leave == m) break;  // unbounded cannot happen for phase 1; bail out
    double piv = T[leave][enter];
    for (size_t j = 0; j <= total; ++j) T[leave][j] /= piv;
    for (size_t i = 0; i < m; ++i)
      if (i != leave && T[i][enter] != 0.0) {
        double fac = T[i][enter];
        for (size_t j = 0; j <= total; ++j) T[i][j] -= fac * T[leave][j];
      }
    double fac = z[enter];
    if (fac != 0.0)
      for (size_t j = 0; j <= total; ++j) z[j] -= fac * T[leave][j];
    basis[leave] = enter;
  }

  double objective = 0.0;
  for (size_t i = 0; i < m; ++i)
    if (basis[i] >= n) objective += T[i][total];

  LpFeasibility res;
  if (objective <= tol) {
    res.feasible = true;
    res.x.assign(n, 0.0);
    for (size_t i = 0; i < m; ++i)
      if (basis[i] < n) res.x[basis[i]] = T[i][total];
    return res;
  }
  // Multipliers from artificial reduced costs: y_i = 1 - z[n+i], then undo
  // the row sign flips.
  res.feasible = false;
  res.y.assign(m, 0.0);
  for (size_t i = 0; i < m; ++i) res.y[i] = (1.0 - z[n + i]) * rowsign[i];
  return res;
}

}  // namespace dic
