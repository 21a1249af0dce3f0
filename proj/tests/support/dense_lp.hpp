#pragma once

// Small dense two-phase tableau simplex with Bland's rule. Test-only oracle.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

namespace oracle {

enum class Rel { le, ge, eq };

struct DenseLp {
  // minimize c.x, x >= 0
  std::vector<double> cost;
  struct Row {
    std::vector<std::pair<int, double>> terms;
    Rel rel;
    double rhs;
  };
  std::vector<Row> rows;

  int add_var(double c, std::optional<double> upper = std::nullopt) {
    cost.push_back(c);
    const int j = static_cast<int>(cost.size()) - 1;
    if (upper) rows.push_back({{{j, 1.0}}, Rel::le, *upper});
    return j;
  }
  void add_row(std::vector<std::pair<int, double>> terms, Rel rel, double rhs) {
    rows.push_back({std::move(terms), rel, rhs});
  }
};

struct LpResult {
  bool feasible = false;
  double objective = 0.0;
  std::vector<double> x;
};

inline LpResult solve_dense(const DenseLp& lp) {
  constexpr double eps = 1e-9;
  const int n = static_cast<int>(lp.cost.size());
  const int m = static_cast<int>(lp.rows.size());
  int n_slack = 0;
  for (const auto& r : lp.rows) n_slack += r.rel != Rel::eq;
  const int n_art = m;
  const int cols = n + n_slack + n_art;
  const int rhs = cols;
  std::vector<std::vector<double>> T(static_cast<std::size_t>(m + 1), std::vector<double>(static_cast<std::size_t>(cols + 1), 0.0));
  std::vector<int> basis(static_cast<std::size_t>(m));

  int s = n;
  for (int i = 0; i < m; ++i) {
    const auto& r = lp.rows[static_cast<std::size_t>(i)];
    auto& row = T[static_cast<std::size_t>(i)];
    for (auto [j, a] : r.terms) row[static_cast<std::size_t>(j)] += a;
    if (r.rel == Rel::le) row[static_cast<std::size_t>(s++)] = 1.0;
    if (r.rel == Rel::ge) row[static_cast<std::size_t>(s++)] = -1.0;
    row[static_cast<std::size_t>(rhs)] = r.rhs;
    if (r.rhs < 0) {
      for (auto& v : row) v = -v;
    }
    row[static_cast<std::size_t>(n + n_slack + i)] = 1.0;
    basis[static_cast<std::size_t>(i)] = n + n_slack + i;
  }

  auto at = [&](int i, int j) -> double& { return T[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };

  auto pivot = [&](int pr, int pc) {
    const double p = at(pr, pc);
    for (int j = 0; j <= cols; ++j) at(pr, j) /= p;
    for (int i = 0; i <= m; ++i) {
      if (i == pr) continue;
      const double f = at(i, pc);
      if (f == 0.0) continue;
      for (int j = 0; j <= cols; ++j) at(i, j) -= f * at(pr, j);
    }
    basis[static_cast<std::size_t>(pr)] = pc;
  };

  // objective row holds reduced costs; entering column has negative reduced cost
  auto run = [&](int allowed_cols) -> bool {
    for (;;) {
      int pc = -1;
      for (int j = 0; j < allowed_cols; ++j) {
        if (at(m, j) < -eps) {
          pc = j;
          break;
        }
      }
      if (pc < 0) return true;
      int pr = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (at(i, pc) > eps) {
          const double ratio = at(i, rhs) / at(i, pc);
          if (ratio < best - eps || (std::abs(ratio - best) <= eps && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(pr)])) {
            best = ratio;
            pr = i;
          }
        }
      }
      if (pr < 0) return false;  // unbounded
      pivot(pr, pc);
    }
  };

  // phase 1
  for (int j = 0; j <= cols; ++j) at(m, j) = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= cols; ++j) at(m, j) -= at(i, j);
  }
  for (int i = 0; i < m; ++i) at(m, n + n_slack + i) = 0.0;
  run(cols);
  LpResult res;
  if (-at(m, rhs) > 1e-7) return res;

  // drive artificials out of the basis
  for (int i = 0; i < m; ++i) {
    if (basis[static_cast<std::size_t>(i)] < n + n_slack) continue;
    for (int j = 0; j < n + n_slack; ++j) {
      if (std::abs(at(i, j)) > 1e-9) {
        pivot(i, j);
        break;
      }
    }
  }

  // phase 2
  for (int j = 0; j <= cols; ++j) at(m, j) = 0.0;
  for (int j = 0; j < n; ++j) at(m, j) = lp.cost[static_cast<std::size_t>(j)];
  for (int i = 0; i < m; ++i) {
    const int b = basis[static_cast<std::size_t>(i)];
    const double cb = b < n ? lp.cost[static_cast<std::size_t>(b)] : 0.0;
    if (cb == 0.0) continue;
    for (int j = 0; j <= cols; ++j) at(m, j) -= cb * at(i, j);
  }
  if (!run(n + n_slack)) return res;

  res.feasible = true;
  res.x.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < m; ++i) {
    const int b = basis[static_cast<std::size_t>(i)];
    if (b < n) res.x[static_cast<std::size_t>(b)] = at(i, rhs);
  }
  for (int j = 0; j < n; ++j) res.objective += lp.cost[static_cast<std::size_t>(j)] * res.x[static_cast<std::size_t>(j)];
  return res;
}

}  // namespace oracle
