#include "hyperham/lp.hpp"

#include "hyperham/errors.hpp"

namespace hyperham {

LpResult maximize(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                  const std::vector<Rational>& c) {
  const std::size_t rows = a.size();
  const std::size_t vars = c.size();
  if (b.size() != rows) throw DomainError("row count mismatch");
  for (const auto& row : a) {
    if (row.size() != vars) throw DomainError("column count mismatch");
  }
  for (const auto& bi : b) {
    if (bi < 0) throw DomainError("right-hand side must be non-negative");
  }
  const std::size_t cols = vars + rows;
  // tableau rows: [A | I | b]; objective row holds reduced costs c - z
  std::vector<std::vector<Rational>> t(rows, std::vector<Rational>(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < vars; ++j) t[i][j] = a[i][j];
    t[i][vars + i] = 1;
    t[i][cols] = b[i];
  }
  std::vector<Rational> obj(cols + 1);
  for (std::size_t j = 0; j < vars; ++j) obj[j] = c[j];
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) basis[i] = vars + i;

  LpResult result;
  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (obj[j] > 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = rows;
    Rational best_ratio;
    for (std::size_t i = 0; i < rows; ++i) {
      if (t[i][enter] <= 0) continue;
      const Rational ratio = t[i][cols] / t[i][enter];
      if (leave == rows || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == rows) throw DomainError("linear program is unbounded");
    const Rational pivot = t[leave][enter];
    for (auto& x : t[leave]) x /= pivot;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) {
        if (t[leave][j] != 0) t[i][j] -= f * t[leave][j];
      }
    }
    if (obj[enter] != 0) {
      const Rational f = obj[enter];
      for (std::size_t j = 0; j <= cols; ++j) {
        if (t[leave][j] != 0) obj[j] -= f * t[leave][j];
      }
    }
    basis[leave] = enter;
    ++result.pivots;
  }
  result.primal.assign(vars, Rational(0));
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] < vars) result.primal[basis[i]] = t[i][cols];
  }
  result.value = 0;
  for (std::size_t j = 0; j < vars; ++j) result.value += c[j] * result.primal[j];
  result.dual.assign(rows, Rational(0));
  for (std::size_t i = 0; i < rows; ++i) result.dual[i] = -obj[vars + i];

  bool ok = true;
  Rational dual_value = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (result.dual[i] < 0) ok = false;
    dual_value += b[i] * result.dual[i];
  }
  for (std::size_t j = 0; j < vars && ok; ++j) {
    Rational lhs = 0;
    for (std::size_t i = 0; i < rows; ++i) lhs += a[i][j] * result.dual[i];
    if (lhs < c[j]) ok = false;
  }
  result.dual_verified = ok && dual_value == result.value;
  return result;
}

}  // namespace hyperham
