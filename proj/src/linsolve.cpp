#include "vopa/linsolve.hpp"

#include <algorithm>
#include <set>

namespace vopa {

RationalFunction determinant(Matrix m) {
  size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw Error("determinant of a non-square matrix");
  RationalFunction det(1);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) return RationalFunction();
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det = det * m[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      RationalFunction f = m[r][col] / m[col][col];
      for (size_t c = col; c < n; ++c) m[r][c] = m[r][c] - f * m[col][c];
    }
  }
  return det;
}

void LinearSystem::add(const Coeff& c) {
  if (c.is_constant() && c.constant_part().is_zero()) return;
  rows_.push_back(c);
}

void LinearSystem::add_all(const Expression& e) {
  for (const auto& [w, c] : e) add(c);
}

LinearSolution LinearSystem::solve() const {
  LinearSolution sol;
  std::set<int> idset;
  for (const auto& r : rows_)
    for (const auto& [id, v] : r.linear_part()) idset.insert(id);
  std::vector<int> ids(idset.begin(), idset.end());
  std::map<int, int> col_of;
  for (size_t i = 0; i < ids.size(); ++i) col_of[ids[i]] = static_cast<int>(i);
  size_t n = ids.size();

  Matrix m;
  m.reserve(rows_.size());
  for (const auto& r : rows_) {
    std::vector<RationalFunction> row(n + 1);
    for (const auto& [id, v] : r.linear_part()) row[col_of[id]] = v;
    row[n] = -r.constant_part();
    m.push_back(std::move(row));
  }

  std::vector<int> pivot_col;
  size_t rank = 0;
  for (size_t col = 0; col < n && rank < m.size(); ++col) {
    size_t piv = rank;
    while (piv < m.size() && m[piv][col].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    RationalFunction inv = RationalFunction(1) / m[rank][col];
    for (size_t c = col; c <= n; ++c) m[rank][c] = m[rank][c] * inv;
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][col].is_zero()) continue;
      RationalFunction f = m[r][col];
      for (size_t c = col; c <= n; ++c) m[r][c] = m[r][c] - f * m[rank][c];
    }
    pivot_col.push_back(static_cast<int>(col));
    ++rank;
  }

  for (size_t r = rank; r < m.size(); ++r) {
    if (!m[r][n].is_zero()) {
      sol.consistent = false;
      sol.inconsistency = "0 = " + m[r][n].str();
      return sol;
    }
  }

  std::set<int> pivots(pivot_col.begin(), pivot_col.end());
  for (size_t c = 0; c < n; ++c)
    if (!pivots.count(static_cast<int>(c))) sol.free_vars.push_back(ids[c]);

  for (size_t r = 0; r < rank; ++r) {
    int pc = pivot_col[r];
    Coeff value(m[r][n]);
    for (size_t c = pc + 1; c < n; ++c) {
      if (m[r][c].is_zero() || pivots.count(static_cast<int>(c))) continue;
      value -= Coeff(m[r][c]) * Coeff::unknown(ids[c]);
    }
    sol.assignment[ids[pc]] = value;
  }
  return sol;
}

}  // namespace vopa
