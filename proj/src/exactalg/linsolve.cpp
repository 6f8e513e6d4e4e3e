#include "tbl/exactalg/linsolve.hpp"

namespace tbl {

std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t p = row;
    while (p < m.rows && sgn(m(p, col)) == 0) ++p;
    if (p == m.rows) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(row, j));
    Rational inv = Rational(1) / m(row, col);
    for (std::size_t j = col; j < m.cols; ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == row || sgn(m(i, col)) == 0) continue;
      Rational f = m(i, col);
      for (std::size_t j = col; j < m.cols; ++j)
        if (sgn(m(row, j)) != 0) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::optional<LinearSolution> solve_linear(const QMatrix& A, const std::vector<Rational>& b) {
  QMatrix m(A.rows, A.cols + 1);
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t j = 0; j < A.cols; ++j) m(i, j) = A(i, j);
    m(i, A.cols) = b[i];
  }
  auto piv = rref(m);
  if (!piv.empty() && piv.back() == A.cols) return std::nullopt;
  LinearSolution s;
  s.particular.assign(A.cols, Rational(0));
  std::vector<bool> is_pivot(A.cols, false);
  for (std::size_t r = 0; r < piv.size(); ++r) {
    s.particular[piv[r]] = m(r, A.cols);
    is_pivot[piv[r]] = true;
  }
  for (std::size_t f = 0; f < A.cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(A.cols, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, f);
    s.nullspace.push_back(std::move(v));
  }
  return s;
}

std::vector<std::vector<Rational>> nullspace(const QMatrix& A) {
  return solve_linear(A, std::vector<Rational>(A.rows))->nullspace;
}

std::optional<std::vector<std::vector<Rational>>> solve_unique_multi(
    const QMatrix& A, const std::vector<std::vector<Rational>>& rhs) {
  const std::size_t k = rhs.size();
  QMatrix m(A.rows, A.cols + k);
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t j = 0; j < A.cols; ++j) m(i, j) = A(i, j);
    for (std::size_t c = 0; c < k; ++c) m(i, A.cols + c) = rhs[c][i];
  }
  auto piv = rref(m);
  std::size_t rank = 0;
  while (rank < piv.size() && piv[rank] < A.cols) ++rank;
  if (rank != A.cols) return std::nullopt;
  for (std::size_t i = rank; i < A.rows; ++i)
    for (std::size_t c = 0; c < k; ++c)
      if (sgn(m(i, A.cols + c)) != 0) return std::nullopt;
  std::vector<std::vector<Rational>> out(k, std::vector<Rational>(A.cols));
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < rank; ++r) out[c][piv[r]] = m(r, A.cols + c);
  return out;
}

}  // namespace tbl
