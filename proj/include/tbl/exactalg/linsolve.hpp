#pragma once

#include <optional>
#include <vector>

#include "tbl/exactalg/rational.hpp"

namespace tbl {

/// Dense row-major matrix over Q for exact elimination.
struct QMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Rational> a;
  QMatrix() = default;
  QMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  Rational& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

/// In-place reduced row echelon form; returns the pivot column of each
/// nonzero row.
std::vector<std::size_t> rref(QMatrix& m);

struct LinearSolution {
  std::vector<Rational> particular;             // one solution (free vars = 0)
  std::vector<std::vector<Rational>> nullspace;  // basis of the homogeneous solutions
};

/// Solves A·x = b exactly; nullopt when inconsistent.
std::optional<LinearSolution> solve_linear(const QMatrix& A, const std::vector<Rational>& b);
std::vector<std::vector<Rational>> nullspace(const QMatrix& A);

/// Solves A·X = B for several right-hand sides sharing A. nullopt when any
/// column is inconsistent or the solution is not unique.
std::optional<std::vector<std::vector<Rational>>> solve_unique_multi(
    const QMatrix& A, const std::vector<std::vector<Rational>>& rhs_columns);

}  // namespace tbl
