#include "tbl/spectra/toeplitz.hpp"

#include <cmath>
#include <numbers>

#include "tbl/errors.hpp"

namespace tbl {

Eigen::MatrixXd toeplitz_slepian(int n, double phi) {
  if (n < 2) throw InvalidArgument("toeplitz_slepian: n must be at least 2");
  Eigen::MatrixXd t(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int l = std::abs(i - j);
      t(i, j) = l == 0 ? 2 * phi / std::numbers::pi : 2 * std::sin(l * phi) / (std::numbers::pi * l);
    }
  return t;
}

PlungeStats plunge_statistics(const Eigen::VectorXd& eigs, double delta, double scale) {
  if (!(delta > 0 && delta < 0.5)) throw InvalidArgument("plunge_statistics: delta must be in (0, 1/2)");
  PlungeStats s;
  for (double e : eigs) {
    const double v = e / scale;
    if (v >= 1 - delta) ++s.near1;
    else if (v > delta) ++s.plunge;
    else ++s.near0;
  }
  s.fraction_near1 = eigs.size() ? double(s.near1) / eigs.size() : 0;
  return s;
}

TridiagonalResult find_commuting_tridiagonal(const Eigen::MatrixXd& T) {
  const int n = static_cast<int>(T.rows());
  const int unknowns = 2 * n - 1;
  // [T, J] is antisymmetric: one row per entry above the diagonal.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n * (n - 1) / 2, unknowns);
  auto row = [n](int i, int j) { return i * n - i * (i + 1) / 2 + (j - i - 1); };
  auto add = [&](int i, int j, int col, double v) {
    if (i < j) A(row(i, j), col) += v;
    else if (i > j) A(row(j, i), col) -= v;
  };
  // Column for E_kk: [T, E_kk]_{ij} = T_ik δ_kj − δ_ik T_kj.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      add(i, k, k, T(i, k));
      add(k, i, k, -T(k, i));
    }
  // Column for E_k,k+1 + E_k+1,k.
  for (int k = 0; k + 1 < n; ++k)
    for (int i = 0; i < n; ++i) {
      add(i, k + 1, n + k, T(i, k));
      add(i, k, n + k, T(i, k + 1));
      add(k, i, n + k, -T(k + 1, i));
      add(k + 1, i, n + k, -T(k, i));
    }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double tol = 1e-10 * std::max(1.0, sv(0));
  TridiagonalResult r;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) <= tol) ++r.nullity;
  r.nullity += std::max<int>(0, unknowns - static_cast<int>(sv.size()));
  if (r.nullity < 2) throw OnlyTrivialSolution("only multiples of the identity commute");

  const Eigen::MatrixXd V = svd.matrixV();
  Eigen::VectorXd id = Eigen::VectorXd::Zero(unknowns);
  id.head(n).setOnes();
  id.normalize();
  Eigen::VectorXd best;
  double best_norm = -1;
  for (int c = unknowns - r.nullity; c < unknowns; ++c) {
    Eigen::VectorXd v = V.col(c) - id * id.dot(V.col(c));
    if (v.norm() > best_norm) {
      best_norm = v.norm();
      best = v;
    }
  }
  r.diagonal = best.head(n);
  r.off_diagonal = best.tail(n - 1);
  const double fro = std::sqrt(r.diagonal.squaredNorm() + 2 * r.off_diagonal.squaredNorm());
  double sign = r.off_diagonal(0) < 0 ? -1 : 1;
  r.diagonal *= sign / fro;
  r.off_diagonal *= sign / fro;
  r.J = Eigen::MatrixXd::Zero(n, n);
  r.J.diagonal() = r.diagonal;
  r.J.diagonal(1) = r.off_diagonal;
  r.J.diagonal(-1) = r.off_diagonal;
  r.residual = (T * r.J - r.J * T).norm();
  return r;
}

double min_relative_gap(const Eigen::VectorXd& e) {
  double g = INFINITY;
  for (int i = 1; i < e.size(); ++i) g = std::min(g, e(i) - e(i - 1));
  return g / e.cwiseAbs().maxCoeff();
}

double plunge_min_relative_gap(const Eigen::VectorXd& e, double delta, double scale) {
  double g = INFINITY;
  auto inside = [&](double v) { return v / scale > delta && v / scale < 1 - delta; };
  for (int i = 1; i < e.size(); ++i)
    if (inside(e(i)) && inside(e(i - 1))) g = std::min(g, e(i) - e(i - 1));
  return g / e.cwiseAbs().maxCoeff();
}

}  // namespace tbl
