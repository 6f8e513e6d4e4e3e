#pragma once

#include <Eigen/Dense>

namespace tbl {

/// The limited-angle Toeplitz matrix, entries exactly as displayed: 2φ/π on
/// the diagonal and 2 sin(lφ)/(πl) on the l-th diagonal. This is twice the
/// section of the band-limiting projection, so its spectrum lies in (0, 2)
/// and clusters at 2 and 0.
Eigen::MatrixXd toeplitz_slepian(int n, double phi);

struct PlungeStats {
  int near1 = 0, plunge = 0, near0 = 0;
  double fraction_near1 = 0;
};

/// Counts eigenvalues of λ/scale above 1 − δ, inside (δ, 1 − δ) and below δ.
/// Use scale = 2 for toeplitz_slepian.
PlungeStats plunge_statistics(const Eigen::VectorXd& eigs, double delta, double scale = 1.0);

struct TridiagonalResult {
  Eigen::VectorXd diagonal, off_diagonal;  // trace 0, ‖J‖_F = 1, first off-diagonal > 0
  Eigen::MatrixXd J;
  double residual = 0;  // ‖[T, J]‖_F
  int nullity = 0;      // dimension of the commutant among symmetric tridiagonals
};

/// Least squares over symmetric tridiagonal J for [T, J] = 0, the identity
/// projected out. Throws OnlyTrivialSolution if only multiples of I commute.
TridiagonalResult find_commuting_tridiagonal(const Eigen::MatrixXd& T);

/// Smallest gap between consecutive eigenvalues divided by the spectral radius.
double min_relative_gap(const Eigen::VectorXd& sorted_eigs);

/// Same, over consecutive pairs that both lie in the plunge band
/// (δ, 1 − δ)·scale; infinity if fewer than two eigenvalues are there.
double plunge_min_relative_gap(const Eigen::VectorXd& sorted_eigs, double delta, double scale = 1.0);

}  // namespace tbl
