#pragma once

// Galerkin discretisation of a commuting operator in one parity sector.
//
// Basis b_i(z) = sgn(z)^{ρ−½}|z|^ρ P_{2i}(z/G), i < m: the z → 0 behaviour of
// the family's eigenfunctions (f̃ ~ |z|^ρ) times even Legendre polynomials.
// Entries ⟨b_i, op b_j⟩ and ⟨b_i, b_j⟩ are computed exactly over Q through
// the conjugated operator z^{−ρ}∘op∘z^ρ, whose action on polynomials stays
// Laurent; the integrals reduce to the moments ∫_0^G z^{2ρ+e} dz.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "tbl/errors.hpp"
#include "tbl/exactalg/diffop.hpp"

namespace tbl {

template <class S>
using MatrixX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using VectorX = Eigen::Matrix<S, Eigen::Dynamic, 1>;

struct GalerkinSystem {
  Rational G, rho;
  int m = 0;
  std::vector<std::vector<Rational>> poly;  // poly[i][a]: coefficient of z^{2a} in P_{2i}(z/G)
  std::vector<std::vector<Rational>> stiffness, mass;
  bool symmetric = false;  // stiffness exactly symmetric
};

/// op must be a DiffOp in z with Laurent coefficients (T, G, parameters
/// substituted). Throws SingularBasis if some ⟨b_i, op b_j⟩ diverges at z = 0,
/// i.e. the basis does not match the operator's behaviour there.
GalerkinSystem galerkin_system(const DiffOp& op, const Rational& G, const Rational& rho, int m);

template <class S>
struct DiffOpMatrix {
  Rational G, rho;
  int m = 0;
  bool exactly_symmetric = false;
  MatrixX<S> stiffness, mass;
  VectorX<S> eigenvalues;  // ascending
  MatrixX<S> vectors;      // mass-orthonormal coefficient columns
  std::vector<std::vector<S>> poly;

  S basis(int i, const S& z) const {
    using std::abs;
    using std::sqrt;
    const S a = abs(z), u = a * a;
    S p = S(0), pw = S(1);
    for (const S& c : poly[i]) {
      p += c * pw;
      pw *= u;
    }
    // |z|^ρ with ρ half-integral, times the sign for the odd sector.
    const int half = static_cast<int>(Rational(rho - Rational(1, 2)).get_num().get_si());
    S r = sqrt(a);
    for (int k = 0; k < half; ++k) r *= a;
    if (z < 0 && (half % 2)) r = -r;
    return r * p;
  }

  /// Column k: eigenfunction k sampled at the points.
  MatrixX<S> sample(const std::vector<S>& z) const {
    MatrixX<S> b(static_cast<Eigen::Index>(z.size()), m);
    for (std::size_t r = 0; r < z.size(); ++r)
      for (int i = 0; i < m; ++i) b(r, i) = basis(i, z[r]);
    return b * vectors;
  }
};

template <class S>
DiffOpMatrix<S> diffop_matrix(const DiffOp& op, const Rational& G, const Rational& rho, int m) {
  GalerkinSystem g = galerkin_system(op, G, rho, m);
  DiffOpMatrix<S> d;
  d.G = G;
  d.rho = rho;
  d.m = m;
  d.exactly_symmetric = g.symmetric;
  d.stiffness.resize(m, m);
  d.mass.resize(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      d.stiffness(i, j) = rational_to<S>(g.stiffness[i][j]);
      d.mass(i, j) = rational_to<S>(g.mass[i][j]);
    }
  d.poly.resize(m);
  for (int i = 0; i < m; ++i)
    for (const Rational& c : g.poly[i]) d.poly[i].push_back(rational_to<S>(c));
  MatrixX<S> sym = (d.stiffness + d.stiffness.transpose()) / S(2);
  Eigen::GeneralizedSelfAdjointEigenSolver<MatrixX<S>> es(sym, d.mass);
  d.eigenvalues = es.eigenvalues();
  d.vectors = es.eigenvectors();
  return d;
}

}  // namespace tbl
