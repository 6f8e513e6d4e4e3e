#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "tbl/kernels/kernel.hpp"
#include "tbl/spectra/galerkin.hpp"

namespace tbl {

/// n/2 Gauss–Legendre points on each of [−G, 0] and [0, G]. The integrands
/// carry |z|^{2ρ}, which is smooth on each half but not across 0.
template <class S>
QuadratureRule<S> split_rule(int n, const S& G) {
  if (n < 2 || n % 2) throw InvalidArgument("split_rule: n must be even");
  QuadratureRule<S> r = gauss_legendre<S>(n / 2, S(0), G);
  QuadratureRule<S> out;
  for (int i = n / 2 - 1; i >= 0; --i) {
    out.nodes.push_back(-r.nodes[i]);
    out.weights.push_back(r.weights[i]);
  }
  for (int i = 0; i < n / 2; ++i) {
    out.nodes.push_back(r.nodes[i]);
    out.weights.push_back(r.weights[i]);
  }
  return out;
}

/// M_ij = √w_i K(z_i, z_j) √w_j, assembled in Gram form M = F Fᵀ with
/// F_iq = √w_i f̃(x_q, z_i) √v_q over a Gauss–Legendre rule (x_q, v_q) on
/// [0, T]. This is the same matrix with K evaluated by quadrature, positive
/// semidefinite by construction and with no diagonal special case.
template <class S>
struct NystromMatrix {
  QuadratureRule<S> z;
  MatrixX<S> M;
};

template <class S>
NystromMatrix<S> nystrom(const KernelSpec& spec, int n, int x_points = 160) {
  using std::sqrt;
  if (n < 8) throw InvalidArgument("nystrom: n must be at least 8");
  if (pole_count(spec.chain(), spec.T) > 0)
    throw PoleError(spec.str() + ": f̃ has a pole in (0, T]; the kernel is not defined");
  Eigenfunction<S> f(spec.chain());
  const int parity = spec.family.parity();
  NystromMatrix<S> out;
  out.z = split_rule<S>(n, rational_to<S>(spec.G));
  const QuadratureRule<S> x = gauss_legendre<S>(x_points, S(0), rational_to<S>(spec.T));
  MatrixX<S> F(n, x_points);
  for (int i = n / 2; i < n; ++i) {
    const S wz = sqrt(out.z.weights[i]);
    for (int q = 0; q < x_points; ++q) {
      F(i, q) = wz * sqrt(x.weights[q]) * f(x.nodes[q], out.z.nodes[i]);
      F(n - 1 - i, q) = parity > 0 ? F(i, q) : S(-F(i, q));
    }
  }
  out.M = F * F.transpose();
  return out;
}

/// The commuting operator of a family with T, G and the parameters of the
/// spec substituted: 𝔸_ν for slepian(ν), the solved operator for examples
/// (solved once per process).
DiffOp commuting_operator(const KernelSpec& spec);

struct AlignmentReport {
  std::vector<double> residuals;          // per mode, largest Rayleigh quotient first
  std::vector<double> rayleigh;           // vᵀMv of the selected D eigenvectors
  std::vector<int> op_index;              // their position in D's ascending spectrum
  std::vector<double> op_eigenvalues;
  std::vector<double> nystrom_eigenvalues;  // top modes of M, descending
  double max_residual = 0;
};

namespace detail {

template <class S>
MatrixX<S> sampled_modes(const NystromMatrix<S>& N, const DiffOpMatrix<S>& D) {
  using std::sqrt;
  MatrixX<S> V = D.sample(N.z.nodes);
  for (Eigen::Index r = 0; r < V.rows(); ++r) V.row(r) *= sqrt(N.z.weights[r]);
  for (Eigen::Index c = 0; c < V.cols(); ++c) V.col(c).normalize();
  return V;
}

template <class S>
double residual(const MatrixX<S>& M, const VectorX<S>& v) {
  VectorX<S> Mv = M * v;
  const S rq = v.dot(Mv);
  return static_cast<double>(S((Mv - rq * v).norm() / Mv.norm()));
}

}  // namespace detail

/// For the D eigenvectors with the largest Rayleigh quotients against M,
/// r = ‖Mv − (vᵀMv)v‖ / ‖Mv‖. A shared eigenbasis gives r ≈ 0.
template <class S>
AlignmentReport alignment(const MatrixX<S>& M, const NystromMatrix<S>& N, const DiffOpMatrix<S>& D,
                          int modes = 10) {
  const MatrixX<S> V = detail::sampled_modes(N, D);
  std::vector<S> rq(V.cols());
  for (Eigen::Index c = 0; c < V.cols(); ++c) rq[c] = V.col(c).dot(M * V.col(c));
  std::vector<int> order(V.cols());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return rq[a] > rq[b]; });
  AlignmentReport r;
  Eigen::SelfAdjointEigenSolver<MatrixX<S>> es(M, Eigen::EigenvaluesOnly);
  const Eigen::Index n = es.eigenvalues().size();
  for (int k = 0; k < modes && k < static_cast<int>(order.size()); ++k) {
    const int j = order[k];
    r.op_index.push_back(j);
    r.rayleigh.push_back(static_cast<double>(rq[j]));
    r.op_eigenvalues.push_back(static_cast<double>(D.eigenvalues(j)));
    r.residuals.push_back(detail::residual<S>(M, V.col(j)));
    r.nystrom_eigenvalues.push_back(static_cast<double>(es.eigenvalues()(n - 1 - k)));
    r.max_residual = std::max(r.max_residual, r.residuals.back());
  }
  return r;
}

template <class S>
AlignmentReport alignment(const NystromMatrix<S>& N, const DiffOpMatrix<S>& D, int modes = 10) {
  return alignment(N.M, N, D, modes);
}

/// Negative control: a random symmetric matrix in place of M.
template <class S>
AlignmentReport alignment_control(const NystromMatrix<S>& N, const DiffOpMatrix<S>& D, int modes = 10,
                                  std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  const Eigen::Index n = N.M.rows();
  MatrixX<S> R(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) R(i, j) = R(j, i) = S(g(rng));
  return alignment(R, N, D, modes);
}

struct StabilityReport {
  double noise = 0;
  std::vector<double> eigenvalues;  // top Nyström eigenvalues, descending
  std::vector<bool> near_one;       // λ ≥ (1 − δ)λ_max, δ = 0.1
  std::vector<double> direct;       // rotation (radians) of eigenvectors of M
  std::vector<double> commuting;    // rotation of the matched D eigenfunctions
  std::vector<double> ratio;        // direct / commuting
  std::vector<double> agreement;    // clean routes: angle between M and D modes
  double best_ratio = 0;            // max ratio over modes outside the near-1 cluster
};

namespace detail {

// Principal angle between unit vectors, accurate for tiny angles.
template <class S>
double angle(const VectorX<S>& a, const VectorX<S>& b) {
  using std::asin;
  const S d = a.dot(b) < 0 ? S((a + b).norm()) : S((a - b).norm());
  return static_cast<double>(S(2 * asin(std::min<S>(S(1), d / 2))));
}

template <class S>
MatrixX<S> perturb(const MatrixX<S>& A, double noise, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  MatrixX<S> B = A;
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      const S f = S(1) + S(noise) * S(g(rng));
      B(i, j) = A(i, j) * f;
      B(j, i) = B(i, j);
    }
  return B;
}

}  // namespace detail

/// Relative entrywise noise of the same size is put on both discretisations:
/// the Nyström matrix M and the Galerkin matrix of D in its mass-orthonormal
/// basis. For each of the top `modes` eigenvectors of M the rotation of the
/// direct route (eigenvectors of the noisy M) is compared with that of the
/// commuting route (eigenfunctions of the noisy D, sampled at the nodes).
template <class S>
StabilityReport stability_demo(const KernelSpec& spec, const DiffOp& op, double noise, int n = 64, int m = 40,
                               int modes = 10, std::uint64_t seed = 1) {
  const NystromMatrix<S> N = nystrom<S>(spec, n);
  const DiffOpMatrix<S> D = diffop_matrix<S>(op, spec.G, spec.family.rho(), m);
  std::mt19937_64 rng(seed);

  Eigen::SelfAdjointEigenSolver<MatrixX<S>> clean(N.M);
  Eigen::SelfAdjointEigenSolver<MatrixX<S>> noisy(detail::perturb(N.M, noise, rng));

  // D in the mass-orthonormal basis: L⁻¹ S L⁻ᵀ with mass = LLᵀ.
  Eigen::LLT<MatrixX<S>> llt(D.mass);
  const MatrixX<S> L = llt.matrixL();
  MatrixX<S> sym = (D.stiffness + D.stiffness.transpose()) / S(2);
  MatrixX<S> A = L.template triangularView<Eigen::Lower>().solve(sym);
  A = L.template triangularView<Eigen::Lower>().solve(A.transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<MatrixX<S>> dclean(A), dnoisy(detail::perturb(A, noise, rng));
  const MatrixX<S> Lt = L.transpose();
  auto sampled = [&](const MatrixX<S>& W) {
    DiffOpMatrix<S> tmp = D;
    tmp.vectors = Lt.template triangularView<Eigen::Upper>().solve(W);
    return detail::sampled_modes(N, tmp);
  };
  const MatrixX<S> Vc = sampled(dclean.eigenvectors()), Vn = sampled(dnoisy.eigenvectors());

  StabilityReport r;
  r.noise = noise;
  const Eigen::Index top = n - 1;
  const S lmax = clean.eigenvalues()(top);
  for (int k = 0; k < modes; ++k) {
    const VectorX<S> u = clean.eigenvectors().col(top - k), un = noisy.eigenvectors().col(top - k);
    Eigen::Index j = 0;
    (Vc.transpose() * u).cwiseAbs().maxCoeff(&j);
    const double lam = static_cast<double>(clean.eigenvalues()(top - k));
    r.eigenvalues.push_back(lam);
    r.near_one.push_back(lam >= 0.9 * static_cast<double>(lmax));
    r.direct.push_back(detail::angle<S>(u, un));
    r.commuting.push_back(detail::angle<S>(Vc.col(j), Vn.col(j)));
    r.agreement.push_back(detail::angle<S>(u, Vc.col(j)));
    const double c = std::max(r.commuting.back(), 1e-300);
    r.ratio.push_back(r.direct.back() / c);
    if (!r.near_one.back()) r.best_ratio = std::max(r.best_ratio, r.ratio.back());
  }
  return r;
}

}  // namespace tbl
