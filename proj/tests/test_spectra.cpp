#include <cmath>
#include <numbers>

#include "doctest.h"
#include "tbl/besselalg/commuting.hpp"
#include "tbl/numeric/mp.hpp"
#include "tbl/spectra/spectra.hpp"
#include "tbl/spectra/toeplitz.hpp"

using namespace tbl;

namespace {
Eigen::VectorXd sorted_eigs(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues();
}
}  // namespace

TEST_CASE("split rule integrates |z|^3 exactly") {
  auto r = split_rule<double>(16, 1.0);
  double s = 0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(std::abs(r.nodes[i]), 3);
  CHECK(s == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.nodes.front() == doctest::Approx(-r.nodes.back()));
}

TEST_CASE("Nystrom: positivity and self-convergence") {
  KernelSpec s = KernelSpec::standard(Family::slepian(1));
  auto n64 = nystrom<double>(s, 64), n128 = nystrom<double>(s, 128);
  Eigen::VectorXd a = sorted_eigs(n64.M).reverse(), b = sorted_eigs(n128.M).reverse();
  CHECK(a.minCoeff() >= -1e-12);
  CHECK((n64.M - n64.M.transpose()).norm() <= 1e-14);
  for (int k = 0; k < 5; ++k) CHECK(std::abs(a(k) - b(k)) < 1e-10);
  // More x points change nothing.
  Eigen::VectorXd c = sorted_eigs(nystrom<double>(s, 64, 220).M).reverse();
  for (int k = 0; k < 5; ++k) CHECK(std::abs(a(k) - c(k)) < 1e-13);
}

TEST_CASE("Nystrom: example 1 tends to Slepian nu = 2 as t1 -> 0") {
  Eigen::VectorXd ref = sorted_eigs(nystrom<double>(KernelSpec::standard(Family::slepian(2)), 32).M).reverse();
  double prev = INFINITY;
  for (Rational t : {Rational(1, 100), Rational(1, 10000), Rational(1, 1000000)}) {
    KernelSpec s{Family::example(1), 1, 1, {{vars::t1, t}}};
    Eigen::VectorXd e = sorted_eigs(nystrom<double>(s, 32).M).reverse();
    double d = (e.head(5) - ref.head(5)).cwiseAbs().maxCoeff();
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 1e-5);
}

TEST_CASE("Galerkin: Slepian nu = 2 operator has a spread-out spectrum") {
  KernelSpec s = KernelSpec::standard(Family::slepian(2));
  auto d = diffop_matrix<Mp>(commuting_operator(s), s.G, s.family.rho(), 40);
  CHECK(d.exactly_symmetric);
  double gap = INFINITY;
  for (int i = 1; i < d.m; ++i) gap = std::min(gap, static_cast<double>(d.eigenvalues(i) - d.eigenvalues(i - 1)));
  CHECK(gap >= 0.1);
  // Basis-size doubling leaves the lowest ten eigenvalues fixed.
  auto d2 = diffop_matrix<Mp>(commuting_operator(s), s.G, s.family.rho(), 80);
  for (int k = 0; k < 10; ++k)
    CHECK(std::abs(static_cast<double>((d.eigenvalues(k) - d2.eigenvalues(k)) / d2.eigenvalues(k))) < 1e-8);
}

TEST_CASE("Galerkin: example-1 operator at t1 = 0 is a polynomial in A_2") {
  // a² − (3/2)a − 11G²T²/2 at t1 = 0, checked on spectra in the ρ = 5/2 sector.
  KernelSpec s{Family::example(1), 1, 1, {{vars::t1, 0}}};
  KernelSpec a2 = KernelSpec::standard(Family::slepian(2));
  auto dop = diffop_matrix<Mp>(commuting_operator(s), 1, Rational(5, 2), 40);
  auto da = diffop_matrix<Mp>(commuting_operator(a2), 1, Rational(5, 2), 40);
  for (int k = 0; k < 10; ++k) {
    Mp a = da.eigenvalues(k);
    Mp p = a * a - Mp(3) / 2 * a - Mp(11) / 2;
    CHECK(std::abs(static_cast<double>((dop.eigenvalues(k) - p) / p)) < 1e-8);
  }
}

TEST_CASE("Galerkin: a basis with the wrong z = 0 behaviour is rejected") {
  CHECK_THROWS_AS(galerkin_system(commuting_operator(KernelSpec::standard(Family::slepian(2))), 1,
                                  Rational(1, 2), 10),
                  SingularBasis);
}

TEST_CASE("alignment: Slepian nu = 1 shares eigenvectors; random control does not") {
  KernelSpec s = KernelSpec::standard(Family::slepian(1));
  auto N = nystrom<Mp>(s, 128);
  auto D = diffop_matrix<Mp>(commuting_operator(s), s.G, s.family.rho(), 60);
  AlignmentReport r = alignment(N, D);
  CHECK(r.max_residual <= 1e-6);
  for (int k = 0; k < 10; ++k) CHECK(r.op_index[k] == k);  // lowest op modes ↔ top kernel modes
  AlignmentReport c = alignment_control(N, D);
  double lo = *std::min_element(c.residuals.begin(), c.residuals.end());
  CHECK(lo >= 0.1);
}

TEST_CASE("example 1: formal commutation without shared eigenvectors") {
  // op_{z1}K = op_{z2}K holds exactly, but the operator is not symmetric on
  // functions behaving like |z|^{1/2} at 0, and its eigenvectors miss M's.
  KernelSpec s = KernelSpec::standard(Family::example(1));
  auto N = nystrom<Mp>(s, 64);
  auto D = diffop_matrix<Mp>(commuting_operator(s), s.G, s.family.rho(), 30);
  CHECK_FALSE(D.exactly_symmetric);
  CHECK(alignment(N, D).max_residual > 0.1);
}

TEST_CASE("stability: the commuting route resists entry noise") {
  KernelSpec s = KernelSpec::standard(Family::slepian(1));
  DiffOp op = commuting_operator(s);
  StabilityReport r = stability_demo<Mp>(s, op, 1e-10, 32, 30, 8);
  CHECK(r.best_ratio >= 10);
  StabilityReport z = stability_demo<Mp>(s, op, 0.0, 32, 30, 8);
  for (std::size_t k = 0; k < z.direct.size(); ++k) {
    CHECK(z.direct[k] == 0.0);
    CHECK(z.commuting[k] == 0.0);
    CHECK(z.agreement[k] <= 1e-6);
  }
}

TEST_CASE("Toeplitz matrix as displayed") {
  Eigen::MatrixXd t = toeplitz_slepian(2, std::numbers::pi / 2);
  CHECK(t(0, 0) == doctest::Approx(1.0));
  CHECK(t(0, 1) == doctest::Approx(2 / std::numbers::pi));
  Eigen::MatrixXd full = toeplitz_slepian(6, std::numbers::pi);
  CHECK((full - 2 * Eigen::MatrixXd::Identity(6, 6)).norm() <= 1e-14);
  Eigen::VectorXd e = sorted_eigs(toeplitz_slepian(128, 1.0));
  CHECK(e.minCoeff() > -1e-12);
  CHECK(e.maxCoeff() < 2 + 1e-12);
}

TEST_CASE("Toeplitz near-1 fraction follows phi/pi") {
  for (double phi : {std::numbers::pi / 6, std::numbers::pi / 4, std::numbers::pi / 2})
    for (int n : {128, 512}) {
      PlungeStats p = plunge_statistics(sorted_eigs(toeplitz_slepian(n, phi)), 0.1, 2.0);
      CHECK(p.near1 + p.plunge + p.near0 == n);
      CHECK(std::abs(p.fraction_near1 - phi / std::numbers::pi) <= 3 / std::sqrt(double(n)));
    }
  PlungeStats q = plunge_statistics(sorted_eigs(toeplitz_slepian(512, std::numbers::pi / 4)), 0.1, 2.0);
  CHECK(std::abs(q.fraction_near1 - 0.25) <= 0.05);
  int p256 = plunge_statistics(sorted_eigs(toeplitz_slepian(256, 1.0)), 0.1, 2.0).plunge;
  int p1024 = plunge_statistics(sorted_eigs(toeplitz_slepian(1024, 1.0)), 0.1, 2.0).plunge;
  CHECK(p1024 < 2 * p256);
}

TEST_CASE("commuting tridiagonal for the Toeplitz matrix") {
  Eigen::MatrixXd t = toeplitz_slepian(32, 1.0);
  TridiagonalResult r = find_commuting_tridiagonal(t);
  CHECK(r.residual <= 1e-10);
  CHECK(r.nullity == 2);
  CHECK(r.off_diagonal.norm() > 0.1);
  CHECK(r.off_diagonal(0) > 0);
  CHECK(std::abs(r.diagonal.sum()) <= 1e-12);
  double gj = min_relative_gap(sorted_eigs(r.J)), gt = min_relative_gap(sorted_eigs(t));
  CHECK(gj >= 100 * gt);
  double gp = plunge_min_relative_gap(sorted_eigs(t), 0.1, 2.0);
  CHECK(std::isfinite(gp));
  CHECK(gp > gj);  // inside the plunge band the Toeplitz gaps are the larger ones
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(32, 32);
  CHECK((t * id - id * t).norm() == 0.0);
  for (int n : {16, 64, 128}) {
    Eigen::MatrixXd tn = toeplitz_slepian(n, 1.0);
    TridiagonalResult rn = find_commuting_tridiagonal(tn);
    CHECK(rn.residual <= 100 * 2.2e-16 * tn.norm() * rn.J.norm() * n);
  }
}

TEST_CASE("only the identity commutes with a generic symmetric matrix") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Random(8, 8);
  a = (a + a.transpose()).eval();
  CHECK_THROWS_AS(find_commuting_tridiagonal(a), OnlyTrivialSolution);
}
