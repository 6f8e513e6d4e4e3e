#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>

#include "doctest.h"
#include "tbl/kernels/kernel.hpp"
#include "tbl/numeric/mp.hpp"

using namespace tbl;

namespace {
std::vector<Family> all_families() {
  return {Family::slepian(1), Family::slepian(2), Family::slepian(3), Family::example(1),
          Family::example(2), Family::example(3), Family::example(4)};
}
}  // namespace

TEST_CASE("CD antiderivative differentiates to the product") {
  for (const Family& f : all_families()) {
    Kernel<double> k(KernelSpec::standard(f));
    const auto& e = k.eigenfunction();
    const double x = 0.55, z1 = 0.8, z2 = -0.35, h = 1e-3;
    auto F = [&](double xx) { return k.cd_antiderivative(xx, z1, z2); };
    double fd = (-F(x + 2 * h) + 8 * F(x + h) - 8 * F(x - h) + F(x - 2 * h)) / (12 * h);
    INFO(f.name());
    CHECK(fd == doctest::Approx(e(x, z1) * e(x, z2)).epsilon(1e-8));
    // Symmetric in (z1, z2) and even in z2 up to the family parity.
    CHECK(k.cd_antiderivative(x, z2, z1) == doctest::Approx(F(x)).epsilon(1e-14));
    CHECK(k.cd_antiderivative(x, z1, -z2) == doctest::Approx(f.parity() * F(x)).epsilon(1e-14));
  }
}

TEST_CASE("example 1 at t1 = 0 is Slepian's nu = 2 kernel") {
  KernelSpec s{Family::example(1), 1, 1, {{vars::t1, 0}}};
  Kernel<double> k(s), ref(KernelSpec::standard(Family::slepian(2)));
  for (auto [a, b] : {std::pair{0.3, 0.9}, {1.0, 2.0}, {-0.4, 0.7}})
    CHECK(std::abs(k.closed(a, b) - ref.closed(a, b)) <= 1e-12);
}

TEST_CASE("closed form against quadrature at the spot values") {
  Kernel<double> k1(KernelSpec::standard(Family::example(1)));
  CHECK(std::abs(k1.closed(1, 2) - k1.quadrature(1, 2)) <= 1e-10);
  Kernel<double> k2(KernelSpec::standard(Family::example(2)));
  CHECK(std::abs(k2.closed(0.7, 1.3) - k2.quadrature(0.7, 1.3)) <= 1e-10);
  CHECK(k1.closed(0.3, 0.8) == k1.closed(0.8, 0.3));
}

TEST_CASE("Slepian diagonal equals an independent fixed-rule integral") {
  Kernel<double> k(KernelSpec::standard(Family::slepian(1)));
  double ref = boost::math::quadrature::gauss<double, 64>::integrate(
      [](double x) { double j = boost::math::cyl_bessel_j(1, x); return x * j * j; }, 0.0, 1.0);
  CHECK(k.quadrature(1, 1) == doctest::Approx(ref).epsilon(1e-13));
}

TEST_CASE("closed form is continuous across the diagonal") {
  for (const Family& f : all_families()) {
    Kernel<double> k(KernelSpec::standard(f));
    for (double z : {0.35, 0.9}) {
      double diag = k.quadrature(z, z);
      INFO(f.name());
      CHECK(std::abs(k.closed(z, z + 1e-6) - diag) <= 1e-5);
      CHECK(std::abs(k.closed(z, z - 1e-6) - diag) <= 1e-5);
    }
    CHECK_THROWS_AS(k.closed(0.5, 0.5), NearDiagonal);
    CHECK_THROWS_AS(k.closed(0.5, -0.5), NearDiagonal);
  }
}

TEST_CASE("closed form and quadrature agree on an off-diagonal grid") {
  for (const Family& f : all_families()) {
    Kernel<double> k(KernelSpec::standard(f));
    double worst = 0;
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j) {
        double z1 = -0.95 + 0.2 * i + 0.013, z2 = -0.95 + 0.2 * j + 0.057;
        double c = k.closed(z1, z2), q = k.quadrature(z1, z2);
        worst = std::max(worst, std::abs(c - q) / std::max(std::abs(q), 1e-300));
      }
    INFO(f.name());
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("boundary piece at x = 0 is numerically zero") {
  for (int ex : {3, 4}) {
    Kernel<double> k(KernelSpec::standard(Family::example(ex)));
    CHECK(std::abs(k.boundary_richardson(0.6, 0.9)) <= 1e-6 * std::abs(k.closed(0.6, 0.9)));
  }
}

TEST_CASE("Gram matrices are positive semidefinite") {
  auto rule = gauss_legendre<double>(24, -1.0, 1.0);
  for (const Family& f : all_families()) {
    Kernel<double> k(KernelSpec::standard(f));
    Eigen::MatrixXd m = kernel_matrix(k, rule.nodes);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    INFO(f.name());
    CHECK(es.eigenvalues().minCoeff() >= -1e-10 * es.eigenvalues().cwiseAbs().maxCoeff());
  }
}

TEST_CASE("unit parameters put a pole inside (0, 1] for examples 3 and 4") {
  for (int ex : {3, 4}) {
    Kernel<double> k(KernelSpec::unit(Family::example(ex)));
    CHECK_FALSE(k.admissible());
    CHECK_THROWS_AS(k.closed(0.3, 0.7), PoleError);
    CHECK_THROWS_AS(k.quadrature(0.3, 0.7), PoleError);
  }
}

TEST_CASE("mpfr kernel agrees with double") {
  Kernel<Mp> km(KernelSpec::standard(Family::example(3)));
  Kernel<double> kd(KernelSpec::standard(Family::example(3)));
  CHECK(static_cast<double>(km.closed(Mp("0.3"), Mp("0.8"))) == doctest::Approx(kd.closed(0.3, 0.8)).epsilon(1e-13));
  QuadratureOptions o;
  o.tol = 1e-60;
  o.eps = 0;
  Mp q = km.quadrature(Mp("0.3"), Mp("0.8"), o), c = km.closed(Mp("0.3"), Mp("0.8"));
  CHECK(abs(q - c) < Mp("1e-55"));
}
