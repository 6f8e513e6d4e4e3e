#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "tbl/besselnum/eigenfunction.hpp"
#include "tbl/darboux/theta.hpp"
#include "tbl/numeric/mp.hpp"

using namespace tbl;
using namespace tbl::testing;

namespace {

// J_n(w) from its power series in exact rationals, rounded once at the end.
double exact_series_j(int n, const Rational& w, int terms) {
  Rational h = w / 2, sum = 0, fact_k = 1, fact_nk = 1;
  for (int i = 1; i <= n; ++i) fact_nk *= i;
  for (int k = 0; k < terms; ++k) {
    if (k > 0) {
      fact_k *= k;
      fact_nk *= n + k;
    }
    Rational t = pow(h, 2 * k + n) / (fact_k * fact_nk);
    sum += (k % 2) ? Rational(-t) : t;
  }
  return to_double(sum);
}

// Second derivative by the 5-point stencil.
template <class F>
double d2(F f, double x, double h) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}
// One Richardson step on top (h and h/2): the θ factors of examples 3 and 4
// have complex zeros near x = 1, where the bare stencil's h⁴ term dominates.
template <class F>
double d2x(F f, double x, double h) {
  return (16 * d2(f, x, h / 2) - d2(f, x, h)) / 15;
}
template <class F>
double d1(F f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

std::vector<Family> all_families() {
  return {Family::slepian(1), Family::slepian(2), Family::slepian(3), Family::example(1),
          Family::example(2), Family::example(3), Family::example(4)};
}

RatFun family_potential(const EigenfunctionChain& c) {
  if (c.family.kind == Family::Kind::Slepian) {
    int nu = c.family.index;
    return RatFun(Rational(4 * nu * nu - 1, 4)) * RatFun::variable(vars::x, -2);
  }
  ParamValues p = c.params;
  for (int i = 1; i <= 5; ++i) p.emplace(vars::t(i), 0);
  return potential(c.family.index + 1).substitute(p);
}

}  // namespace

TEST_CASE("bessel_j small cases and series oracle") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(3, 0.0) == 0.0);
  double oracle = exact_series_j(1, 1, 30);
  CHECK(std::abs(bessel_j(1, 1.0) - oracle) <= 1e-15 * std::abs(oracle));
  for (int n : {0, 2, 5})
    for (Rational w : {Rational(1, 3), Rational(7, 4), Rational(3)}) {
      double o = exact_series_j(n, w, 40);
      CHECK(std::abs(bessel_j(n, to_double(w)) - o) <= 1e-14 * std::abs(o));
    }
}

TEST_CASE("bessel_j against an independent library over 0 < w <= 50") {
  double worst = 0;
  for (int n = 0; n <= 6; ++n)
    for (double w = 0.05; w <= 50; w += 0.37) {
      double ref = boost::math::cyl_bessel_j(n, w);
      double err = std::abs(bessel_j(n, w) - ref) / std::max(std::abs(ref), 1e-2);
      worst = std::max(worst, err);
    }
  CHECK(worst <= 1e-13);
}

TEST_CASE("bessel_j in mpfr reaches working precision") {
  for (int n : {0, 1, 3})
    for (const char* ws : {"0.3", "1.7", "12.5"}) {
      Mp w(ws);
      Mp ref = boost::math::cyl_bessel_j(n, w);
      Mp err = abs(bessel_j(n, w) - ref) / abs(ref);
      CHECK(err < Mp("1e-120"));
    }
}

TEST_CASE("three-term recurrence consistency") {
  for (double w : {0.4, 1.0, 2.5, 7.0, 19.0}) {
    double j2 = 2 / w * bessel_j(1, w) - bessel_j(0, w);
    CHECK(std::abs(j2 - bessel_j(2, w)) <= 1e-12);
  }
}

TEST_CASE("half-integer order cross-check") {
  for (double x : {0.3, 1.0, 2.2})
    for (double z : {0.5, 1.5}) {
      double w = x * z;
      double f = std::sqrt(w) * bessel_j_series(-0.5, w);
      CHECK(std::abs(f - std::sqrt(2 / M_PI) * std::cos(w)) <= 1e-14);
    }
}

TEST_CASE("f_nu depends on the product and has parity (-1)^nu") {
  CHECK(std::abs(f_nu(2, 0.7, 1.9) - f_nu(2, 1.9, 0.7)) <= 1e-15);
  for (int n = 0; n <= 3; ++n) CHECK(f_nu(n, 0.8, -1.3) == doctest::Approx((n % 2 ? -1 : 1) * f_nu(n, 0.8, 1.3)));
  CHECK_THROWS_AS(f_nu(1, 0.0, 1.0), DomainError);
}

TEST_CASE("reduced derivatives agree with finite differences") {
  // ∂_x f_2 at (1, 1).
  BesselExpr dx = reduce_derivative({2, RatFun(1), RatFun()}, vars::x);
  CompiledBessel<double> fx(dx.mu, dx.ca, dx.cb);
  double fd = d1([](double x) { return f_nu(2, x, 1.0); }, 1.0, 1e-3);
  CHECK(std::abs(fx(1.0, 1.0) - fd) <= 1e-8);
  // ∂_z² f_μ, reduced twice, at random points on both sides of z = 0.
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ux(0.3, 2.0), uz(0.3, 2.0);
  for (int mu : {1, 2}) {
    BesselExpr e{mu, RatFun(1), RatFun()};
    BesselExpr dd = reduce_derivative(reduce_derivative(e, vars::z), vars::z);
    CompiledBessel<double> g(dd.mu, dd.ca, dd.cb);
    for (int i = 0; i < 10; ++i) {
      double x = ux(rng), z = uz(rng) * (i % 2 ? -1 : 1);
      double ref = d2([&](double zz) { return f_nu(mu, x, zz); }, z, 1e-3);
      CHECK(std::abs(g(x, z) - ref) <= 1e-8);
    }
  }
}

TEST_CASE("transformed eigenfunctions solve their Schrodinger equations") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ux(0.2, 1.0), uz(0.3, 1.8);
  for (const Family& f : all_families()) {
    EigenfunctionChain c = EigenfunctionChain::standard(f);
    Eigenfunction<double> ef(c);
    RatFun V = family_potential(c);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
      double x = ux(rng), z = uz(rng);
      double lhs = -d2x([&](double xx) { return ef(xx, z); }, x, 1e-3) +
                   V.evaluate_as<double>(std::array<double, kMaxVars>{x}) * ef(x, z);
      worst = std::max(worst, std::abs(lhs - z * z * ef(x, z)) / std::abs(z * z * ef(x, z)));
    }
    INFO(f.name());
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("analytic x-derivative matches finite differences") {
  for (const Family& f : all_families()) {
    Eigenfunction<double> ef(EigenfunctionChain::standard(f));
    for (double z : {0.4, -1.1}) {
      double fd = d1([&](double xx) { return ef(xx, z); }, 0.6, 1e-3);
      INFO(f.name());
      CHECK(std::abs(ef.dx(0.6, z) - fd) <= 1e-8 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("parity of transformed eigenfunctions is fixed per family") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ux(0.1, 1.0), uz(0.05, 1.0);
  for (const Family& f : all_families()) {
    Eigenfunction<double> ef(EigenfunctionChain::standard(f));
    bool ok = true;
    for (int i = 0; i < 50; ++i) {
      double x = ux(rng), z = uz(rng);
      double a = ef(x, -z), b = f.parity() * ef(x, z);
      ok = ok && std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(b));
    }
    INFO(f.name());
    CHECK(ok);
  }
}

TEST_CASE("example 1 at t1 = 0 and example 3 at t2 = t3 = 0 reduce to Slepian functions") {
  EigenfunctionChain c1{Family::example(1), {{vars::t1, 0}}};
  Eigenfunction<double> e1(c1);
  for (double z : {0.3, 1.2}) CHECK(e1(0.7, z) == doctest::Approx(-f_nu(2, 0.7, z)).epsilon(1e-14));

  EigenfunctionChain c3{Family::example(3), {{vars::t2, 0}, {vars::t3, 0}}};
  Eigenfunction<double> e3(c3);
  double ratio = e3(0.5, 0.9) / f_nu(4, 0.5, 0.9);
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(0.2, 1.5);
  for (int i = 0; i < 10; ++i) {
    double x = u(rng), z = u(rng);
    CHECK(e3(x, z) / f_nu(4, x, z) == doctest::Approx(ratio).epsilon(1e-12));
  }
  CHECK(std::abs(std::abs(ratio) - 1) <= 1e-12);
}

TEST_CASE("theta zeros on the time interval") {
  CHECK(pole_count(EigenfunctionChain::unit(Family::example(1)), 1) == 0);
  CHECK(pole_count(EigenfunctionChain::unit(Family::example(2)), 1) == 0);
  CHECK(pole_count(EigenfunctionChain::unit(Family::example(3)), 1) > 0);
  CHECK(pole_count(EigenfunctionChain::unit(Family::example(4)), 1) > 0);
  for (int ex = 1; ex <= 4; ++ex) CHECK(pole_count(EigenfunctionChain::standard(Family::example(ex)), 1) == 0);
  CHECK(pole_count(EigenfunctionChain{Family::example(1), {{vars::t1, -1, }}}, 2) == 1);
}

TEST_CASE("double and mpfr evaluations agree") {
  for (const Family& f : all_families()) {
    EigenfunctionChain c = EigenfunctionChain::standard(f);
    Eigenfunction<double> ed(c);
    Eigenfunction<Mp> em(c);
    double a = ed(0.61, -0.83);
    double b = static_cast<double>(em(Mp("0.61"), Mp("-0.83")));
    CHECK(a == doctest::Approx(b).epsilon(1e-13));
  }
}
