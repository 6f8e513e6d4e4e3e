#include "doctest.h"
#include "helpers.hpp"
#include "tbl/errors.hpp"
#include "tbl/exactalg/antiderivative.hpp"
#include "tbl/exactalg/diffop.hpp"
#include "tbl/exactalg/linsolve.hpp"
#include "tbl/exactalg/upoly.hpp"

using namespace tbl;
using namespace tbl::testing;
using vars::x;
using vars::t1;
using vars::t2;

TEST_CASE("rational parsing is exact and rejects decimals") {
  CHECK(parse_rational("15/32") == Q(15, 32));
  CHECK(parse_rational("-6/4") == Q(-3, 2));
  CHECK(parse_rational("+7") == Q(7));
  CHECK_THROWS_AS(parse_rational("0.5"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("1e3"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("1/0"), DivisionByZero);
  Rational r = parse_rational("10/4");
  CHECK(r.get_den() == 2);
}

TEST_CASE("poly_arith") {
  MultiPoly th2 = X(x, 2) + X(t1);
  CHECK(th2 * th2 == X(x, 4) + Q(2) * X(t1) * X(x, 2) + X(t1, 2));
  CHECK((th2 - th2).is_zero());
  CHECK((th2 * th2).str() == "x^4 + 2*x^2*t1 + t1^2");
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    MultiPoly a = random_poly(rng, {x, t1, t2}, 5, 3), b = random_poly(rng, {x, t1}, 4, 3),
              c = random_poly(rng, {x, t2}, 4, 2);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!b.is_zero()) {
      auto q = (a * b).divide_exact(b);
      REQUIRE(q.has_value());
      CHECK(*q == a);
    }
  }
  CHECK_FALSE((X(x, 2) + X(t1)).divide_exact(X(x) + 1).has_value());
}

TEST_CASE("ratfun_arith") {
  RatFun ix = RatFun::variable(x, -1);
  CHECK((ix + ix).equals(RatFun(2) * ix));
  RatFun r = RatFun::fraction(X(x, 2) + X(t1), X(x));
  CHECK((r / r).equals(RatFun(1)));
  CHECK_THROWS_AS(r / RatFun(), DivisionByZero);
  // V2 at t1 = 0.
  RatFun v = RatFun(Q(-1, 4)) * RatFun::variable(x, -2) + RatFun(4) * RatFun::variable(x, -2);
  CHECK(v.equals(RatFun(Q(15, 4)) * RatFun::variable(x, -2)));
  CHECK(v.canonical_text() == "15/4*x^-2");
}

TEST_CASE("cross-multiplication equality is an equivalence") {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    MultiPoly n = random_poly(rng, {x, t1}, 4, 3), d = random_poly(rng, {x, t1}, 3, 2),
              k = random_poly(rng, {x, t1}, 3, 2);
    if (d.is_zero() || k.is_zero()) continue;
    RatFun a = RatFun::fraction(n, d);
    RatFun b = RatFun::fraction(n * k, d * k);
    RatFun c = RatFun::fraction(n * k * k, d * k * k);
    CHECK(a.equals(a));
    CHECK(a.equals(b) == b.equals(a));
    CHECK(a.equals(b));
    CHECK(b.equals(c));
    CHECK(a.equals(c));
  }
}

TEST_CASE("derivative") {
  MultiPoly th2 = X(x, 2) + X(t1);
  CHECK(th2.derivative(x) == Q(2) * X(x));
  CHECK(th2.derivative(t1) == MultiPoly(1));
  CHECK(RatFun::variable(x, -2).derivative(x).equals(RatFun(-2) * RatFun::variable(x, -3)));
  std::mt19937 rng(3);
  for (int i = 0; i < 30; ++i) {
    MultiPoly n = random_poly(rng, {x, t1}, 4, 3), d = random_poly(rng, {x, t1}, 3, 2);
    if (d.is_zero()) continue;
    RatFun f = RatFun::fraction(n, d);
    CHECK(f.derivative(x).derivative(t1).equals(f.derivative(t1).derivative(x)));
    // quotient rule against the expanded form
    RatFun expect = RatFun::fraction(n.derivative(x) * d - n * d.derivative(x), d * d);
    CHECK(f.derivative(x).equals(expect));
  }
}

TEST_CASE("hermite reduction") {
  // ∫ 1/x^2 = -1/x
  HermiteResult h = hermite_reduce(UPoly(1), UPoly::x(2));
  CHECK(h.remainder_num.is_zero());
  CHECK(h.rational_part.num == UPoly(-1));
  CHECK(h.rational_part.den == UPoly::x(1));
  // ∫ 1/x has only a log part
  HermiteResult l = hermite_reduce(UPoly(1), UPoly::x(1));
  CHECK_FALSE(l.remainder_num.is_zero());
}

TEST_CASE("antiderivative_x") {
  CHECK(antiderivative_x(RatFun::variable(x, -2)).equals(-RatFun::variable(x, -1)));
  CHECK(antiderivative_x(RatFun(2) * RatFun::variable(x, -3)).equals(-RatFun::variable(x, -2)));
  CHECK_THROWS_AS(antiderivative_x(RatFun::variable(x, -1)), LogTermRequired);
  CHECK_THROWS_AS(antiderivative_x(RatFun(X(x))), NonDecaying);
  // parametric, homogeneous: d/dx of 2x/(x^2+t1) ... integrate -(2x)/(x^2+t1)^2 = 1/(x^2+t1)
  RatFun f = RatFun::fraction(Q(-2) * X(x), (X(x, 2) + X(t1)).pow(2));
  CHECK(antiderivative_x(f).equals(RatFun::fraction(MultiPoly(1), X(x, 2) + X(t1))));
  // not homogeneous in the scaling weights
  RatFun g = RatFun::fraction(X(t1) * X(x) + 1, X(x, 3) + X(t2) * X(x) + 1);
  RatFun G = RatFun::fraction(X(t1) + X(x, 2), (X(x, 3) + X(t2) * X(x) + 1).pow(2));
  RatFun dG = G.derivative(x);
  CHECK(antiderivative_x(dG).equals(G));
  CHECK_THROWS_AS(antiderivative_x(g), LogTermRequired);
}

TEST_CASE("antiderivative property: derivative of result returns the integrand") {
  std::mt19937 rng(5);
  for (int i = 0; i < 12; ++i) {
    MultiPoly n = random_poly(rng, {x, t1}, 3, 2), d = random_poly(rng, {x, t1}, 3, 2) + X(x, 3);
    RatFun g = RatFun::fraction(n, d);
    RatFun f = g.derivative(x);
    if (f.is_zero()) continue;
    RatFun G = antiderivative_x(f);
    CHECK(G.derivative(x).equals(f));
  }
}

TEST_CASE("diffop_compose") {
  DiffOp D = DiffOp::d(x);
  DiffOp mx = DiffOp::multiplication(x, RatFun(X(x)));
  CHECK(compose(D, mx).equals(DiffOp(x, {RatFun(1), RatFun(X(x))})));
  CHECK(compose(mx, DiffOp::identity(x)).equals(mx));
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> c(-3, 3), e(-2, 3);
  auto rand_op = [&] {
    std::vector<RatFun> cs;
    for (int k = 0; k <= 2; ++k) cs.push_back(RatFun(c(rng)) * RatFun::variable(x, e(rng)));
    return DiffOp(x, cs);
  };
  for (int i = 0; i < 10; ++i) {
    DiffOp A = rand_op(), B = rand_op(), C = rand_op();
    CHECK(compose(compose(A, B), C).equals(compose(A, compose(B, C))));
  }
}

TEST_CASE("linear solve") {
  QMatrix A(2, 3);
  A(0, 0) = 1; A(0, 1) = 2; A(0, 2) = 3;
  A(1, 0) = 2; A(1, 1) = 4; A(1, 2) = 7;
  auto s = solve_linear(A, {Q(1), Q(3)});
  REQUIRE(s.has_value());
  CHECK(s->nullspace.size() == 1);
  QMatrix B(2, 1);
  B(0, 0) = 1; B(1, 0) = 1;
  CHECK_FALSE(solve_linear(B, {Q(1), Q(2)}).has_value());
}

TEST_CASE("substitution and evaluation") {
  RatFun f = RatFun::fraction(X(x, 2) - X(t1), X(x) * (X(x, 2) + X(t1)));
  CHECK(f.substitute(t1, MultiPoly(0)).equals(RatFun(X(x)) / RatFun(X(x, 2))));
  CHECK(f.evaluate({{x, Q(1)}, {t1, Q(1)}}) == 0);
  CHECK_THROWS_AS(f.substitute(x, MultiPoly(0)), PoleError);
  std::array<double, kMaxVars> vals{};
  vals[x] = 2.0;
  vals[t1] = 1.0;
  CHECK(f.evaluate_as<double>(vals) == doctest::Approx(3.0 / 10.0));
}

#include "tbl/exactalg/interpolate.hpp"
#include "tbl/exactalg/modular.hpp"

TEST_CASE("rational reconstruction and CRT lifting") {
  const auto primes = large_primes(3);
  for (auto p : primes) CHECK(p < (std::uint64_t(1) << 62));
  const Rational q(Integer("-986792625"), Integer(1024));
  Integer M = 1;
  Integer a = 0;
  for (auto p : primes) {
    ModP F{p};
    // build the CRT residue incrementally
    Integer P(static_cast<unsigned long>(p)), Minv;
    mpz_invert(Minv.get_mpz_t(), M.get_mpz_t(), P.get_mpz_t());
    Integer s(static_cast<unsigned long>(F.from_rational(q)));
    Integer d = ((s - a) % P + P) % P;
    a += M * ((d * Minv) % P);
    M *= P;
  }
  auto r = rational_reconstruct(a, M);
  REQUIRE(r);
  CHECK(*r == q);
}

TEST_CASE("dense interpolation over Q and Z/p recovers a polynomial vector") {
  using vars::G;
  using vars::t1;
  const MultiPoly p = X(G, 3) * Q(5, 7) - X(G) * X(t1, 2) + Q(2);
  const MultiPoly q = X(t1, 4) * Q(-1, 3);
  SampleFn f = [&](const std::vector<Rational>& v) {
    std::map<Var, Rational> at{{G, v[0]}, {t1, v[1]}};
    return std::vector<Rational>{p.evaluate(at), q.evaluate(at)};
  };
  SamplePoints pts;
  auto di = interpolate_dense(f, {G, t1}, 10, pts);
  CHECK(di.polys[0] == p);
  CHECK(di.polys[1] == q);

  MultiModularLift lift;
  std::optional<std::vector<MultiPoly>> out;
  for (auto prime : large_primes(4)) {
    ModP F{prime};
    ModSampleFn g = [&](const std::vector<std::uint64_t>& v) {
      std::vector<std::uint64_t> r;
      for (const MultiPoly* m : {&p, &q}) {
        std::uint64_t acc = 0;
        for (const auto& [mono, c] : m->terms())
          acc = F.add(acc, F.mul(F.from_rational(c), F.mul(F.pow(v[0], mono.e[G]), F.pow(v[1], mono.e[t1]))));
        r.push_back(acc);
      }
      return r;
    };
    lift.add(prime, interpolate_dense_mod(g, 2, 10, F, 1).polys);
    if ((out = lift.stable({G, t1}))) break;
  }
  REQUIRE(out);
  CHECK((*out)[0] == p);
  CHECK((*out)[1] == q);
}
