#include "doctest.h"
#include "helpers.hpp"
#include "tbl/darboux/theta.hpp"
#include "tbl/errors.hpp"

using namespace tbl;
using namespace tbl::testing;
using vars::x;
using vars::t1;
using vars::t2;

TEST_CASE("theta list") {
  CHECK(theta(0).body == MultiPoly(1));
  CHECK_FALSE(theta(0).half);
  CHECK(theta(2).body == X(x, 2) + X(t1));
  Theta t3 = theta(3);
  CHECK(t3.half);
  CHECK(t3.body == Q(3, 4) * X(x, 4) + X(t2));
  for (int k = 0; k <= 6; ++k) CHECK(theta(k).half == (k % 2 == 1));
  CHECK_THROWS_AS(theta(7), InvalidArgument);
}

TEST_CASE("theta slots follow the displayed list") {
  for (int k = 0; k <= 6; ++k) {
    Theta t = theta(k);
    std::uint32_t allowed = 0;
    for (Var v : t.params) allowed |= 1u << v;
    CHECK((t.body.support() & ~(1u << x)) == allowed);
  }
}

TEST_CASE("theta recursion") {
  // k = 1 fails by the normalisation of the displayed θ2 (residual x);
  // halving θ2 makes it vanish.
  CHECK(verify_theta_recursion(1) == X(x));
  CHECK(theta_recursion_residual(1, Q(1, 2)).is_zero());
  for (int k = 2; k <= 5; ++k) CHECK(verify_theta_recursion(k).is_zero());
}

TEST_CASE("potentials") {
  CHECK(potential(1).equals(RatFun(Q(3, 4)) * RatFun::variable(x, -2)));
  CHECK(potential(0).equals(RatFun(Q(-1, 4)) * RatFun::variable(x, -2)));
  CHECK(potential(2).equals(displayed_potential_2()));
  // The displayed L3 is written in s = 4 t2 / 3.
  CHECK_FALSE(potential(3).equals(displayed_potential_3(t2)));
  Var s = var("s");
  RatFun mapped = potential(3).substitute(t2, Q(3, 4) * X(s));
  CHECK(mapped.equals(displayed_potential_3(s)));
}

TEST_CASE("potentials have integer powers only and are scale covariant") {
  for (int k = 0; k <= 6; ++k) {
    RatFun V = potential(k);
    auto wn = V.num().homogeneous_weight();
    REQUIRE(wn.has_value());
    CHECK(*wn - long(V.den().homogeneous_weight().value()) == -2);
  }
}

TEST_CASE("darboux_step") {
  RatFun V1 = potential(1);
  CHECK(darboux_step(V1, eigenfunction_logfactor(2)).equals(potential(2)));
  RatFun V2 = potential(2).substitute(t1, MultiPoly(0));
  CHECK(darboux_step(V2, eigenfunction_logfactor(3)).equals(potential(3)));
  CHECK(darboux_step(potential(0), eigenfunction_logfactor(1)).equals(potential(1)));
  CHECK_THROWS_AS(darboux_step(V1, RatFun::variable(x, -1)), NotZeroEigenfunction);
  // Along the whole chain.
  CHECK(darboux_step(potential(3), eigenfunction_logfactor(4)).equals(potential(4)));
  RatFun V4 = potential(4).substitute(t2, MultiPoly(0));
  CHECK(darboux_step(V4, eigenfunction_logfactor(5)).equals(potential(5)));
}

TEST_CASE("eigenfunction_logfactor") {
  CHECK(eigenfunction_logfactor(1).equals(RatFun(Q(1, 2)) * RatFun::variable(x, -1)));
  RatFun expect = RatFun::fraction(Q(2) * X(x), X(x, 2) + X(t1)) - RatFun(Q(1, 2)) * RatFun::variable(x, -1);
  CHECK(eigenfunction_logfactor(2).equals(expect));
  CHECK(eigenfunction_logfactor(3, {{t2, 0}}).equals(RatFun(Q(5, 2)) * RatFun::variable(x, -1)));
}

TEST_CASE("factorisation identity") {
  for (int k = 1; k <= 5; ++k) {
    RatFun w = eigenfunction_logfactor(k);
    RatFun V = w.derivative(x) + w * w;
    CHECK(factorized_schrodinger(w).equals(schrodinger(V)));
  }
}
