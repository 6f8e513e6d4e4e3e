#include "doctest.h"
#include "helpers.hpp"
#include "tbl/darboux/theta.hpp"
#include "tbl/errors.hpp"
#include "tbl/kdvflows/flows.hpp"

using namespace tbl;
using namespace tbl::testing;
using vars::x;

TEST_CASE("recursion operator basics") {
  CHECK(apply_recursion_operator(RatFun(), {RatFun(), "0"}).value.is_zero());
  // N_u(u_x) = 6 u u_x − u_xxx, i.e. minus the displayed KdV right side.
  RatFun u = potential(3);
  RatFun ux = u.derivative(x);
  RatFun lhs = apply_recursion_operator(u, {ux, "X0"}).value;
  CHECK(lhs.equals(RatFun(6) * u * ux - u.derivative(x, 3)));
}

TEST_CASE("tau0 of the scale-covariant potential vanishes") {
  CHECK(tau(0, RatFun::variable(x, -2)).value.is_zero());
}

TEST_CASE("route equality on V2 and V3") {
  CHECK(check_tau1_routes(potential(2), "V2").holds);
  CHECK(check_tau1_routes(potential(3), "V3").holds);
}

TEST_CASE("first two master identities") {
  CHECK(tau(1, potential(3)).value.is_zero());
  RatFun V3 = potential(3);
  CHECK((tau(0, V3).value + RatFun(2) * RatFun(X(vars::t2)) * V3.derivative(vars::t2)).is_zero());
}

TEST_CASE("frechet commutator [X0, tau0] = +1/2 X0") {
  std::mt19937 rng(17);
  CHECK(frechet_commutator(FlowId::X0, FlowId::Tau0, RatFun()).value.is_zero());
  CHECK(frechet_commutator(FlowId::X0, FlowId::X0, potential(2)).value.is_zero());
  RatFun u0 = RatFun::variable(x, -2);
  CHECK(frechet_commutator(FlowId::X0, FlowId::Tau0, u0).value.equals(-RatFun::variable(x, -3)));
  for (int i = 0; i < 10; ++i) {
    MultiPoly n = random_poly(rng, {x, vars::t1}, 3, 2), d = random_poly(rng, {x, vars::t1}, 3, 2) + X(x, 4);
    RatFun u = RatFun::fraction(n, d);
    RatFun c = frechet_commutator(FlowId::X0, FlowId::Tau0, u).value;
    CHECK(c.equals(RatFun(Q(1, 2)) * u.derivative(x)));
  }
}

TEST_CASE("integration failures surface") {
  CHECK_THROWS_AS(inverse_dx(RatFun::variable(x, -1)), LogTermRequired);
}
