#include "tbl/darboux/theta.hpp"

#include <algorithm>

#include "tbl/errors.hpp"

namespace tbl {
namespace {

using vars::x;
MultiPoly X(Var v, unsigned k = 1) { return MultiPoly::variable(v, k); }
Rational Q(long p, long q = 1) { return Rational(p, q); }

}  // namespace

Theta Theta::substitute(const std::map<Var, Rational>& values) const {
  Theta t = *this;
  t.body = body.substitute(values);
  std::erase_if(t.params, [&](Var v) { return values.count(v) > 0; });
  return t;
}

RatFun Theta::log_derivative() const {
  RatFun r = RatFun::fraction(body.derivative(x), body);
  if (half) r += RatFun(Q(1, 2)) * RatFun::variable(x, -1);
  return r;
}

Theta theta(int k) {
  using namespace vars;
  Theta t;
  t.k = k;
  t.half = (k % 2 == 1);
  switch (k) {
    case 0:
    case 1:
      t.body = MultiPoly(1);
      break;
    case 2:
      t.body = X(x, 2) + X(t1);
      t.params = {t1};
      break;
    case 3:
      t.body = Q(3, 4) * X(x, 4) + X(t2);
      t.params = {t2};
      break;
    case 4:
      t.body = Q(15, 32) * X(x, 8) + Q(15, 4) * X(t2) * X(x, 4) + X(t3) * X(x, 2) - Q(5, 2) * X(t2, 2);
      t.params = {t2, t3};
      break;
    case 5:
      t.body = Q(525, 2048) * X(x, 12) + Q(35, 8) * X(t3) * X(x, 6) + Q(3, 4) * X(t4) * X(x, 4) -
               Q(7, 3) * X(t3, 2);
      t.params = {t3, t4};
      break;
    case 6:
      t.body = Q(33075, 262144) * X(x, 18) + Q(19845, 2048) * X(t3) * X(x, 12) +
               Q(945, 256) * X(t4) * X(x, 10) + Q(15, 32) * X(t5) * X(x, 8) -
               Q(2205, 32) * X(t3, 2) * X(x, 6) - Q(63, 4) * X(t3) * X(t4) * X(x, 4) +
               (X(t3) * X(t5) - Q(9, 5) * X(t4, 2)) * X(x, 2) - Q(49, 2) * X(t3, 3);
      t.params = {t3, t4, t5};
      break;
    default:
      throw InvalidArgument("theta index must be in 0..6");
  }
  return t;
}

std::map<Var, Rational> dropped_parameters(int k_plus_1) {
  const Theta next = theta(k_plus_1);
  std::map<Var, Rational> out;
  for (int i = 1; i <= 5; ++i) {
    Var v = vars::t(i);
    if (std::find(next.params.begin(), next.params.end(), v) == next.params.end()) out[v] = 0;
  }
  return out;
}

MultiPoly theta_recursion_residual(int k, const Rational& scale) {
  if (k < 1 || k > 5) throw InvalidArgument("recursion index must be in 1..5");
  const auto drop = dropped_parameters(k + 1);
  const Theta a = theta(k - 1).substitute(drop), b = theta(k).substitute(drop),
              c = theta(k + 1).substitute(drop);
  const MultiPoly cb = c.body * scale;
  // θ_{k±1} share the half flag, so the x^{-1} terms of the Wronskian cancel.
  MultiPoly wr = cb.derivative(x) * a.body - cb * a.body.derivative(x);
  MultiPoly sq = b.body * b.body * Rational(2 * k - 1);
  if (c.half) wr = wr * X(x);
  if (b.half) sq = sq * X(x);
  return wr - sq;
}

MultiPoly verify_theta_recursion(int k) { return theta_recursion_residual(k, 1); }

RatFun potential(int k) {
  const Theta t = theta(k);
  const MultiPoly& B = t.body;
  RatFun V = RatFun(Rational(t.half ? 3 : -1, 4)) * RatFun::variable(x, -2);
  if (B.is_constant()) return V;
  MultiPoly n = B.derivative(x).derivative(x) * B - B.derivative(x).pow(2);
  V -= RatFun(2) * RatFun::fraction(n, B * B);
  return V;
}

RatFun darboux_step(const RatFun& V, const RatFun& w) {
  if (!(w.derivative(x) + w * w - V).is_zero())
    throw NotZeroEigenfunction("φ′/φ does not solve the zero-energy Riccati equation of −∂² + V");
  return V - RatFun(2) * w.derivative(x);
}

RatFun eigenfunction_logfactor(int k, const std::map<Var, Rational>& extra) {
  if (k < 1 || k > 6) throw InvalidArgument("eigenfunction_logfactor needs k in 1..6");
  auto drop = dropped_parameters(k);
  for (const auto& [v, val] : extra) drop[v] = val;
  const Theta hi = theta(k).substitute(drop), lo = theta(k - 1).substitute(drop);
  return hi.log_derivative() - lo.log_derivative();
}

DiffOp schrodinger(const RatFun& V) { return DiffOp(x, {V, RatFun(), RatFun(-1)}); }

DiffOp factorized_schrodinger(const RatFun& w) {
  DiffOp left(x, {-w, RatFun(-1)});
  DiffOp right(x, {-w, RatFun(1)});
  return compose(left, right);
}

RatFun displayed_potential_2() {
  using vars::t1;
  MultiPoly n = Q(15) * X(x, 4) - Q(18) * X(t1) * X(x, 2) - X(t1, 2);
  MultiPoly d = Q(4) * X(x, 6) + Q(8) * X(t1) * X(x, 4) + Q(4) * X(t1, 2) * X(x, 2);
  return RatFun::fraction(n, d);
}

RatFun displayed_potential_3(Var s) {
  MultiPoly n = Q(35) * X(x, 8) - Q(90) * X(s) * X(x, 4) + Q(3) * X(s, 2);
  MultiPoly d = Q(4) * X(x, 10) + Q(8) * X(s) * X(x, 6) + Q(4) * X(s, 2) * X(x, 2);
  return RatFun::fraction(n, d);
}

}  // namespace tbl
