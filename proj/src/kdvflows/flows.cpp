#include "tbl/kdvflows/flows.hpp"

#include <chrono>
#include <functional>

#include "tbl/darboux/theta.hpp"
#include "tbl/errors.hpp"
#include "tbl/exactalg/antiderivative.hpp"

namespace tbl {
namespace {

using vars::x;
RatFun d(const RatFun& f, unsigned k = 1) { return f.derivative(x, k); }
RatFun X() { return RatFun(MultiPoly::variable(x)); }
RatFun half() { return RatFun(Rational(1, 2)); }

}  // namespace

RatFun inverse_dx(const RatFun& f) { return antiderivative_x(f.cancel()).cancel(); }

FlowExpr apply_recursion_operator(const RatFun& u, const FlowExpr& v) {
  RatFun r = -d(v.value, 2) + RatFun(4) * u * v.value + RatFun(2) * d(u) * inverse_dx(v.value);
  return {r.cancel(), "N_u(" + v.provenance + ")"};
}

FlowExpr tau(int j, const RatFun& u) {
  if (j < 0 || j > 2) throw InvalidArgument("tau index must be 0, 1 or 2");
  FlowExpr t{half() * X() * d(u) + u, "tau0"};
  for (int i = 0; i < j; ++i) t = apply_recursion_operator(u, t);
  if (j > 0) t.provenance = "tau" + std::to_string(j);
  return t;
}

FlowExpr tau1_closed(const RatFun& u) {
  const RatFun ux = d(u), Iu = inverse_dx(u);
  RatFun r = -half() * X() * (d(u, 3) - RatFun(6) * u * ux) - RatFun(2) * d(u, 2) + ux * Iu +
             RatFun(4) * u * u;
  return {r.cancel(), "tau1 closed form"};
}

FlowExpr tau2_closed(const RatFun& u) {
  const RatFun u1 = d(u), u2 = d(u, 2), u3 = d(u, 3), u4 = d(u, 4), u5 = d(u, 5);
  const RatFun Iu = inverse_dx(u);
  const RatFun It1 = inverse_dx(tau1_closed(u).value);
  RatFun r = half() * X() *
                 (u5 - RatFun(10) * u * u3 - RatFun(18) * u1 * u2 + RatFun(24) * u * u * u1) +
             RatFun(3) * u4 - u3 * Iu - RatFun(24) * u * u2 - RatFun(15) * u1 * u1 +
             u1 * (RatFun(4) * u * Iu + RatFun(2) * It1) + RatFun(16) * u * u * u;
  return {r.cancel(), "tau2 closed form"};
}

FlowExpr flow_x(int j, const RatFun& u) {
  FlowExpr f{d(u), "X0"};
  if (j == 1) return apply_recursion_operator(u, f);
  if (j != 0) throw InvalidArgument("only X0 and X1 are implemented");
  return f;
}

FlowExpr frechet_commutator(FlowId F, FlowId G, const RatFun& u) {
  auto field = [&](FlowId id) { return id == FlowId::X0 ? d(u) : half() * X() * d(u) + u; };
  auto frechet = [&](FlowId id, const RatFun& v) {
    return id == FlowId::X0 ? d(v) : half() * X() * d(v) + v;
  };
  return {frechet(F, field(G)) - frechet(G, field(F)), "frechet commutator"};
}

namespace {

IdentityResult timed(const std::string& name, const std::function<RatFun()>& residual) {
  IdentityResult r;
  r.name = name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    RatFun res = residual();
    r.holds = res.is_zero();
    r.residual_terms = res.num().size();
  } catch (const Error& e) {
    r.error = e.kind() + ": " + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

RatFun dt(const RatFun& f, Var v) { return f.derivative(v); }

}  // namespace

std::vector<IdentityResult> verify_master_identities() {
  using namespace vars;
  std::vector<IdentityResult> out;
  const RatFun V3 = potential(3), V4 = potential(4), V5 = potential(5), V6 = potential(6);
  out.push_back(timed("tau1(V3) = 0", [&] { return tau(1, V3).value; }));
  out.push_back(timed("tau0(V3) = -2 t2 dV3/dt2", [&] {
    return tau(0, V3).value + RatFun(2) * RatFun(MultiPoly::variable(t2)) * dt(V3, t2);
  }));
  out.push_back(timed("tau1(V4) = -120 t2 dV4/dt3", [&] {
    return tau(1, V4).value + RatFun(120) * RatFun(MultiPoly::variable(t2)) * dt(V4, t3);
  }));
  out.push_back(timed("tau1(V5) = -420 t3 dV5/dt4", [&] {
    return tau(1, V5).value + RatFun(420) * RatFun(MultiPoly::variable(t3)) * dt(V5, t4);
  }));
  out.push_back(timed("tau2(V6) = -105840 t3 dV6/dt5", [&] {
    return tau(2, V6).value + RatFun(105840) * RatFun(MultiPoly::variable(t3)) * dt(V6, t5);
  }));
  return out;
}

IdentityResult check_tau1_routes(const RatFun& u, const std::string& label) {
  return timed("N_u tau0 = tau1 closed form on " + label,
               [&] { return tau(1, u).value - tau1_closed(u).value; });
}

}  // namespace tbl
