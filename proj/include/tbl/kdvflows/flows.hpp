#pragma once

#include <string>
#include <vector>

#include "tbl/exactalg/ratfun.hpp"

namespace tbl {

/// A flow evaluated at a concrete rational u(x), tagged with its origin.
struct FlowExpr {
  RatFun value;
  std::string provenance;
};

/// ∂_x^{-1} normalised to vanish at +∞ (LogTermRequired / NonDecaying).
RatFun inverse_dx(const RatFun& f);

/// N_u v = −v″ + 4uv + 2u_x ∂⁻¹v.
FlowExpr apply_recursion_operator(const RatFun& u, const FlowExpr& v);

/// τ_0 = x u_x/2 + u, τ_{j+1} = N_u τ_j (j ≤ 2).
FlowExpr tau(int j, const RatFun& u);

/// The displayed closed forms of τ_1, τ_2, using ∂⁻¹(x u_x/2) = x u/2 − ½∂⁻¹u.
FlowExpr tau1_closed(const RatFun& u);
FlowExpr tau2_closed(const RatFun& u);

/// X_0 = u_x, X_1 = N_u X_0.
FlowExpr flow_x(int j, const RatFun& u);

enum class FlowId { X0, Tau0 };
/// F′(u)[G(u)] − G′(u)[F(u)].
FlowExpr frechet_commutator(FlowId F, FlowId G, const RatFun& u);

struct IdentityResult {
  std::string name;
  bool holds = false;
  std::size_t residual_terms = 0;  // terms in the numerator of lhs − rhs
  double seconds = 0;
  std::string error;  // integration failure, if any
};

/// The five master-symmetry identities on V3 … V6.
std::vector<IdentityResult> verify_master_identities();

/// Route equality: tau(1,u) against tau1_closed(u).
IdentityResult check_tau1_routes(const RatFun& u, const std::string& label);

}  // namespace tbl
