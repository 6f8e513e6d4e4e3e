#pragma once

#include <map>
#include <vector>

#include "tbl/exactalg/diffop.hpp"

namespace tbl {

/// θ_k = x^{1/2 · half} · body(x; params). Half powers live only in the flag.
struct Theta {
  int k = 0;
  bool half = false;
  MultiPoly body;
  std::vector<Var> params;  // parameter slots θ_k may depend on

  Theta substitute(const std::map<Var, Rational>& values) const;
  /// ∂_x log θ as an exact rational function.
  RatFun log_derivative() const;
};

/// The displayed list θ_0 … θ_6.
Theta theta(int k);

/// Parameters that must vanish when θ_{k-1}, θ_k feed the step to θ_{k+1}:
/// those not among θ_{k+1}'s slots.
std::map<Var, Rational> dropped_parameters(int k_plus_1);

/// θ'_{k+1}θ_{k−1} − θ_{k+1}θ'_{k−1} − (2k−1)θ_k², an honest polynomial once
/// the dropped parameters are zeroed (the half powers pair up).
MultiPoly verify_theta_recursion(int k);
/// Same with θ_{k+1} replaced by scale·θ_{k+1}; diagnostic for normalisation.
MultiPoly theta_recursion_residual(int k, const Rational& scale_next);

/// V_k = −1/(4x²) − 2∂_x² log θ_k.
RatFun potential(int k);

/// Ṽ = V − 2(φ′/φ)′, after checking that φ is a zero-energy solution of
/// −∂² + V, i.e. w′ + w² − V = 0 for w = φ′/φ (NotZeroEigenfunction).
RatFun darboux_step(const RatFun& V, const RatFun& phi_logderiv);

/// ∂_x log(θ_k / θ_{k−1}) with θ_{k−1}'s dropped parameters zeroed, plus
/// any extra substitutions.
RatFun eigenfunction_logfactor(int k, const std::map<Var, Rational>& extra = {});

/// −∂² + V as a DiffOp in x.
DiffOp schrodinger(const RatFun& V);

/// The factorisation (−∂ − w)(∂ − w) as a DiffOp.
DiffOp factorized_schrodinger(const RatFun& w);

/// The displayed closed forms used for cross-checks.
RatFun displayed_potential_2();
/// Displayed L₃ potential in its own parameter s (= 4t₂/3 in θ-list terms);
/// pass the variable to use for s.
RatFun displayed_potential_3(Var s);

}  // namespace tbl
