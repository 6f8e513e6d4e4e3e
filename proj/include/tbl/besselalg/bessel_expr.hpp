#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tbl/exactalg/ratfun.hpp"

namespace tbl {

/// c_a·f_μ + c_b·f_{μ+1} with f_ν(x,z) = √(xz)J_ν(xz); coefficients rational
/// in (x, z, parameters).
struct BesselExpr {
  int mu = 0;
  RatFun ca, cb;

  bool is_zero() const { return ca.is_zero() && cb.is_zero(); }
  bool equals(const BesselExpr& o) const { return mu == o.mu && ca.equals(o.ca) && cb.equals(o.cb); }
  BesselExpr operator+(const BesselExpr& o) const;
  BesselExpr operator-(const BesselExpr& o) const;
  BesselExpr scaled(const RatFun& r) const { return {mu, r * ca, r * cb}; }
};

enum class Route {
  Raising,  // ∂f_μ through f_{μ+1} directly (creation1), ∂f_{μ+1} through f_μ (creation2)
  Lowering  // ∂f_μ through f_{μ−1} (creation2), then f_{μ−1} = 2μ/(xz)·f_μ − f_{μ+1}
};

/// ∂ in x or z, rewritten into the (f_μ, f_{μ+1}) basis.
BesselExpr reduce_derivative(const BesselExpr& e, Var v, Route route = Route::Raising);

/// Families of eigenfunctions used by the kernels. Example 1 starts from f_1,
/// examples 2–4 from f_2; slepian(ν) is f_ν itself.
struct Family {
  enum class Kind { Slepian, Example };
  Kind kind = Kind::Example;
  int index = 1;  // ν for slepian, example number otherwise
  static Family slepian(int nu) { return {Kind::Slepian, nu}; }
  static Family example(int n) { return {Kind::Example, n}; }
  std::string name() const;
  bool operator==(const Family&) const = default;
  /// Parameter slots (ex1: t1; ex2: t2; ex3: t2,t3; ex4: t3,t4).
  std::vector<Var> params() const;
  /// Exponent ρ of |z|^ρ near z = 0 and the parity ε: f̃(x,−z) = ε f̃(x,z).
  Rational rho() const;
  int parity() const;
  /// Base order μ of the rank-2 module.
  int mu() const;
  /// Half-order m of the commuting operator ansatz.
  int half_order() const;
};

Family parse_family(const std::string& s);

/// The transformed eigenfunction f̃ as a BesselExpr in (x, z, params):
/// one factor (1/z)(∂_x − ∂_x log(θ_k/θ_{k−1})) per Darboux step.
BesselExpr transformed_eigenfunction_symbolic(const Family& f);

/// A·f_μ(T,z1)f_μ(T,z2) + B·f_{μ+1}(T,z1)f_μ(T,z2) + C·f_μ(T,z1)f_{μ+1}(T,z2)
/// + D·f_{μ+1}(T,z1)f_{μ+1}(T,z2).
struct BiBesselExpr {
  int mu = 0;
  RatFun A, B, C, D;

  bool is_zero() const { return A.is_zero() && B.is_zero() && C.is_zero() && D.is_zero(); }
  bool equals(const BiBesselExpr& o) const;
  BiBesselExpr operator+(const BiBesselExpr& o) const;
  BiBesselExpr operator-(const BiBesselExpr& o) const;
  BiBesselExpr scaled(const RatFun& r) const;
  BiBesselExpr map(const std::function<RatFun(const RatFun&)>& f) const;
  /// ∂ in z1 or z2 (x is the fixed time-limit T).
  BiBesselExpr derivative(Var zi) const;
  BiBesselExpr cancel() const;
};

/// Christoffel–Darboux form [f̃(T,z1)∂f̃(T,z2) − ∂f̃(T,z1)f̃(T,z2)]/(z1²−z2²).
BiBesselExpr cd_kernel_symbolic(const Family& f);

/// The x→0⁺ limit of the Wronskian f̃(x,z1)∂_x f̃(x,z2) − ∂_x f̃(x,z1)f̃(x,z2),
/// computed exactly from the small-x expansion (a rational function of
/// z1, z2 and the parameters).
RatFun wronskian_at_zero(const Family& f);

/// The kernel ∫_0^T f̃(x,z1)f̃(x,z2)dx as an exact BiBesselExpr.
/// Examples 1 and 2 are the displayed closed forms (as corrected, see docs);
/// every family is cross-checked against the CD form. Throws
/// BoundaryUndetermined if the x→0⁺ boundary piece does not vanish.
BiBesselExpr kernel_symbolic(const Family& f);

/// The displayed example-1/2 kernels exactly as printed (diagnostics). For
/// example 2 the display's parameter is passed as `s`.
BiBesselExpr displayed_kernel_literal(int example, Var s = vars::t2);

}  // namespace tbl
