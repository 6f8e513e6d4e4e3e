#pragma once

#include <map>
#include <string>

#include "tbl/besselalg/bessel_expr.hpp"
#include "tbl/besselnum/bessel.hpp"
#include "tbl/exactalg/upoly.hpp"
#include "tbl/numeric/bivariate.hpp"

namespace tbl {

using ParamValues = std::map<Var, Rational>;

/// A family together with numeric values for its parameter slots
/// (ex1: t1; ex2: t2; ex3: t2, t3; ex4: t3, t4 with t2 = 0).
struct EigenfunctionChain {
  Family family;
  ParamValues params;

  /// Every slot set to 1.
  static EigenfunctionChain unit(const Family& f);
  /// Unit parameters where they are admissible on (0, 1]; examples 3 and 4
  /// have a θ zero there at unit parameters, so they default to
  /// (t2, t3) = (1, −2) and (t3, t4) = (1, −4).
  static EigenfunctionChain standard(const Family& f);
  std::string str() const;
};

EigenfunctionChain parse_chain(const std::string& family, const std::map<std::string, Rational>& params);

/// f̃ and ∂_x f̃ as rank-2 expressions with the parameters substituted,
/// coefficients rational in (x, z). Cached per chain.
struct ChainExprs {
  int mu = 0;
  RatFun ca, cb, dca, dcb;
  std::vector<UPoly> x_denominators;  // θ factors of the coefficients
};
const ChainExprs& chain_exprs(const EigenfunctionChain& c);

/// Distinct real zeros in (0, T] of the θ factors in f̃'s coefficients; f̃ has
/// a pole at each.
int pole_count(const EigenfunctionChain& c, const Rational& T);

/// c_a(x,z)·f_μ(x,z) + c_b(x,z)·f_{μ+1}(x,z) with the coefficients compiled.
template <class S>
class CompiledBessel {
 public:
  CompiledBessel() = default;
  CompiledBessel(int mu, const RatFun& ca, const RatFun& cb)
      : mu_(mu), ca_(ca, vars::x, vars::z), cb_(cb, vars::x, vars::z) {}
  S operator()(const S& x, const S& z) const {
    S v = S(0);
    if (!ca_.is_zero()) v += ca_(x, z) * f_nu(mu_, x, z);
    if (!cb_.is_zero()) v += cb_(x, z) * f_nu(mu_ + 1, x, z);
    return v;
  }

 private:
  int mu_ = 0;
  Bivariate<S> ca_, cb_;
};

/// The transformed eigenfunction f̃ of a chain, and its x-derivative, both
/// evaluated through the symbolic expansion (no numerical differentiation).
/// Throws PoleError at a θ zero.
template <class S>
class Eigenfunction {
 public:
  explicit Eigenfunction(const EigenfunctionChain& c) : chain_(c) {
    const ChainExprs& e = chain_exprs(c);
    f_ = CompiledBessel<S>(e.mu, e.ca, e.cb);
    dx_ = CompiledBessel<S>(e.mu, e.dca, e.dcb);
  }
  S operator()(const S& x, const S& z) const { return f_(x, z); }
  S dx(const S& x, const S& z) const { return dx_(x, z); }
  const EigenfunctionChain& chain() const { return chain_; }

 private:
  EigenfunctionChain chain_;
  CompiledBessel<S> f_, dx_;
};

}  // namespace tbl
