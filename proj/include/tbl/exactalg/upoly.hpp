#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tbl/exactalg/multipoly.hpp"

namespace tbl {

/// Dense univariate polynomial over Q, coefficients low to high, trimmed.
class UPoly {
 public:
  UPoly() = default;
  UPoly(const Rational& c);  // NOLINT(implicit)
  explicit UPoly(std::vector<Rational> coeffs);
  static UPoly x(unsigned power = 1);
  /// Requires p to involve no variable other than v.
  static UPoly from_multipoly(const MultiPoly& p, Var v);
  MultiPoly to_multipoly(Var v) const;

  const std::vector<Rational>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  Rational lc() const { return c_.empty() ? Rational(0) : c_.back(); }
  Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  bool operator==(const UPoly& o) const { return c_ == o.c_; }

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly operator-() const;
  UPoly scaled(const Rational& s) const;
  UPoly derivative() const;
  UPoly monic() const;
  Rational evaluate(const Rational& x) const;

  /// Euclidean division: a = q·b + r, deg r < deg b.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
  static UPoly gcd(UPoly a, UPoly b);  // monic
  /// Solves s·a + t·b = c with deg s < deg b (requires gcd(a,b) | c).
  static std::pair<UPoly, UPoly> diophantine(const UPoly& a, const UPoly& b, const UPoly& c);
  /// Exact quotient; throws if b does not divide a.
  static UPoly exact_div(const UPoly& a, const UPoly& b);

  std::string str(const std::string& var = "x") const;

 private:
  std::vector<Rational> c_;
  void trim();
};

/// Number of distinct real roots in (a, b], by a Sturm sequence.
int count_real_roots(const UPoly& p, const Rational& a, const Rational& b);

/// Proper rational function P/Q in one variable with Q monic and gcd(P,Q)=1.
struct URatFun {
  UPoly num, den;
  static URatFun reduced(const UPoly& num, const UPoly& den);
};

/// Rational part of ∫ A/D (Hermite reduction, Bronstein's formulation).
/// Returns g and the remaining integrand h/Ds (Ds squarefree): ∫A/D = g + ∫h/Ds.
struct HermiteResult {
  URatFun rational_part;
  UPoly remainder_num, remainder_den;
};
HermiteResult hermite_reduce(const UPoly& A, const UPoly& D);

}  // namespace tbl
