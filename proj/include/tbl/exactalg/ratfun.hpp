#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tbl/exactalg/multipoly.hpp"

namespace tbl {

/// Denominator factors are interned as "atoms": primitive polynomials with
/// no monomial content and leading coefficient 1. Atom ids are process-wide.
int intern_atom(const MultiPoly& primitive);
const MultiPoly& atom_poly(int id);
const MultiPoly& atom_derivative(int id, Var v);
const MultiPoly& atom_power(int id, unsigned e);

/// p = scale · mono · atom, atom = -1 when the primitive part is 1.
struct SplitPoly {
  Rational scale;
  Monomial mono;
  int atom = -1;
};
SplitPoly split_polynomial(const MultiPoly& p);

/// Quotient num / (mono · Π atom^e). The denominator is kept factored and is
/// not reduced against the numerator unless cancel() is called; equality is
/// by cross-multiplication (a − b has zero numerator).
class RatFun {
 public:
  using AtomPowers = std::vector<std::pair<int, unsigned>>;  // sorted by id

  RatFun() = default;
  RatFun(const MultiPoly& p) : num_(p) {}  // NOLINT(implicit)
  RatFun(const Rational& c) : num_(c) {}   // NOLINT(implicit)
  RatFun(long c) : num_(Rational(c)) {}    // NOLINT(implicit)
  static RatFun variable(Var v, int power = 1);
  static RatFun fraction(const MultiPoly& num, const MultiPoly& den);
  /// num / (mono · Π atom^e) from already-factored parts.
  static RatFun from_parts(MultiPoly num, const Monomial& mono, AtomPowers atoms);

  const MultiPoly& num() const { return num_; }
  const Monomial& den_monomial() const { return mono_; }
  const AtomPowers& den_atoms() const { return atoms_; }
  MultiPoly den() const;
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return atoms_.empty() && mono_.is_one(); }
  bool is_laurent() const { return atoms_.empty(); }
  bool is_constant() const { return is_polynomial() && num_.is_constant(); }
  std::uint32_t support() const;
  bool depends_on(Var v) const { return (support() >> v) & 1u; }

  bool equals(const RatFun& o) const;
  bool operator==(const RatFun& o) const { return equals(o); }

  RatFun operator-() const;
  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b);
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

  RatFun pow(int n) const;
  RatFun inverse() const;
  RatFun derivative(Var v) const;
  RatFun derivative(Var v, unsigned order) const;

  /// Removes denominator atoms that divide the numerator exactly.
  RatFun cancel() const;

  RatFun substitute(Var v, const MultiPoly& value) const;
  RatFun substitute(const std::map<Var, Rational>& values) const;
  RatFun substitute(const std::map<Var, MultiPoly>& values) const;
  RatFun rename(const std::map<Var, Var>& renaming) const;

  Rational evaluate(const std::map<Var, Rational>& values) const;
  template <class S, class Values>
  S evaluate_as(const Values& values) const;

  /// For a Laurent polynomial (monomial denominator) returns its terms with
  /// signed exponents; throws otherwise.
  std::vector<std::pair<std::vector<int>, Rational>> laurent_terms() const;

  /// Human-readable, factored denominator.
  std::string str() const;
  /// Numerator and expanded denominator text (stable across runs).
  std::pair<std::string, std::string> text_pair() const;
  /// Laurent polynomials render as a single sum with negative exponents;
  /// everything else as "(num)/(den)".
  std::string canonical_text() const;

 private:
  MultiPoly num_;
  Monomial mono_;
  AtomPowers atoms_;
  void normalize();
  static RatFun make(MultiPoly num, Monomial mono, AtomPowers atoms);
  static RatFun add_impl(const RatFun& a, const RatFun& b, bool subtract);
};

template <class S, class Values>
S RatFun::evaluate_as(const Values& values) const {
  S n = num_.template evaluate_as<S>(values);
  S d = MultiPoly::monomial(mono_).template evaluate_as<S>(values);
  for (const auto& [id, e] : atoms_) {
    S a = atom_poly(id).template evaluate_as<S>(values);
    for (unsigned k = 0; k < e; ++k) d *= a;
  }
  return n / d;
}

}  // namespace tbl
