#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tbl/exactalg/monomial.hpp"
#include "tbl/exactalg/rational.hpp"

namespace tbl {

/// Sparse multivariate polynomial over Q. Terms are kept sorted by strictly
/// decreasing monomial and never store a zero coefficient, so structural
/// equality is mathematical equality.
class MultiPoly {
 public:
  using Term = std::pair<Monomial, Rational>;

  MultiPoly() = default;
  MultiPoly(const Rational& c);  // NOLINT(implicit)
  MultiPoly(long c) : MultiPoly(Rational(c)) {}  // NOLINT(implicit)
  static MultiPoly variable(Var v, unsigned power = 1);
  static MultiPoly monomial(const Monomial& m, const Rational& c = 1);
  /// Builds from unsorted, possibly repeated terms.
  static MultiPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  Rational constant_value() const;  // requires is_constant()
  const Term& leading() const { return terms_.front(); }

  bool operator==(const MultiPoly& o) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }

  MultiPoly pow(unsigned n) const;
  MultiPoly mul_monomial(const Monomial& m, const Rational& c = 1) const;
  /// Requires m to divide every term.
  MultiPoly div_monomial(const Monomial& m) const;

  MultiPoly derivative(Var v) const;
  unsigned degree(Var v) const;
  unsigned min_degree(Var v) const;
  unsigned total_degree() const;
  std::uint32_t support() const;
  bool depends_on(Var v) const { return (support() >> v) & 1u; }

  /// Coefficients c_k with p = Σ c_k v^k; index = power of v.
  std::vector<MultiPoly> coefficients_in(Var v) const;
  static MultiPoly from_coefficients(Var v, const std::vector<MultiPoly>& c);

  MultiPoly substitute(Var v, const MultiPoly& value) const;
  /// Simultaneous substitution.
  MultiPoly substitute(const std::map<Var, MultiPoly>& values) const;
  MultiPoly substitute(const std::map<Var, Rational>& values) const;
  /// Renames variables (simultaneously).
  MultiPoly rename(const std::map<Var, Var>& renaming) const;

  Rational evaluate(const std::map<Var, Rational>& values) const;
  template <class S, class Values>
  S evaluate_as(const Values& values) const;  // values[v] -> S

  /// gcd of all monomials.
  Monomial monomial_content() const;
  /// Leading coefficient (first term in lex order).
  const Rational& leading_coefficient() const { return terms_.front().second; }
  /// Weight per var_weight; nullopt if not weighted-homogeneous.
  std::optional<long> homogeneous_weight() const;

  /// Exact quotient if d divides *this, else nullopt.
  std::optional<MultiPoly> divide_exact(const MultiPoly& d) const;

  std::string str() const;

 private:
  std::vector<Term> terms_;
  void normalize_sorted();
};

template <class S, class Values>
S MultiPoly::evaluate_as(const Values& values) const {
    S total = S(0);
  std::vector<std::vector<S>> powers(kMaxVars);
  for (const auto& [m, c] : terms_) {
    S term = rational_to<S>(c);
    for (int v = 0; v < kMaxVars; ++v) {
      unsigned k = m.e[v];
      if (!k) continue;
      auto& pw = powers[v];
      if (pw.empty()) pw.push_back(S(1));
      while (pw.size() <= k) pw.push_back(pw.back() * S(values[v]));
      term *= pw[k];
    }
    total += term;
  }
  return total;
}

}  // namespace tbl
