#include "tbl/exactalg/upoly.hpp"

#include <sstream>

#include "tbl/errors.hpp"

namespace tbl {

UPoly::UPoly(const Rational& c) {
  if (sgn(c) != 0) c_.push_back(c);
}

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

UPoly UPoly::x(unsigned power) {
  std::vector<Rational> c(power + 1);
  c[power] = 1;
  return UPoly(std::move(c));
}

UPoly UPoly::from_multipoly(const MultiPoly& p, Var v) {
  if (p.support() & ~(1u << v)) throw InvalidArgument("polynomial is not univariate in " + var_name(v));
  std::vector<Rational> c(p.degree(v) + 1);
  for (const auto& [m, co] : p.terms()) c[m.e[v]] = co;
  return UPoly(std::move(c));
}

MultiPoly UPoly::to_multipoly(Var v) const {
  std::vector<MultiPoly::Term> t;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) t.emplace_back(Monomial::var(v, static_cast<unsigned>(i)), c_[i]);
  return MultiPoly::from_terms(std::move(t));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
  return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(c));
}

UPoly UPoly::operator-() const { return scaled(-1); }

UPoly UPoly::scaled(const Rational& s) const {
  std::vector<Rational> c = c_;
  for (auto& x : c) x *= s;
  return UPoly(std::move(c));
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> c(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return UPoly(std::move(c));
}

UPoly UPoly::monic() const { return is_zero() ? *this : scaled(Rational(1) / lc()); }

Rational UPoly::evaluate(const Rational& x) const {
  Rational r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw DivisionByZero("univariate division by zero");
  std::vector<Rational> r = a.c_;
  int db = b.degree();
  if (a.degree() < db) return {UPoly(), a};
  std::vector<Rational> q(a.degree() - db + 1);
  Rational inv = Rational(1) / b.lc();
  for (int k = a.degree(); k >= db; --k) {
    if (sgn(r[k]) == 0) continue;
    Rational f = r[k] * inv;
    q[k - db] = f;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.c_[j];
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly UPoly::gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).second.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::pair<UPoly, UPoly> UPoly::diophantine(const UPoly& a, const UPoly& b, const UPoly& c) {
  // Extended Euclid for s0·a + t0·b = g.
  UPoly r0 = a, r1 = b, s0(1), s1;
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    UPoly s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // s0·a ≡ r0 (mod b)
  auto [qc, rc] = divmod(c, r0);
  if (!rc.is_zero()) throw LogTermRequired("diophantine equation has no polynomial solution");
  UPoly s = s0 * qc;
  if (!b.is_zero() && b.degree() > 0) s = divmod(s, b).second;
  auto [t, rt] = divmod(c - s * a, b);
  if (!rt.is_zero()) throw InvalidArgument("diophantine: inconsistent cofactor");
  return {s, t};
}

UPoly UPoly::exact_div(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw InvalidArgument("inexact univariate division");
  return q;
}

std::string UPoly::str(const std::string& var) const {
  std::vector<MultiPoly::Term> t;
  Var v = tbl::var(var);
  return to_multipoly(v).str();
}

URatFun URatFun::reduced(const UPoly& num, const UPoly& den) {
  if (den.is_zero()) throw DivisionByZero("zero denominator");
  if (num.is_zero()) return {UPoly(), UPoly(1)};
  UPoly g = UPoly::gcd(num, den);
  UPoly n = UPoly::exact_div(num, g), d = UPoly::exact_div(den, g);
  Rational l = d.lc();
  return {n.scaled(Rational(1) / l), d.scaled(Rational(1) / l)};
}

HermiteResult hermite_reduce(const UPoly& A0, const UPoly& D0) {
  // Bronstein, Symbolic Integration I, HermiteReduce (quadratic version).
  UPoly A = A0, D = D0;
  UPoly gnum, gden(1);
  UPoly Dm = UPoly::gcd(D, D.derivative());
  UPoly Ds = UPoly::exact_div(D, Dm);
  while (Dm.degree() > 0) {
    UPoly Dm2 = UPoly::gcd(Dm, Dm.derivative());
    UPoly Dms = UPoly::exact_div(Dm, Dm2);
    UPoly lhs = -UPoly::exact_div(Ds * Dm.derivative(), Dm);
    auto [B, C] = UPoly::diophantine(lhs, Dms, A);
    A = C - UPoly::exact_div(B.derivative() * Ds, Dms);
    // g += B / Dm
    gnum = gnum * Dm + B * gden;
    gden = gden * Dm;
    Dm = Dm2;
  }
  HermiteResult r;
  r.rational_part = URatFun::reduced(gnum, gden);
  r.remainder_num = A;
  r.remainder_den = Ds;
  return r;
}

}  // namespace tbl

namespace tbl {

namespace {
int sign_changes(const std::vector<UPoly>& seq, const Rational& at) {
  int changes = 0, last = 0;
  for (const auto& s : seq) {
    int sg = sgn(s.evaluate(at));
    if (!sg) continue;
    if (last && sg != last) ++changes;
    last = sg;
  }
  return changes;
}
}  // namespace

int count_real_roots(const UPoly& p, const Rational& a, const Rational& b) {
  if (p.degree() <= 0) return 0;
  UPoly sq = UPoly::exact_div(p, UPoly::gcd(p, p.derivative()));
  std::vector<UPoly> seq{sq, sq.derivative()};
  while (seq.back().degree() > 0) {
    UPoly r = UPoly::divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  return sign_changes(seq, a) - sign_changes(seq, b);
}

}  // namespace tbl
