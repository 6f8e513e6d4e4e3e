#include "tbl/exactalg/multipoly.hpp"

#include <algorithm>
#include <sstream>

#include "tbl/errors.hpp"

namespace tbl {
namespace {

bool term_greater(const MultiPoly::Term& a, const MultiPoly::Term& b) { return a.first > b.first; }

// Merge two descending term lists with sign on the second.
std::vector<MultiPoly::Term> merge(const std::vector<MultiPoly::Term>& a,
                                   const std::vector<MultiPoly::Term>& b, bool subtract) {
  std::vector<MultiPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first > b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first > a[i].first) {
      out.emplace_back(b[j].first, subtract ? Rational(-b[j].second) : b[j].second);
      ++j;
    } else {
      Rational c = subtract ? Rational(a[i].second - b[j].second) : Rational(a[i].second + b[j].second);
      if (sgn(c) != 0) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MultiPoly::MultiPoly(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace_back(Monomial{}, c);
}

MultiPoly MultiPoly::variable(Var v, unsigned power) { return monomial(Monomial::var(v, power)); }

MultiPoly MultiPoly::monomial(const Monomial& m, const Rational& c) {
  MultiPoly p;
  if (sgn(c) != 0) p.terms_.emplace_back(m, c);
  return p;
}

MultiPoly MultiPoly::from_terms(std::vector<Term> terms) {
  MultiPoly p;
  p.terms_ = std::move(terms);
  std::sort(p.terms_.begin(), p.terms_.end(), term_greater);
  p.normalize_sorted();
  return p;
}

void MultiPoly::normalize_sorted() {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      if (!out.empty() && sgn(out.back().second) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().second) == 0) out.pop_back();
  terms_ = std::move(out);
}

Rational MultiPoly::constant_value() const {
  if (!is_constant()) throw InvalidArgument("polynomial is not constant: " + str());
  return terms_.empty() ? Rational(0) : terms_[0].second;
}

bool MultiPoly::operator==(const MultiPoly& o) const { return terms_ == o.terms_; }

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const MultiPoly& s = a.size() <= b.size() ? a : b;
  const MultiPoly& l = a.size() <= b.size() ? b : a;
  if (s.size() == 1) return l.mul_monomial(s.terms_[0].first, s.terms_[0].second);
  std::vector<MultiPoly::Term> all;
  all.reserve(s.size() * l.size());
  for (const auto& [ms, cs] : s.terms_)
    for (const auto& [ml, cl] : l.terms_) all.emplace_back(ms * ml, cs * cl);
  std::sort(all.begin(), all.end(), term_greater);
  MultiPoly r;
  r.terms_ = std::move(all);
  r.normalize_sorted();
  return r;
}

MultiPoly MultiPoly::pow(unsigned n) const {
  MultiPoly result(1), base = *this;
  while (n) {
    if (n & 1u) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::mul_monomial(const Monomial& m, const Rational& c) const {
  MultiPoly r;
  if (sgn(c) == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& [mt, ct] : terms_) r.terms_.emplace_back(mt * m, ct * c);
  return r;  // order is preserved by monomial multiplication
}

MultiPoly MultiPoly::div_monomial(const Monomial& m) const {
  MultiPoly r;
  r.terms_.reserve(terms_.size());
  for (const auto& [mt, ct] : terms_) {
    if (!m.divides(mt)) throw InvalidArgument("monomial does not divide polynomial");
    r.terms_.emplace_back(mt / m, ct);
  }
  return r;
}

MultiPoly MultiPoly::derivative(Var v) const {
  std::vector<Term> out;
  for (const auto& [m, c] : terms_) {
    if (!m.e[v]) continue;
    Monomial d = m;
    d.e[v]--;
    out.emplace_back(d, c * m.e[v]);
  }
  return from_terms(std::move(out));
}

unsigned MultiPoly::degree(Var v) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max<unsigned>(d, t.first.e[v]);
  return d;
}

unsigned MultiPoly::min_degree(Var v) const {
  if (terms_.empty()) return 0;
  unsigned d = ~0u;
  for (const auto& t : terms_) d = std::min<unsigned>(d, t.first.e[v]);
  return d;
}

unsigned MultiPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first.total_degree());
  return d;
}

std::uint32_t MultiPoly::support() const {
  std::uint32_t s = 0;
  for (const auto& t : terms_) s |= t.first.support();
  return s;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(Var v) const {
  std::vector<std::vector<Term>> buckets(degree(v) + 1);
  for (const auto& [m, c] : terms_) {
    Monomial r = m;
    r.e[v] = 0;
    buckets[m.e[v]].emplace_back(r, c);
  }
  std::vector<MultiPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

MultiPoly MultiPoly::from_coefficients(Var v, const std::vector<MultiPoly>& c) {
  std::vector<Term> all;
  for (std::size_t k = 0; k < c.size(); ++k)
    for (const auto& [m, co] : c[k].terms_) {
      Monomial r = m;
      r.e[v] = static_cast<std::uint16_t>(r.e[v] + k);
      all.emplace_back(r, co);
    }
  return from_terms(std::move(all));
}

MultiPoly MultiPoly::substitute(Var v, const MultiPoly& value) const {
  return substitute(std::map<Var, MultiPoly>{{v, value}});
}

MultiPoly MultiPoly::substitute(const std::map<Var, MultiPoly>& values) const {
  // Group terms by the exponents of the substituted variables, then expand.
  std::map<std::vector<unsigned>, std::vector<Term>> groups;
  for (const auto& [m, c] : terms_) {
    std::vector<unsigned> key;
    Monomial rest = m;
    for (const auto& [v, _] : values) {
      key.push_back(m.e[v]);
      rest.e[v] = 0;
    }
    groups[key].emplace_back(rest, c);
  }
  std::map<std::pair<Var, unsigned>, MultiPoly> power_cache;
  auto power = [&](Var v, unsigned k) -> const MultiPoly& {
    auto it = power_cache.find({v, k});
    if (it != power_cache.end()) return it->second;
    MultiPoly p = k == 0 ? MultiPoly(1) : values.at(v).pow(k);
    return power_cache.emplace(std::pair{v, k}, std::move(p)).first->second;
  };
  std::vector<Term> all;
  for (auto& [key, ts] : groups) {
    MultiPoly factor(1);
    std::size_t i = 0;
    for (const auto& [v, _] : values) factor = factor * power(v, key[i++]);
    MultiPoly part = from_terms(std::move(ts)) * factor;
    for (auto& t : part.terms_) all.push_back(std::move(t));
  }
  return from_terms(std::move(all));
}

MultiPoly MultiPoly::substitute(const std::map<Var, Rational>& values) const {
  std::vector<Term> all;
  all.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    Monomial r = m;
    Rational co = c;
    for (const auto& [v, val] : values) {
      if (!m.e[v]) continue;
      co *= tbl::pow(Rational(val), m.e[v]);
      r.e[v] = 0;
    }
    if (sgn(co) != 0) all.emplace_back(r, co);
  }
  return from_terms(std::move(all));
}

MultiPoly MultiPoly::rename(const std::map<Var, Var>& renaming) const {
  std::vector<Term> all;
  all.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    Monomial r = m;
    for (const auto& [from, to] : renaming) r.e[from] = 0;
    for (const auto& [from, to] : renaming) r.e[to] = static_cast<std::uint16_t>(r.e[to] + m.e[from]);
    all.emplace_back(r, c);
  }
  return from_terms(std::move(all));
}

Rational MultiPoly::evaluate(const std::map<Var, Rational>& values) const {
  MultiPoly r = substitute(values);
  if (!r.is_constant()) throw InvalidArgument("evaluation left free variables: " + r.str());
  return r.constant_value();
}

Monomial MultiPoly::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial g = terms_[0].first;
  for (const auto& t : terms_) g = Monomial::gcd(g, t.first);
  return g;
}

std::optional<long> MultiPoly::homogeneous_weight() const {
  if (terms_.empty()) return 0;
  long w = terms_[0].first.weight();
  for (const auto& t : terms_)
    if (t.first.weight() != w) return std::nullopt;
  return w;
}

std::optional<MultiPoly> MultiPoly::divide_exact(const MultiPoly& d) const {
  if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (is_zero()) return MultiPoly();
  if (d.size() == 1) {
    const auto& [md, cd] = d.terms_[0];
    MultiPoly q;
    q.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
      if (!md.divides(m)) return std::nullopt;
      q.terms_.emplace_back(m / md, c / cd);
    }
    return q;
  }
  // Cheap necessary conditions on degrees.
  const std::uint32_t ds = d.support();
  for (Var v = 0; v < kMaxVars; ++v) {
    if (!((ds >> v) & 1u)) continue;
    if (degree(v) < d.degree(v)) return std::nullopt;
  }
  std::vector<Term> quotient;
  MultiPoly r = *this;
  const Monomial& lm = d.terms_[0].first;
  const Rational& lc = d.terms_[0].second;
  while (!r.is_zero()) {
    const auto& [mr, cr] = r.terms_[0];
    if (!lm.divides(mr)) return std::nullopt;
    Monomial qm = mr / lm;
    Rational qc = cr / lc;
    quotient.emplace_back(qm, qc);
    r -= d.mul_monomial(qm, qc);
  }
  MultiPoly q;
  q.terms_ = std::move(quotient);  // generated in decreasing order
  return q;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = abs(c);
    bool neg = sgn(c) < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool one = m.is_one();
    if (one || a != 1) {
      os << a.get_str();
      if (!one) os << "*";
    }
    bool firstv = true;
    for (Var v = 0; v < kMaxVars; ++v) {
      if (!m.e[v]) continue;
      if (!firstv) os << "*";
      firstv = false;
      os << var_name(v);
      if (m.e[v] > 1) os << "^" << m.e[v];
    }
  }
  return os.str();
}

}  // namespace tbl
