#include "tbl/exactalg/ratfun.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <sstream>

#include "tbl/errors.hpp"

namespace tbl {
namespace {

struct TermsLess {
  bool operator()(const MultiPoly& a, const MultiPoly& b) const {
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    if (ta.size() != tb.size()) return ta.size() < tb.size();
    for (std::size_t i = 0; i < ta.size(); ++i) {
      if (ta[i].first != tb[i].first) return ta[i].first < tb[i].first;
      int c = cmp(ta[i].second, tb[i].second);
      if (c != 0) return c < 0;
    }
    return false;
  }
};

struct AtomTable {
  std::mutex mu;
  std::vector<std::unique_ptr<MultiPoly>> polys;
  std::map<MultiPoly, int, TermsLess> index;
  std::map<std::pair<int, Var>, std::unique_ptr<MultiPoly>> derivs;
  std::map<std::pair<int, unsigned>, std::unique_ptr<MultiPoly>> powers;
};

AtomTable& atoms() {
  static AtomTable t;
  return t;
}

}  // namespace

int intern_atom(const MultiPoly& p) {
  AtomTable& t = atoms();
  std::lock_guard lock(t.mu);
  auto it = t.index.find(p);
  if (it != t.index.end()) return it->second;
  int id = static_cast<int>(t.polys.size());
  t.polys.push_back(std::make_unique<MultiPoly>(p));
  t.index.emplace(p, id);
  return id;
}

const MultiPoly& atom_poly(int id) {
  AtomTable& t = atoms();
  std::lock_guard lock(t.mu);
  return *t.polys.at(id);
}

const MultiPoly& atom_derivative(int id, Var v) {
  const MultiPoly& p = atom_poly(id);
  AtomTable& t = atoms();
  {
    std::lock_guard lock(t.mu);
    auto it = t.derivs.find({id, v});
    if (it != t.derivs.end()) return *it->second;
  }
  auto d = std::make_unique<MultiPoly>(p.derivative(v));
  std::lock_guard lock(t.mu);
  auto [it, _] = t.derivs.emplace(std::pair{id, v}, std::move(d));
  return *it->second;
}

const MultiPoly& atom_power(int id, unsigned e) {
  const MultiPoly& p = atom_poly(id);
  AtomTable& t = atoms();
  {
    std::lock_guard lock(t.mu);
    auto it = t.powers.find({id, e});
    if (it != t.powers.end()) return *it->second;
  }
  auto d = std::make_unique<MultiPoly>(p.pow(e));
  std::lock_guard lock(t.mu);
  auto [it, _] = t.powers.emplace(std::pair{id, e}, std::move(d));
  return *it->second;
}

SplitPoly split_polynomial(const MultiPoly& p) {
  if (p.is_zero()) throw DivisionByZero("zero denominator");
  SplitPoly s;
  s.mono = p.monomial_content();
  MultiPoly q = p.div_monomial(s.mono);
  s.scale = q.leading_coefficient();
  if (q.size() == 1) return s;
  q *= Rational(1) / s.scale;
  s.atom = intern_atom(q);
  return s;
}

namespace {

RatFun::AtomPowers merge_atoms(const RatFun::AtomPowers& a, const RatFun::AtomPowers& b, bool add) {
  RatFun::AtomPowers out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, add ? a[i].second + b[j].second : std::max(a[i].second, b[j].second));
      ++i;
      ++j;
    }
  }
  return out;
}

// Π atom^(target_e − have_e).
MultiPoly atom_quotient(const RatFun::AtomPowers& target, const RatFun::AtomPowers& have) {
  MultiPoly r(1);
  std::size_t j = 0;
  for (const auto& [id, e] : target) {
    unsigned h = 0;
    while (j < have.size() && have[j].first < id) ++j;
    if (j < have.size() && have[j].first == id) h = have[j].second;
    if (e > h) r = r * atom_power(id, e - h);
  }
  return r;
}

}  // namespace

RatFun RatFun::make(MultiPoly num, Monomial mono, AtomPowers atoms) {
  RatFun r;
  r.num_ = std::move(num);
  r.mono_ = mono;
  r.atoms_ = std::move(atoms);
  r.normalize();
  return r;
}

void RatFun::normalize() {
  if (num_.is_zero()) {
    mono_ = Monomial{};
    atoms_.clear();
    return;
  }
  std::erase_if(atoms_, [](const auto& a) { return a.second == 0; });
  if (!mono_.is_one()) {
    Monomial g = Monomial::gcd(num_.monomial_content(), mono_);
    if (!g.is_one()) {
      num_ = num_.div_monomial(g);
      mono_ = mono_ / g;
    }
  }
}

RatFun RatFun::variable(Var v, int power) {
  if (power >= 0) return RatFun(MultiPoly::variable(v, static_cast<unsigned>(power)));
  return make(MultiPoly(1), Monomial::var(v, static_cast<unsigned>(-power)), {});
}

RatFun RatFun::fraction(const MultiPoly& num, const MultiPoly& den) {
  SplitPoly s = split_polynomial(den);
  AtomPowers a;
  if (s.atom >= 0) a.emplace_back(s.atom, 1);
  return make(num * (Rational(1) / s.scale), s.mono, std::move(a));
}

RatFun RatFun::from_parts(MultiPoly num, const Monomial& mono, AtomPowers atoms) {
  std::sort(atoms.begin(), atoms.end());
  return make(std::move(num), mono, std::move(atoms));
}

MultiPoly RatFun::den() const {
  MultiPoly d = MultiPoly::monomial(mono_);
  for (const auto& [id, e] : atoms_) d = d * atom_power(id, e);
  return d;
}

std::uint32_t RatFun::support() const {
  std::uint32_t s = num_.support() | mono_.support();
  for (const auto& [id, e] : atoms_) s |= atom_poly(id).support();
  return s;
}

bool RatFun::equals(const RatFun& o) const { return (*this - o).is_zero(); }

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFun RatFun::add_impl(const RatFun& a, const RatFun& b, bool subtract) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return subtract ? -b : b;
  if (a.mono_ == b.mono_ && a.atoms_ == b.atoms_) {
    return make(subtract ? a.num_ - b.num_ : a.num_ + b.num_, a.mono_, a.atoms_);
  }
  Monomial lm = Monomial::lcm(a.mono_, b.mono_);
  AtomPowers la = merge_atoms(a.atoms_, b.atoms_, false);
  MultiPoly na = (a.num_ * atom_quotient(la, a.atoms_)).mul_monomial(lm / a.mono_);
  MultiPoly nb = (b.num_ * atom_quotient(la, b.atoms_)).mul_monomial(lm / b.mono_);
  return make(subtract ? na - nb : na + nb, lm, std::move(la));
}

RatFun operator+(const RatFun& a, const RatFun& b) { return RatFun::add_impl(a, b, false); }
RatFun operator-(const RatFun& a, const RatFun& b) { return RatFun::add_impl(a, b, true); }

RatFun operator*(const RatFun& a, const RatFun& b) {
  if (a.is_zero() || b.is_zero()) return RatFun();
  return RatFun::make(a.num_ * b.num_, a.mono_ * b.mono_, merge_atoms(a.atoms_, b.atoms_, true));
}

RatFun RatFun::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero rational function");
  SplitPoly s = split_polynomial(num_);
  MultiPoly n = MultiPoly::monomial(mono_, Rational(1) / s.scale);
  for (const auto& [id, e] : atoms_) n = n * atom_power(id, e);
  AtomPowers a;
  if (s.atom >= 0) a.emplace_back(s.atom, 1);
  return make(std::move(n), s.mono, std::move(a));
}

RatFun operator/(const RatFun& a, const RatFun& b) { return a * b.inverse(); }

RatFun RatFun::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  RatFun r(1), base = *this;
  unsigned k = static_cast<unsigned>(n);
  while (k) {
    if (k & 1u) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

RatFun RatFun::derivative(Var v) const {
  if (is_zero()) return RatFun();
  // d(N/D) with D = mono·Πa^e: multiply through by P = v^[mono has v]·Π(varying a).
  const unsigned k = mono_.e[v];
  MultiPoly P(1);
  AtomPowers newatoms = atoms_;
  std::vector<std::size_t> varying;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!atom_poly(atoms_[i].first).depends_on(v)) continue;
    varying.push_back(i);
    P = P * atom_poly(atoms_[i].first);
    newatoms[i].second += 1;
  }
  MultiPoly term = num_.derivative(v) * P;
  MultiPoly sub;
  for (std::size_t i : varying) {
    MultiPoly others(1);
    for (std::size_t j : varying)
      if (j != i) others = others * atom_poly(atoms_[j].first);
    sub += atom_derivative(atoms_[i].first, v) * others * Rational(atoms_[i].second);
  }
  Monomial mono = mono_;
  MultiPoly n;
  if (k > 0) {
    Monomial xv = Monomial::var(v);
    n = term.mul_monomial(xv) - (P * Rational(k) + sub.mul_monomial(xv)) * num_;
    mono.e[v]++;
  } else {
    n = term - sub * num_;
  }
  return make(std::move(n), mono, std::move(newatoms));
}

RatFun RatFun::derivative(Var v, unsigned order) const {
  RatFun r = *this;
  for (unsigned i = 0; i < order; ++i) r = r.derivative(v);
  return r;
}

RatFun RatFun::cancel() const {
  RatFun r = *this;
  if (r.is_zero()) return r;
  for (auto& [id, e] : r.atoms_) {
    while (e > 0) {
      auto q = r.num_.divide_exact(atom_poly(id));
      if (!q) break;
      r.num_ = std::move(*q);
      --e;
    }
  }
  r.normalize();
  return r;
}

namespace {

template <class Sub>
RatFun substitute_impl(const MultiPoly& num, const Monomial& mono, const RatFun::AtomPowers& atoms,
                       const Sub& sub) {
  RatFun result(sub(num));
  auto divide_by = [&](const MultiPoly& p, unsigned e) {
    if (p.is_zero()) throw PoleError("substitution hits a pole of the denominator");
    RatFun f = RatFun::fraction(MultiPoly(1), p);
    for (unsigned i = 0; i < e; ++i) result = result * f;
  };
  if (!mono.is_one()) divide_by(sub(MultiPoly::monomial(mono)), 1);
  for (const auto& [id, e] : atoms) divide_by(sub(atom_poly(id)), e);
  return result;
}

}  // namespace

RatFun RatFun::substitute(Var v, const MultiPoly& value) const {
  return substitute(std::map<Var, MultiPoly>{{v, value}});
}

RatFun RatFun::substitute(const std::map<Var, MultiPoly>& values) const {
  return substitute_impl(num_, mono_, atoms_, [&](const MultiPoly& p) { return p.substitute(values); });
}

RatFun RatFun::substitute(const std::map<Var, Rational>& values) const {
  return substitute_impl(num_, mono_, atoms_, [&](const MultiPoly& p) { return p.substitute(values); });
}

RatFun RatFun::rename(const std::map<Var, Var>& renaming) const {
  return substitute_impl(num_, mono_, atoms_, [&](const MultiPoly& p) { return p.rename(renaming); });
}

Rational RatFun::evaluate(const std::map<Var, Rational>& values) const {
  RatFun r = substitute(values);
  if (!r.is_constant()) throw InvalidArgument("evaluation left free variables");
  return r.num_.constant_value();
}

std::vector<std::pair<std::vector<int>, Rational>> RatFun::laurent_terms() const {
  if (!is_laurent()) throw InvalidArgument("not a Laurent polynomial: " + str());
  std::vector<std::pair<std::vector<int>, Rational>> out;
  for (const auto& [m, c] : num_.terms()) {
    std::vector<int> e(kMaxVars);
    for (int i = 0; i < kMaxVars; ++i) e[i] = int(m.e[i]) - int(mono_.e[i]);
    out.emplace_back(std::move(e), c);
  }
  return out;
}

std::string RatFun::str() const {
  if (is_polynomial()) return num_.str();
  std::ostringstream os;
  os << "(" << num_.str() << ")/(";
  bool first = true;
  if (!mono_.is_one()) {
    os << MultiPoly::monomial(mono_).str();
    first = false;
  }
  for (const auto& [id, e] : atoms_) {
    if (!first) os << "*";
    first = false;
    os << "(" << atom_poly(id).str() << ")";
    if (e > 1) os << "^" << e;
  }
  os << ")";
  return os.str();
}

std::pair<std::string, std::string> RatFun::text_pair() const { return {num_.str(), den().str()}; }

std::string RatFun::canonical_text() const {
  if (!is_laurent()) {
    auto [n, d] = text_pair();
    return "(" + n + ")/(" + d + ")";
  }
  if (num_.is_zero()) return "0";
  // Sort by signed exponent vector, descending, like MultiPoly.
  auto terms = laurent_terms();
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms) {
    Rational a = abs(c);
    bool neg = sgn(c) < 0;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    bool one = std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
    if (one || a != 1) {
      os << a.get_str();
      if (!one) os << "*";
    }
    bool firstv = true;
    for (int v = 0; v < kMaxVars; ++v) {
      if (!e[v]) continue;
      if (!firstv) os << "*";
      firstv = false;
      os << var_name(v);
      if (e[v] != 1) os << "^" << e[v];
    }
  }
  return os.str();
}

}  // namespace tbl
