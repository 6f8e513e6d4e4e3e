#include "tbl/besselnum/eigenfunction.hpp"

#include <mutex>
#include <sstream>

namespace tbl {

EigenfunctionChain EigenfunctionChain::unit(const Family& f) {
  EigenfunctionChain c{f, {}};
  for (Var v : f.params()) c.params[v] = 1;
  return c;
}

EigenfunctionChain EigenfunctionChain::standard(const Family& f) {
  EigenfunctionChain c = unit(f);
  if (f == Family::example(3)) c.params[vars::t3] = -2;
  if (f == Family::example(4)) c.params[vars::t4] = -4;
  return c;
}

std::string EigenfunctionChain::str() const {
  std::ostringstream os;
  os << family.name();
  for (const auto& [v, r] : params) os << ' ' << var_name(v) << '=' << to_string(r);
  return os.str();
}

EigenfunctionChain parse_chain(const std::string& family, const std::map<std::string, Rational>& params) {
  EigenfunctionChain c = EigenfunctionChain::standard(parse_family(family));
  for (const auto& [name, value] : params) {
    Var v = var(name);
    if (!c.params.count(v)) throw InvalidArgument(family + " has no parameter " + name);
    c.params[v] = value;
  }
  return c;
}

namespace {

RatFun substituted(const RatFun& r, const ParamValues& p) { return p.empty() ? r : r.substitute(p); }

ChainExprs build(const EigenfunctionChain& c) {
  for (Var v : c.family.params())
    if (!c.params.count(v)) throw InvalidArgument(c.family.name() + ": missing parameter " + var_name(v));
  BesselExpr e = transformed_eigenfunction_symbolic(c.family);
  BesselExpr d = reduce_derivative(e, vars::x);
  ChainExprs out;
  out.mu = e.mu;
  out.ca = substituted(e.ca, c.params).cancel();
  out.cb = substituted(e.cb, c.params).cancel();
  out.dca = substituted(d.ca, c.params).cancel();
  out.dcb = substituted(d.cb, c.params).cancel();
  std::vector<int> seen;
  for (const RatFun* r : {&out.ca, &out.cb})
    for (const auto& [id, pw] : r->den_atoms()) {
      const MultiPoly& a = atom_poly(id);
      if (a.support() != (1u << vars::x)) continue;
      if (std::find(seen.begin(), seen.end(), id) != seen.end()) continue;
      seen.push_back(id);
      out.x_denominators.push_back(UPoly::from_multipoly(a, vars::x));
    }
  return out;
}

}  // namespace

const ChainExprs& chain_exprs(const EigenfunctionChain& c) {
  static std::mutex mu;
  static std::map<std::string, ChainExprs> cache;
  const std::string key = c.str();
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  ChainExprs e = build(c);
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(e)).first->second;
}

int pole_count(const EigenfunctionChain& c, const Rational& T) {
  int n = 0;
  for (const UPoly& p : chain_exprs(c).x_denominators) n += count_real_roots(p, 0, T);
  return n;
}

}  // namespace tbl
