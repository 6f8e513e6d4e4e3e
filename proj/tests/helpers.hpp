#pragma once

#include <random>

#include "tbl/exactalg/multipoly.hpp"
#include "tbl/exactalg/ratfun.hpp"

namespace tbl::testing {

inline MultiPoly X(Var v, unsigned k = 1) { return MultiPoly::variable(v, k); }
inline Rational Q(long p, long q = 1) { return Rational(p, q); }

/// Small random polynomial in the given variables (deterministic per rng).
inline MultiPoly random_poly(std::mt19937& rng, const std::vector<Var>& vs, int terms, int maxdeg) {
  std::uniform_int_distribution<int> deg(0, maxdeg), coef(-5, 5);
  std::vector<MultiPoly::Term> t;
  for (int i = 0; i < terms; ++i) {
    Monomial m;
    for (Var v : vs) m.e[v] = static_cast<std::uint16_t>(deg(rng));
    int c = coef(rng);
    if (c) t.emplace_back(m, Rational(c));
  }
  return MultiPoly::from_terms(std::move(t));
}

}  // namespace tbl::testing
