#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "tbl/errors.hpp"
#include "tbl/exactalg/ratfun.hpp"

namespace tbl {

/// A rational function of two variables, with every other variable already
/// substituted, laid out for repeated evaluation in scalar type S.
template <class S>
class Bivariate {
 public:
  Bivariate() = default;
  Bivariate(const RatFun& r, Var u, Var v) {
    const std::uint32_t allowed = (1u << u) | (1u << v);
    if (r.support() & ~allowed)
      throw InvalidArgument("Bivariate: unsubstituted variables in " + r.str());
    load(r.num(), u, v, num_);
    load(r.den(), u, v, den_);
  }

  bool is_zero() const { return num_.empty(); }

  /// Throws PoleError when the denominator vanishes to working precision.
  S operator()(const S& a, const S& b) const {
    if (num_.empty()) return S(0);
    S den_abs;
    S den = eval(den_, a, b, den_abs);
    if (abs_(den) <= den_abs * std::numeric_limits<S>::epsilon() * 64)
      throw PoleError("rational coefficient has a vanishing denominator");
    S ignore;
    return eval(num_, a, b, ignore) / den;
  }

 private:
  struct Term {
    unsigned i, j;
    S c;
  };
  std::vector<Term> num_, den_;
  unsigned max_i_ = 0, max_j_ = 0;

  static S abs_(const S& s) {
    using std::abs;
    return abs(s);
  }

  void load(const MultiPoly& p, Var u, Var v, std::vector<Term>& out) {
    for (const auto& [m, c] : p.terms()) {
      out.push_back({m.e[u], m.e[v], rational_to<S>(c)});
      max_i_ = std::max<unsigned>(max_i_, m.e[u]);
      max_j_ = std::max<unsigned>(max_j_, m.e[v]);
    }
  }

  S eval(const std::vector<Term>& t, const S& a, const S& b, S& mag) const {
    std::vector<S> pa(max_i_ + 1), pb(max_j_ + 1);
    pa[0] = pb[0] = S(1);
    for (unsigned k = 1; k <= max_i_; ++k) pa[k] = pa[k - 1] * a;
    for (unsigned k = 1; k <= max_j_; ++k) pb[k] = pb[k - 1] * b;
    S s = S(0);
    mag = S(0);
    for (const auto& x : t) {
      S term = x.c * pa[x.i] * pb[x.j];
      s += term;
      mag += abs_(term);
    }
    return s;
  }
};

}  // namespace tbl
