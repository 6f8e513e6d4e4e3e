#pragma once

// Gauss–Legendre rules in any real scalar type. Nodes are seeded in double
// and polished by Newton in S, so the same code serves double and mpfr.

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "tbl/errors.hpp"

namespace tbl {

template <class S>
struct QuadratureRule {
  std::vector<S> nodes, weights;
  std::size_t size() const { return nodes.size(); }
};

// P_n(t) and P_n'(t) by the three-term recurrence.
template <class S>
void legendre_with_derivative(int n, const S& t, S& p, S& dp) {
  S p0 = S(1), p1 = t;
  if (n == 0) {
    p = p0;
    dp = S(0);
    return;
  }
  for (int k = 2; k <= n; ++k) {
    S p2 = (S(2 * k - 1) * t * p1 - S(k - 1) * p0) / S(k);
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = S(n) * (t * p1 - p0) / (t * t - S(1));
}

/// n-point rule on [a, b], nodes ascending.
template <class S>
QuadratureRule<S> gauss_legendre(int n, const S& a = S(-1), const S& b = S(1)) {
  using std::abs;
  if (n < 1) throw InvalidArgument("gauss_legendre: n must be positive");
  QuadratureRule<S> r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const S tol = std::numeric_limits<S>::epsilon() * 4;
  const S half = (b - a) / 2, mid = (a + b) / 2;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    S t = S(std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5)));
    S p, dp;
    for (int it = 0; it < 100; ++it) {
      legendre_with_derivative(n, t, p, dp);
      S step = p / dp;
      t -= step;
      if (abs(step) <= tol) break;
    }
    legendre_with_derivative(n, t, p, dp);
    S w = S(2) / ((S(1) - t * t) * dp * dp);
    r.nodes[n - 1 - i] = mid + half * t;
    r.nodes[i] = mid - half * t;
    r.weights[i] = r.weights[n - 1 - i] = half * w;
  }
  return r;
}

}  // namespace tbl
