#pragma once

// J_n for integer n ≥ 0 in any real scalar type, and f_ν(x,z) = √(xz)J_ν(xz).
//
// Power series where its terms decrease from the start (w² ≤ 4(n+1), which
// covers w ≤ 2 for every n); Miller's backward recurrence otherwise, normalised
// by J_0 + 2ΣJ_{2k} = 1. The recurrence start is chosen from the precision of
// S, so the same code reaches full accuracy in double and in mpfr.

#include <cmath>
#include <limits>

#include "tbl/errors.hpp"

namespace tbl {

namespace detail {

template <class S>
S bessel_series(int n, const S& w) {
  using std::abs;
  const S h = w / 2, h2 = h * h;
  S term = S(1);
  for (int k = 1; k <= n; ++k) term *= h / S(k);
  S sum = term;
  const S eps = std::numeric_limits<S>::epsilon();
  for (int k = 1; k < 10000; ++k) {
    term *= -h2 / (S(k) * S(n + k));
    sum += term;
    if (abs(term) <= eps * abs(sum)) break;
  }
  return sum;
}

// Smallest even N past max(n, w) with J_N(w) below 10^{-(digits+10)}, using
// log J_N(w) ≈ N log(e w / 2N) − ½ log(2πN).
inline int miller_start(int n, double w, int digits10) {
  const double target = -(digits10 + 10) * std::log(10.0);
  int N = std::max(n, static_cast<int>(std::ceil(w))) + 2;
  while (N * std::log(std::exp(1.0) * w / (2.0 * N)) - 0.5 * std::log(2 * M_PI * N) > target) ++N;
  return N + (N & 1);
}

template <class S>
S bessel_miller(int n, const S& w) {
  using std::abs;
  const double wd = static_cast<double>(w);
  const int N = miller_start(n, wd, std::numeric_limits<S>::digits10);
  const S big = S(1e100), small = S(1e-100);
  S jk1 = S(0), jk = small;  // J_{k+1}, J_k up to a common scale
  S sum = (N % 2 == 0) ? S(2) * jk : S(0), result = S(0);
  for (int k = N; k > 0; --k) {
    S jm = S(2 * k) / w * jk - jk1;
    jk1 = jk;
    jk = jm;
    const int idx = k - 1;
    if (idx == n) result = jk;
    if (idx == 0)
      sum += jk;
    else if (idx % 2 == 0)
      sum += S(2) * jk;
    if (abs(jk) > big) {
      jk *= small;
      jk1 *= small;
      sum *= small;
      result *= small;
    }
  }
  return result / sum;
}

}  // namespace detail

/// J_n(w), n ≥ 0. Negative w by parity, J_n(−w) = (−1)^n J_n(w).
template <class S>
S bessel_j(int n, const S& w) {
  if (n < 0) throw DomainError("bessel_j: negative order");
  if (w < 0) {
    S v = bessel_j(n, S(-w));
    return (n % 2) ? S(-v) : v;
  }
  if (w == 0) return n == 0 ? S(1) : S(0);
  if (w * w <= S(4 * (n + 1))) return detail::bessel_series(n, w);
  return detail::bessel_miller(n, w);
}

/// Series for real order ν (only used for the ν = −½ cross-check).
template <class S>
S bessel_j_series(const S& nu, const S& w) {
  using std::abs;
  using std::pow;
  using std::tgamma;
  const S h = w / 2, h2 = h * h;
  S term = pow(h, nu) / tgamma(nu + 1);
  S sum = term;
  const S eps = std::numeric_limits<S>::epsilon();
  for (int k = 1; k < 10000; ++k) {
    term *= -h2 / (S(k) * (nu + S(k)));
    sum += term;
    if (abs(term) <= eps * abs(sum)) break;
  }
  return sum;
}

/// f_n(x,z) = √(x|z|)·J_n(x|z|), continued to z < 0 by f_n(x,−z) = (−1)^n f_n(x,z).
/// With this continuation the four first-order recurrences hold for all z.
template <class S>
S f_nu(int n, const S& x, const S& z) {
  using std::abs;
  using std::sqrt;
  if (!(x > 0)) throw DomainError("f_nu: x must be positive");
  const S w = x * abs(z);
  S v = sqrt(w) * bessel_j(n, w);
  return (z < 0 && (n % 2)) ? S(-v) : v;
}

}  // namespace tbl
