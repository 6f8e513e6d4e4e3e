#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <type_traits>

namespace tbl {

using Integer = mpz_class;
/// Arbitrary-precision rational. GMP keeps it canonical: denominator > 0 and
/// gcd(|num|, den) = 1 after every operation.
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q". Decimal notation is rejected: symbolic code
/// paths never coerce floating point input.
Rational parse_rational(std::string_view text);

/// Exact conversion of a finite double (every double is a dyadic rational).
Rational rational_from_double(double value);

std::string to_string(const Rational& r);
double to_double(const Rational& r);

Rational pow(const Rational& base, unsigned exponent);

/// Converts to a floating scalar type. Multiprecision types go through their
/// string constructor so no digits are lost to an intermediate double.
template <class S>
S rational_to(const Rational& r) {
  if constexpr (std::is_floating_point_v<S>) {
    return static_cast<S>(r.get_d());
  } else {
    return S(r.get_num().get_str()) / S(r.get_den().get_str());
  }
}
Integer binomial(unsigned n, unsigned k);

}  // namespace tbl
