#include "tbl/exactalg/rational.hpp"

#include <cmath>

#include "tbl/errors.hpp"

namespace tbl {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InvalidArgument("empty rational literal");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/')) {
      throw InvalidArgument("not an exact rational (use p/q): '" + s + "'");
    }
  }
  if (s.front() == '+') s.erase(s.begin());
  Rational r;
  if (r.set_str(s, 10) != 0) throw InvalidArgument("malformed rational: '" + std::string(text) + "'");
  if (r.get_den() == 0) throw DivisionByZero("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw InvalidArgument("non-finite value has no rational form");
  Rational r(value);  // exact: GMP converts the binary representation
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

double to_double(const Rational& r) { return r.get_d(); }

Rational pow(const Rational& base, unsigned exponent) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  out.canonicalize();
  return out;
}

Integer binomial(unsigned n, unsigned k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

}  // namespace tbl
