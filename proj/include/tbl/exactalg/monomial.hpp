#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

#include "tbl/exactalg/variables.hpp"

namespace tbl {

/// Exponent vector with fixed arity kMaxVars. Ordered lexicographically with
/// variable 0 most significant.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};

  static Monomial var(Var v, unsigned power = 1) {
    Monomial m;
    m.e[v] = static_cast<std::uint16_t>(power);
    return m;
  }

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

  bool is_one() const {
    for (auto x : e)
      if (x) return false;
    return true;
  }
  unsigned degree(Var v) const { return e[v]; }
  unsigned total_degree() const {
    unsigned s = 0;
    for (auto x : e) s += x;
    return s;
  }
  long weight() const {
    long w = 0;
    for (int i = 0; i < kMaxVars; ++i) w += long(e[i]) * var_weight(i);
    return w;
  }
  bool divides(const Monomial& o) const {
    for (int i = 0; i < kMaxVars; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(e[i] + o.e[i]);
    return r;
  }
  /// Requires o.divides(*this).
  Monomial operator/(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(e[i] - o.e[i]);
    return r;
  }
  static Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = a.e[i] < b.e[i] ? a.e[i] : b.e[i];
    return r;
  }
  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = a.e[i] > b.e[i] ? a.e[i] : b.e[i];
    return r;
  }
  std::uint32_t support() const {
    std::uint32_t s = 0;
    for (int i = 0; i < kMaxVars; ++i)
      if (e[i]) s |= 1u << i;
    return s;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : m.e) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

}  // namespace tbl
