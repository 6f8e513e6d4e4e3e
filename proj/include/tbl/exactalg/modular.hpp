#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "tbl/exactalg/multipoly.hpp"

namespace tbl {

/// Arithmetic in Z/pZ for a prime p < 2^63.
struct ModP {
  using Elem = std::uint64_t;
  std::uint64_t p;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { a += b; return a >= p ? a - p : a; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p - b; }
  std::uint64_t neg(std::uint64_t a) const { return a ? p - a : 0; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;  // throws DivisionByZero for 0
  std::uint64_t from_int(long v) const;
  /// Throws DivisionByZero when p divides the denominator.
  std::uint64_t from_rational(const Rational& q) const;
};

/// Distinct primes just below 2^62, largest first.
std::vector<std::uint64_t> large_primes(std::size_t count);

/// Row-major dense system over Z/pZ.
struct ModSolution {
  std::vector<std::uint64_t> particular;
  std::size_t nullity = 0;
  bool consistent = true;
};
ModSolution solve_mod(std::vector<std::vector<std::uint64_t>> rows, std::size_t cols,
                      const ModP& F);

/// Sparse polynomial over Z/pZ keyed by exponent vectors.
using ModPoly = std::map<std::vector<unsigned>, std::uint64_t>;

using ModSampleFn = std::function<std::vector<std::uint64_t>(const std::vector<std::uint64_t>&)>;

struct ModInterpolation {
  std::vector<ModPoly> polys;
  std::size_t evaluations = 0;
};

/// Nested Newton interpolation over Z/pZ (variable 0 innermost) with early
/// termination after two consecutive zero divided differences.
ModInterpolation interpolate_dense_mod(const ModSampleFn& f, std::size_t nvars,
                                       unsigned max_degree, const ModP& F, std::uint64_t seed);

/// Smallest-height r/s ≡ a (mod M) with |r|, s ≤ √(M/2); nullopt if none.
std::optional<Rational> rational_reconstruct(const Integer& a, const Integer& M);

/// Accumulates residues of polynomial vectors across primes and lifts them
/// to Q once the reconstruction is stable from one prime to the next.
class MultiModularLift {
 public:
  void add(std::uint64_t prime, const std::vector<ModPoly>& polys);
  /// The lifted polynomials if the last prime did not change them.
  std::optional<std::vector<MultiPoly>> stable(const std::vector<Var>& vars) const;
  std::size_t primes_used() const { return primes_; }

 private:
  std::size_t width_ = 0, primes_ = 0;
  Integer modulus_ = 1;
  std::vector<std::map<std::vector<unsigned>, Integer>> residues_;
  std::optional<std::vector<std::map<std::vector<unsigned>, Rational>>> previous_, current_;
  std::optional<std::vector<std::map<std::vector<unsigned>, Rational>>> reconstruct() const;
};

}  // namespace tbl
