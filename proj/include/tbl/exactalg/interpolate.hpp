#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "tbl/exactalg/ratfun.hpp"

namespace tbl {

using Exponents = std::vector<unsigned>;

/// All exponent vectors e (one entry per weight) with Σ e_i w_i = target.
/// Weights must be positive.
std::vector<Exponents> exponents_of_weight(const std::vector<int>& weights, long target);
/// All exponent vectors with total degree ≤ d.
std::vector<Exponents> exponents_up_to_degree(std::size_t nvars, unsigned d);

/// Fits Σ_α c_α p^α through several value columns sampled at the same
/// points. Returns one coefficient vector per column, or nullopt if the
/// data are not consistent with the support (needs rows > support size).
std::optional<std::vector<std::vector<Rational>>> fit_support(
    const std::vector<std::vector<Rational>>& points, const std::vector<Exponents>& support,
    const std::vector<std::vector<Rational>>& value_columns);

MultiPoly poly_from_support(const std::vector<Var>& vars, const std::vector<Exponents>& support,
                            const std::vector<Rational>& coeffs, const Monomial& extra = {});

/// Deterministic source of small nonzero integer sample points.
class SamplePoints {
 public:
  explicit SamplePoints(std::uint64_t seed = 20240611) : rng_(seed) {}
  Rational next(int bound = 97);
  std::vector<Rational> next_vector(std::size_t n, int bound = 97);

 private:
  std::mt19937_64 rng_;
};

/// Undoes a specialisation T = 1 using weight homogeneity: for c of weight w,
/// c(G,T,t) = T^w · c(GT, t_i T^{−2i}) (weights from var_weight).
RatFun restore_homogeneous(const MultiPoly& at_one, int weight, Var T);

using SampleFn = std::function<std::vector<Rational>(const std::vector<Rational>&)>;

struct DenseInterpolation {
  std::vector<MultiPoly> polys;  // one per output component
  std::size_t evaluations = 0;
};

/// Recovers a vector of polynomials in `vars` from a black box by nested
/// Newton interpolation (last variable outermost), stopping in each variable
/// after two consecutive zero divided differences. Sample values are
/// positive integers; a sample that throws PoleError or DivisionByZero is
/// skipped. Throws InterpolationFailure past max_degree.
DenseInterpolation interpolate_dense(const SampleFn& f, const std::vector<Var>& vars,
                                     unsigned max_degree, SamplePoints& points);

}  // namespace tbl
