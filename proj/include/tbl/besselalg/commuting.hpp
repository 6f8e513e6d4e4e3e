#pragma once

#include <map>
#include <string>
#include <vector>

#include "tbl/besselalg/bessel_expr.hpp"
#include "tbl/exactalg/diffop.hpp"

namespace tbl {

/// Unknown coefficient of z^j in a_k(z).
struct Slot {
  int k = 0, j = 0;
  bool operator==(const Slot&) const = default;
  std::string name() const;  // "a1[z^-2]"
};

/// Σ_{k=0}^{m} ∂^k (z²−G²)^k a_k(z) ∂^k with a_k = fixed[k] + Σ_free c·z^j.
struct OperatorAnsatz {
  int m = 0;
  std::vector<RatFun> fixed;
  std::vector<Slot> free;

  /// a_m = 1; every other a_k an even Laurent polynomial from z^{−2(m−k)} to
  /// z^{2(m−k)}, except that the constant term of a_0 is pinned to 0.
  static OperatorAnsatz generic(int m);
  /// Fills the free slots (in order) and returns a fully pinned ansatz.
  OperatorAnsatz with_values(const std::vector<RatFun>& values) const;
  bool is_pinned() const { return free.empty(); }
  RatFun a(int k) const { return fixed.at(k); }
  /// Expanded Σ_k c_k(z) ∂^k form.
  DiffOp to_diffop() const;
};

/// The op in zi applied to a kernel, symbolically (fixed part only).
BiBesselExpr apply_op(const OperatorAnsatz& op, const BiBesselExpr& K, Var zi);

/// op_{z1}K − op_{z2}K = constant + Σ_i c_i · per_free[i].
struct LinearResidual {
  BiBesselExpr constant;
  std::vector<BiBesselExpr> per_free;
};
LinearResidual commutation_residual(const OperatorAnsatz& op, const BiBesselExpr& K);

/// The f_{μ+1}f_{μ+1} coefficient of the example-1 residual with a_1, a_0
/// free. `only_leading` is true when the leading coefficient `a` of a_1 is
/// the only unknown entering it; then coefficient = cofactor·(2T² − a).
struct PivotReport {
  bool only_leading = false;
  bool has_factor = false;
  RatFun coefficient;  // in the registered variable "a"
  RatFun cofactor;
};
PivotReport example1_pivot();

struct SolveOptions {
  unsigned max_degree = 60;
  bool symbolic_check = false;  // also verify the residual symbolically
  int random_checks = 3;
};

struct SolveReport {
  Family family;
  OperatorAnsatz op;
  std::size_t unknowns = 0;
  std::size_t nullspace_dim = 0;
  std::size_t samples = 0;  // black-box evaluations over all primes
  std::size_t primes = 0;
  bool verified_symbolically = false;
  int random_checks_passed = 0;
  double seconds = 0;
};

/// Solves op_{z1}K = op_{z2}K for the generic ansatz of the family's half-order.
/// Works at T = 1 with exact linear algebra at sampled (G, t), recovers the
/// parameter dependence by interpolation and restores T by weight homogeneity.
/// Throws NoSolution, UnderDetermined (nullspace > 0) or InterpolationFailure.
SolveReport solve_commuting_op(const Family& f, const SolveOptions& opt = {});

/// Checks that the residual vanishes at random exact points (all parameters
/// random, T included) using Taylor jets; returns false on any nonzero value.
bool residual_vanishes_at_random_points(const OperatorAnsatz& op, const BiBesselExpr& K,
                                        const std::vector<Var>& params, int trials,
                                        std::uint64_t seed = 7);

/// Slepian's 𝔸_ν = (z²−G²)∂² + 2z∂ + z²T² + G²(ν²−¼)/z².
DiffOp slepian_op(int nu);

}  // namespace tbl
