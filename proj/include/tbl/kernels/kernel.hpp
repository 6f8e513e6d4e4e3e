#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "tbl/besselnum/eigenfunction.hpp"
#include "tbl/numeric/gauss.hpp"

namespace tbl {

/// K(z1,z2) = ∫_0^T f̃(x,z1) f̃(x,z2) dx for one family; G is carried for the
/// spectral layer.
struct KernelSpec {
  Family family;
  Rational T = 1, G = 1;
  ParamValues params;

  static KernelSpec unit(const Family& f);
  static KernelSpec standard(const Family& f);
  EigenfunctionChain chain() const { return {family, params}; }
  std::string str() const;
};

/// The kernel's exact BiBesselExpr with T and the parameters substituted:
/// coefficients rational in (z1, z2). Cached per spec.
struct KernelExprs {
  int mu = 0;
  RatFun A, B, C, D;
};
const KernelExprs& kernel_exprs(const KernelSpec& s);

struct QuadratureOptions {
  double eps = 1e-10;   // left end of [eps, T]
  double tol = 1e-12;   // stop when |Δ| ≤ tol·(1 + |K|)
  int order = 20;       // Gauss–Legendre points per panel
  int max_doublings = 20;
};

template <class S>
class Kernel {
 public:
  explicit Kernel(const KernelSpec& spec)
      : spec_(spec),
        f_(spec.chain()),
        T_(rational_to<S>(spec.T)),
        poles_(pole_count(spec.chain(), spec.T)) {
    const KernelExprs& e = kernel_exprs(spec);
    mu_ = e.mu;
    A_ = Bivariate<S>(e.A, vars::z1, vars::z2);
    B_ = Bivariate<S>(e.B, vars::z1, vars::z2);
    C_ = Bivariate<S>(e.C, vars::z1, vars::z2);
    D_ = Bivariate<S>(e.D, vars::z1, vars::z2);
  }

  const KernelSpec& spec() const { return spec_; }
  const Eigenfunction<S>& eigenfunction() const { return f_; }
  /// False when f̃ has a pole in (0, T]; the integral then diverges.
  bool admissible() const { return poles_ == 0; }

  /// Closed form: the symbolic kernel at x = T (the x → 0⁺ piece is zero
  /// exactly). Throws NearDiagonal for |z1| ≈ |z2|, PoleError if inadmissible.
  S closed(S z1, S z2) const {
    require_admissible();
    clamp(z1);
    clamp(z2);
    check_off_diagonal(z1, z2);
    const S a1 = f_nu(mu_, T_, z1), b1 = f_nu(mu_ + 1, T_, z1);
    const S a2 = f_nu(mu_, T_, z2), b2 = f_nu(mu_ + 1, T_, z2);
    S k = S(0);
    if (!A_.is_zero()) k += A_(z1, z2) * a1 * a2;
    if (!B_.is_zero()) k += B_(z1, z2) * b1 * a2;
    if (!C_.is_zero()) k += C_(z1, z2) * a1 * b2;
    if (!D_.is_zero()) k += D_(z1, z2) * b1 * b2;
    return k;
  }

  /// [f̃(x,z1)∂_x f̃(x,z2) − ∂_x f̃(x,z1)f̃(x,z2)] / (z1² − z2²).
  S cd_antiderivative(const S& x, S z1, S z2) const {
    clamp(z1);
    clamp(z2);
    check_off_diagonal(z1, z2);
    return wronskian(x, z1, z2) / (z1 * z1 - z2 * z2);
  }

  /// Adaptive composite Gauss–Legendre on [eps, T] with panel doubling.
  /// PoleError if inadmissible (the integrand is not integrable).
  S quadrature(S z1, S z2, const QuadratureOptions& o = {}) const {
    using std::abs;
    require_admissible();
    clamp(z1);
    clamp(z2);
    if (rule_.size() != static_cast<std::size_t>(o.order)) rule_ = gauss_legendre<S>(o.order, S(0), S(1));
    const S a = S(o.eps), len = T_ - a;
    S prev = integrate(z1, z2, a, len, 1);
    for (int d = 1, panels = 2; d <= o.max_doublings; ++d, panels *= 2) {
      S cur = integrate(z1, z2, a, len, panels);
      if (abs(cur - prev) <= S(o.tol) * (S(1) + abs(cur))) return cur;
      prev = cur;
    }
    throw NonConvergent("kernel_quadrature: no convergence after " + std::to_string(o.max_doublings) +
                        " doublings for " + spec_.str());
  }

  /// Closed form off the diagonal, quadrature on it.
  S operator()(const S& z1, const S& z2) const {
    try {
      return closed(z1, z2);
    } catch (const NearDiagonal&) {
      return quadrature(z1, z2);
    }
  }

  /// Richardson estimate of lim_{x→0⁺} of the CD antiderivative from
  /// x ∈ {1e−2, 5e−3, 2.5e−3}. Diagnostic: the limit is zero exactly.
  S boundary_richardson(S z1, S z2) const {
    clamp(z1);
    clamp(z2);
    check_off_diagonal(z1, z2);
    const S h = S(1) / 100;
    const S w0 = cd_antiderivative(h, z1, z2), w1 = cd_antiderivative(h / 2, z1, z2),
            w2 = cd_antiderivative(h / 4, z1, z2);
    const S r0 = S(2) * w1 - w0, r1 = S(2) * w2 - w1;
    return (S(4) * r1 - r0) / 3;
  }

 private:
  KernelSpec spec_;
  Eigenfunction<S> f_;
  S T_;
  int poles_ = 0;
  int mu_ = 0;
  Bivariate<S> A_, B_, C_, D_;
  mutable QuadratureRule<S> rule_;

  void require_admissible() const {
    if (!admissible())
      throw PoleError(spec_.str() + ": f̃ has " + std::to_string(poles_) + " pole(s) in (0, T]");
  }
  static void clamp(S& z) {
    using std::abs;
    const S floor = S(1e-8);
    if (abs(z) < floor) z = z < 0 ? S(-floor) : floor;
  }
  static void check_off_diagonal(const S& z1, const S& z2) {
    using std::abs;
    if (abs(z1 * z1 - z2 * z2) < S(1e-8) * (z1 * z1 + z2 * z2))
      throw NearDiagonal("|z1| and |z2| too close for the closed form");
  }
  S wronskian(const S& x, const S& z1, const S& z2) const {
    return f_(x, z1) * f_.dx(x, z2) - f_.dx(x, z1) * f_(x, z2);
  }
  S integrate(const S& z1, const S& z2, const S& a, const S& len, int panels) const {
    const S h = len / panels;
    S sum = S(0);
    for (int p = 0; p < panels; ++p) {
      const S left = a + h * p;
      for (std::size_t i = 0; i < rule_.size(); ++i) {
        const S x = left + h * rule_.nodes[i];
        sum += h * rule_.weights[i] * f_(x, z1) * f_(x, z2);
      }
    }
    return sum;
  }
};

/// [K(z_i, z_j)] on a node set, symmetric by construction.
template <class S>
Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> kernel_matrix(const Kernel<S>& k, const std::vector<S>& z) {
  const Eigen::Index n = static_cast<Eigen::Index>(z.size());
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) m(i, j) = m(j, i) = k(z[i], z[j]);
  return m;
}

}  // namespace tbl
