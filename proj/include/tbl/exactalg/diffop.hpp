#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tbl/exactalg/ratfun.hpp"

namespace tbl {

/// Σ_k c_k(v) ∂_v^k with rational-function coefficients. Trailing zero
/// coefficients are trimmed, so order() is the true order.
class DiffOp {
 public:
  DiffOp() = default;
  DiffOp(Var v, std::vector<RatFun> coeffs);
  static DiffOp identity(Var v) { return DiffOp(v, {RatFun(1)}); }
  static DiffOp multiplication(Var v, const RatFun& f) { return DiffOp(v, {f}); }
  static DiffOp d(Var v, unsigned power = 1);

  Var variable() const { return var_; }
  int order() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<RatFun>& coeffs() const { return c_; }
  RatFun coeff(std::size_t k) const { return k < c_.size() ? c_[k] : RatFun(); }

  friend DiffOp operator+(const DiffOp& a, const DiffOp& b);
  friend DiffOp operator-(const DiffOp& a, const DiffOp& b);
  friend DiffOp operator*(const RatFun& f, const DiffOp& a);
  DiffOp operator-() const;
  /// A∘B via the Leibniz rule ∂^i b = Σ_l C(i,l) b^{(l)} ∂^{i−l}.
  friend DiffOp compose(const DiffOp& a, const DiffOp& b);
  DiffOp pow(unsigned n) const;
  RatFun apply(const RatFun& f) const;

  bool equals(const DiffOp& o) const;
  bool operator==(const DiffOp& o) const { return equals(o); }

  DiffOp map_coeffs(const std::function<RatFun(const RatFun&)>& f) const;
  std::string str() const;

 private:
  Var var_ = vars::z;
  std::vector<RatFun> c_;
  void trim();
};

}  // namespace tbl
