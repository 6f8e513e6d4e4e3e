#pragma once

// High-precision real type for the spectral computations, and the Eigen
// traits it needs (Boost's own adaptor predates Eigen 3.4's requirements).

#include <Eigen/Core>
#include <boost/multiprecision/mpfr.hpp>
#include <limits>

namespace tbl {

template <unsigned Digits>
using MpReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<Digits>,
                                             boost::multiprecision::et_off>;

/// Default working precision for the spectral alignment checks.
using Mp = MpReal<130>;

}  // namespace tbl

namespace Eigen {

template <unsigned D>
struct NumTraits<tbl::MpReal<D>> : GenericNumTraits<tbl::MpReal<D>> {
  using S = tbl::MpReal<D>;
  using Real = S;
  using NonInteger = S;
  using Literal = S;
  using Nested = S;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 10,
    MulCost = 40
  };
  static S epsilon() { return std::numeric_limits<S>::epsilon(); }
  static S dummy_precision() { return 1000 * epsilon(); }
  static S highest() { return (std::numeric_limits<S>::max)(); }
  static S lowest() { return std::numeric_limits<S>::lowest(); }
  static S infinity() { return std::numeric_limits<S>::infinity(); }
  static S quiet_NaN() { return std::numeric_limits<S>::quiet_NaN(); }
  static int digits10() { return std::numeric_limits<S>::digits10; }
  static int digits() { return std::numeric_limits<S>::digits; }
};

namespace internal {
template <unsigned D>
struct cast_impl<tbl::MpReal<D>, double> {
  static double run(const tbl::MpReal<D>& x) { return x.template convert_to<double>(); }
};
}  // namespace internal

}  // namespace Eigen
