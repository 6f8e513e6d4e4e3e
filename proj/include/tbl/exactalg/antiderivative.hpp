#pragma once

#include "tbl/exactalg/ratfun.hpp"

namespace tbl {

/// The antiderivative in v that vanishes as v → +∞, when it is rational.
/// Parameters other than v are treated as an exact coefficient field.
/// Throws NonDecaying if deg_v num ≥ deg_v den, LogTermRequired if the
/// integral has a logarithmic part.
RatFun antiderivative(const RatFun& f, Var v);
inline RatFun antiderivative_x(const RatFun& f) { return antiderivative(f, vars::x); }

}  // namespace tbl
