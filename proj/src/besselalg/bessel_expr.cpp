#include "tbl/besselalg/bessel_expr.hpp"

#include <functional>

#include "tbl/darboux/theta.hpp"
#include "tbl/errors.hpp"

namespace tbl {
namespace {

using vars::x;
using vars::z;
using vars::z1;
using vars::z2;
using vars::T;

RatFun V(Var v, int p = 1) { return RatFun::variable(v, p); }
RatFun Qr(long p, long q = 1) { return RatFun(Rational(p, q)); }

}  // namespace

BesselExpr BesselExpr::operator+(const BesselExpr& o) const { return {mu, ca + o.ca, cb + o.cb}; }
BesselExpr BesselExpr::operator-(const BesselExpr& o) const { return {mu, ca - o.ca, cb - o.cb}; }

BesselExpr reduce_derivative(const BesselExpr& e, Var v, Route route) {
  if (v != x && v != z) throw InvalidArgument("reduce_derivative acts in x or z");
  const Var other = v == x ? z : x;
  const int mu = e.mu;
  const RatFun inv2v = V(v, -1) * Qr(1, 2);
  // ∂f_μ = a_μ f_μ + b_μ f_{μ+1}
  RatFun a_mu, b_mu;
  if (route == Route::Raising) {
    a_mu = Qr(1 + 2 * mu) * inv2v;
    b_mu = -V(other);
  } else {
    // (1−2μ)/(2v) f_μ + o·f_{μ−1},  f_{μ−1} = 2μ/(xz) f_μ − f_{μ+1}
    a_mu = Qr(1 - 2 * mu) * inv2v + V(other) * Qr(2 * mu) * V(x, -1) * V(z, -1);
    b_mu = -V(other);
  }
  // ∂f_{μ+1} = (1−2(μ+1))/(2v) f_{μ+1} + o·f_μ
  RatFun a_mu1 = V(other), b_mu1 = Qr(-1 - 2 * mu) * inv2v;
  if (route == Route::Lowering) {
    // via creation1 at ν = μ+1 and f_{μ+2} = 2(μ+1)/(xz) f_{μ+1} − f_μ
    RatFun c = Qr(3 + 2 * mu) * inv2v;
    RatFun g = -V(other);  // coefficient of f_{μ+2}
    a_mu1 = -g;
    b_mu1 = c + g * Qr(2 * (mu + 1)) * V(x, -1) * V(z, -1);
  }
  BesselExpr r;
  r.mu = mu;
  r.ca = e.ca.derivative(v) + e.ca * a_mu + e.cb * a_mu1;
  r.cb = e.cb.derivative(v) + e.ca * b_mu + e.cb * b_mu1;
  return r;
}

std::string Family::name() const {
  return (kind == Kind::Slepian ? "slepian" : "example") + std::to_string(index);
}

Family parse_family(const std::string& s) {
  auto num = [&](std::size_t pos) {
    try {
      return std::stoi(s.substr(pos));
    } catch (...) {
      throw InvalidArgument("bad family: " + s);
    }
  };
  Family f;
  if (s.rfind("slepian", 0) == 0) f = Family::slepian(num(7));
  else if (s.rfind("example", 0) == 0) f = Family::example(num(7));
  else if (s.rfind("ex", 0) == 0) f = Family::example(num(2));
  else throw InvalidArgument("unknown family '" + s + "' (use slepianN or exampleN)");
  if (f.kind == Family::Kind::Example && (f.index < 1 || f.index > 4))
    throw InvalidArgument("example must be 1..4");
  if (f.kind == Family::Kind::Slepian && (f.index < 0 || f.index > 12))
    throw InvalidArgument("slepian order must be 0..12");
  return f;
}

std::vector<Var> Family::params() const {
  using namespace vars;
  if (kind == Kind::Slepian) return {};
  switch (index) {
    case 1: return {t1};
    case 2: return {t2};
    case 3: return {t2, t3};
    default: return {t3, t4};
  }
}

Rational Family::rho() const {
  if (kind == Kind::Slepian) return Rational(2 * index + 1, 2);
  return (index == 1 || index == 3) ? Rational(1, 2) : Rational(3, 2);
}

int Family::parity() const {
  Rational r = rho() - Rational(1, 2);
  return (r.get_num().get_si() % 2 == 0) ? 1 : -1;
}

int Family::mu() const {
  if (kind == Kind::Slepian) return index;
  return index == 1 ? 1 : 2;
}

int Family::half_order() const {
  if (kind == Kind::Slepian) return 1;
  static const int m[] = {0, 2, 3, 5, 7};
  return m[index];
}

BesselExpr transformed_eigenfunction_symbolic(const Family& f) {
  BesselExpr e{f.mu(), RatFun(1), RatFun()};
  if (f.kind == Family::Kind::Slepian) return e;
  struct Step {
    int k;
    std::map<Var, Rational> extra;
  };
  std::vector<Step> steps;
  switch (f.index) {
    case 1: steps = {{2, {}}}; break;
    case 2: steps = {{3, {}}}; break;
    case 3: steps = {{3, {}}, {4, {}}}; break;
    default: steps = {{3, {{vars::t2, 0}}}, {4, {{vars::t2, 0}}}, {5, {}}}; break;
  }
  for (const auto& s : steps) {
    RatFun w = eigenfunction_logfactor(s.k, s.extra);
    BesselExpr d = reduce_derivative(e, x);
    e = (d - e.scaled(w)).scaled(V(z, -1));
    e.ca = e.ca.cancel();
    e.cb = e.cb.cancel();
  }
  return e;
}

bool BiBesselExpr::equals(const BiBesselExpr& o) const {
  return mu == o.mu && A.equals(o.A) && B.equals(o.B) && C.equals(o.C) && D.equals(o.D);
}

BiBesselExpr BiBesselExpr::operator+(const BiBesselExpr& o) const {
  return {mu, A + o.A, B + o.B, C + o.C, D + o.D};
}

BiBesselExpr BiBesselExpr::operator-(const BiBesselExpr& o) const {
  return {mu, A - o.A, B - o.B, C - o.C, D - o.D};
}

BiBesselExpr BiBesselExpr::scaled(const RatFun& r) const { return {mu, r * A, r * B, r * C, r * D}; }

BiBesselExpr BiBesselExpr::map(const std::function<RatFun(const RatFun&)>& f) const {
  return {mu, f(A), f(B), f(C), f(D)};
}

BiBesselExpr BiBesselExpr::cancel() const {
  return map([](const RatFun& r) { return r.cancel(); });
}

BiBesselExpr BiBesselExpr::derivative(Var zi) const {
  if (zi != z1 && zi != z2) throw InvalidArgument("BiBesselExpr derivative is in z1 or z2");
  const RatFun c = Qr(1 + 2 * mu, 2) * V(zi, -1);
  const RatFun t = V(T);
  // (ca, cb) ↦ (ca′ + c·ca + T·cb, cb′ − T·ca − c·cb) on the zi factor.
  auto step = [&](const RatFun& ca, const RatFun& cb) {
    return std::pair{ca.derivative(zi) + c * ca + t * cb, cb.derivative(zi) - t * ca - c * cb};
  };
  BiBesselExpr r;
  r.mu = mu;
  if (zi == z1) {
    // pairs over the z1 basis: (A,B) with f_μ(z2), (C,D) with f_{μ+1}(z2)
    std::tie(r.A, r.B) = step(A, B);
    std::tie(r.C, r.D) = step(C, D);
  } else {
    std::tie(r.A, r.C) = step(A, C);
    std::tie(r.B, r.D) = step(B, D);
  }
  return r;
}

BiBesselExpr cd_kernel_symbolic(const Family& f) {
  const BesselExpr e = transformed_eigenfunction_symbolic(f);
  const BesselExpr d = reduce_derivative(e, x);
  const MultiPoly Tp = MultiPoly::variable(T);
  auto at = [&](const RatFun& r, Var zi) {
    return r.substitute({{x, Tp}, {z, MultiPoly::variable(zi)}});
  };
  const RatFun ca1 = at(e.ca, z1), cb1 = at(e.cb, z1), da1 = at(d.ca, z1), db1 = at(d.cb, z1);
  const RatFun ca2 = at(e.ca, z2), cb2 = at(e.cb, z2), da2 = at(d.ca, z2), db2 = at(d.cb, z2);
  const RatFun q = RatFun(MultiPoly::variable(z1, 2) - MultiPoly::variable(z2, 2)).inverse();
  BiBesselExpr k;
  k.mu = e.mu;
  k.A = q * (ca1 * da2 - da1 * ca2);
  k.B = q * (cb1 * da2 - db1 * ca2);
  k.C = q * (ca1 * db2 - da1 * cb2);
  k.D = q * (cb1 * db2 - db1 * cb2);
  return k.cancel();
}

namespace {

// Truncated Laurent series Σ_{i ≥ lo} c_i x^i with RatFun coefficients.
struct Laurent {
  int lo = 0;
  std::vector<RatFun> c;  // c[j] multiplies x^{lo+j}
  RatFun at(int i) const {
    int j = i - lo;
    return (j >= 0 && j < int(c.size())) ? c[j] : RatFun();
  }
  int hi() const { return lo + int(c.size()) - 1; }
};

// Expansion of a rational function in x about 0 up to and including x^upto.
Laurent expand_at_zero(const RatFun& r, int upto) {
  const MultiPoly num = r.num(), den = r.den();
  const auto nc = num.coefficients_in(x), dc = den.coefficients_in(x);
  int k = 0;
  while (dc[k].is_zero()) ++k;
  // r = x^{-k} · N(x) / D0(x) with D0(0) = dc[k] ≠ 0
  Laurent out;
  out.lo = -k;
  const int n = upto + k + 1;
  if (n <= 0) return out;
  std::vector<RatFun> inv(n);
  const RatFun d0inv = RatFun(dc[k]).inverse();
  inv[0] = d0inv;
  for (int i = 1; i < n; ++i) {
    RatFun s;
    for (int j = 1; j <= i && k + j < int(dc.size()); ++j) s += RatFun(dc[k + j]) * inv[i - j];
    inv[i] = (-s * d0inv).cancel();
  }
  out.c.resize(n);
  for (int i = 0; i < n; ++i) {
    RatFun s;
    for (int j = 0; j <= i && j < int(nc.size()); ++j) s += RatFun(nc[j]) * inv[i - j];
    out.c[i] = s.cancel();
  }
  return out;
}

Laurent mul(const Laurent& a, const Laurent& b, int upto) {
  Laurent r;
  r.lo = a.lo + b.lo;
  if (upto < r.lo) return r;
  r.c.resize(upto - r.lo + 1);
  for (int i = a.lo; i <= a.hi(); ++i)
    for (int j = b.lo; j <= b.hi(); ++j)
      if (i + j <= upto) r.c[i + j - r.lo] += a.at(i) * b.at(j);
  return r;
}

Laurent add(const Laurent& a, const Laurent& b) {
  Laurent r;
  r.lo = std::min(a.lo, b.lo);
  int hi = std::min(a.hi(), b.hi());
  for (int i = r.lo; i <= hi; ++i) r.c.push_back(a.at(i) + b.at(i));
  return r;
}

Laurent deriv(const Laurent& a) {
  Laurent r;
  r.lo = a.lo - 1;
  for (int i = a.lo; i <= a.hi(); ++i) r.c.push_back(a.at(i) * RatFun(i));
  return r;
}

// Series of x^{-1/2} z^{-1/2} f_ν(x,z) = (xz)^ν Σ_k (−1)^k (xz/2)^{2k} / (k!(ν+k)! 2^ν)
// ... as powers of x, up to x^upto.
Laurent bessel_series(int nu, int upto) {
  Laurent r;
  r.lo = 0;
  r.c.resize(std::max(0, upto + 1));
  for (int k = 0; nu + 2 * k <= upto; ++k) {
    Rational c = Rational(1) / (Rational(Integer(1) << (2 * k + nu)));
    Integer fk = 1, fnk = 1;
    for (int i = 2; i <= k; ++i) fk *= i;
    for (int i = 2; i <= nu + k; ++i) fnk *= i;
    c /= Rational(fk * fnk);
    if (k % 2) c = -c;
    r.c[nu + 2 * k] = RatFun(c) * RatFun::variable(z, nu + 2 * k);
  }
  return r;
}

}  // namespace

RatFun wronskian_at_zero(const Family& f) {
  const BesselExpr e = transformed_eigenfunction_symbolic(f);
  // f̃ = x^{1/2} z^{1/2} g(x); W = x z1^{1/2} z2^{1/2} (g1 g2′ − g1′ g2).
  auto lowest = [](const RatFun& r) {
    if (r.is_zero()) return 1 << 20;
    const auto dc = r.den().coefficients_in(x);
    int k = 0;
    while (dc[k].is_zero()) ++k;
    return int(r.num().min_degree(x)) - k;
  };
  const int p = std::max(0, -std::min(lowest(e.ca) + e.mu, lowest(e.cb) + e.mu + 1));
  const int upto = p + 2;
  Laurent g = add(mul(expand_at_zero(e.ca, upto), bessel_series(e.mu, upto + p + 2), upto),
                  mul(expand_at_zero(e.cb, upto), bessel_series(e.mu + 1, upto + p + 2), upto));
  auto rename = [](const Laurent& l, Var zi) {
    Laurent r = l;
    for (auto& c : r.c) c = c.rename({{z, zi}});
    return r;
  };
  Laurent g1 = rename(g, z1), g2 = rename(g, z2);
  Laurent dg1 = deriv(g1);
  for (auto& c : dg1.c) c = -c;
  const Laurent w = add(mul(g1, deriv(g2), 0), mul(dg1, g2, 0));
  // x·w: coefficient of x^{-1} in w is W(0+)/√(z1z2); lower ones must vanish.
  for (int i = w.lo; i < -1; ++i)
    if (!w.at(i).cancel().is_zero())
      throw BoundaryUndetermined("Wronskian diverges as x→0⁺ for " + f.name());
  return w.at(-1).cancel();
}

BiBesselExpr displayed_kernel_literal(int example, Var s) {
  const RatFun q = RatFun(MultiPoly::variable(z1, 2) - MultiPoly::variable(z2, 2)).inverse();
  BiBesselExpr k;
  const RatFun Tt = V(T);
  if (example == 1) {
    const RatFun t1 = V(vars::t1);
    k.mu = 1;
    k.A = Qr(2) * t1 * ((t1 + Tt * Tt) * Tt * V(z1) * V(z2)).inverse();
  } else if (example == 2) {
    const RatFun ss = V(s);
    k.mu = 2;
    k.A = -Qr(4) * ss * ((ss + Tt.pow(4)) * Tt * V(z1) * V(z2)).inverse();
  } else {
    throw InvalidArgument("only examples 1 and 2 have displayed kernels");
  }
  // z1 f_μ(z1) f_{μ+1}(z2) − z2 f_{μ+1}(z1) f_μ(z2), over z1² − z2²
  k.C = V(z1) * q;
  k.B = -V(z2) * q;
  k.D = RatFun();
  return k;
}

BiBesselExpr kernel_symbolic(const Family& f) {
  if (!wronskian_at_zero(f).is_zero())
    throw BoundaryUndetermined("nonzero x→0⁺ boundary term for " + f.name());
  BiBesselExpr cd = cd_kernel_symbolic(f);
  if (f.kind == Family::Kind::Example && f.index <= 2) {
    // The displayed forms, with the corrections recorded in the docs:
    // example 1 has the CD term's sign flipped; example 2 is the negative of
    // the display with its parameter s = 4 t2 / 3.
    BiBesselExpr disp;
    if (f.index == 1) {
      disp = displayed_kernel_literal(1);
      disp.B = -disp.B;
      disp.C = -disp.C;
    } else {
      Var s = var("s");
      disp = displayed_kernel_literal(2, s).map([&](const RatFun& r) {
        return -r.substitute(s, MultiPoly::variable(vars::t2) * Rational(4, 3));
      });
    }
    if (!disp.equals(cd)) throw BoundaryUndetermined("displayed kernel disagrees with the CD form for " + f.name());
    return disp;
  }
  return cd;
}

}  // namespace tbl
