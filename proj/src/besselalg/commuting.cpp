#include "tbl/besselalg/commuting.hpp"

#include <array>
#include <chrono>
#include <random>
#include <type_traits>

#include "tbl/errors.hpp"
#include "tbl/exactalg/interpolate.hpp"
#include "tbl/exactalg/linsolve.hpp"
#include "tbl/exactalg/modular.hpp"
#include "tbl/exactalg/upoly.hpp"

namespace tbl {

using vars::G;
using vars::T;
using vars::z;
using vars::z1;
using vars::z2;

std::string Slot::name() const { return "a" + std::to_string(k) + "[z^" + std::to_string(j) + "]"; }

OperatorAnsatz OperatorAnsatz::generic(int m) {
  OperatorAnsatz op;
  op.m = m;
  op.fixed.assign(m + 1, RatFun());
  op.fixed[m] = RatFun(1);
  for (int k = 0; k < m; ++k)
    for (int j = -2 * (m - k); j <= 2 * (m - k); j += 2)
      if (k != 0 || j != 0) op.free.push_back({k, j});
  return op;
}

OperatorAnsatz OperatorAnsatz::with_values(const std::vector<RatFun>& values) const {
  if (values.size() != free.size()) throw InvalidArgument("with_values: wrong number of values");
  OperatorAnsatz r = *this;
  for (std::size_t i = 0; i < free.size(); ++i)
    r.fixed[free[i].k] += values[i] * RatFun::variable(z, free[i].j);
  r.free.clear();
  return r;
}

namespace {

RatFun weight_factor(int k, Var v) {
  RatFun w = RatFun(MultiPoly::variable(v, 2) - MultiPoly::variable(G, 2));
  return w.pow(k);
}

}  // namespace

DiffOp OperatorAnsatz::to_diffop() const {
  DiffOp r(z, {});
  for (int k = 0; k <= m; ++k) {
    if (fixed[k].is_zero()) continue;
    DiffOp mid = DiffOp::multiplication(z, weight_factor(k, z) * fixed[k]);
    r = r + compose(compose(DiffOp::d(z, k), mid), DiffOp::d(z, k));
  }
  return r;
}

DiffOp slepian_op(int nu) {
  const RatFun zz = RatFun::variable(z);
  const RatFun c0 = zz * zz * RatFun::variable(T, 2) +
                    RatFun::variable(G, 2) * RatFun(Rational(4 * nu * nu - 1, 4)) * RatFun::variable(z, -2);
  return DiffOp(z, {c0, RatFun(2) * zz, weight_factor(1, z)});
}

namespace {

BiBesselExpr d_pow(BiBesselExpr e, Var zi, int k) {
  for (int i = 0; i < k; ++i) e = e.derivative(zi).cancel();
  return e;
}

BiBesselExpr term(const std::vector<BiBesselExpr>& dk, int k, const RatFun& a, Var zi) {
  const RatFun c = weight_factor(k, zi) * a.rename({{z, zi}});
  return d_pow(dk[k].scaled(c).cancel(), zi, k);
}

}  // namespace

BiBesselExpr apply_op(const OperatorAnsatz& op, const BiBesselExpr& K, Var zi) {
  std::vector<BiBesselExpr> dk{K};
  for (int k = 1; k <= op.m; ++k) dk.push_back(dk.back().derivative(zi).cancel());
  BiBesselExpr r{K.mu, {}, {}, {}, {}};
  for (int k = 0; k <= op.m; ++k)
    if (!op.fixed[k].is_zero()) r = r + term(dk, k, op.fixed[k], zi);
  return r.cancel();
}

LinearResidual commutation_residual(const OperatorAnsatz& op, const BiBesselExpr& K) {
  std::vector<BiBesselExpr> d1{K}, d2{K};
  for (int k = 1; k <= op.m; ++k) {
    d1.push_back(d1.back().derivative(z1).cancel());
    d2.push_back(d2.back().derivative(z2).cancel());
  }
  auto both = [&](int k, const RatFun& a) { return (term(d1, k, a, z1) - term(d2, k, a, z2)).cancel(); };
  LinearResidual r;
  r.constant = BiBesselExpr{K.mu, {}, {}, {}, {}};
  for (int k = 0; k <= op.m; ++k)
    if (!op.fixed[k].is_zero()) r.constant = r.constant + both(k, op.fixed[k]);
  r.constant = r.constant.cancel();
  for (const Slot& s : op.free) r.per_free.push_back(both(s.k, RatFun::variable(z, s.j)));
  return r;
}

PivotReport example1_pivot() {
  const Family f = Family::example(1);
  const OperatorAnsatz op = OperatorAnsatz::generic(2);
  const LinearResidual lr = commutation_residual(op, kernel_symbolic(f));
  PivotReport rep;
  const Var a = var("a");
  std::size_t lead = 0;
  bool others_zero = true;
  for (std::size_t i = 0; i < op.free.size(); ++i) {
    if (op.free[i] == Slot{1, 2}) lead = i;
    else if (!lr.per_free[i].D.is_zero()) others_zero = false;
  }
  const RatFun Da = lr.per_free[lead].D;
  rep.only_leading = others_zero && !Da.is_zero();
  rep.coefficient = (lr.constant.D + RatFun::variable(a) * Da).cancel();
  // coefficient = cofactor·(2T² − a)  ⇔  constant = 2T²·cofactor, Da = −cofactor
  rep.cofactor = (-Da).cancel();
  rep.has_factor = rep.only_leading && (lr.constant.D - RatFun(2) * RatFun::variable(T, 2) * rep.cofactor).is_zero();
  return rep;
}

// ---------------------------------------------------------------------------
// Taylor jets: truncated power series in ε about a point, over Q or Z/pZ.

namespace {

struct QField {
  using Elem = Rational;
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    if (a == 0) throw PoleError("division by zero in a jet");
    return 1 / a;
  }
  Elem from_int(long v) const { return Rational(v); }
  Elem from_rational(const Rational& q) const { return q; }
};

template <class F>
using Jet = std::vector<typename F::Elem>;

template <class F>
Jet<F> jet_mul(const F& f, const Jet<F>& a, const Jet<F>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  Jet<F> r(n, f.from_int(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  return r;
}

template <class F>
Jet<F> jet_d(const F& f, const Jet<F>& a) {
  Jet<F> r(a.empty() ? 0 : a.size() - 1);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.mul(a[i + 1], f.from_int(long(i + 1)));
  return r;
}

// Taylor coefficients of P(p+ε) for P given low→high, orders 0..n−1.
template <class F>
Jet<F> poly_jet(const F& f, std::vector<typename F::Elem> c, const typename F::Elem& p, std::size_t n) {
  Jet<F> r(n, f.from_int(0));
  for (std::size_t i = 0; i < n && !c.empty(); ++i) {
    typename F::Elem acc = f.from_int(0);
    std::vector<typename F::Elem> q(c.size() - 1);
    for (std::size_t k = c.size(); k-- > 0;) {
      acc = f.add(f.mul(acc, p), c[k]);
      if (k > 0) q[k - 1] = acc;
    }
    r[i] = acc;
    c = std::move(q);
  }
  return r;
}

template <class F>
Jet<F> series_div(const F& f, const Jet<F>& a, const Jet<F>& b) {
  if (b[0] == 0) throw PoleError("jet denominator vanishes at the expansion point");
  const auto inv = f.inv(b[0]);
  Jet<F> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto s = a[i];
    for (std::size_t j = 1; j <= i && j < b.size(); ++j) s = f.sub(s, f.mul(b[j], r[i - j]));
    r[i] = f.mul(s, inv);
  }
  return r;
}

// A polynomial prepared for repeated evaluation; residues are cached per prime.
struct CompiledPoly {
  std::vector<Rational> coef;
  std::vector<Monomial> mono;
  mutable std::map<std::uint64_t, std::vector<std::uint64_t>> residues;

  explicit CompiledPoly(const MultiPoly& p) {
    for (const auto& [m, c] : p.terms()) {
      mono.push_back(m);
      coef.push_back(c);
    }
  }
  template <class F>
  typename F::Elem eval(const F& f, const std::vector<typename F::Elem>& vals) const {
    auto acc = f.from_int(0);
    const std::vector<std::uint64_t>* res = nullptr;
    if constexpr (std::is_same_v<F, ModP>) {
      auto it = residues.find(f.p);
      if (it == residues.end()) {
        std::vector<std::uint64_t> r;
        for (const auto& c : coef) r.push_back(f.from_rational(c));
        it = residues.emplace(f.p, std::move(r)).first;
      }
      res = &it->second;
    }
    for (std::size_t i = 0; i < mono.size(); ++i) {
      typename F::Elem t;
      if constexpr (std::is_same_v<F, ModP>) t = (*res)[i];
      else t = f.from_rational(coef[i]);
      for (Var v = 0; v < kMaxVars; ++v)
        for (unsigned e = 0; e < mono[i].e[v]; ++e) t = f.mul(t, vals[v]);
      acc = f.add(acc, t);
    }
    return acc;
  }
};

// One kernel coefficient as num/den polynomials in zi with coefficients in
// the remaining variables.
struct CompiledCoeff {
  std::vector<CompiledPoly> num, den;
};

struct CompiledKernel {
  int mu = 0;
  std::array<std::array<CompiledCoeff, 4>, 2> side;  // [z1|z2][A..D]

  explicit CompiledKernel(const BiBesselExpr& K) : mu(K.mu) {
    const RatFun* cs[4] = {&K.A, &K.B, &K.C, &K.D};
    for (int s = 0; s < 2; ++s) {
      const Var v = s == 0 ? z1 : z2;
      for (int i = 0; i < 4; ++i) {
        for (const auto& c : cs[i]->num().coefficients_in(v)) side[s][i].num.emplace_back(c);
        if (cs[i]->is_zero()) continue;
        for (const auto& c : cs[i]->den().coefficients_in(v)) side[s][i].den.emplace_back(c);
      }
    }
  }
};

template <class F>
struct BiJet {
  std::array<Jet<F>, 4> c;  // A, B, C, D
};

// ∂ in zi of a BiJet; pairs (A,B),(C,D) for z1 and (A,C),(B,D) for z2.
template <class F>
BiJet<F> bijet_d(const F& f, const BiJet<F>& e, bool first, const Jet<F>& cjet, const typename F::Elem& Tv) {
  BiJet<F> r;
  auto step = [&](int ia, int ib) {
    const Jet<F>& ca = e.c[ia];
    const Jet<F>& cb = e.c[ib];
    Jet<F> da = jet_d(f, ca), db = jet_d(f, cb), cca = jet_mul(f, cjet, ca), ccb = jet_mul(f, cjet, cb);
    const std::size_t n = da.size();
    r.c[ia].resize(n);
    r.c[ib].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      r.c[ia][i] = f.add(f.add(da[i], cca[i]), f.mul(Tv, cb[i]));
      r.c[ib][i] = f.sub(f.sub(db[i], f.mul(Tv, ca[i])), ccb[i]);
    }
  };
  if (first) {
    step(0, 1);
    step(2, 3);
  } else {
    step(0, 2);
    step(1, 3);
  }
  return r;
}

// Derivative jets ∂^k K at one point on one side, k = 0..m.
template <class F>
struct SideJets {
  typename F::Elem p;
  Jet<F> cjet;  // (1+2μ)/(2(p+ε))
  std::vector<BiJet<F>> dk;
};

template <class F>
struct PointJets {
  SideJets<F> s[2];
};

// vals: every variable set except z1, z2 (indexed by Var).
template <class F>
PointJets<F> point_jets(const F& f, const CompiledKernel& K, std::vector<typename F::Elem> vals,
                        const typename F::Elem& p1, const typename F::Elem& p2, int m) {
  const std::size_t n = 2 * m + 1;
  const auto Tv = vals[T];
  vals[z1] = p1;
  vals[z2] = p2;
  PointJets<F> pj;
  for (int s = 0; s < 2; ++s) {
    SideJets<F>& sj = pj.s[s];
    sj.p = s == 0 ? p1 : p2;
    BiJet<F> k0;
    for (int i = 0; i < 4; ++i) {
      const CompiledCoeff& cc = K.side[s][i];
      if (cc.den.empty()) {
        k0.c[i].assign(n, f.from_int(0));
        continue;
      }
      std::vector<typename F::Elem> num, den;
      for (const auto& c : cc.num) num.push_back(c.eval(f, vals));
      for (const auto& c : cc.den) den.push_back(c.eval(f, vals));
      k0.c[i] = series_div(f, poly_jet(f, num, sj.p, n), poly_jet(f, den, sj.p, n));
    }
    Jet<F> num(n, f.from_int(0)), den(n, f.from_int(0));
    num[0] = f.mul(f.from_int(1 + 2 * K.mu), f.inv(f.from_int(2)));
    den[0] = sj.p;
    if (n > 1) den[1] = f.from_int(1);
    sj.cjet = series_div(f, num, den);
    sj.dk.push_back(k0);
    for (int k = 1; k <= m; ++k) sj.dk.push_back(bijet_d(f, sj.dk.back(), s == 0, sj.cjet, Tv));
  }
  return pj;
}

// Value at the point of ∂^k[(z²−G²)^k z^j ∂^k K] on one side.
template <class F>
std::array<typename F::Elem, 4> side_term(const F& f, const SideJets<F>& s, bool first, int k, int j,
                                          const typename F::Elem& Gv, const typename F::Elem& Tv) {
  const std::size_t n = s.dk[k].c[0].size();
  Jet<F> w(n, f.from_int(0)), lin(n, f.from_int(0)), quad(n, f.from_int(0));
  w[0] = f.from_int(1);
  lin[0] = s.p;
  if (n > 1) lin[1] = f.from_int(1);
  quad[0] = f.sub(f.mul(s.p, s.p), f.mul(Gv, Gv));
  if (n > 1) quad[1] = f.add(s.p, s.p);
  if (n > 2) quad[2] = f.from_int(1);
  for (int i = 0; i < k; ++i) w = jet_mul(f, w, quad);
  for (int i = 0; i < std::abs(j); ++i) w = j > 0 ? jet_mul(f, w, lin) : series_div(f, w, lin);
  BiJet<F> e;
  for (int i = 0; i < 4; ++i) e.c[i] = jet_mul(f, w, s.dk[k].c[i]);
  for (int i = 0; i < k; ++i) e = bijet_d(f, e, first, s.cjet, Tv);
  return {e.c[0][0], e.c[1][0], e.c[2][0], e.c[3][0]};
}

// Pinned part of an operator: coefficient c of ∂^k(z²−G²)^k z^j ∂^k.
template <class F>
struct PinnedTerm {
  int k, j;
  typename F::Elem c;
};

// Rows [A | b] of the linear system: four equations per point.
template <class F>
std::vector<std::vector<typename F::Elem>> assemble(const F& f, const std::vector<Slot>& free,
                                                    const std::vector<PinnedTerm<F>>& pinned,
                                                    const std::vector<PointJets<F>>& pts,
                                                    const typename F::Elem& Gv, const typename F::Elem& Tv) {
  std::vector<std::vector<typename F::Elem>> rows(4 * pts.size(),
                                                  std::vector<typename F::Elem>(free.size() + 1, f.from_int(0)));
  for (std::size_t p = 0; p < pts.size(); ++p) {
    auto diff = [&](int k, int j) {
      auto a = side_term(f, pts[p].s[0], true, k, j, Gv, Tv);
      auto b = side_term(f, pts[p].s[1], false, k, j, Gv, Tv);
      for (int i = 0; i < 4; ++i) a[i] = f.sub(a[i], b[i]);
      return a;
    };
    for (std::size_t u = 0; u < free.size(); ++u) {
      auto v = diff(free[u].k, free[u].j);
      for (int i = 0; i < 4; ++i) rows[4 * p + i][u] = v[i];
    }
    for (const auto& t : pinned) {
      auto v = diff(t.k, t.j);
      for (int i = 0; i < 4; ++i) rows[4 * p + i].back() = f.sub(rows[4 * p + i].back(), f.mul(t.c, v[i]));
    }
  }
  return rows;
}

}  // namespace

bool residual_vanishes_at_random_points(const OperatorAnsatz& op, const BiBesselExpr& K,
                                        const std::vector<Var>& params, int trials,
                                        std::uint64_t seed) {
  const QField f;
  const CompiledKernel ck(K);
  SamplePoints sp(seed);
  for (int t = 0; t < trials; ++t) {
    std::vector<Rational> vals(kMaxVars);
    std::map<Var, Rational> pv;
    const Rational Gv = sp.next(50) / 3, Tv = abs(sp.next(50)) / 11;
    vals[T] = Tv;
    pv[G] = Gv;
    pv[T] = Tv;
    for (Var v : params) vals[v] = pv[v] = sp.next(50) / 13;
    std::vector<PinnedTerm<QField>> pinned;
    for (int k = 0; k <= op.m; ++k)
      for (const auto& [e, c] : op.fixed[k].substitute(pv).laurent_terms()) pinned.push_back({k, e[z], c});
    Rational p1 = sp.next(60) / 7, p2 = sp.next(60) / 5;
    if (abs(p1) == abs(p2)) p2 += 1;
    const auto pj = point_jets(f, ck, vals, p1, p2, op.m);
    for (const auto& row : assemble(f, {}, pinned, std::vector{pj}, Gv, Tv))
      if (row.back() != 0) return false;
  }
  return true;
}

SolveReport solve_commuting_op(const Family& f, const SolveOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveReport rep;
  rep.family = f;
  const BiBesselExpr K = kernel_symbolic(f);
  const CompiledKernel ck(K);
  const OperatorAnsatz ans = OperatorAnsatz::generic(f.half_order());
  rep.unknowns = ans.free.size();
  const std::vector<Var> params = f.params();
  const int m = ans.m;
  const std::size_t npts = (ans.free.size() + 3) / 4 + 3;

  std::vector<Var> ivars{G};
  ivars.insert(ivars.end(), params.begin(), params.end());
  MultiModularLift lift;
  std::optional<std::vector<MultiPoly>> lifted;
  for (std::uint64_t prime : large_primes(12)) {
    const ModP F{prime};
    // Kernel jets depend on the t-values only; cache them across G samples.
    std::map<std::vector<std::uint64_t>, std::vector<PointJets<ModP>>> cache;
    std::mt19937_64 zrng(prime);
    auto jets_for = [&](const std::vector<std::uint64_t>& tv, std::size_t count) -> const std::vector<PointJets<ModP>>& {
      auto& slot = cache[tv];
      std::vector<std::uint64_t> vals(kMaxVars, 0);
      vals[T] = 1;
      for (std::size_t i = 0; i < params.size(); ++i) vals[params[i]] = tv[i];
      while (slot.size() < count) {
        const std::uint64_t p1 = zrng() % prime, p2 = zrng() % prime;
        if (p1 == p2 || F.add(p1, p2) == 0) continue;
        try {
          slot.push_back(point_jets(F, ck, vals, p1, p2, m));
        } catch (const Error&) {
        }
      }
      return slot;
    };
    const std::vector<PinnedTerm<ModP>> pinned{{m, 0, 1}};
    auto sample = [&](const std::vector<std::uint64_t>& point) {
      std::vector<std::uint64_t> tv(point.begin() + 1, point.end());
      std::size_t count = npts;
      for (int attempt = 0;; ++attempt) {
        const auto& pj = jets_for(tv, count);
        std::vector<PointJets<ModP>> use(pj.begin(), pj.begin() + count);
        ModSolution sol = solve_mod(assemble(F, ans.free, pinned, use, point[0], std::uint64_t(1)), ans.free.size(), F);
        if (!sol.consistent) throw NoSolution("commutation equations inconsistent for " + f.name());
        if (sol.nullity == 0) return sol.particular;
        if (attempt == 1) {
          rep.nullspace_dim = sol.nullity;
          throw UnderDetermined("solution space has dimension " + std::to_string(sol.nullity) +
                                " beyond the normalization for " + f.name());
        }
        count *= 2;
      }
    };
    ModInterpolation mi = interpolate_dense_mod(sample, ivars.size(), opt.max_degree, F, prime ^ 0x5eed);
    rep.samples += mi.evaluations;
    lift.add(prime, mi.polys);
    if ((lifted = lift.stable(ivars))) break;
  }
  if (!lifted) throw InterpolationFailure("rational reconstruction did not stabilise for " + f.name());
  rep.primes = lift.primes_used();

  std::vector<RatFun> vals;
  for (std::size_t i = 0; i < ans.free.size(); ++i) vals.push_back(restore_homogeneous((*lifted)[i], ans.free[i].j, T));
  rep.op = ans.with_values(vals);

  if (opt.random_checks > 0) {
    if (!residual_vanishes_at_random_points(rep.op, K, params, opt.random_checks))
      throw NoSolution("reconstructed operator fails the exact residual check for " + f.name());
    rep.random_checks_passed = opt.random_checks;
  }
  if (opt.symbolic_check) {
    const LinearResidual lr = commutation_residual(rep.op, K);
    if (!lr.constant.is_zero()) throw NoSolution("symbolic residual is nonzero for " + f.name());
    rep.verified_symbolically = true;
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace tbl
