// Rational antiderivatives with parameters.
//
// The parametric problem is reduced to univariate Hermite reductions over Q
// at sample points of the parameters. The antiderivative is N/Qc for a
// candidate denominator Qc known in advance (the denominator of f with every
// v-dependent factor lowered by one power, or failing that the full
// denominator), so only the numerator N has to be reconstructed. N is fitted
// coefficient-wise in v over a monomial support: exact weighted degree when f
// is scale-homogeneous, growing total degree otherwise. Every result is
// certified by differentiating it and comparing with f exactly.
#include "tbl/exactalg/antiderivative.hpp"

#include <algorithm>

#include "tbl/errors.hpp"
#include "tbl/exactalg/interpolate.hpp"
#include "tbl/exactalg/upoly.hpp"

namespace tbl {
namespace {

struct Candidate {
  Monomial mono;
  RatFun::AtomPowers atoms;
};

MultiPoly expand(const Candidate& c) {
  MultiPoly d = MultiPoly::monomial(c.mono);
  for (const auto& [id, e] : c.atoms) d = d * atom_power(id, e);
  return d;
}

std::optional<long> weight_of(const RatFun& f) {
  auto wn = f.num().homogeneous_weight();
  if (!wn) return std::nullopt;
  long w = *wn - f.den_monomial().weight();
  for (const auto& [id, e] : f.den_atoms()) {
    auto wa = atom_poly(id).homogeneous_weight();
    if (!wa) return std::nullopt;
    w -= *wa * long(e);
  }
  return w;
}

URatFun univariate_integral(const UPoly& A, const UPoly& D) {
  if (A.degree() >= D.degree()) throw NonDecaying("integrand does not vanish at infinity");
  HermiteResult h = hermite_reduce(A, D);
  if (!h.remainder_num.is_zero()) throw LogTermRequired("antiderivative has a logarithmic part");
  return h.rational_part;
}

struct Sample {
  std::vector<Rational> point;
  UPoly N;  // numerator over the specialised candidate denominator
};

// Returns nullopt when this candidate denominator is not valid.
std::optional<RatFun> try_candidate(const RatFun& f, Var v, const std::vector<Var>& params,
                                    const Candidate& cand, std::optional<long> wf) {
  const MultiPoly Qc = expand(cand);
  const unsigned dq = Qc.degree(v);
  if (dq == 0) return std::nullopt;
  const MultiPoly fden = f.den();
  const unsigned dden = fden.degree(v);

  std::vector<int> pw;
  bool homogeneous = wf.has_value();
  for (Var p : params) {
    pw.push_back(var_weight(p));
    if (var_weight(p) <= 0) homogeneous = false;
  }
  long wN = 0;
  if (homogeneous) {
    auto wq = Qc.homogeneous_weight();
    if (!wq) homogeneous = false;
    else wN = *wf + var_weight(v) + *wq;
    if (var_weight(v) <= 0) homogeneous = false;
  }

  SamplePoints rng;
  std::vector<Sample> samples;
  auto take_samples = [&](std::size_t want) {
    int guard = 0;
    while (samples.size() < want) {
      if (++guard > int(want) * 20 + 100) throw InterpolationFailure("too many unlucky sample points");
      Sample s;
      s.point = rng.next_vector(params.size());
      std::map<Var, Rational> at;
      for (std::size_t i = 0; i < params.size(); ++i) at[params[i]] = s.point[i];
      MultiPoly dj = fden.substitute(at);
      if (dj.degree(v) != dden || dj.is_zero()) continue;
      MultiPoly qj = Qc.substitute(at);
      if (qj.degree(v) != dq) continue;
      UPoly D = UPoly::from_multipoly(dj, v);
      UPoly A = UPoly::from_multipoly(f.num().substitute(at), v);
      URatFun g = univariate_integral(A, D);
      UPoly Q = UPoly::from_multipoly(qj, v);
      auto [cof, rem] = UPoly::divmod(Q, g.den);
      if (!rem.is_zero()) return false;
      s.N = g.num * cof;
      samples.push_back(std::move(s));
    }
    return true;
  };

  auto build = [&](const std::vector<std::vector<Exponents>>& supports) -> std::optional<RatFun> {
    std::size_t need = 0;
    for (const auto& s : supports) need = std::max(need, s.size());
    if (!take_samples(need + 3)) return std::nullopt;
    std::vector<std::vector<Rational>> pts;
    for (const auto& s : samples) pts.push_back(s.point);
    MultiPoly N;
    for (unsigned i = 0; i < supports.size(); ++i) {
      std::vector<Rational> col;
      for (const auto& s : samples) col.push_back(s.N[i]);
      auto fit = fit_support(pts, supports[i], {col});
      if (!fit) return std::nullopt;
      N += poly_from_support(params, supports[i], (*fit)[0], Monomial::var(v, i));
    }
    RatFun g = RatFun::from_parts(N, cand.mono, cand.atoms);
    if (!g.derivative(v).equals(f)) return std::nullopt;
    return g;
  };

  if (homogeneous) {
    std::vector<std::vector<Exponents>> supports;
    for (unsigned i = 0; i < dq; ++i) supports.push_back(exponents_of_weight(pw, wN - long(i) * var_weight(v)));
    return build(supports);
  }
  for (unsigned d = 0; d <= 24; ++d) {
    std::vector<std::vector<Exponents>> supports(dq, exponents_up_to_degree(params.size(), d));
    if (auto g = build(supports)) return g;
  }
  return std::nullopt;
}

}  // namespace

RatFun antiderivative(const RatFun& f, Var v) {
  if (f.is_zero()) return RatFun();
  const std::uint32_t sup = f.support();
  std::vector<Var> params;
  for (Var p = 0; p < kMaxVars; ++p)
    if (p != v && ((sup >> p) & 1u)) params.push_back(p);

  const MultiPoly den = f.den();
  if (f.num().degree(v) >= den.degree(v)) throw NonDecaying("integrand does not vanish as " + var_name(v) + " → ∞");

  if (params.empty()) {
    URatFun g = univariate_integral(UPoly::from_multipoly(f.num(), v), UPoly::from_multipoly(den, v));
    return RatFun::fraction(g.num.to_multipoly(v), g.den.to_multipoly(v));
  }

  // Candidate 1: lower every v-dependent factor by one power.
  Candidate c1;
  c1.mono = f.den_monomial();
  if (c1.mono.e[v]) c1.mono.e[v]--;
  for (const auto& [id, e] : f.den_atoms()) {
    unsigned k = atom_poly(id).depends_on(v) ? e - 1 : e;
    if (k) c1.atoms.emplace_back(id, k);
  }
  Candidate c2{f.den_monomial(), f.den_atoms()};
  const auto wf = weight_of(f);
  if (auto g = try_candidate(f, v, params, c1, wf)) return *g;
  if (auto g = try_candidate(f, v, params, c2, wf)) return *g;
  throw InterpolationFailure("could not reconstruct the parametric antiderivative");
}

}  // namespace tbl
