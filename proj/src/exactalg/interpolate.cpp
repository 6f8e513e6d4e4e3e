#include "tbl/exactalg/interpolate.hpp"

#include <algorithm>

#include "tbl/errors.hpp"
#include "tbl/exactalg/linsolve.hpp"

namespace tbl {

std::vector<Exponents> exponents_of_weight(const std::vector<int>& weights, long target) {
  std::vector<Exponents> out;
  if (target < 0) return out;
  for (int w : weights)
    if (w <= 0) throw InvalidArgument("exponents_of_weight needs positive weights");
  Exponents e(weights.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, long left) -> void {
    if (i + 1 == weights.size()) {
      if (left % weights[i] == 0) {
        e[i] = static_cast<unsigned>(left / weights[i]);
        out.push_back(e);
      }
      return;
    }
    for (long k = 0; k * weights[i] <= left; ++k) {
      e[i] = static_cast<unsigned>(k);
      self(self, i + 1, left - k * weights[i]);
    }
  };
  if (weights.empty()) {
    if (target == 0) out.push_back({});
    return out;
  }
  rec(rec, 0, target);
  return out;
}

std::vector<Exponents> exponents_up_to_degree(std::size_t n, unsigned d) {
  std::vector<Exponents> out;
  Exponents e(n, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i == n) {
      out.push_back(e);
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, d);
  return out;
}

std::optional<std::vector<std::vector<Rational>>> fit_support(
    const std::vector<std::vector<Rational>>& points, const std::vector<Exponents>& support,
    const std::vector<std::vector<Rational>>& cols) {
  if (support.empty()) {
    for (const auto& c : cols)
      for (const auto& v : c)
        if (sgn(v) != 0) return std::nullopt;
    return std::vector<std::vector<Rational>>(cols.size());
  }
  QMatrix A(points.size(), support.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < support.size(); ++j) {
      Rational v = 1;
      for (std::size_t k = 0; k < support[j].size(); ++k)
        if (support[j][k]) v *= pow(points[i][k], support[j][k]);
      A(i, j) = v;
    }
  return solve_unique_multi(A, cols);
}

MultiPoly poly_from_support(const std::vector<Var>& vs, const std::vector<Exponents>& support,
                            const std::vector<Rational>& coeffs, const Monomial& extra) {
  std::vector<MultiPoly::Term> terms;
  for (std::size_t j = 0; j < support.size(); ++j) {
    if (sgn(coeffs[j]) == 0) continue;
    Monomial m = extra;
    for (std::size_t k = 0; k < vs.size(); ++k) m.e[vs[k]] = static_cast<std::uint16_t>(m.e[vs[k]] + support[j][k]);
    terms.emplace_back(m, coeffs[j]);
  }
  return MultiPoly::from_terms(std::move(terms));
}

Rational SamplePoints::next(int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  int v = 0;
  while (v == 0) v = d(rng_);
  return Rational(v);
}

std::vector<Rational> SamplePoints::next_vector(std::size_t n, int bound) {
  std::vector<Rational> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(next(bound));
  return v;
}

RatFun restore_homogeneous(const MultiPoly& at_one, int weight, Var T) {
  RatFun r;
  for (const auto& [mono, coef] : at_one.terms()) {
    long w = 0;
    for (Var v = 0; v < kMaxVars; ++v) w += long(var_weight(v)) * mono.e[v];
    r += RatFun(MultiPoly::monomial(mono) * coef) * RatFun::variable(T, int(weight - w));
  }
  return r;
}

namespace {

struct Interp {
  const SampleFn& f;
  const std::vector<Var>& vars;
  unsigned max_degree;
  SamplePoints& pts;
  std::size_t evaluations = 0;

  std::vector<MultiPoly> run(std::size_t n, std::vector<Rational>& point) {
    if (n == 0) {
      ++evaluations;
      std::vector<Rational> y = f(point);
      return {y.begin(), y.end()};
    }
    const std::size_t level = n - 1;
    std::vector<Rational> xs;
    std::vector<std::vector<MultiPoly>> newton;
    int zeros = 0;
    int skipped = 0;
    while (zeros < 2) {
      if (newton.size() > max_degree + 2)
        throw InterpolationFailure("degree in " + var_name(vars[level]) + " exceeds " +
                                   std::to_string(max_degree));
      Rational xi;
      do {
        xi = abs(pts.next(400));
      } while (std::find(xs.begin(), xs.end(), xi) != xs.end());
      point[level] = xi;
      std::vector<MultiPoly> cur;
      try {
        cur = run(level, point);
      } catch (const Error& e) {
        if ((e.kind() == "PoleError" || e.kind() == "DivisionByZero") && ++skipped < 20) continue;
        throw;
      }
      for (std::size_t j = 0; j < newton.size(); ++j) {
        const Rational inv = Rational(1) / (xi - xs[j]);
        for (std::size_t c = 0; c < cur.size(); ++c) cur[c] = (cur[c] - newton[j][c]) * inv;
      }
      bool all_zero = std::all_of(cur.begin(), cur.end(), [](const MultiPoly& p) { return p.is_zero(); });
      zeros = all_zero ? zeros + 1 : 0;
      xs.push_back(xi);
      newton.push_back(std::move(cur));
    }
    const std::size_t width = newton[0].size();
    newton.resize(newton.size() - 2);
    const MultiPoly v = MultiPoly::variable(vars[level]);
    std::vector<MultiPoly> out(width);
    for (std::size_t c = 0; c < out.size(); ++c) {
      MultiPoly p;
      for (std::size_t j = newton.size(); j-- > 0;) p = p * (v - MultiPoly(xs[j])) + newton[j][c];
      out[c] = p;
    }
    return out;
  }
};

}  // namespace

DenseInterpolation interpolate_dense(const SampleFn& f, const std::vector<Var>& vars,
                                     unsigned max_degree, SamplePoints& points) {
  Interp in{f, vars, max_degree, points};
  std::vector<Rational> point(vars.size());
  DenseInterpolation r;
  r.polys = in.run(vars.size(), point);
  r.evaluations = in.evaluations;
  return r;
}

}  // namespace tbl
