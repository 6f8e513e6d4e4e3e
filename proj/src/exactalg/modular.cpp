#include "tbl/exactalg/modular.hpp"

#include <algorithm>
#include <random>

#include "tbl/errors.hpp"

namespace tbl {

std::uint64_t ModP::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t ModP::inv(std::uint64_t a) const {
  if (a % p == 0) throw DivisionByZero("no inverse of 0 mod p");
  return pow(a, p - 2);
}

std::uint64_t ModP::from_int(long v) const {
  long r = v % static_cast<long>(p);
  return r < 0 ? static_cast<std::uint64_t>(r + static_cast<long>(p)) : static_cast<std::uint64_t>(r);
}

namespace {
std::uint64_t mpz_mod_u64(const Integer& z, std::uint64_t p) {
  Integer r;
  Integer P;
  mpz_import(P.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
  mpz_mod(r.get_mpz_t(), z.get_mpz_t(), P.get_mpz_t());
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, r.get_mpz_t());
  return out;
}
}  // namespace

std::uint64_t ModP::from_rational(const Rational& q) const {
  const std::uint64_t d = mpz_mod_u64(q.get_den(), p);
  if (d == 0) throw DivisionByZero("denominator vanishes mod p");
  return mul(mpz_mod_u64(q.get_num(), p), inv(d));
}

std::vector<std::uint64_t> large_primes(std::size_t count) {
  std::vector<std::uint64_t> out;
  Integer c = (Integer(1) << 62) - 1;
  while (out.size() < count) {
    if (mpz_probab_prime_p(c.get_mpz_t(), 40)) out.push_back(c.get_ui());
    c -= 2;
  }
  return out;
}

ModSolution solve_mod(std::vector<std::vector<std::uint64_t>> rows, std::size_t cols, const ModP& F) {
  // rows hold [A | b]
  const std::size_t n = rows.size();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < n; ++c) {
    std::size_t piv = r;
    while (piv < n && rows[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(rows[r], rows[piv]);
    const std::uint64_t inv = F.inv(rows[r][c]);
    for (std::size_t k = c; k <= cols; ++k) rows[r][k] = F.mul(rows[r][k], inv);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const std::uint64_t f = rows[i][c];
      for (std::size_t k = c; k <= cols; ++k) rows[i][k] = F.sub(rows[i][k], F.mul(f, rows[r][k]));
    }
    pivots.push_back(c);
    ++r;
  }
  ModSolution s;
  for (std::size_t i = r; i < n; ++i)
    if (rows[i][cols] != 0) s.consistent = false;
  s.nullity = cols - pivots.size();
  s.particular.assign(cols, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) s.particular[pivots[i]] = rows[i][cols];
  return s;
}

namespace {

struct ModInterp {
  const ModSampleFn& f;
  std::size_t nvars;
  unsigned max_degree;
  const ModP& F;
  std::mt19937_64 rng;
  std::size_t evaluations = 0;

  ModPoly combine(const ModPoly& a, const ModPoly& b, std::uint64_t scale_b) {
    ModPoly r = a;
    for (const auto& [e, c] : b) {
      auto& slot = r[e];
      slot = F.add(slot, F.mul(c, scale_b));
      if (slot == 0) r.erase(e);
    }
    return r;
  }

  std::vector<ModPoly> run(std::size_t n, std::vector<std::uint64_t>& point) {
    if (n == 0) {
      ++evaluations;
      std::vector<std::uint64_t> y = f(point);
      std::vector<ModPoly> out(y.size());
      for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i]) out[i][std::vector<unsigned>(nvars, 0)] = y[i];
      return out;
    }
    const std::size_t level = n - 1;
    std::vector<std::uint64_t> xs;
    std::vector<std::vector<ModPoly>> newton;
    int zeros = 0, skipped = 0;
    std::uniform_int_distribution<std::uint64_t> dist(1, 1000000);
    while (zeros < 2) {
      if (newton.size() > max_degree + 2)
        throw InterpolationFailure("degree bound " + std::to_string(max_degree) + " exceeded");
      std::uint64_t xi;
      do xi = dist(rng);
      while (std::find(xs.begin(), xs.end(), xi) != xs.end());
      point[level] = xi;
      std::vector<ModPoly> cur;
      try {
        cur = run(level, point);
      } catch (const Error& e) {
        if ((e.kind() == "PoleError" || e.kind() == "DivisionByZero") && ++skipped < 20) continue;
        throw;
      }
      for (std::size_t j = 0; j < newton.size(); ++j) {
        const std::uint64_t inv = F.inv(F.sub(xi, xs[j]));
        for (std::size_t c = 0; c < cur.size(); ++c) {
          ModPoly d = combine(cur[c], newton[j][c], F.neg(1));
          for (auto& [e, v] : d) v = F.mul(v, inv);
          cur[c] = std::move(d);
        }
      }
      const bool all_zero = std::all_of(cur.begin(), cur.end(), [](const ModPoly& p) { return p.empty(); });
      zeros = all_zero ? zeros + 1 : 0;
      xs.push_back(xi);
      newton.push_back(std::move(cur));
    }
    const std::size_t width = newton[0].size();
    newton.resize(newton.size() - 2);
    std::vector<ModPoly> out(width);
    for (std::size_t c = 0; c < width; ++c) {
      ModPoly p;
      for (std::size_t j = newton.size(); j-- > 0;) {
        // p ← p·(v − x_j) + newton_j
        ModPoly q;
        for (const auto& [e, v] : p) {
          auto up = e;
          ++up[level];
          q[up] = F.add(q[up], v);
          q[e] = F.sub(q[e], F.mul(v, xs[j]));
        }
        for (auto it = q.begin(); it != q.end();) it = it->second ? std::next(it) : q.erase(it);
        p = combine(q, newton[j][c], 1);
      }
      out[c] = std::move(p);
    }
    return out;
  }
};

}  // namespace

ModInterpolation interpolate_dense_mod(const ModSampleFn& f, std::size_t nvars, unsigned max_degree,
                                       const ModP& F, std::uint64_t seed) {
  ModInterp in{f, nvars, max_degree, F, std::mt19937_64(seed)};
  std::vector<std::uint64_t> point(nvars);
  ModInterpolation r;
  r.polys = in.run(nvars, point);
  r.evaluations = in.evaluations;
  return r;
}

std::optional<Rational> rational_reconstruct(const Integer& a, const Integer& M) {
  // Wang's algorithm via the half extended Euclidean sequence.
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(M / 2).get_mpz_t());
  Integer r0 = M, r1 = ((a % M) + M) % M, s0 = 0, s1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), s1.get_mpz_t());
  if (g != 1) return std::nullopt;
  Rational q(r1, s1);
  q.canonicalize();
  return q;
}

void MultiModularLift::add(std::uint64_t prime, const std::vector<ModPoly>& polys) {
  if (primes_ == 0) {
    width_ = polys.size();
    residues_.assign(width_, {});
  }
  if (polys.size() != width_) throw InvalidArgument("MultiModularLift: width mismatch");
  const Integer P(static_cast<unsigned long>(prime));
  // CRT: x ≡ r (mod M), x ≡ s (mod P)  ⇒  x = r + M·((s − r)·M⁻¹ mod P)
  Integer Minv;
  mpz_invert(Minv.get_mpz_t(), modulus_.get_mpz_t(), P.get_mpz_t());
  for (std::size_t c = 0; c < width_; ++c) {
    std::map<std::vector<unsigned>, Integer> next;
    auto merge = [&](const std::vector<unsigned>& e, const Integer& r, const Integer& s) {
      Integer d = ((s - r) % P + P) % P;
      Integer x = r + modulus_ * ((d * Minv) % P);
      if (x != 0) next[e] = x;
    };
    for (const auto& [e, r] : residues_[c]) {
      auto it = polys[c].find(e);
      merge(e, r, it == polys[c].end() ? Integer(0) : Integer(static_cast<unsigned long>(it->second)));
    }
    for (const auto& [e, s] : polys[c])
      if (!residues_[c].count(e)) merge(e, Integer(0), Integer(static_cast<unsigned long>(s)));
    residues_[c] = std::move(next);
  }
  modulus_ *= P;
  ++primes_;
  previous_ = std::move(current_);
  current_ = reconstruct();
}

std::optional<std::vector<std::map<std::vector<unsigned>, Rational>>> MultiModularLift::reconstruct() const {
  std::vector<std::map<std::vector<unsigned>, Rational>> out(width_);
  for (std::size_t c = 0; c < width_; ++c)
    for (const auto& [e, r] : residues_[c]) {
      auto q = rational_reconstruct(r, modulus_);
      if (!q) return std::nullopt;
      out[c][e] = *q;
    }
  return out;
}

std::optional<std::vector<MultiPoly>> MultiModularLift::stable(const std::vector<Var>& vars) const {
  if (!current_ || !previous_ || *current_ != *previous_) return std::nullopt;
  std::vector<MultiPoly> out;
  for (const auto& m : *current_) {
    std::vector<MultiPoly::Term> terms;
    for (const auto& [e, q] : m) {
      Monomial mono;
      for (std::size_t i = 0; i < vars.size(); ++i) mono.e[vars[i]] = static_cast<std::uint16_t>(e[i]);
      terms.emplace_back(mono, q);
    }
    out.push_back(MultiPoly::from_terms(std::move(terms)));
  }
  return out;
}

}  // namespace tbl
