#include "tbl/spectra/galerkin.hpp"

#include <map>

namespace tbl {

namespace {

using Laurent = std::map<int, Rational>;

Laurent laurent_in_z(const RatFun& r) {
  if (r.support() & ~(1u << vars::z))
    throw InvalidArgument("galerkin: coefficient depends on more than z: " + r.str());
  Laurent out;
  for (const auto& [e, c] : r.laurent_terms()) out[e[vars::z]] += c;
  return out;
}

Laurent derivative(const Laurent& p, int order) {
  Laurent out;
  for (const auto& [e, c] : p) {
    Rational f = c;
    int k = e;
    for (int i = 0; i < order && f != 0; ++i) f *= k--;
    if (f != 0) out[k] += f;
  }
  return out;
}

// P_{2i}(z/G) = 2^{−n} Σ_k (−1)^k C(n,k) C(2n−2k, n) (z/G)^{n−2k}, n = 2i.
std::vector<Rational> legendre_even(int i, const Rational& G) {
  const unsigned n = 2 * i;
  std::vector<Rational> c(i + 1);
  const Rational scale = Rational(1) / pow(Rational(2), n);
  for (unsigned k = 0; k <= n / 2; ++k) {
    const unsigned e = n - 2 * k;
    Rational v = scale * Rational(binomial(n, k) * binomial(2 * n - 2 * k, n)) / pow(G, e);
    c[e / 2] = (k % 2) ? Rational(-v) : v;
  }
  return c;
}

}  // namespace

GalerkinSystem galerkin_system(const DiffOp& op, const Rational& G, const Rational& rho, int m) {
  if (m < 1) throw InvalidArgument("galerkin: basis size must be positive");
  if (op.variable() != vars::z) throw InvalidArgument("galerkin: operator must act in z");
  const Rational two_rho = 2 * rho;
  if (two_rho.get_den() != 1 || two_rho.get_num() % 2 == 0)
    throw InvalidArgument("galerkin: rho must be half-integral");
  const long tr = two_rho.get_num().get_si();

  // z^{−ρ}∘op∘z^ρ = Σ_k Σ_l c_k C(k,l) ρ(ρ−1)…(ρ−l+1) z^{−l} ∂^{k−l}.
  std::vector<Laurent> conj(op.order() + 1);
  for (int k = 0; k <= op.order(); ++k) {
    const Laurent ck = laurent_in_z(op.coeff(k));
    Rational fall = 1;
    for (int l = 0; l <= k; ++l) {
      if (l > 0) fall *= rho - (l - 1);
      const Rational f = Rational(binomial(k, l)) * fall;
      if (f == 0) continue;
      for (const auto& [e, c] : ck) conj[k - l][e - l] += f * c;
    }
  }

  GalerkinSystem g;
  g.G = G;
  g.rho = rho;
  g.m = m;
  g.poly.resize(m);
  std::vector<Laurent> p(m);
  for (int i = 0; i < m; ++i) {
    g.poly[i] = legendre_even(i, G);
    for (int a = 0; a <= i; ++a)
      if (g.poly[i][a] != 0) p[i][2 * a] = g.poly[i][a];
  }

  // 2∫_0^G z^{2ρ+e} dz, memoised by e.
  std::map<int, Rational> moments;
  auto moment = [&](int e) -> const Rational& {
    auto it = moments.find(e);
    if (it != moments.end()) return it->second;
    const long k = tr + e + 1;
    if (k <= 0)
      throw SingularBasis("galerkin: basis behaviour |z|^" + to_string(rho) +
                          " is not admissible for this operator at z = 0");
    return moments.emplace(e, 2 * pow(G, static_cast<unsigned>(k)) / Rational(k)).first->second;
  };

  // r(q)[a] = Σ_b q_b · moment(2a + b); then ⟨b_i, ·⟩ = Σ_a poly[i][a] r[a].
  auto project = [&](const Laurent& q, std::vector<Rational>& col) {
    std::vector<Rational> r(m);
    for (int a = 0; a < m; ++a)
      for (const auto& [b, c] : q) r[a] += c * moment(2 * a + b);
    for (int i = 0; i < m; ++i) {
      Rational s = 0;
      for (int a = 0; a <= i; ++a) s += g.poly[i][a] * r[a];
      col[i] = s;
    }
  };

  g.stiffness.assign(m, std::vector<Rational>(m));
  g.mass.assign(m, std::vector<Rational>(m));
  std::vector<Rational> col(m);
  for (int j = 0; j < m; ++j) {
    Laurent q;
    for (int d = 0; d < static_cast<int>(conj.size()); ++d) {
      if (conj[d].empty()) continue;
      const Laurent pd = derivative(p[j], d);
      for (const auto& [e1, c1] : conj[d])
        for (const auto& [e2, c2] : pd) q[e1 + e2] += c1 * c2;
    }
    std::erase_if(q, [](const auto& kv) { return kv.second == 0; });
    project(q, col);
    for (int i = 0; i < m; ++i) g.stiffness[i][j] = col[i];
    project(p[j], col);
    for (int i = 0; i < m; ++i) g.mass[i][j] = col[i];
  }
  g.symmetric = true;
  for (int i = 0; i < m && g.symmetric; ++i)
    for (int j = 0; j < i; ++j)
      if (g.stiffness[i][j] != g.stiffness[j][i]) {
        g.symmetric = false;
        break;
      }
  return g;
}

}  // namespace tbl
