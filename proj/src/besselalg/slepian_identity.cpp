#include "tbl/besselalg/slepian_identity.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "tbl/errors.hpp"
#include "tbl/exactalg/interpolate.hpp"
#include "tbl/exactalg/linsolve.hpp"

namespace tbl {

using vars::G;
using vars::T;
using vars::z;

DiffOp a_polynomial(const std::vector<APolyTerm>& terms) {
  std::map<std::pair<int, int>, DiffOp> powers;
  std::function<const DiffOp&(int, int)> power = [&](int nu, int p) -> const DiffOp& {
    auto key = std::pair{nu, p};
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    DiffOp r = p == 0 ? DiffOp::identity(z) : compose(power(nu, p - 1), slepian_op(nu));
    return powers.emplace(key, std::move(r)).first->second;
  };
  DiffOp r(z, {});
  for (const auto& t : terms) r = r + t.coeff * power(t.nu, t.power);
  return r;
}

namespace {

RatFun Rq(long p, long q = 1) { return RatFun(Rational(p, q)); }
RatFun Gp(int k) { return RatFun::variable(G, k); }
RatFun Tp(int k) { return RatFun::variable(T, k); }
RatFun GT2() { return Gp(2) * Tp(2); }

}  // namespace

std::vector<APolyTerm> displayed_a_polynomial(int example, Var s) {
  using vars::t1;
  using vars::t2;
  using vars::t3;
  const RatFun gt = GT2();
  switch (example) {
    case 1:
      return {{1, 2, 2}, {Rq(-3, 2), 2, 1}, {Rq(-11, 2) * gt, 0, 0},
              {Rq(2) * RatFun::variable(t1) * Gp(2), 0, 1}};
    case 2:
      return {{1, 3, 3},
              {Rq(-29, 4), 3, 2},
              {(Rq(195) - Rq(256) * gt) * Rq(1, 16), 3, 1},
              {Rq(435, 8) * gt, 3, 0},
              {Rq(3) * Gp(2) * RatFun::variable(s), 1, 1}};
    case 3: {
      const RatFun T2 = RatFun::variable(t2), T3 = RatFun::variable(t3), g4 = Gp(4);
      const RatFun gt2 = gt * gt;
      std::vector<APolyTerm> r = {
          {1, 4, 5},
          {Rq(-95, 4), 4, 4},
          {-(Rq(320) * gt - Rq(1549)) * Rq(1, 8), 4, 3},
          {(Rq(22336) * gt - Rq(19703)) * Rq(1, 32), 4, 2},
          {(Rq(36864) * gt2 - Rq(971648) * gt + Rq(162645)) * Rq(1, 256), 4, 1},
          {-(Rq(84726) * gt2 - Rq(399805) * gt) * Rq(1, 64), 4, 0},
          {T2 * T2 * Rq(-320, 9) * Gp(8), 2, 1},
          {T2 * T2 * Rq(80, 9) * Gp(8), 4, 1},
          {T3 * Rq(16, 3) * Gp(6), 2, 2},
          {T3 * Rq(-8) * Gp(6), 2, 1},
          {T3 * Rq(-88, 3) * Gp(8) * Tp(2), 0, 0},
          {T2 * Rq(-5, 9) * g4 * (Rq(64) * gt - Rq(363)), 2, 1},
          {T2 * Rq(-40, 3) * g4, 0, 3},
          {T2 * Rq(-5, 18) * g4 * (Rq(64) * gt + Rq(69)), 4, 1},
          {T2 * Rq(-70, 3) * g4, 0, 2},
          {T2 * Rq(-340, 3) * g4, 2, 2},
          {T2 * Rq(80, 3) * g4, 2, 3},
          {T2 * Rq(-305, 3) * Gp(6) * Tp(2), 0, 0},
      };
      return r;
    }
    default:
      throw InvalidArgument("only examples 1–3 have a displayed 𝔸-polynomial");
  }
}

namespace {

/// Splits a DiffOp whose coefficients are Laurent in every variable by the
/// exponents of `params`.
std::map<std::vector<int>, DiffOp> split_by(const DiffOp& op, const std::vector<Var>& params) {
  std::map<std::vector<int>, std::vector<RatFun>> parts;
  const std::size_t n = op.coeffs().size();
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [e, c] : op.coeff(i).laurent_terms()) {
      std::vector<int> key;
      for (Var v : params) key.push_back(e[v]);
      auto& slot = parts[key];
      slot.resize(n);
      RatFun term(c);
      for (Var v = 0; v < kMaxVars; ++v)
        if (e[v] != 0 && std::find(params.begin(), params.end(), v) == params.end())
          term *= RatFun::variable(v, e[v]);
      slot[i] += term;
    }
  std::map<std::vector<int>, DiffOp> out;
  for (auto& [k, cs] : parts) out.emplace(k, DiffOp(z, cs));
  return out;
}

/// Fits target = Σ_b x_b basis_b with x_b functions of (G, T) of weight
/// weights[b]; specialises T = 1, interpolates in G, restores T.
std::optional<std::vector<RatFun>> fit_in_G(const DiffOp& target, const std::vector<DiffOp>& basis,
                                           const std::vector<int>& weights) {
  auto sample = [&](const std::vector<Rational>& point) {
    const std::map<Var, Rational> at{{G, point[0]}, {T, Rational(1)}};
    std::map<std::pair<int, int>, std::size_t> row_of;
    std::vector<std::vector<Rational>> rows;
    auto add = [&](const DiffOp& op, std::size_t col) {
      for (int i = 0; i <= op.order(); ++i)
        for (const auto& [e, c] : op.coeff(i).substitute(at).laurent_terms()) {
          auto key = std::pair{i, e[z]};
          auto it = row_of.find(key);
          if (it == row_of.end()) {
            it = row_of.emplace(key, rows.size()).first;
            rows.emplace_back(basis.size() + 1);
          }
          rows[it->second][col] += c;
        }
    };
    for (std::size_t b = 0; b < basis.size(); ++b) add(basis[b], b);
    add(target, basis.size());
    QMatrix A(rows.size(), basis.size());
    std::vector<Rational> rhs(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t b = 0; b < basis.size(); ++b) A(r, b) = rows[r][b];
      rhs[r] = rows[r].back();
    }
    auto sol = solve_linear(A, rhs);
    if (!sol) throw IdentityFails("template does not fit the solved operator");
    if (!sol->nullspace.empty()) throw UnderDetermined("template coefficients not unique");
    return sol->particular;
  };
  SamplePoints pts(31);
  try {
    DenseInterpolation di = interpolate_dense(sample, {G}, 40, pts);
    std::vector<RatFun> out;
    for (std::size_t b = 0; b < basis.size(); ++b) out.push_back(restore_homogeneous(di.polys[b], weights[b], T));
    // exact confirmation of the fit
    DiffOp sum(z, {});
    for (std::size_t b = 0; b < basis.size(); ++b) sum = sum + out[b] * basis[b];
    if (!sum.equals(target)) return std::nullopt;
    return out;
  } catch (const IdentityFails&) {
    return std::nullopt;
  }
}

DiffOp A(int nu, int p) { return a_polynomial({{RatFun(1), nu, p}}); }

}  // namespace

IdentityCheck slepian_identity_check(int example, const OperatorAnsatz& solved) {
  IdentityCheck r;
  const DiffOp op = solved.to_diffop();
  if (example >= 1 && example <= 3) {
    const Var s = var("s");
    DiffOp target = op;
    if (example == 2)  // theta-slot t2 = 3s/4
      target = op.map_coeffs([&](const RatFun& c) {
        return c.substitute(vars::t2, MultiPoly::variable(s) * Rational(3, 4));
      });
    const auto disp = displayed_a_polynomial(example, s);
    r.residual = target - a_polynomial(disp);
    r.holds = r.residual.is_zero();
    r.holds_corrected = r.holds;
    if (!r.holds && example == 2) {
      // weight homogeneity requires G⁴ on the s·𝔸₁ term
      auto fixed = disp;
      fixed.back().coeff = RatFun(3) * RatFun::variable(G, 4) * RatFun::variable(s);
      r.holds_corrected = (target - a_polynomial(fixed)).is_zero();
      r.note = "display has 3G²t2·𝔸₁; weight homogeneity and the solved operator give 3G⁴·t2·𝔸₁ "
               "(t2 in the display's normalisation, = 4/3 of the theta slot)";
    }
    r.parity_ok = r.holds_corrected;
    return r;
  }
  if (example != 4) throw InvalidArgument("example must be 1..4");

  using vars::t3;
  using vars::t4;
  const auto groups = split_by(op, {t3, t4});
  std::vector<std::string> names;
  auto fit = [&](const std::vector<int>& key, const std::vector<DiffOp>& basis, const std::vector<std::string>& nm,
                 int weight) {
    auto it = groups.find(key);
    const DiffOp target = it == groups.end() ? DiffOp(z, {}) : it->second;
    auto sol = fit_in_G(target, basis, std::vector<int>(basis.size(), weight));
    if (!sol) return false;
    for (std::size_t b = 0; b < basis.size(); ++b) r.fitted.push_back({nm[b], (*sol)[b]});
    return true;
  };
  bool ok = true;
  std::vector<DiffOp> wb;
  std::vector<std::string> wn;
  for (int j = 0; j <= 7; ++j) {
    wb.push_back(A(5, j));
    wn.push_back("w" + std::to_string(j));
  }
  ok &= fit({0, 0}, wb, wn, 0);
  ok &= fit({2, 0}, {RatFun(3) * A(3, 1) - A(5, 1)}, {"c_t3^2"}, -12);
  std::vector<DiffOp> vb;
  std::vector<std::string> vn;
  for (int j = 0; j <= 3; ++j) {
    vb.push_back(A(3, j));
    vn.push_back("v" + std::to_string(j));
  }
  ok &= fit({0, 1}, vb, vn, -8);
  ok &= fit({1, 0},
            {A(3, 4), A(1, 4), A(3, 3), A(1, 3), A(3, 2), A(1, 2), A(3, 1), A(1, 1), A(0, 0)},
            {"u1", "u2", "u3", "u4", "u5", "u6", "u7", "u8", "u9"}, -6);
  for (const auto& [key, g] : groups) {
    const bool covered = key == std::vector<int>{0, 0} || key == std::vector<int>{2, 0} ||
                         key == std::vector<int>{0, 1} || key == std::vector<int>{1, 0};
    if (!covered && !g.is_zero()) ok = false;
  }
  r.holds = ok;
  r.holds_corrected = ok;
  r.parity_ok = ok;
  if (ok) {
    const RatFun c = r.fitted[8].value;
    const RatFun expect = RatFun(Rational(-7168, 225)) * RatFun::variable(G, 12);
    r.note = std::string("t3² coefficient ") + (c.equals(expect) ? "matches" : "differs from") +
             " the display (−7168/225·G¹²)";
    const RatFun& u7 = r.fitted[19].value;
    const RatFun& u8 = r.fitted[20].value;
    const RatFun& u9 = r.fitted[21].value;
    r.note += std::string("; the three trailing u coefficients are ") +
              (u7.equals(u8) && u8.equals(u9) ? "equal" : "distinct");
  }
  return r;
}

}  // namespace tbl
