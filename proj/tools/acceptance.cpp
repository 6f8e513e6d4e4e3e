// Acceptance run: one PASS/FAIL line per criterion, tolerances fixed here.
//
//   tbl_acceptance                 exit 1 on any FAIL
//   tbl_acceptance --expect-red L  exit 0 iff the FAIL set is exactly L
//                                  (comma list), so known reds stay visible
//                                  while regressions and surprises still fail

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "tbl/besselalg/commuting.hpp"
#include "tbl/besselalg/slepian_identity.hpp"
#include "tbl/darboux/theta.hpp"
#include "tbl/kdvflows/flows.hpp"
#include "tbl/numeric/mp.hpp"
#include "tbl/spectra/spectra.hpp"
#include "tbl/spectra/toeplitz.hpp"

using namespace tbl;

namespace {

// Tolerances and budgets.
constexpr double kFastBudget = 1.0;          // s, criteria 1, 2
constexpr double kFlowBudget = 60.0;         // s, criterion 4
constexpr double kExample4Budget = 600.0;    // s, criterion 5
constexpr double kKernelTol = 1e-9;          // criterion 6, relative
constexpr double kKernelBudget = 120.0;      // s, criterion 6
constexpr double kAlignTol = 1e-6;           // criterion 7
constexpr double kControlMin = 0.1;          // criterion 7
constexpr double kFractionTol = 0.05;        // criterion 8
constexpr double kCommutatorTol = 1e-10;     // criterion 9
constexpr double kGapFactor = 100.0;         // criterion 9
constexpr double kPlungeDelta = 0.1;         // criteria 8, 9
constexpr double kNoise = 1e-10;             // criterion 10
constexpr double kStabilityRatio = 10.0;     // criterion 10
constexpr double kAgreementTol = 1e-6;       // criterion 10: commuting route reproduces the mode

struct Line {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string sci(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << v;
  return os.str();
}

std::vector<Family> all_families() {
  return {Family::slepian(1), Family::slepian(2), Family::slepian(3), Family::example(1),
          Family::example(2), Family::example(3), Family::example(4)};
}

RatFun P(Var v, int k = 1) { return RatFun::variable(v, k); }

Line theta_recursion() {
  auto t0 = std::chrono::steady_clock::now();
  Line l{true, ""};
  std::string bad;
  for (int k = 1; k <= 5; ++k) {
    MultiPoly r = verify_theta_recursion(k);
    if (!r.is_zero()) {
      l.pass = false;
      bad += " k=" + std::to_string(k) + " residual " + r.str();
      if (theta_recursion_residual(k, Rational(1, 2)).is_zero()) bad += " (zero with the next theta halved)";
    }
  }
  const double s = seconds_since(t0);
  l.pass = l.pass && s < kFastBudget;
  l.detail = (bad.empty() ? "k=1..5 exactly zero" : "nonzero:" + bad) + "; " + sci(s) + " s";
  return l;
}

Line potentials() {
  auto t0 = std::chrono::steady_clock::now();
  const bool l2 = potential(2).equals(displayed_potential_2());
  const bool l3 = potential(3).equals(displayed_potential_3(vars::t2));
  const Var s = var("s");
  const bool l3s = potential(3).substitute(vars::t2, Rational(3, 4) * MultiPoly::variable(s)).equals(displayed_potential_3(s));
  const double t = seconds_since(t0);
  return {l2 && l3 && t < kFastBudget, std::string("L2 ") + (l2 ? "equal" : "differs") + ", L3 literal " +
                                           (l3 ? "equal" : "differs") + ", L3 under t2=3s/4 " +
                                           (l3s ? "equal" : "differs") + "; " + sci(t) + " s"};
}

Line darboux_chain() {
  const bool d2 = darboux_step(potential(1), eigenfunction_logfactor(2)).equals(potential(2));
  const bool d3 =
      darboux_step(potential(2).substitute(vars::t1, MultiPoly(0)), eigenfunction_logfactor(3)).equals(potential(3));
  return {d2 && d3, std::string("V1->V2 ") + (d2 ? "exact" : "differs") + ", V2|t1=0->V3 " + (d3 ? "exact" : "differs")};
}

Line master_symmetries() {
  auto t0 = std::chrono::steady_clock::now();
  int held = 0, total = 0;
  for (const IdentityResult& r : verify_master_identities()) {
    ++total;
    held += r.holds;
  }
  const bool v2 = check_tau1_routes(potential(2), "V2").holds, v3 = check_tau1_routes(potential(3), "V3").holds;
  const double s = seconds_since(t0);
  return {held == 5 && total == 5 && v2 && v3 && s < kFlowBudget,
          std::to_string(held) + "/" + std::to_string(total) + " identities, tau1 routes V2 " + (v2 ? "agree" : "differ") +
              ", V3 " + (v3 ? "agree" : "differ") + "; " + sci(s) + " s"};
}

Line commuting_operators() {
  using vars::G;
  using vars::T;
  using vars::t1;
  const RatFun z2 = P(vars::z, 2), zm2 = P(vars::z, -2), z4 = P(vars::z, 4), zm4 = P(vars::z, -4);
  const RatFun a1 = RatFun(2) * P(T, 2) * z2 + (RatFun(4) * P(G, 2) * P(t1) + RatFun(1)) * RatFun(Rational(1, 2)) +
                    RatFun(Rational(15, 2)) * P(G, 2) * zm2;
  const RatFun a0 = P(T, 4) * z4 + (RatFun(4) * P(G, 2) * P(t1) + RatFun(9)) * P(T, 2) * z2 * RatFun(Rational(1, 2)) -
                    (RatFun(4) * P(G, 4) * P(t1) - RatFun(15) * P(G, 2)) * RatFun(Rational(1, 8)) * zm2 -
                    RatFun(Rational(135, 16)) * P(G, 4) * zm4;
  SolveReport r1 = solve_commuting_op(Family::example(1), {.symbolic_check = true});
  const bool ex1 = r1.op.a(1).equals(a1) && r1.op.a(0).equals(a0) && r1.op.a(2).equals(RatFun(1));
  PivotReport pv = example1_pivot();
  const bool pivot = pv.only_leading && pv.has_factor;

  SolveReport r2 = solve_commuting_op(Family::example(2), {.symbolic_check = true});
  IdentityCheck c2 = slepian_identity_check(2, r2.op);
  SolveReport r3 = solve_commuting_op(Family::example(3));
  IdentityCheck c3 = slepian_identity_check(3, r3.op);
  auto t0 = std::chrono::steady_clock::now();
  SolveReport r4 = solve_commuting_op(Family::example(4));
  const double s4 = seconds_since(t0);
  IdentityCheck c4 = slepian_identity_check(4, r4.op);

  std::ostringstream d;
  d << "ex1 a1,a0 " << (ex1 ? "exact" : "differ") << ", pivot (2T^2-a) " << (pivot ? "present" : "absent")
    << ", ex2 identity literal " << (c2.holds ? "holds" : "fails") << " (weight-corrected "
    << (c2.holds_corrected ? "holds" : "fails") << "), ex3 " << (c3.holds ? "holds" : "fails") << ", ex4 fit "
    << (c4.holds ? "verified" : "fails") << " with " << c4.fitted.size() << " coefficients in " << sci(s4) << " s";
  return {ex1 && pivot && c2.holds && c3.holds && c4.holds && s4 <= kExample4Budget, d.str()};
}

// Worst closed-vs-quadrature relative difference on the 10×10 grid.
double kernel_grid(const KernelSpec& s) {
  Kernel<double> k(s);
  double worst = 0;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const double z1 = -0.95 + 0.2 * i + 0.013, z2 = -0.95 + 0.2 * j + 0.057;
      const double q = k.quadrature(z1, z2);
      worst = std::max(worst, std::abs(k.closed(z1, z2) - q) / std::max(std::abs(q), 1e-300));
    }
  return worst;
}

Line kernel_cross_validation() {
  auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::string d;
  for (const Family& f : all_families()) {
    d += f.name() + " ";
    try {
      const double w = kernel_grid(KernelSpec::unit(f));
      pass = pass && w <= kKernelTol;
      d += sci(w);
    } catch (const PoleError&) {
      // Diagnostic only: the same grid at the pole-free standard parameters.
      pass = false;
      d += "pole in (0,T] at unit params (standard params: " + sci(kernel_grid(KernelSpec::standard(f))) + ")";
    }
    d += ", ";
  }
  const double s = seconds_since(t0);
  pass = pass && s < kKernelBudget;
  return {pass, d + sci(s) + " s"};
}

Line shared_eigenfunctions() {
  bool pass = true;
  std::string d;
  for (const Family& f : all_families()) {
    const KernelSpec s = KernelSpec::standard(f);
    const NystromMatrix<Mp> N = nystrom<Mp>(s, 128);
    const DiffOpMatrix<Mp> D = diffop_matrix<Mp>(commuting_operator(s), s.G, f.rho(), 60);
    const AlignmentReport a = alignment(N, D);
    const AlignmentReport c = alignment_control(N, D);
    const double lo = *std::min_element(c.residuals.begin(), c.residuals.end());
    pass = pass && a.max_residual <= kAlignTol && lo >= kControlMin;
    d += f.name() + " " + sci(a.max_residual) + " (control " + sci(lo) + "), ";
  }
  return {pass, d + "n=128 m=60, standard params"};
}

Line toeplitz_clustering() {
  bool pass = true;
  std::string d;
  for (double phi : {std::numbers::pi / 6, std::numbers::pi / 4, std::numbers::pi / 2}) {
    Eigen::VectorXd e =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(toeplitz_slepian(512, phi), Eigen::EigenvaluesOnly).eigenvalues();
    const double frac = double((e.array() > 0.9).count()) / 512;
    const PlungeStats p = plunge_statistics(e, kPlungeDelta, 2.0);
    pass = pass && std::abs(frac - phi / std::numbers::pi) <= kFractionTol && p.near1 > 0 && p.near0 > 0;
    d += "phi/pi=" + sci(phi / std::numbers::pi) + ": " + sci(frac) + " [" + std::to_string(p.near1) + "/" +
         std::to_string(p.plunge) + "/" + std::to_string(p.near0) + "], ";
  }
  auto plunge = [](int n) {
    Eigen::VectorXd e =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(toeplitz_slepian(n, 1.0), Eigen::EigenvaluesOnly).eigenvalues();
    return plunge_statistics(e, kPlungeDelta, 2.0).plunge;
  };
  const int p256 = plunge(256), p1024 = plunge(1024);
  pass = pass && p1024 < 2 * p256;
  return {pass, d + "plunge(256)=" + std::to_string(p256) + " plunge(1024)=" + std::to_string(p1024)};
}

Line commuting_tridiagonal() {
  const Eigen::MatrixXd t = toeplitz_slepian(32, 1.0);
  TridiagonalResult r = find_commuting_tridiagonal(t);
  const Eigen::VectorXd et = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(t, Eigen::EigenvaluesOnly).eigenvalues();
  const Eigen::VectorXd ej = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(r.J, Eigen::EigenvaluesOnly).eigenvalues();
  const double gj = min_relative_gap(ej), gp = plunge_min_relative_gap(et, kPlungeDelta, 2.0),
               gt = min_relative_gap(et);
  const bool nontrivial = r.off_diagonal.norm() > 0.1;
  return {r.residual <= kCommutatorTol && nontrivial && gj >= kGapFactor * gp,
          "residual " + sci(r.residual) + ", nullity " + std::to_string(r.nullity) + ", J min gap " + sci(gj) +
              " vs Toeplitz plunge-band gap " + sci(gp) + " (needs x" + sci(kGapFactor) +
              "); whole-spectrum Toeplitz min gap " + sci(gt) + " (J/T " + sci(gj / gt) + ")"};
}

Line stability() {
  bool pass = true;
  std::string d;
  for (const Family& f : {Family::slepian(1), Family::example(1)}) {
    const KernelSpec s = KernelSpec::standard(f);
    const StabilityReport r = stability_demo<Mp>(s, commuting_operator(s), kNoise);
    double best = 0, raw = 0, worst_agree = 0;
    for (std::size_t k = 0; k < r.ratio.size(); ++k) {
      if (r.near_one[k]) continue;
      raw = std::max(raw, r.ratio[k]);
      worst_agree = std::max(worst_agree, r.agreement[k]);
      if (r.agreement[k] <= kAgreementTol) best = std::max(best, r.ratio[k]);
    }
    pass = pass && best >= kStabilityRatio;
    d += f.name() + " ratio " + sci(best) + " on reproduced modes (raw " + sci(raw) + ", max angle to M modes " +
         sci(worst_agree) + "), ";
  }
  return {pass, d + "noise " + sci(kNoise)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string expect_red;
  std::vector<int> only;
  app.add_option("--expect-red", expect_red, "comma list of criteria documented as failing");
  app.add_option("--only", only, "run just these criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Line()>>> criteria = {
      {"theta recursion", theta_recursion},
      {"potential closed forms", potentials},
      {"Darboux chain", darboux_chain},
      {"master symmetries", master_symmetries},
      {"commuting operators", commuting_operators},
      {"kernel cross-validation", kernel_cross_validation},
      {"shared eigenfunctions", shared_eigenfunctions},
      {"limited-angle Toeplitz", toeplitz_clustering},
      {"commuting tridiagonal", commuting_tridiagonal},
      {"stability", stability},
  };

  std::set<int> red, expected;
  std::stringstream ss(expect_red);
  for (std::string tok; std::getline(ss, tok, ',');)
    if (!tok.empty()) expected.insert(std::stoi(tok));

  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    Line l;
    try {
      l = criteria[i].second();
    } catch (const Error& e) {
      l = {false, e.kind() + ": " + e.what()};
    }
    if (!l.pass) red.insert(id);
    std::cout << "criterion " << std::setw(2) << id << " " << (l.pass ? "PASS" : "FAIL") << "  "
              << criteria[i].first << ": " << l.detail << std::endl;
  }
  if (app.count("--expect-red")) {
    if (!only.empty()) std::erase_if(expected, [&](int c) { return std::find(only.begin(), only.end(), c) == only.end(); });
    const bool match = red == expected;
    std::cout << "failing set " << (match ? "matches" : "DIFFERS FROM") << " the documented reds" << std::endl;
    return match ? 0 : 1;
  }
  return red.empty() ? 0 : 1;
}
