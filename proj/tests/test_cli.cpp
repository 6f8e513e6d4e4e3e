#include <cmath>
#include <filesystem>
#include <fstream>

#include "cli/commands.hpp"
#include "doctest.h"
#include "tbl/errors.hpp"

using namespace tbl;
using namespace tbl::cli;

namespace fs = std::filesystem;

TEST_CASE("numbers: exact on symbolic paths, decimals only where numeric") {
  CHECK(parse_value("3/4", false) == Rational(3, 4));
  CHECK(parse_value("-2", false) == Rational(-2));
  CHECK_THROWS_AS(parse_value("0.5", false), InvalidArgument);
  CHECK_THROWS_AS(parse_value("1e-3", false), InvalidArgument);
  CHECK(parse_value("0.1", true) == Rational(1, 10));  // from the text, not the double
  CHECK(parse_value("-1.25e2", true) == Rational(-125));
  CHECK(parse_value("2.5E-1", true) == Rational(1, 4));
  CHECK_THROWS_AS(parse_value(".", true), InvalidArgument);
  CHECK_THROWS_AS(parse_value("1/0", true), DivisionByZero);
}

TEST_CASE("kernel specs") {
  KernelSpec s = make_spec("example3", "1", "2", {"t3=-3"}, false);
  CHECK(s.G == 2);
  CHECK(s.params.at(vars::t2) == 1);  // standard value kept
  CHECK(s.params.at(vars::t3) == -3);
  CHECK_THROWS_AS(make_spec("example1", "1", "1", {"t4=1"}, true), InvalidArgument);
  CHECK_THROWS_AS(make_spec("example1", "1", "1", {"t1"}, true), InvalidArgument);
  CHECK_THROWS_AS(make_spec("example1", "0", "1", {}, true), InvalidArgument);
  CHECK_THROWS_AS(make_spec("example1", "1", "0.5", {}, false), InvalidArgument);
}

TEST_CASE("solve-op matches the archived operators") {
  Golden g{Golden::default_dir(), false};
  for (int e : {1, 2}) {
    Result r = solve_op(e, g);
    INFO(e);
    CHECK(r.ok);
    CHECK(r.report["golden"] == "match");
  }
  Result r1 = solve_op(1, std::nullopt);
  CHECK(r1.report["a"]["a1"] == "2*z^2*T^2 + 2*G^2*t1 + 1/2 + 15/2*z^-2*G^2");
}

TEST_CASE("golden mismatch and missing files are structured failures") {
  const fs::path dir = fs::temp_directory_path() / "tbl_golden_test";
  fs::remove_all(dir);
  Result missing = solve_op(1, Golden{dir, false});
  CHECK_FALSE(missing.ok);
  CHECK(missing.report["error"]["kind"] == "GoldenMissing");

  CHECK(solve_op(1, Golden{dir, true}).ok);
  Result again = solve_op(1, Golden{dir, false});
  CHECK(again.report["golden"] == "match");

  const fs::path f = dir / "solve-op-example1.json";
  Json j = Json::parse(std::ifstream(f));
  j["a"]["a0"] = "0";
  std::ofstream(f) << j.dump();
  Result bad = solve_op(1, Golden{dir, false});
  CHECK_FALSE(bad.ok);
  CHECK(bad.report["error"]["kind"] == "GoldenMismatch");
  fs::remove_all(dir);
}

TEST_CASE("reports are byte-identical across runs") {
  CHECK(solve_op(2, std::nullopt).report.dump() == solve_op(2, std::nullopt).report.dump());
  CHECK(spectra_toeplitz(128, 1.0, 0.1).report.dump() == spectra_toeplitz(128, 1.0, 0.1).report.dump());
  CHECK(kdv_verify(false).report.dump() == kdv_verify(false).report.dump());
}

TEST_CASE("kdv verify reports five identities") {
  Result r = kdv_verify(false);
  CHECK(r.ok);
  CHECK(r.report["master_identities"].size() == 5);
  for (const auto& e : r.report["master_identities"]) CHECK(e["holds"] == true);
  CHECK_FALSE(r.report["master_identities"][0].contains("seconds"));
}

TEST_CASE("darboux verify flags the k = 1 normalisation honestly") {
  Result r = darboux_verify();
  CHECK_FALSE(r.ok);
  CHECK(r.report["theta_recursion"][0]["zero"] == false);
  CHECK(r.report["theta_recursion"][0]["zero_with_half_next"] == true);
  for (int k = 1; k < 5; ++k) CHECK(r.report["theta_recursion"][k]["zero"] == true);
  CHECK(r.report["potentials"]["L2"] == true);
  CHECK(r.report["potentials"]["L3_with_s_eq_4t2_over_3"] == true);
}

TEST_CASE("identity-check") {
  CHECK(identity_check(1).ok);
  Result two = identity_check(2);
  CHECK_FALSE(two.ok);
  CHECK(two.report["holds_corrected"] == true);
  CHECK(two.report["error"]["kind"] == "IdentityFails");
  CHECK_THROWS_AS(identity_check(5), InvalidArgument);
}

TEST_CASE("toeplitz near-1 fraction at phi = pi/4") {
  Result r = spectra_toeplitz(512, 0.7853981633974483, 0.1);
  CHECK(std::abs(double(r.report["fraction_near1"]) - 0.25) <= 0.05);
  CHECK(r.report["near1"].get<int>() + r.report["plunge"].get<int>() + r.report["near0"].get<int>() == 512);
  CHECK(r.csv.rfind("eigenvalue\n", 0) == 0);
}

TEST_CASE("kernel eval and matrix") {
  KernelSpec s = make_spec("example1", "1", "1", {}, true);
  Result e = kernel_eval(s, 1.0, 2.0, "both");
  CHECK(e.ok);
  CHECK(double(e.report["relative_difference"]) <= 1e-9);
  Result m = kernel_matrix(s, 6);
  CHECK(m.report["matrix"].size() == 6);
  CHECK(m.report["matrix"][1][4] == m.report["matrix"][4][1]);
  CHECK(std::count(m.csv.begin(), m.csv.end(), '\n') == 6);
  CHECK_THROWS_AS(kernel_eval(make_spec("example3", "1", "1", {"t3=1"}, true), 0.3, 0.7, "closed"), PoleError);
}

TEST_CASE("Slepian nu = 2 Galerkin spectrum against the archived values") {
  Json want = Json::parse(std::ifstream(Golden::default_dir() / "galerkin-slepian2-m40.json"));
  Result r = spectra_galerkin(make_spec("slepian2", "1", "1", {}, true), 40);
  CHECK(r.report["stiffness_exactly_symmetric"] == true);
  CHECK(double(r.report["min_gap"]) >= 0.1);
  for (int k = 0; k < 10; ++k) {
    const double a = r.report["eigenvalues"][k], b = want["eigenvalues"][k];
    CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
  }
}

TEST_CASE("staircase file format") {
  CHECK(staircase(Json::array({0.5, 0.25})) == "0 0.5\n1 0.25\n");
}
