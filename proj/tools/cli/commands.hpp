#pragma once

// Subcommands of the `tbl` tool as plain functions, so the CLI front end, the
// acceptance runner and the tests share one implementation.

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "tbl/exactalg/rational.hpp"
#include "tbl/kernels/kernel.hpp"

namespace tbl::cli {

using Json = nlohmann::ordered_json;

struct Result {
  Json report = Json::object();
  bool ok = true;
  std::string csv;  // tabular payload for --format csv; empty if none
};

/// "p/q" or an integer; with allow_decimal also "0.25", "1e-3" (converted
/// exactly from the decimal text, never through a double).
Rational parse_value(const std::string& text, bool allow_decimal);

/// "name=value" pairs → KernelSpec (unspecified parameters keep the
/// pole-free standard values).
KernelSpec make_spec(const std::string& family, const std::string& T, const std::string& G,
                     const std::vector<std::string>& params, bool allow_decimal);

struct Golden {
  std::filesystem::path dir;
  bool refresh = false;
  /// TBL_GOLDEN_DIR, else the directory compiled in.
  static std::filesystem::path default_dir();
};

Result darboux_verify();
Result kdv_verify(bool timings);
Result solve_op(int example, const std::optional<Golden>& golden);
Result identity_check(int example);
Result kernel_symbolic_cmd(const KernelSpec& spec);
Result kernel_eval(const KernelSpec& spec, double z1, double z2, const std::string& method);
Result kernel_matrix(const KernelSpec& spec, int n);
Result spectra_nystrom(const KernelSpec& spec, int n);
Result spectra_galerkin(const KernelSpec& spec, int m);
Result spectra_align(const KernelSpec& spec, int n, int m, double tol);
Result spectra_stability(const KernelSpec& spec, double noise, int n, int m, int modes, double min_ratio);
Result spectra_toeplitz(int n, double phi, double delta);
Result spectra_tridiag(int n, double phi, double delta, double min_factor);

/// Two-column "index value" lines for a staircase plot of the eigenvalues.
std::string staircase(const Json& eigenvalues);

}  // namespace tbl::cli
