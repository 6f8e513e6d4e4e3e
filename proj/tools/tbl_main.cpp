// tbl — verification runs and data exports. JSON reports go to stdout (or
// --output); failures exit 1 with an "error" object, usage errors exit 2.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "tbl/errors.hpp"

using namespace tbl::cli;

namespace {

struct KernelArgs {
  std::string family = "slepian1", T = "1", G = "1";
  std::vector<std::string> params;

  void add(CLI::App* a) {
    a->add_option("--family", family, "slepianN or exampleN")->capture_default_str();
    a->add_option("--T", T, "time limit")->capture_default_str();
    a->add_option("--G", G, "band limit")->capture_default_str();
    a->add_option("--param", params, "parameter as name=value, repeatable");
  }
  tbl::KernelSpec spec(bool allow_decimal) const { return make_spec(family, T, G, params, allow_decimal); }
};

int emit(const Result& r, const std::string& format, const std::string& output, const std::string& plot) {
  std::string text;
  if (format == "csv") {
    if (r.csv.empty()) throw tbl::InvalidArgument("this command has no CSV form");
    text = r.csv;
  } else if (format == "text") {
    text = r.report.dump(2) + "\n";
  } else {
    text = r.report.dump() + "\n";
  }
  if (output.empty()) std::cout << text;
  else std::ofstream(output) << text;
  if (!plot.empty()) {
    if (!r.report.contains("eigenvalues")) throw tbl::InvalidArgument("--plot needs an eigenvalue command");
    std::ofstream(plot) << staircase(r.report["eigenvalues"]);
  }
  return r.ok ? 0 : 1;
}

void json_error(const std::string& kind, const std::string& message) {
  Json e = {{"error", {{"kind", kind}, {"message", message}}}};
  std::cout << e.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tbl: bispectral Darboux deformations of Slepian's operators"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json", output, plot, golden_dir;
  bool refresh = false;
  app.add_option("--format", format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--output", output, "write the report here instead of stdout");
  app.add_option("--plot", plot, "also write a two-column eigenvalue staircase file");
  app.add_option("--golden-dir", golden_dir, "golden-file directory (default: $TBL_GOLDEN_DIR)");
  app.add_flag("--refresh-golden", refresh, "re-run the oracles and rewrite golden files");

  std::function<Result()> run;

  auto* darboux = app.add_subcommand("darboux", "Darboux chain checks")->require_subcommand(1);
  darboux->add_subcommand("verify", "theta recursion, potentials, Darboux steps")->callback([&] {
    run = [] { return darboux_verify(); };
  });

  auto* kdv = app.add_subcommand("kdv", "master-symmetry identities")->require_subcommand(1);
  bool timings = false;
  auto* kv = kdv->add_subcommand("verify", "the five identities and the τ1 route check");
  kv->add_flag("--timings", timings, "include wall times (output is then not reproducible)");
  kv->callback([&] { run = [&] { return kdv_verify(timings); }; });

  int example = 1;
  bool check_golden = false;
  auto* solve = app.add_subcommand("solve-op", "solve for the commuting differential operator");
  solve->add_option("--example", example, "1..4")->required();
  solve->add_flag("--check-golden", check_golden, "compare with the archived operator");
  solve->callback([&] {
    run = [&] {
      std::optional<Golden> g;
      if (check_golden || refresh)
        g = Golden{golden_dir.empty() ? Golden::default_dir() : std::filesystem::path(golden_dir), refresh};
      return solve_op(example, g);
    };
  });

  auto* ident = app.add_subcommand("identity-check", "compare with the operator polynomial in Slepian operators");
  ident->add_option("--example", example, "1..4")->required();
  ident->callback([&] { run = [&] { return identity_check(example); }; });

  KernelArgs ka;
  double z1 = 0.3, z2 = 0.7;
  int n = 64, m = 40, modes = 10;
  std::string method = "auto";
  auto* kernel = app.add_subcommand("kernel", "time-and-band-limiting kernels")->require_subcommand(1);
  auto* keval = kernel->add_subcommand("eval", "K(z1, z2)");
  ka.add(keval);
  keval->add_option("--z1", z1)->capture_default_str();
  keval->add_option("--z2", z2)->capture_default_str();
  keval->add_option("--method", method)
      ->check(CLI::IsMember({"auto", "closed", "quadrature", "both"}))
      ->capture_default_str();
  keval->callback([&] { run = [&] { return kernel_eval(ka.spec(true), z1, z2, method); }; });
  auto* kmat = kernel->add_subcommand("matrix", "K on Gauss–Legendre nodes of [−G, G]");
  ka.add(kmat);
  kmat->add_option("--n", n)->capture_default_str();
  kmat->callback([&] { run = [&] { return kernel_matrix(ka.spec(true), n); }; });
  auto* ksym = kernel->add_subcommand("symbolic", "exact A, B, C, D coefficients (p/q parameters only)");
  ka.add(ksym);
  ksym->callback([&] { run = [&] { return kernel_symbolic_cmd(ka.spec(false)); }; });

  double noise = 1e-10, tol = 1e-6, phi = 1.0, delta = 0.1, min_ratio = 10, min_factor = 100;
  auto* spectra = app.add_subcommand("spectra", "discretisations and spectral experiments")->require_subcommand(1);
  auto* sn = spectra->add_subcommand("nystrom", "Nyström eigenvalues");
  ka.add(sn);
  sn->add_option("--n", n)->capture_default_str();
  sn->callback([&] { run = [&] { return spectra_nystrom(ka.spec(true), n); }; });
  auto* sg = spectra->add_subcommand("galerkin", "Galerkin eigenvalues of the commuting operator");
  ka.add(sg);
  sg->add_option("--m", m)->capture_default_str();
  sg->callback([&] { run = [&] { return spectra_galerkin(ka.spec(true), m); }; });
  auto* sa = spectra->add_subcommand("align", "shared-eigenvector residuals");
  ka.add(sa);
  sa->add_option("--n", n)->capture_default_str();
  sa->add_option("--m", m)->capture_default_str();
  sa->add_option("--tol", tol)->capture_default_str();
  sa->callback([&] { run = [&] { return spectra_align(ka.spec(true), n, m, tol); }; });
  auto* ss = spectra->add_subcommand("stability", "eigenvector rotation under entry noise");
  ka.add(ss);
  ss->add_option("--noise", noise)->capture_default_str();
  ss->add_option("--n", n)->capture_default_str();
  ss->add_option("--m", m)->capture_default_str();
  ss->add_option("--modes", modes)->capture_default_str();
  ss->add_option("--min-ratio", min_ratio)->capture_default_str();
  ss->callback([&] { run = [&] { return spectra_stability(ka.spec(true), noise, n, m, modes, min_ratio); }; });
  auto* st = spectra->add_subcommand("toeplitz", "limited-angle Toeplitz spectrum");
  st->add_option("--n", n)->capture_default_str();
  st->add_option("--phi", phi)->capture_default_str();
  st->add_option("--delta", delta)->capture_default_str();
  st->callback([&] { run = [&] { return spectra_toeplitz(n, phi, delta); }; });
  auto* stri = spectra->add_subcommand("tridiag", "commuting tridiagonal matrix");
  stri->add_option("--n", n)->capture_default_str();
  stri->add_option("--phi", phi)->capture_default_str();
  stri->add_option("--delta", delta)->capture_default_str();
  stri->add_option("--min-factor", min_factor)->capture_default_str();
  stri->callback([&] { run = [&] { return spectra_tridiag(n, phi, delta, min_factor); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    json_error("UsageError", e.what());
    return 2;
  }
  try {
    return emit(run(), format, output, plot);
  } catch (const tbl::Error& e) {
    json_error(e.kind(), e.what());
  } catch (const std::exception& e) {
    json_error("InternalError", e.what());
  }
  return 1;
}
