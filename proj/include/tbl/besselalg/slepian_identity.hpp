#pragma once

#include <string>
#include <vector>

#include "tbl/besselalg/commuting.hpp"

namespace tbl {

/// coeff · 𝔸_ν^power (power 0 is the identity).
struct APolyTerm {
  RatFun coeff;
  int nu = 0;
  int power = 0;
};

DiffOp a_polynomial(const std::vector<APolyTerm>& terms);

/// The displayed 𝔸-polynomial for examples 1–3, written in the variables
/// of the display. Example 2's parameter is `s`, the normalisation of its
/// displayed kernel (s = 4·t2/3 in theta-slot units).
std::vector<APolyTerm> displayed_a_polynomial(int example, Var s);

struct FittedCoefficient {
  std::string name;  // "w3", "u7", ...
  RatFun value;
};

struct IdentityCheck {
  bool holds = false;            // the literal display, as an exact DiffOp identity
  bool holds_corrected = false;  // after the corrections listed in `note`
  std::string note;
  DiffOp residual;               // solved op − displayed polynomial (literal)
  std::vector<FittedCoefficient> fitted;  // example 4 only
  bool parity_ok = false;        // only even (ex 1, 3) or odd (ex 2, 4) ν needed
};

/// Compares the solved operator with the 𝔸-polynomial of its example.
/// For example 4 the coefficients of the template are fitted and verified.
IdentityCheck slepian_identity_check(int example, const OperatorAnsatz& solved);

}  // namespace tbl
