#pragma once

#include <string>
#include <string_view>

namespace tbl {

/// Index into the process-wide variable table. The table is append-only and
/// its first entries are fixed, so indices are stable across runs.
using Var = int;

inline constexpr int kMaxVars = 16;

namespace vars {
inline constexpr Var x = 0;
inline constexpr Var z = 1;
inline constexpr Var z1 = 2;
inline constexpr Var z2 = 3;
inline constexpr Var T = 4;
inline constexpr Var G = 5;
inline constexpr Var t1 = 6;
inline constexpr Var t2 = 7;
inline constexpr Var t3 = 8;
inline constexpr Var t4 = 9;
inline constexpr Var t5 = 10;
inline constexpr Var t(int i) { return t1 + (i - 1); }
}  // namespace vars

/// Looks up a variable by name, registering it if new. Throws when the table
/// is full.
Var var(std::string_view name);
const std::string& var_name(Var v);
int var_count();

/// Scaling weight: the examples are invariant under x→λx, z→z/λ, T→λT,
/// G→G/λ, t_i→λ^{2i} t_i. Unlisted variables have weight 0.
int var_weight(Var v);

}  // namespace tbl
