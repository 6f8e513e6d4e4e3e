#include "tbl/spectra/spectra.hpp"

#include <mutex>

#include "tbl/besselalg/commuting.hpp"

namespace tbl {

namespace {

const OperatorAnsatz& solved(const Family& f) {
  static std::mutex mu;
  static std::map<int, OperatorAnsatz> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(f.index);
  if (it == cache.end()) it = cache.emplace(f.index, solve_commuting_op(f).op).first;
  return it->second;
}

}  // namespace

DiffOp commuting_operator(const KernelSpec& spec) {
  DiffOp op = spec.family.kind == Family::Kind::Slepian ? slepian_op(spec.family.index)
                                                        : solved(spec.family).to_diffop();
  ParamValues p = spec.params;
  p[vars::T] = spec.T;
  p[vars::G] = spec.G;
  return op.map_coeffs([&](const RatFun& c) { return c.substitute(p); });
}

}  // namespace tbl
