#include "tbl/kernels/kernel.hpp"

#include <mutex>
#include <sstream>

namespace tbl {

KernelSpec KernelSpec::unit(const Family& f) { return {f, 1, 1, EigenfunctionChain::unit(f).params}; }

KernelSpec KernelSpec::standard(const Family& f) { return {f, 1, 1, EigenfunctionChain::standard(f).params}; }

std::string KernelSpec::str() const {
  std::ostringstream os;
  os << chain().str() << " T=" << to_string(T) << " G=" << to_string(G);
  return os.str();
}

const KernelExprs& kernel_exprs(const KernelSpec& s) {
  static std::mutex mu;
  static std::map<std::string, KernelExprs> cache;
  // G does not enter the kernel.
  const std::string key = s.chain().str() + " T=" + to_string(s.T);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  BiBesselExpr k = kernel_symbolic(s.family);
  ParamValues p = s.params;
  p[vars::T] = s.T;
  auto sub = [&](const RatFun& r) { return r.substitute(p); };
  KernelExprs e{k.mu, sub(k.A), sub(k.B), sub(k.C), sub(k.D)};
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(e)).first->second;
}

}  // namespace tbl
