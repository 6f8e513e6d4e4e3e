#include "tbl/exactalg/variables.hpp"

#include <array>
#include <mutex>

#include "tbl/errors.hpp"

namespace tbl {
namespace {

struct Table {
  std::mutex mu;
  std::array<std::string, kMaxVars> names;
  std::array<int, kMaxVars> weights{};
  int count = 0;
  Table() {
    const char* fixed[] = {"x", "z", "z1", "z2", "T", "G", "t1", "t2", "t3", "t4", "t5"};
    const int w[] = {1, -1, -1, -1, 1, -1, 2, 4, 6, 8, 10};
    for (int i = 0; i < 11; ++i) {
      names[i] = fixed[i];
      weights[i] = w[i];
    }
    count = 11;
  }
};

Table& table() {
  static Table t;
  return t;
}

}  // namespace

Var var(std::string_view name) {
  Table& t = table();
  std::lock_guard lock(t.mu);
  for (int i = 0; i < t.count; ++i)
    if (t.names[i] == name) return i;
  if (t.count == kMaxVars) throw InvalidArgument("variable table full");
  t.names[t.count] = std::string(name);
  return t.count++;
}

const std::string& var_name(Var v) {
  Table& t = table();
  if (v < 0 || v >= t.count) throw InvalidArgument("unknown variable index");
  return t.names[v];
}

int var_count() { return table().count; }

int var_weight(Var v) { return (v >= 0 && v < kMaxVars) ? table().weights[v] : 0; }

}  // namespace tbl
