#include "tbl/exactalg/diffop.hpp"

#include <sstream>

#include "tbl/errors.hpp"

namespace tbl {

DiffOp::DiffOp(Var v, std::vector<RatFun> coeffs) : var_(v), c_(std::move(coeffs)) { trim(); }

void DiffOp::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

DiffOp DiffOp::d(Var v, unsigned power) {
  std::vector<RatFun> c(power + 1);
  c[power] = RatFun(1);
  return DiffOp(v, std::move(c));
}

static void check_same(const DiffOp& a, const DiffOp& b) {
  if (!a.is_zero() && !b.is_zero() && a.variable() != b.variable())
    throw InvalidArgument("differential operators in different variables");
}

DiffOp operator+(const DiffOp& a, const DiffOp& b) {
  check_same(a, b);
  std::vector<RatFun> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return DiffOp(a.is_zero() ? b.var_ : a.var_, std::move(c));
}

DiffOp operator-(const DiffOp& a, const DiffOp& b) { return a + (-b); }

DiffOp DiffOp::operator-() const {
  DiffOp r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

DiffOp operator*(const RatFun& f, const DiffOp& a) {
  std::vector<RatFun> c = a.c_;
  for (auto& x : c) x = f * x;
  return DiffOp(a.var_, std::move(c));
}

DiffOp compose(const DiffOp& a, const DiffOp& b) {
  check_same(a, b);
  if (a.is_zero() || b.is_zero()) return DiffOp(a.var_, {});
  const Var v = a.var_;
  const std::size_t na = a.c_.size(), nb = b.c_.size();
  // Derivatives of b's coefficients up to order(a).
  std::vector<std::vector<RatFun>> db(nb);
  for (std::size_t j = 0; j < nb; ++j) {
    db[j].push_back(b.c_[j]);
    for (std::size_t l = 1; l < na; ++l) db[j].push_back(db[j].back().derivative(v));
  }
  std::vector<RatFun> c(na + nb - 1);
  for (std::size_t i = 0; i < na; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t l = 0; l <= i; ++l) {
      Rational binom(binomial(static_cast<unsigned>(i), static_cast<unsigned>(l)));
      for (std::size_t j = 0; j < nb; ++j) {
        if (db[j][l].is_zero()) continue;
        c[i - l + j] += a.c_[i] * db[j][l] * RatFun(binom);
      }
    }
  }
  return DiffOp(v, std::move(c));
}

DiffOp DiffOp::pow(unsigned n) const {
  DiffOp r = identity(var_);
  for (unsigned i = 0; i < n; ++i) r = compose(r, *this);
  return r;
}

RatFun DiffOp::apply(const RatFun& f) const {
  RatFun r, d = f;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (k) d = d.derivative(var_);
    r += c_[k] * d;
  }
  return r;
}

bool DiffOp::equals(const DiffOp& o) const {
  if (c_.size() != o.c_.size()) return false;
  if (!c_.empty() && var_ != o.var_) return false;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].equals(o.c_[i])) return false;
  return true;
}

DiffOp DiffOp::map_coeffs(const std::function<RatFun(const RatFun&)>& f) const {
  std::vector<RatFun> c;
  for (const auto& x : c_) c.push_back(f(x));
  return DiffOp(var_, std::move(c));
}

std::string DiffOp::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "[" << c_[k].canonical_text() << "]";
    if (k) os << "*D" << var_name(var_) << (k > 1 ? "^" + std::to_string(k) : "");
  }
  return os.str();
}

}  // namespace tbl
