#include "k3/sympoly.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace k3 {

namespace {

std::vector<std::string> union_vars(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

int index_of(const std::vector<std::string>& vars, const std::string& v) {
  auto it = std::lower_bound(vars.begin(), vars.end(), v);
  if (it == vars.end() || *it != v) return -1;
  return static_cast<int>(it - vars.begin());
}

}  // namespace

SymPoly::SymPoly(const Rational& c) {
  if (!c.is_zero()) terms_[{}] = c;
}

SymPoly SymPoly::var(const std::string& name) {
  SymPoly p;
  p.vars_ = {name};
  p.terms_[{1}] = Rational(1);
  return p;
}

SymPoly SymPoly::from_unipoly(const UniPoly& p) {
  SymPoly out;
  if (p.is_zero()) return out;
  out.vars_ = {p.var()};
  for (int i = 0; i <= p.degree(); ++i) {
    if (!p.coeff(i).is_zero()) out.terms_[{i}] = p.coeff(i);
  }
  out.normalize();
  return out;
}

std::optional<Rational> SymPoly::constant_value() const {
  if (!vars_.empty()) return std::nullopt;
  if (terms_.empty()) return Rational(0);
  return terms_.begin()->second;
}

bool SymPoly::depends_on(const std::string& v) const { return index_of(vars_, v) >= 0; }

int SymPoly::degree_in(const std::string& v) const {
  int i = index_of(vars_, v);
  if (i < 0) return terms_.empty() ? -1 : 0;
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<size_t>(i)]);
  return d;
}

int SymPoly::total_degree() const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

SymPoly SymPoly::with_vars(const std::vector<std::string>& vars) const {
  if (vars == vars_) return *this;
  std::vector<int> pos;
  for (const auto& v : vars_) pos.push_back(index_of(vars, v));
  SymPoly out;
  out.vars_ = vars;
  for (const auto& [e, c] : terms_) {
    Exponents ne(vars.size(), 0);
    for (size_t i = 0; i < e.size(); ++i) ne[static_cast<size_t>(pos[i])] = e[i];
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

void SymPoly::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero()) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  std::vector<bool> used(vars_.size(), false);
  for (const auto& [e, c] : terms_) {
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) used[i] = true;
    }
  }
  if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) return;
  std::vector<std::string> nv;
  for (size_t i = 0; i < vars_.size(); ++i) {
    if (used[i]) nv.push_back(vars_[i]);
  }
  std::map<Exponents, Rational> nt;
  for (auto& [e, c] : terms_) {
    Exponents ne;
    for (size_t i = 0; i < e.size(); ++i) {
      if (used[i]) ne.push_back(e[i]);
    }
    nt.emplace(std::move(ne), c);
  }
  vars_ = std::move(nv);
  terms_ = std::move(nt);
}

SymPoly SymPoly::operator-() const {
  SymPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

SymPoly operator+(const SymPoly& a, const SymPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  auto vars = union_vars(a.vars_, b.vars_);
  SymPoly r = a.with_vars(vars);
  SymPoly bb = b.with_vars(vars);
  for (const auto& [e, c] : bb.terms_) {
    auto [it, inserted] = r.terms_.emplace(e, c);
    if (!inserted) it->second += c;
  }
  r.normalize();
  return r;
}

SymPoly operator*(const SymPoly& a, const SymPoly& b) {
  if (a.is_zero() || b.is_zero()) return SymPoly();
  auto vars = union_vars(a.vars_, b.vars_);
  SymPoly aa = a.with_vars(vars), bb = b.with_vars(vars);
  SymPoly r;
  r.vars_ = vars;
  SymPoly::Exponents e(vars.size());
  for (const auto& [ea, ca] : aa.terms_) {
    for (const auto& [eb, cb] : bb.terms_) {
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      auto [it, inserted] = r.terms_.emplace(e, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  r.normalize();
  return r;
}

SymPoly SymPoly::scaled(const Rational& s) const {
  if (s.is_zero()) return SymPoly();
  SymPoly r = *this;
  for (auto& [e, c] : r.terms_) c *= s;
  return r;
}

SymPoly SymPoly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power of polynomial");
  SymPoly result(1), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

SymPoly SymPoly::coeff_in(const std::string& v, int k) const {
  int i = index_of(vars_, v);
  if (i < 0) return k == 0 ? *this : SymPoly();
  SymPoly r;
  r.vars_ = vars_;
  for (const auto& [e, c] : terms_) {
    if (e[static_cast<size_t>(i)] != k) continue;
    Exponents ne = e;
    ne[static_cast<size_t>(i)] = 0;
    r.terms_.emplace(std::move(ne), c);
  }
  r.normalize();
  return r;
}

SymPoly SymPoly::partial(const std::string& v) const {
  int i = index_of(vars_, v);
  if (i < 0) return SymPoly();
  SymPoly r;
  r.vars_ = vars_;
  for (const auto& [e, c] : terms_) {
    int k = e[static_cast<size_t>(i)];
    if (k == 0) continue;
    Exponents ne = e;
    ne[static_cast<size_t>(i)] = k - 1;
    r.terms_.emplace(std::move(ne), c * Rational(k));
  }
  r.normalize();
  return r;
}

SymPoly SymPoly::substitute(const std::string& v, const SymPoly& q) const {
  int d = degree_in(v);
  if (d <= 0 || !depends_on(v)) return *this;
  SymPoly acc;
  SymPoly qp(1);
  for (int k = 0; k <= d; ++k) {
    acc += coeff_in(v, k) * qp;
    qp = qp * q;
  }
  return acc;
}

Rational SymPoly::eval(const std::map<std::string, Rational>& at) const {
  std::vector<Rational> vals;
  for (const auto& v : vars_) {
    auto it = at.find(v);
    if (it == at.end()) throw std::invalid_argument("no value for variable " + v);
    vals.push_back(it->second);
  }
  Rational acc(0);
  for (const auto& [e, c] : terms_) {
    Rational m = c;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i]) m *= vals[i].pow(e[i]);
    }
    acc += m;
  }
  return acc;
}

SymPoly SymPoly::specialize(const std::map<std::string, Rational>& at) const {
  SymPoly r;
  r.vars_ = vars_;
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    Rational m = c;
    for (size_t i = 0; i < e.size(); ++i) {
      auto it = at.find(vars_[i]);
      if (it == at.end() || e[i] == 0) continue;
      m *= it->second.pow(e[i]);
      ne[i] = 0;
    }
    auto [pos, inserted] = r.terms_.emplace(std::move(ne), m);
    if (!inserted) pos->second += m;
  }
  r.normalize();
  return r;
}

UniPoly SymPoly::to_unipoly(const std::string& v) const {
  for (const auto& name : vars_) {
    if (name != v) throw std::invalid_argument("polynomial depends on " + name + ", expected only " + v);
  }
  std::vector<Rational> c(static_cast<size_t>(std::max(degree_in(v), 0)) + 1);
  for (const auto& [e, k] : terms_) c[e.empty() ? 0 : static_cast<size_t>(e[0])] += k;
  return UniPoly(std::move(c), v);
}

const Rational& SymPoly::leading_coeff() const {
  if (terms_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return terms_.rbegin()->second;
}

std::map<std::string, int> SymPoly::monomial_content() const {
  std::map<std::string, int> out;
  if (terms_.empty()) return out;
  Exponents m = terms_.begin()->first;
  for (const auto& [e, c] : terms_) {
    for (size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
  }
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i] > 0) out[vars_[i]] = m[i];
  }
  return out;
}

SymPoly SymPoly::divide_monomial(const std::map<std::string, int>& m) const {
  SymPoly r;
  r.vars_ = vars_;
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    for (const auto& [v, k] : m) {
      int i = index_of(vars_, v);
      if (i < 0 || ne[static_cast<size_t>(i)] < k) throw std::domain_error("monomial does not divide");
      ne[static_cast<size_t>(i)] -= k;
    }
    r.terms_.emplace(std::move(ne), c);
  }
  r.normalize();
  return r;
}

std::optional<SymPoly> exact_quotient(const SymPoly& a, const SymPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return SymPoly();
  for (const auto& v : b.vars_) {
    if (!a.depends_on(v)) return std::nullopt;
  }
  auto vars = union_vars(a.vars_, b.vars_);
  SymPoly r = a.with_vars(vars), bb = b.with_vars(vars);
  const auto& [lb, cb] = *bb.terms_.rbegin();
  SymPoly q;
  q.vars_ = vars;
  while (!r.terms_.empty()) {
    const auto& [lr, cr] = *r.terms_.rbegin();
    SymPoly::Exponents m(vars.size());
    for (size_t i = 0; i < m.size(); ++i) {
      m[i] = lr[i] - lb[i];
      if (m[i] < 0) return std::nullopt;
    }
    SymPoly mono;
    mono.vars_ = vars;
    mono.terms_.emplace(m, cr / cb);
    q.terms_.emplace(m, cr / cb);
    r = (r - mono * bb).with_vars(vars);
  }
  q.normalize();
  return q;
}

std::string SymPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    bool neg = c.sign() < 0;
    Rational m = c.abs();
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    bool any = false;
    std::ostringstream mon;
    for (size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (any) mon << "*";
      mon << vars_[i];
      if (e[i] > 1) mon << "^" << e[i];
      any = true;
    }
    if (!any) {
      os << m;
    } else {
      if (!m.is_one()) os << m << "*";
      os << mon.str();
    }
  }
  return os.str();
}

SymRat::SymRat(const SymPoly& num, const SymPoly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw std::domain_error("rational expression with zero denominator");
  if (num_.is_zero()) {
    den_ = SymPoly(1);
    return;
  }
  auto mn = num_.monomial_content(), md = den_.monomial_content();
  std::map<std::string, int> common;
  for (const auto& [v, k] : mn) {
    auto it = md.find(v);
    if (it != md.end()) common[v] = std::min(k, it->second);
  }
  if (!common.empty()) {
    num_ = num_.divide_monomial(common);
    den_ = den_.divide_monomial(common);
  }
  if (!den_.is_constant()) {
    if (auto q = exact_quotient(num_, den_)) {
      num_ = *q;
      den_ = SymPoly(1);
    } else if (auto p = exact_quotient(den_, num_)) {
      num_ = SymPoly(1);
      den_ = *p;
    }
  }
  Rational l = den_.leading_coeff();
  if (!l.is_one()) {
    num_ = num_.scaled(Rational(1) / l);
    den_ = den_.scaled(Rational(1) / l);
  }
}

SymRat SymRat::operator-() const { return SymRat(-num_, den_); }

SymRat operator+(const SymRat& a, const SymRat& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return SymRat(a.num_ + b.num_, a.den_);
  return SymRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

SymRat operator*(const SymRat& a, const SymRat& b) {
  if (a.is_zero() || b.is_zero()) return SymRat();
  return SymRat(a.num_ * b.num_, a.den_ * b.den_);
}

SymRat operator/(const SymRat& a, const SymRat& b) {
  if (b.is_zero()) throw std::domain_error("division by zero rational expression");
  return SymRat(a.num_ * b.den_, a.den_ * b.num_);
}

SymRat SymRat::pow(int e) const {
  if (e < 0) return SymRat(1) / pow(-e);
  return SymRat(num_.pow(e), den_.pow(e));
}

SymRat SymRat::partial(const std::string& v) const {
  if (!depends_on(v)) return SymRat();
  return SymRat(num_.partial(v) * den_ - num_ * den_.partial(v), den_ * den_);
}

Rational SymRat::eval(const std::map<std::string, Rational>& at) const {
  Rational d = den_.eval(at);
  if (d.is_zero()) throw std::domain_error("denominator vanishes at evaluation point");
  return num_.eval(at) / d;
}

SymRat SymRat::specialize(const std::map<std::string, Rational>& at) const {
  SymPoly d = den_.specialize(at);
  if (d.is_zero()) throw std::domain_error("denominator vanishes under specialization");
  return SymRat(num_.specialize(at), d);
}

std::string SymRat::str() const {
  if (den_ == SymPoly(1)) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

SymRat substitute(const SymPoly& p, const std::map<std::string, SymRat>& sub) {
  std::vector<std::string> active;
  std::map<std::string, int> deg;
  for (const auto& [v, r] : sub) {
    if (p.depends_on(v)) {
      active.push_back(v);
      deg[v] = p.degree_in(v);
    }
  }
  if (active.empty()) return SymRat(p);
  std::map<std::string, std::vector<SymPoly>> npow, dpow;
  SymPoly den(1);
  for (const auto& v : active) {
    const SymRat& r = sub.at(v);
    auto& np = npow[v];
    auto& dp = dpow[v];
    np.push_back(SymPoly(1));
    dp.push_back(SymPoly(1));
    for (int k = 1; k <= deg[v]; ++k) {
      np.push_back(np.back() * r.num());
      dp.push_back(dp.back() * r.den());
    }
    den = den * dp.back();
  }
  const auto& vars = p.vars();
  SymPoly acc;
  for (const auto& [e, c] : p.terms()) {
    SymPoly term(c);
    for (size_t i = 0; i < e.size(); ++i) {
      const std::string& v = vars[i];
      auto it = deg.find(v);
      if (it == deg.end()) {
        if (e[i]) term = term * SymPoly::var(v).pow(e[i]);
        continue;
      }
      term = term * npow[v][static_cast<size_t>(e[i])] * dpow[v][static_cast<size_t>(it->second - e[i])];
    }
    acc += term;
  }
  return SymRat(acc, den);
}

SymRat substitute(const SymRat& r, const std::map<std::string, SymRat>& sub) {
  return substitute(r.num(), sub) / substitute(r.den(), sub);
}

}  // namespace k3
