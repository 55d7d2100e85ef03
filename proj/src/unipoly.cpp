#include "k3/unipoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace k3 {

UniPoly::UniPoly(const Rational& c, std::string var) : var_(std::move(var)) {
  if (!c.is_zero()) c_.push_back(c);
}

UniPoly::UniPoly(std::vector<Rational> coeffs, std::string var)
    : var_(std::move(var)), c_(std::move(coeffs)) {
  trim();
}

UniPoly UniPoly::variable(std::string var) { return monomial(Rational(1), 1, std::move(var)); }

UniPoly UniPoly::monomial(const Rational& c, int deg, std::string var) {
  if (deg < 0) throw std::invalid_argument("negative monomial degree");
  std::vector<Rational> v(static_cast<size_t>(deg) + 1);
  v.back() = c;
  return UniPoly(std::move(v), std::move(var));
}

UniPoly UniPoly::linear_root(const Rational& r, std::string var) {
  return UniPoly({-r, Rational(1)}, std::move(var));
}

UniPoly UniPoly::with_var(std::string var) const {
  UniPoly r = *this;
  r.var_ = std::move(var);
  return r;
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational UniPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
  return c_[static_cast<size_t>(i)];
}

const Rational& UniPoly::lead() const {
  if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return c_.back();
}

namespace {

const std::string& merged_var(const UniPoly& a, const UniPoly& b) {
  if (a.is_constant()) return b.var();
  if (!b.is_constant() && a.var() != b.var()) {
    throw std::invalid_argument("polynomial variables differ: " + a.var() + " vs " + b.var());
  }
  return a.var();
}

}  // namespace

UniPoly UniPoly::operator-() const {
  UniPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  var_ = merged_var(*this, o);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) { return *this += -o; }

UniPoly& UniPoly::operator*=(const UniPoly& o) {
  var_ = merged_var(*this, o);
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

UniPoly UniPoly::scaled(const Rational& s) const {
  UniPoly r = *this;
  for (auto& x : r.c_) x *= s;
  r.trim();
  return r;
}

UniPoly UniPoly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative polynomial power");
  UniPoly result(Rational(1), var_), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(Rational(1) / lead());
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly(Rational(0), var_);
  std::vector<Rational> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return UniPoly(std::move(r), var_);
}

Rational UniPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UniPoly UniPoly::compose(const UniPoly& q) const {
  UniPoly acc(Rational(0), q.var());
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + UniPoly(*it, q.var());
  return acc.with_var(q.is_constant() ? var_ : q.var());
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  const std::string& v = merged_var(*this, d);
  std::vector<Rational> rem = c_;
  int dd = d.degree();
  if (degree() < dd) return {UniPoly(Rational(0), v), this->with_var(v)};
  std::vector<Rational> quo(static_cast<size_t>(degree() - dd + 1));
  Rational inv = Rational(1) / d.lead();
  for (int i = degree(); i >= dd; --i) {
    const Rational& top = rem[static_cast<size_t>(i)];
    if (top.is_zero()) continue;
    Rational f = top * inv;
    quo[static_cast<size_t>(i - dd)] = f;
    for (int j = 0; j <= dd; ++j) rem[static_cast<size_t>(i - dd + j)] -= f * d.c_[static_cast<size_t>(j)];
  }
  return {UniPoly(std::move(quo), v), UniPoly(std::move(rem), v)};
}

UniPoly UniPoly::exact_div(const UniPoly& d) const {
  auto [q, r] = divmod(d);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

bool UniPoly::divisible_by(const UniPoly& d) const { return divmod(d).second.is_zero(); }

std::string UniPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Rational c = c_[static_cast<size_t>(i)];
    if (c.is_zero()) continue;
    bool neg = c.sign() < 0;
    Rational m = c.abs();
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << m;
      continue;
    }
    if (!m.is_one()) os << m << "*";
    os << var_;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

UniPoly FactorMultiset::product() const {
  UniPoly r(unit);
  for (const auto& [f, m] : factors) r *= f.pow(m);
  return r;
}

UniPoly poly_gcd(const UniPoly& p, const UniPoly& q) {
  UniPoly a = p.monic(), b = q.monic();
  while (!b.is_zero()) {
    UniPoly r = a.divmod(b).second.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

FactorMultiset squarefree_decompose(const UniPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("squarefree decomposition of zero polynomial");
  FactorMultiset out;
  out.unit = p.lead();
  UniPoly f = p.monic();
  if (f.degree() == 0) return out;
  UniPoly fp = f.derivative();
  UniPoly a = poly_gcd(f, fp);
  UniPoly b = f.exact_div(a);
  UniPoly c = fp.exact_div(a);
  UniPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    UniPoly g = poly_gcd(b, d);
    if (g.degree() > 0) out.factors.emplace_back(g, i);
    b = b.exact_div(g);
    c = d.exact_div(g);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

bool poly_less(const UniPoly& a, const UniPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = 0; i <= a.degree(); ++i) {
    auto c = a.coeff(i) <=> b.coeff(i);
    if (c != 0) return c < 0;
  }
  return false;
}

std::vector<UniPoly> gcd_free_basis(const std::vector<UniPoly>& ps) {
  std::vector<UniPoly> work;
  for (const auto& p : ps) {
    if (p.is_zero()) throw std::invalid_argument("gcd-free basis of zero polynomial");
    for (auto& [f, m] : squarefree_decompose(p).factors) work.push_back(f);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < work.size() && !changed; ++i) {
      for (size_t j = i + 1; j < work.size() && !changed; ++j) {
        UniPoly g = poly_gcd(work[i], work[j]);
        if (g.degree() == 0) continue;
        UniPoly x = work[i].exact_div(g).monic();
        UniPoly y = work[j].exact_div(g).monic();
        work.erase(work.begin() + static_cast<long>(j));
        work.erase(work.begin() + static_cast<long>(i));
        for (UniPoly* q : {&g, &x, &y}) {
          if (q->degree() > 0) work.push_back(*q);
        }
        changed = true;
      }
    }
  }
  std::sort(work.begin(), work.end(), poly_less);
  return work;
}

namespace {

mpz_class pollard_brent(const mpz_class& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    mpz_class x = 2, y = 2, d = 1;
    auto f = [&](const mpz_class& v) { return mpz_class((v * v + c) % n); };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      mpz_class diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void factor_into(mpz_class n, std::map<mpz_class, int>& out) {
  for (unsigned long p = 2; p < 10000 && n > 1; ++p) {
    while (n % p == 0) {
      out[mpz_class(p)]++;
      n /= p;
    }
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
    out[n]++;
    return;
  }
  mpz_class d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

std::vector<mpz_class> divisors(const mpz_class& n) {
  std::map<mpz_class, int> fac;
  factor_into(abs(n), fac);
  std::vector<mpz_class> ds{1};
  for (const auto& [p, e] : fac) {
    size_t base = ds.size();
    mpz_class pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
    }
  }
  return ds;
}

/// Integer polynomial with the same roots, content removed.
std::vector<mpz_class> primitive_integer(const UniPoly& p) {
  mpz_class l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
  std::vector<mpz_class> z;
  mpz_class g = 0;
  for (const auto& c : p.coeffs()) {
    z.push_back(c.num() * (l / c.den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
  }
  for (auto& v : z) v /= g;
  return z;
}

}  // namespace

std::vector<Rational> rational_roots(const UniPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("roots of zero polynomial");
  std::vector<Rational> roots;
  UniPoly f = p;
  if (f.degree() >= 1 && f.coeff(0).is_zero()) {
    roots.emplace_back(0);
    while (f.degree() >= 1 && f.coeff(0).is_zero()) f = f.exact_div(UniPoly::variable(f.var()));
  }
  if (f.degree() >= 1) {
    auto z = primitive_integer(f);
    auto num_cands = divisors(z.front());
    auto den_cands = divisors(z.back());
    for (const auto& q : den_cands) {
      for (const auto& pn : num_cands) {
        for (int s : {1, -1}) {
          Rational r(mpz_class(s * pn), q);
          if (f.eval(r).is_zero()) roots.push_back(r);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::vector<UniPoly> split_rational_roots(const std::vector<UniPoly>& basis) {
  std::vector<UniPoly> out;
  for (const auto& b : basis) {
    UniPoly rest = b;
    if (b.degree() > 1) {
      for (const auto& r : rational_roots(b)) {
        UniPoly lin = UniPoly::linear_root(r, b.var());
        out.push_back(lin);
        rest = rest.exact_div(lin);
      }
    }
    if (rest.degree() > 0) out.push_back(rest.monic());
  }
  std::sort(out.begin(), out.end(), poly_less);
  return out;
}

std::optional<UniPoly> poly_is_square(const UniPoly& p) {
  if (p.is_zero()) return p;
  auto unit = rational_sqrt(p.lead());
  if (!unit) return std::nullopt;
  auto dec = squarefree_decompose(p);
  UniPoly q(*unit, p.var());
  for (const auto& [f, m] : dec.factors) {
    if (m % 2 != 0) return std::nullopt;
    q *= f.pow(m / 2);
  }
  return q;
}

int poly_multiplicity(const UniPoly& f, const UniPoly& place) {
  if (f.is_zero()) throw std::invalid_argument("multiplicity in zero polynomial");
  if (place.degree() < 1) throw std::invalid_argument("place must be non-constant");
  if (poly_gcd(place, place.derivative()).degree() > 0) {
    throw std::invalid_argument("place polynomial is not squarefree: " + place.str());
  }
  int v = 0;
  UniPoly g = f;
  while (true) {
    auto [q, r] = g.divmod(place);
    if (!r.is_zero()) break;
    g = std::move(q);
    ++v;
  }
  if (poly_gcd(g, place).degree() > 0) {
    throw std::logic_error("place divides polynomial non-uniformly: " + place.str());
  }
  return v;
}

}  // namespace k3
