#include "k3/homog.hpp"

#include <stdexcept>

namespace k3 {

HomogPoly::HomogPoly(UniPoly poly, int declared_degree) : p_(std::move(poly)), d_(declared_degree) {
  if (d_ < 0) throw std::invalid_argument("negative declared degree");
  if (p_.degree() > d_) {
    throw std::invalid_argument("declared degree " + std::to_string(d_) + " below actual degree of " +
                                p_.str());
  }
}

HomogPoly operator+(const HomogPoly& a, const HomogPoly& b) {
  if (a.is_zero()) return HomogPoly(b.p_, b.is_zero() ? std::max(a.d_, b.d_) : b.d_);
  if (b.is_zero()) return a;
  if (a.d_ != b.d_) {
    throw std::invalid_argument("adding forms of degrees " + std::to_string(a.d_) + " and " +
                                std::to_string(b.d_));
  }
  return HomogPoly(a.p_ + b.p_, a.d_);
}

HomogPoly operator-(const HomogPoly& a, const HomogPoly& b) { return a + (-b); }

HomogPoly operator*(const HomogPoly& a, const HomogPoly& b) {
  return HomogPoly(a.p_ * b.p_, a.d_ + b.d_);
}

HomogPoly HomogPoly::exact_div(const HomogPoly& d) const {
  return HomogPoly(p_.exact_div(d.p_), d_ - d.d_);
}

HomogPoly HomogPoly::swapped() const {
  std::vector<Rational> c(static_cast<size_t>(d_) + 1);
  for (int i = 0; i <= d_; ++i) c[static_cast<size_t>(i)] = p_.coeff(d_ - i);
  return HomogPoly(UniPoly(std::move(c), p_.var()), d_);
}

HomogPoly HomogPoly::moebius(const std::array<Rational, 4>& m) const {
  const std::string& v = p_.var();
  UniPoly num({m[1], m[0]}, v);
  UniPoly den({m[3], m[2]}, v);
  UniPoly acc(Rational(0), v);
  for (int i = 0; i <= d_; ++i) {
    Rational c = p_.coeff(i);
    if (c.is_zero()) continue;
    acc += (num.pow(i) * den.pow(d_ - i)).scaled(c);
  }
  return HomogPoly(acc, d_);
}

HomogPoly HomogPoly::power_pullback(int k) const {
  if (k < 1) throw std::invalid_argument("power pullback exponent must be positive");
  std::vector<Rational> c(static_cast<size_t>(d_ * k) + 1);
  for (int i = 0; i <= p_.degree(); ++i) c[static_cast<size_t>(i * k)] = p_.coeff(i);
  return HomogPoly(UniPoly(std::move(c), p_.var()), d_ * k);
}

HomogPoly HomogPoly::sum_of_squares_pullback() const {
  const std::string& v = p_.var();
  UniPoly t0sq_plus_t1sq({Rational(1), Rational(0), Rational(1)}, v);
  UniPoly two_t0t1({Rational(0), Rational(2)}, v);
  UniPoly acc(Rational(0), v);
  for (int i = 0; i <= d_; ++i) {
    Rational c = p_.coeff(i);
    if (c.is_zero()) continue;
    acc += (t0sq_plus_t1sq.pow(i) * two_t0t1.pow(d_ - i)).scaled(c);
  }
  return HomogPoly(acc, 2 * d_);
}

std::string HomogPoly::str() const {
  return p_.str() + " [deg " + std::to_string(d_) + "]";
}

HomogPoly homog_monomial(int i, int j, const std::string& var) {
  return HomogPoly(UniPoly::monomial(Rational(1), i, var), i + j);
}

HomogPoly homog(const UniPoly& p) { return HomogPoly(p, std::max(p.degree(), 0)); }
HomogPoly homog(const UniPoly& p, int declared_degree) { return HomogPoly(p, declared_degree); }
HomogPoly homog_const(const Rational& c, const std::string& var) {
  return HomogPoly(UniPoly(c, var), 0);
}

std::string Place::str() const { return infinity ? "inf" : poly.str(); }

bool place_less(const Place& a, const Place& b) {
  if (a.infinity != b.infinity) return b.infinity;
  if (a.infinity) return false;
  return poly_less(a.poly, b.poly);
}

int valuation_at(const HomogPoly& f, const Place& place) {
  if (f.is_zero()) throw std::invalid_argument("valuation of the zero form");
  if (place.infinity) return f.declared_degree() - f.poly().degree();
  return poly_multiplicity(f.poly(), place.poly);
}

}  // namespace k3
