#include "k3/ratfunc.hpp"

#include <stdexcept>

namespace k3 {

RatFunc::RatFunc(const UniPoly& num, const UniPoly& den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  UniPoly g = poly_gcd(num, den);
  UniPoly n = num.exact_div(g), d = den.exact_div(g);
  Rational l = d.lead();
  num_ = n.scaled(Rational(1) / l);
  den_ = d.scaled(Rational(1) / l);
  if (num_.is_zero()) den_ = UniPoly(Rational(1), den.var());
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw std::domain_error("division by zero rational function");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return RatFunc(1) / pow(-e);
  return RatFunc(num_.pow(e), den_.pow(e));
}

Rational RatFunc::eval(const Rational& x) const {
  Rational d = den_.eval(x);
  if (d.is_zero()) throw std::domain_error("rational function has a pole at " + x.str());
  return num_.eval(x) / d;
}

RatFunc RatFunc::compose(const RatFunc& g) const {
  RatFunc acc(0);
  for (int i = num_.degree(); i >= 0; --i) acc = acc * g + RatFunc(num_.coeff(i));
  RatFunc dacc(0);
  for (int i = den_.degree(); i >= 0; --i) dacc = dacc * g + RatFunc(den_.coeff(i));
  return acc / dacc;
}

std::string RatFunc::str() const {
  if (den_.degree() == 0) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

std::optional<RatFunc> ratfunc_sqrt(const RatFunc& f) {
  auto s = poly_is_square(f.num() * f.den());
  if (!s) return std::nullopt;
  return RatFunc(*s, f.den());
}

}  // namespace k3
