#pragma once

#include <array>
#include <string>

#include "k3/unipoly.hpp"

namespace k3 {

/// Binary form in [t0:t1], stored as its dehomogenization at t1 = 1 plus a declared degree.
class HomogPoly {
 public:
  HomogPoly() = default;
  HomogPoly(UniPoly poly, int declared_degree);

  const UniPoly& poly() const { return p_; }
  int declared_degree() const { return d_; }
  bool is_zero() const { return p_.is_zero(); }
  const std::string& var() const { return p_.var(); }

  HomogPoly operator-() const { return HomogPoly(-p_, d_); }
  friend HomogPoly operator+(const HomogPoly& a, const HomogPoly& b);
  friend HomogPoly operator-(const HomogPoly& a, const HomogPoly& b);
  friend HomogPoly operator*(const HomogPoly& a, const HomogPoly& b);
  friend bool operator==(const HomogPoly& a, const HomogPoly& b) {
    return a.d_ == b.d_ && a.p_ == b.p_;
  }
  HomogPoly scaled(const Rational& s) const { return HomogPoly(p_.scaled(s), d_); }
  HomogPoly pow(int e) const { return HomogPoly(p_.pow(e), d_ * e); }
  /// Exact division of forms; the quotient's declared degree is the difference.
  HomogPoly exact_div(const HomogPoly& d) const;

  /// Coefficient of t0^(d-n) t1^n.
  Rational coeff_t1(int n) const { return p_.coeff(d_ - n); }
  /// The form with t0 and t1 exchanged.
  HomogPoly swapped() const;
  /// Substitution [t0:t1] -> [m00 t0 + m01 t1 : m10 t0 + m11 t1].
  HomogPoly moebius(const std::array<Rational, 4>& m) const;
  /// Substitution [t0:t1] -> [s0^k : s1^k].
  HomogPoly power_pullback(int k) const;
  /// Substitution [t0:t1] -> [t0^2 + t1^2 : 2 t0 t1].
  HomogPoly sum_of_squares_pullback() const;

  std::string str() const;

 private:
  UniPoly p_;
  int d_ = 0;
};

/// t0^i t1^j as a form, with t = t0/t1.
HomogPoly homog_monomial(int i, int j, const std::string& var = "t");
/// The affine polynomial p promoted to a form of degree deg(p).
HomogPoly homog(const UniPoly& p);
HomogPoly homog(const UniPoly& p, int declared_degree);
HomogPoly homog_const(const Rational& c, const std::string& var = "t");

/// A closed point of P^1: a monic squarefree polynomial in t, or the point at infinity (t1 = 0).
struct Place {
  bool infinity = false;
  UniPoly poly;

  static Place at_infinity() { return Place{true, UniPoly()}; }
  static Place finite(const UniPoly& p) { return Place{false, p.monic()}; }
  int degree() const { return infinity ? 1 : poly.degree(); }
  std::string str() const;
  friend bool operator==(const Place& a, const Place& b) {
    return a.infinity == b.infinity && a.poly == b.poly;
  }
};

/// Finite places by (degree, coefficients), infinity last.
bool place_less(const Place& a, const Place& b);

int valuation_at(const HomogPoly& f, const Place& place);

}  // namespace k3
