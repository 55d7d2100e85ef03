#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "k3/rational.hpp"
#include "k3/unipoly.hpp"

namespace k3 {

/// Sparse multivariate polynomial over Q. The variable list is sorted and holds exactly
/// the variables that occur, so structurally equal polynomials compare equal.
class SymPoly {
 public:
  using Exponents = std::vector<int>;

  SymPoly() = default;
  SymPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  SymPoly(int c) : SymPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  static SymPoly var(const std::string& name);
  /// Lifts a univariate polynomial, keeping its variable name.
  static SymPoly from_unipoly(const UniPoly& p);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return vars_.empty(); }
  std::optional<Rational> constant_value() const;
  bool depends_on(const std::string& v) const;
  int degree_in(const std::string& v) const;
  int total_degree() const;

  SymPoly operator-() const;
  friend SymPoly operator+(const SymPoly& a, const SymPoly& b);
  friend SymPoly operator-(const SymPoly& a, const SymPoly& b) { return a + (-b); }
  friend SymPoly operator*(const SymPoly& a, const SymPoly& b);
  SymPoly& operator+=(const SymPoly& o) { return *this = *this + o; }
  SymPoly& operator-=(const SymPoly& o) { return *this = *this - o; }
  SymPoly& operator*=(const SymPoly& o) { return *this = *this * o; }
  friend bool operator==(const SymPoly& a, const SymPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  SymPoly scaled(const Rational& s) const;
  SymPoly pow(int e) const;
  /// Coefficient of v^k, as a polynomial free of v.
  SymPoly coeff_in(const std::string& v, int k) const;
  SymPoly partial(const std::string& v) const;
  /// Polynomial substitution v -> q.
  SymPoly substitute(const std::string& v, const SymPoly& q) const;
  Rational eval(const std::map<std::string, Rational>& at) const;
  /// Partial evaluation of the listed variables.
  SymPoly specialize(const std::map<std::string, Rational>& at) const;
  /// Converts to UniPoly in v; every other variable must be absent.
  UniPoly to_unipoly(const std::string& v) const;

  /// Lex-largest term coefficient (under the sorted variable order).
  const Rational& leading_coeff() const;
  /// Exponentwise minimum over all terms, keyed by variable name.
  std::map<std::string, int> monomial_content() const;
  SymPoly divide_monomial(const std::map<std::string, int>& m) const;
  /// Multivariate exact division; nullopt when b does not divide a.
  friend std::optional<SymPoly> exact_quotient(const SymPoly& a, const SymPoly& b);

  std::string str() const;

 private:
  SymPoly with_vars(const std::vector<std::string>& vars) const;
  void normalize();

  std::vector<std::string> vars_;
  std::map<Exponents, Rational> terms_;
};

/// Quotient of SymPolys. Denominator normalized to leading coefficient 1, common monomial
/// factors removed. Equality is decided by cross-multiplication.
class SymRat {
 public:
  SymRat() : num_(0), den_(1) {}
  SymRat(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  SymRat(int c) : SymRat(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  SymRat(const SymPoly& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
  SymRat(const SymPoly& num, const SymPoly& den);
  static SymRat var(const std::string& name) { return SymRat(SymPoly::var(name)); }

  const SymPoly& num() const { return num_; }
  const SymPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  SymRat operator-() const;
  friend SymRat operator+(const SymRat& a, const SymRat& b);
  friend SymRat operator-(const SymRat& a, const SymRat& b) { return a + (-b); }
  friend SymRat operator*(const SymRat& a, const SymRat& b);
  friend SymRat operator/(const SymRat& a, const SymRat& b);
  SymRat& operator+=(const SymRat& o) { return *this = *this + o; }
  SymRat& operator-=(const SymRat& o) { return *this = *this - o; }
  SymRat& operator*=(const SymRat& o) { return *this = *this * o; }
  SymRat& operator/=(const SymRat& o) { return *this = *this / o; }
  friend bool operator==(const SymRat& a, const SymRat& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

  SymRat pow(int e) const;
  bool depends_on(const std::string& v) const { return num_.depends_on(v) || den_.depends_on(v); }
  SymRat partial(const std::string& v) const;
  /// Throws std::domain_error when the denominator vanishes at the point.
  Rational eval(const std::map<std::string, Rational>& at) const;
  SymRat specialize(const std::map<std::string, Rational>& at) const;
  std::string str() const;

 private:
  SymPoly num_, den_;
};

inline bool is_zero(const SymRat& r) { return r.is_zero(); }

/// Simultaneous substitution of variables by rational expressions.
SymRat substitute(const SymPoly& p, const std::map<std::string, SymRat>& sub);
SymRat substitute(const SymRat& r, const std::map<std::string, SymRat>& sub);

}  // namespace k3
