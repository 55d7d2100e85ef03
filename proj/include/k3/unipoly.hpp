#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3/rational.hpp"

namespace k3 {

/// Dense univariate polynomial over Q, coefficients stored in ascending order.
/// The zero polynomial has no coefficients and degree -1.
class UniPoly {
 public:
  UniPoly() = default;
  UniPoly(const Rational& c, std::string var = "t");  // NOLINT(google-explicit-constructor)
  UniPoly(int c) : UniPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  UniPoly(std::vector<Rational> coeffs, std::string var);

  static UniPoly variable(std::string var = "t");
  static UniPoly monomial(const Rational& c, int deg, std::string var = "t");
  /// (t - r)
  static UniPoly linear_root(const Rational& r, std::string var = "t");

  const std::string& var() const { return var_; }
  UniPoly with_var(std::string var) const;
  const std::vector<Rational>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  Rational coeff(int i) const;
  const Rational& lead() const;

  UniPoly operator-() const;
  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const UniPoly& o);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const UniPoly& b) { return a *= b; }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  UniPoly scaled(const Rational& s) const;
  UniPoly pow(int e) const;
  UniPoly monic() const;
  UniPoly derivative() const;
  Rational eval(const Rational& x) const;
  /// p(q(t))
  UniPoly compose(const UniPoly& q) const;

  /// Euclidean division; throws on zero divisor.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const;
  /// Exact division; throws std::domain_error if the remainder is nonzero.
  UniPoly exact_div(const UniPoly& d) const;
  bool divisible_by(const UniPoly& d) const;

  /// Human-readable form, e.g. "t^4 - 1/2*t + 3".
  std::string str() const;

 private:
  void trim();
  std::string var_ = "t";
  std::vector<Rational> c_;
};

/// unit * prod factors[i].first ^ factors[i].second
struct FactorMultiset {
  Rational unit{1};
  std::vector<std::pair<UniPoly, int>> factors;

  UniPoly product() const;
};

/// Monic gcd; gcd(p, 0) = monic(p), gcd(0, 0) = 0.
UniPoly poly_gcd(const UniPoly& p, const UniPoly& q);

/// Yun's algorithm. Factors are monic, squarefree, pairwise coprime.
FactorMultiset squarefree_decompose(const UniPoly& p);

/// Pairwise coprime squarefree monic basis; each input is a unit times a product of basis powers.
/// Non-constant results only, sorted by (degree, coefficients).
std::vector<UniPoly> gcd_free_basis(const std::vector<UniPoly>& ps);

/// Distinct rational roots, ascending.
std::vector<Rational> rational_roots(const UniPoly& p);

/// Splits every rational linear factor out of each basis element. Keeps the basis property.
std::vector<UniPoly> split_rational_roots(const std::vector<UniPoly>& basis);

/// q with q^2 = p and positive leading coefficient, if it exists over Q.
std::optional<UniPoly> poly_is_square(const UniPoly& p);

/// Multiplicity of the squarefree polynomial `place` in `f` (f nonzero).
int poly_multiplicity(const UniPoly& f, const UniPoly& place);

/// Total order used for deterministic output: by degree, then coefficients ascending.
bool poly_less(const UniPoly& a, const UniPoly& b);

}  // namespace k3
