#pragma once

#include <optional>
#include <string>

#include "k3/unipoly.hpp"

namespace k3 {

/// Reduced quotient num/den with den monic.
class RatFunc {
 public:
  RatFunc() : num_(0), den_(1) {}
  RatFunc(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(int c) : RatFunc(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const UniPoly& p) : num_(p), den_(UniPoly(Rational(1), p.var())) {}  // NOLINT
  RatFunc(const UniPoly& num, const UniPoly& den);

  const UniPoly& num() const { return num_; }
  const UniPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  RatFunc operator-() const { return RatFunc(-num_, den_); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RatFunc pow(int e) const;
  Rational eval(const Rational& x) const;
  /// f(g) for another rational function g.
  RatFunc compose(const RatFunc& g) const;
  std::string str() const;

 private:
  UniPoly num_, den_;
};

inline bool is_zero(const RatFunc& f) { return f.is_zero(); }

/// Square root in Q(t), if one exists.
std::optional<RatFunc> ratfunc_sqrt(const RatFunc& f);

}  // namespace k3
