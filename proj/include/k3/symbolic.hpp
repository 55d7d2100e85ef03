#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "k3/sympoly.hpp"

namespace k3 {

/// A plane curve y^2 = rhs(x) with rhs a cubic (Weierstrass) or quartic (genus-one torsor)
/// in x whose coefficients are polynomials in free parameters.
struct CurveSpec {
  std::string x_var;
  std::string y_var;
  SymPoly rhs;

  /// Validates the shape of rhs: y-free, x-degree 3 with leading coefficient 1, or x-degree 4.
  static CurveSpec weierstrass(std::string x, std::string y, SymPoly rhs);
  static CurveSpec genus_one(std::string x, std::string y, SymPoly rhs);

  /// y^2 - rhs(x)
  SymPoly relation() const;
};

/// A rational map from a curve with coordinates (src_x, src_y).
struct PointMap {
  std::string src_x;
  std::string src_y;
  SymRat x_image;
  SymRat y_image;

  static PointMap identity(const CurveSpec& c);
};

/// Canonical form (p0 + p1*y)/q with q free of y. Throws std::domain_error if the
/// denominator vanishes identically on the curve.
SymRat reduce_on_curve(const SymRat& expr, const CurveSpec& curve);

/// True iff expr reduces to zero on the curve.
bool vanishes_on_curve(const SymRat& expr, const CurveSpec& curve);

bool maps_equal_on_curve(const PointMap& m1, const PointMap& m2, const CurveSpec& curve);

/// outer(inner(P)), reduced on the inner curve.
PointMap compose_maps(const PointMap& outer, const PointMap& inner, const CurveSpec& inner_curve);

/// True iff the target relation pulls back to zero on the source curve.
bool maps_into(const PointMap& m, const CurveSpec& source, const CurveSpec& target);

/// The scalar l with m^*(dx/y) = l * dx/y. Throws std::invalid_argument if m does not map
/// source into target, and std::domain_error if the ratio is not constant on the curve.
SymRat pullback_scalar(const PointMap& m, const CurveSpec& source, const CurveSpec& target);

/// Chord-tangent doubling for y^2 = x^3 + a2 x^2 + a4 x + a6.
PointMap duplication_map(const CurveSpec& curve);

/// Evaluates a map at a point; nullopt when the image is the point at infinity.
std::optional<std::pair<Rational, Rational>> apply_map(const PointMap& m, const Rational& x,
                                                      const Rational& y,
                                                      const std::map<std::string, Rational>& params);

}  // namespace k3
