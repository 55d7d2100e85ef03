#include "k3/symbolic.hpp"

#include <stdexcept>

namespace k3 {

namespace {

/// p = p0 + p1*y modulo y^2 = rhs.
std::pair<SymPoly, SymPoly> split_y(const SymPoly& p, const CurveSpec& c) {
  int d = p.degree_in(c.y_var);
  if (d <= 0 || !p.depends_on(c.y_var)) return {p, SymPoly()};
  SymPoly p0, p1, r(1);
  for (int k = 0; k <= d; ++k) {
    if (k >= 2 && k % 2 == 0) r = r * c.rhs;
    SymPoly ck = p.coeff_in(c.y_var, k);
    if (ck.is_zero()) continue;
    if (k % 2 == 0) {
      p0 += ck * r;
    } else {
      p1 += ck * r;
    }
  }
  return {p0, p1};
}

void check_rhs(const std::string& x, const std::string& y, const SymPoly& rhs) {
  if (rhs.depends_on(y)) throw std::invalid_argument("curve right-hand side depends on " + y);
  if (x == y) throw std::invalid_argument("curve coordinates must be distinct");
}

}  // namespace

CurveSpec CurveSpec::weierstrass(std::string x, std::string y, SymPoly rhs) {
  check_rhs(x, y, rhs);
  if (rhs.degree_in(x) != 3 || rhs.coeff_in(x, 3) != SymPoly(1)) {
    throw std::invalid_argument("Weierstrass right-hand side must be monic cubic in " + x);
  }
  return CurveSpec{std::move(x), std::move(y), std::move(rhs)};
}

CurveSpec CurveSpec::genus_one(std::string x, std::string y, SymPoly rhs) {
  check_rhs(x, y, rhs);
  if (rhs.degree_in(x) != 4) throw std::invalid_argument("torsor right-hand side must be quartic in " + x);
  return CurveSpec{std::move(x), std::move(y), std::move(rhs)};
}

SymPoly CurveSpec::relation() const { return SymPoly::var(y_var).pow(2) - rhs; }

PointMap PointMap::identity(const CurveSpec& c) {
  return PointMap{c.x_var, c.y_var, SymRat::var(c.x_var), SymRat::var(c.y_var)};
}

SymRat reduce_on_curve(const SymRat& expr, const CurveSpec& curve) {
  auto [n0, n1] = split_y(expr.num(), curve);
  auto [d0, d1] = split_y(expr.den(), curve);
  SymPoly y = SymPoly::var(curve.y_var);
  if (d1.is_zero()) {
    if (d0.is_zero()) throw std::domain_error("denominator vanishes on the curve");
    return SymRat(n0 + n1 * y, d0);
  }
  SymPoly den = d0 * d0 - d1 * d1 * curve.rhs;
  if (den.is_zero()) throw std::domain_error("denominator vanishes on the curve");
  SymPoly r0 = n0 * d0 - n1 * d1 * curve.rhs;
  SymPoly r1 = n1 * d0 - n0 * d1;
  return SymRat(r0 + r1 * y, den);
}

bool vanishes_on_curve(const SymRat& expr, const CurveSpec& curve) {
  auto [d0, d1] = split_y(expr.den(), curve);
  if ((d0 * d0 - d1 * d1 * curve.rhs).is_zero()) {
    throw std::domain_error("denominator vanishes on the curve");
  }
  auto [n0, n1] = split_y(expr.num(), curve);
  return n0.is_zero() && n1.is_zero();
}

bool maps_equal_on_curve(const PointMap& m1, const PointMap& m2, const CurveSpec& curve) {
  return vanishes_on_curve(m1.x_image - m2.x_image, curve) &&
         vanishes_on_curve(m1.y_image - m2.y_image, curve);
}

PointMap compose_maps(const PointMap& outer, const PointMap& inner, const CurveSpec& inner_curve) {
  std::map<std::string, SymRat> sub{{outer.src_x, inner.x_image}, {outer.src_y, inner.y_image}};
  return PointMap{inner.src_x, inner.src_y,
                  reduce_on_curve(substitute(outer.x_image, sub), inner_curve),
                  reduce_on_curve(substitute(outer.y_image, sub), inner_curve)};
}

bool maps_into(const PointMap& m, const CurveSpec& source, const CurveSpec& target) {
  std::map<std::string, SymRat> sub{{target.x_var, m.x_image}, {target.y_var, m.y_image}};
  return vanishes_on_curve(substitute(target.relation(), sub), source);
}

SymRat pullback_scalar(const PointMap& m, const CurveSpec& source, const CurveSpec& target) {
  if (m.src_x != source.x_var || m.src_y != source.y_var) {
    throw std::invalid_argument("map coordinates do not match the source curve");
  }
  if (!maps_into(m, source, target)) throw std::invalid_argument("map does not land on the target curve");
  const std::string& x = source.x_var;
  const std::string& y = source.y_var;
  SymRat yr = SymRat::var(y);
  SymRat dydx = SymRat(source.rhs.partial(x)) / (SymRat(2) * yr);
  SymRat dX = m.x_image.partial(x) + m.x_image.partial(y) * dydx;
  SymRat lambda = reduce_on_curve(dX * yr / m.y_image, source);
  SymPoly r0 = lambda.num().coeff_in(y, 0);
  SymPoly r1 = lambda.num().coeff_in(y, 1);
  const SymPoly& q = lambda.den();
  if (!r1.is_zero() || !(r0.partial(x) * q - r0 * q.partial(x)).is_zero()) {
    throw std::domain_error("pullback ratio is not constant on the curve: " + lambda.str());
  }
  for (int x0 = 0;; ++x0) {
    std::map<std::string, Rational> at{{x, Rational(x0)}};
    SymPoly qs = q.specialize(at);
    if (!qs.is_zero()) return SymRat(r0.specialize(at), qs);
  }
}

PointMap duplication_map(const CurveSpec& curve) {
  const std::string& x = curve.x_var;
  SymRat xr = SymRat::var(x), yr = SymRat::var(curve.y_var);
  SymRat a2(curve.rhs.coeff_in(x, 2));
  SymRat lambda = SymRat(curve.rhs.partial(x)) / (SymRat(2) * yr);
  SymRat x2 = lambda * lambda - a2 - SymRat(2) * xr;
  SymRat y2 = lambda * (xr - x2) - yr;
  return PointMap{x, curve.y_var, reduce_on_curve(x2, curve), reduce_on_curve(y2, curve)};
}

std::optional<std::pair<Rational, Rational>> apply_map(const PointMap& m, const Rational& x,
                                                      const Rational& y,
                                                      const std::map<std::string, Rational>& params) {
  std::map<std::string, Rational> at = params;
  at[m.src_x] = x;
  at[m.src_y] = y;
  try {
    return std::make_pair(m.x_image.eval(at), m.y_image.eval(at));
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

}  // namespace k3
