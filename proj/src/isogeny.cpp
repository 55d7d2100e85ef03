#include "k3/isogeny.hpp"

namespace k3 {

const char* to_string(RationalPointCert::Kind k) {
  switch (k) {
    case RationalPointCert::Kind::SquareA: return "SquareA";
    case RationalPointCert::Kind::SquareC: return "SquareC";
    case RationalPointCert::Kind::Witness: return "Witness";
    case RationalPointCert::Kind::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(RationalPointCert::WitnessForm f) {
  return f == RationalPointCert::WitnessForm::Lemma ? "lemma" : "theorem";
}

RationalPointCert rational_point_cert(const UniPoly& a, const UniPoly& b, const UniPoly& c,
                                      const std::optional<RationalPointCert::Triple>& witness) {
  RationalPointCert cert;
  auto sa = poly_is_square(a);
  auto sc = poly_is_square(c);
  cert.a_is_square = sa.has_value();
  cert.c_is_square = sc.has_value();
  if (sa) {
    cert.kind = RationalPointCert::Kind::SquareA;
    cert.root = *sa;
    cert.v = *sa;
    cert.point_at_infinity = true;
    cert.point_over_base = true;
    return cert;
  }
  if (sc) {
    cert.kind = RationalPointCert::Kind::SquareC;
    cert.root = *sc;
    cert.u_squared = UniPoly(Rational(0), a.var());
    cert.v = *sc;
    cert.point_over_base = true;
    return cert;
  }
  if (!witness) return cert;

  const auto& [e, f, g, form] = *witness;
  UniPoly f2 = f * f;
  UniPoly rb, rc, u2;
  if (form == RationalPointCert::WitnessForm::Lemma) {
    rb = b - (-e - a * f2.scaled(Rational(2)));
    rc = c - (a * f2 * f2 + e * f2 + g * g);
    u2 = f2;
  } else {
    rb = b - (e + a * f2.scaled(Rational(2)));
    rc = c - (f2 * (e + a * f2) + g * g);
    u2 = -f2;
  }
  if (!rb.is_zero() || !rc.is_zero()) {
    throw WitnessError("witness fails: residual in b is " + rb.str() + ", residual in c is " + rc.str(), rb,
                       rc);
  }
  if (!(g * g == a * u2 * u2 + b * u2 + c)) {
    throw std::logic_error("verified witness does not give a point on the torsor");
  }
  cert.kind = RationalPointCert::Kind::Witness;
  cert.witness = witness;
  cert.u_squared = u2;
  cert.v = g;
  cert.point_over_base = u2.is_zero() || poly_is_square(u2).has_value();
  return cert;
}

SymbolicTwoIsogeny make_symbolic_two_isogeny() {
  SymPoly a = SymPoly::var("a"), b = SymPoly::var("b"), c = SymPoly::var("c");
  SymPoly ac = a * c, d = b * b - ac.scaled(Rational(4));
  SymPoly x = SymPoly::var("x"), X = SymPoly::var("X"), u = SymPoly::var("u"), U = SymPoly::var("U");
  SymRat xr(x), yr = SymRat::var("y"), Xr(X), Yr = SymRat::var("Y");
  SymRat ur(u), vr = SymRat::var("v"), Ur(U), Vr = SymRat::var("V");
  SymRat acr(ac), dr(d), ar(a), br(b);

  SymbolicTwoIsogeny s{
      CurveSpec::weierstrass("x", "y", x.pow(3) + b * x.pow(2) + ac * x),
      CurveSpec::weierstrass("X", "Y", X.pow(3) - b.scaled(Rational(2)) * X.pow(2) + d * X),
      CurveSpec::genus_one("u", "v", u.pow(4) + b * u.pow(2) + ac),
      CurveSpec::genus_one("U", "V", a * U.pow(4) + b * U.pow(2) + c),
      PointMap{"x", "y", yr * yr / (xr * xr), (xr * xr - acr) * yr / (xr * xr)},
      PointMap{"X", "Y", Yr * Yr / (SymRat(4) * Xr * Xr), Yr * (Xr * Xr - dr) / (SymRat(8) * Xr * Xr)},
      PointMap{"x", "y", acr / xr, -(acr * yr) / (xr * xr)},
      PointMap{"X", "Y", dr / Xr, -(dr * Yr) / (Xr * Xr)},
      PointMap{"U", "V", ar * Ur * Ur, ar * Ur * Vr},
      PointMap{"U", "V", -Ur, -Vr},
      PointMap{"X", "Y", Yr / (SymRat(2) * Xr),
               (Yr * Yr + SymRat(2) * br * Xr * Xr - SymRat(2) * Xr * Xr * Xr) / (SymRat(4) * Xr * Xr)},
      PointMap{"u", "v", SymRat(2) * ur * ur + br - SymRat(2) * vr,
               SymRat(2) * ur * (SymRat(2) * ur * ur + br - SymRat(2) * vr)},
  };
  return s;
}

bool torsor_iso_check(const SymbolicTwoIsogeny& s) {
  return maps_into(s.to_c, s.ehat, s.c_torsor) && maps_into(s.from_c, s.c_torsor, s.ehat) &&
         maps_equal_on_curve(compose_maps(s.from_c, s.to_c, s.ehat), PointMap::identity(s.ehat), s.ehat) &&
         maps_equal_on_curve(compose_maps(s.to_c, s.from_c, s.c_torsor), PointMap::identity(s.c_torsor),
                             s.c_torsor);
}

bool torsor_equivariance_check(const SymbolicTwoIsogeny& s) {
  PointMap flip_ehat{"X", "Y", SymRat::var("X"), -SymRat::var("Y")};
  PointMap flip_c{"u", "v", -SymRat::var("u"), SymRat::var("v")};
  return maps_equal_on_curve(compose_maps(s.to_c, flip_ehat, s.ehat), compose_maps(flip_c, s.to_c, s.ehat),
                             s.ehat);
}

}  // namespace k3
