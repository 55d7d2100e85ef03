#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "k3/ratfunc.hpp"
#include "k3/rational.hpp"
#include "k3/symbolic.hpp"
#include "k3/sympoly.hpp"
#include "k3/unipoly.hpp"

namespace k3 {

/// y^2 = x (x^2 + b x + a c), with the factorization (a, c) of the last coefficient kept.
/// K is Rational, RatFunc or SymRat.
template <class K>
struct TwoTorsionCurve {
  K a, b, c;

  static TwoTorsionCurve make(K a, K b, K c) {
    TwoTorsionCurve e{std::move(a), std::move(b), std::move(c)};
    if (is_zero(e.discriminant())) throw std::domain_error("singular curve: a^2 c^2 (b^2 - 4ac) = 0");
    return e;
  }

  K ac() const { return a * c; }
  K b2_minus_4ac() const { return b * b - K(4) * a * c; }
  /// a^2 c^2 (b^2 - 4ac)
  K discriminant() const { return ac() * ac() * b2_minus_4ac(); }
  K c4() const { return K(16) * (b * b - K(3) * ac()); }
  K c6() const { return K(-32) * b * (K(2) * b * b - K(9) * ac()); }
  /// 16 (ac)^2 (b^2 - 4ac)
  K standard_discriminant() const { return K(16) * discriminant(); }

  template <class P>
  bool contains(const P& p) const {
    if (p.at_infinity) return true;
    return is_zero(p.y * p.y - p.x * (p.x * p.x + b * p.x + ac()));
  }
};

/// V^2 = q4 U^4 + q2 U^2 + q0
template <class K>
struct QuarticTorsor {
  K q4, q2, q0;

  /// 16 q4 q0 (q2^2 - 4 q4 q0)^2
  K discriminant() const {
    K d = q2 * q2 - K(4) * q4 * q0;
    return K(16) * q4 * q0 * d * d;
  }
  K invariant_I() const { return K(12) * q4 * q0 + q2 * q2; }
  K invariant_J() const { return K(72) * q4 * q2 * q0 - K(2) * q2 * q2 * q2; }
  K eval(const K& u) const { return q4 * u * u * u * u + q2 * u * u + q0; }
};

template <class K>
struct PointXY {
  K x{}, y{};
  bool at_infinity = false;

  static PointXY infinity() { return PointXY{K(0), K(0), true}; }
  friend bool operator==(const PointXY& p, const PointXY& q) {
    if (p.at_infinity || q.at_infinity) return p.at_infinity == q.at_infinity;
    return p.x == q.x && p.y == q.y;
  }
};

/// Y^2 = X (X^2 - 2b X + b^2 - 4ac), with (a_hat, c_hat) = (1, b^2 - 4ac) unless a factorization
/// is supplied.
template <class K>
TwoTorsionCurve<K> isogenous_curve(const TwoTorsionCurve<K>& e,
                                   const std::optional<std::pair<K, K>>& factorization = std::nullopt) {
  K d = e.b2_minus_4ac();
  K ah(1), ch = d;
  if (factorization) {
    ah = factorization->first;
    ch = factorization->second;
    if (!(ah * ch == d)) throw std::invalid_argument("supplied factorization does not multiply to b^2 - 4ac");
  }
  return TwoTorsionCurve<K>::make(ah, K(-2) * e.b, ch);
}

template <class K>
void require_on_curve(const TwoTorsionCurve<K>& e, const PointXY<K>& p) {
  if (!e.contains(p)) throw std::invalid_argument("point is not on the curve");
}

/// (x, y) -> (y^2/x^2, (x^2 - ac) y / x^2); sigma and tau go to infinity.
template <class K>
PointXY<K> map_forward(const TwoTorsionCurve<K>& e, const PointXY<K>& p) {
  require_on_curve(e, p);
  if (p.at_infinity || is_zero(p.x)) return PointXY<K>::infinity();
  K x2 = p.x * p.x;
  return PointXY<K>{p.y * p.y / x2, (x2 - e.ac()) * p.y / x2, false};
}

/// (X, Y) -> (Y^2/(4X^2), Y (X^2 - D)/(8X^2)) with D the last coefficient of the source curve.
template <class K>
PointXY<K> map_dual(const TwoTorsionCurve<K>& ehat, const PointXY<K>& p) {
  require_on_curve(ehat, p);
  if (p.at_infinity || is_zero(p.x)) return PointXY<K>::infinity();
  K x2 = p.x * p.x;
  return PointXY<K>{p.y * p.y / (K(4) * x2), p.y * (x2 - ehat.ac()) / (K(8) * x2), false};
}

/// Translation by (0,0): (x, y) -> (ac/x, -ac y/x^2); exchanges infinity and (0,0).
template <class K>
PointXY<K> translate_by_two_torsion(const TwoTorsionCurve<K>& e, const PointXY<K>& p) {
  require_on_curve(e, p);
  if (p.at_infinity) return PointXY<K>{K(0), K(0), false};
  if (is_zero(p.x)) return PointXY<K>::infinity();
  return PointXY<K>{e.ac() / p.x, -(e.ac() * p.y) / (p.x * p.x), false};
}

/// (C, C_hat) = ((1, b, ac), (a, b, c)).
template <class K>
std::pair<QuarticTorsor<K>, QuarticTorsor<K>> torsors(const TwoTorsionCurve<K>& e) {
  return {QuarticTorsor<K>{K(1), e.b, e.ac()}, QuarticTorsor<K>{e.a, e.b, e.c}};
}

/// (U, V) -> (a U^2, a U V) from C_hat = (a, b, c) to E = (a, b, c).
template <class K>
PointXY<K> psi(const QuarticTorsor<K>& chat, const K& u, const K& v) {
  if (!(v * v == chat.eval(u))) throw std::invalid_argument("point is not on the torsor");
  return PointXY<K>{chat.q4 * u * u, chat.q4 * u * v, false};
}

template <class K>
K j_invariant(const TwoTorsionCurve<K>& e) {
  K delta = e.standard_discriminant();
  if (is_zero(delta)) throw std::domain_error("j-invariant of a singular curve");
  K c4 = e.c4();
  return c4 * c4 * c4 / delta;
}

/// j of the binary quartic sum e_m U^(4-m) W^m via its I and J invariants.
template <class K>
K quartic_j_invariant(const K& e0, const K& e1, const K& e2, const K& e3, const K& e4) {
  K i = K(12) * e0 * e4 - K(3) * e1 * e3 + e2 * e2;
  K j = K(72) * e0 * e2 * e4 + K(9) * e1 * e2 * e3 - K(27) * e0 * e3 * e3 - K(27) * e4 * e1 * e1 -
        K(2) * e2 * e2 * e2;
  K den = K(4) * i * i * i - j * j;
  if (is_zero(den)) throw std::domain_error("j-invariant of a singular quartic");
  return K(6912) * i * i * i / den;
}

template <class K>
K quartic_j_invariant(const QuarticTorsor<K>& q) {
  return quartic_j_invariant(q.q4, K(0), q.q2, K(0), q.q0);
}

/// The Jacobian of V^2 = a U^4 + b U^2 + c as Y^2 = X (X^2 - 2b X + b^2 - 4ac).
template <class K>
TwoTorsionCurve<K> torsor_jacobian(const QuarticTorsor<K>& q) {
  return isogenous_curve(TwoTorsionCurve<K>{q.q4, q.q2, q.q0});
}

/// Existence certificate for a rational point on C_hat: V^2 = a U^4 + b U^2 + c over Q[t].
struct RationalPointCert {
  enum class Kind { SquareA, SquareC, Witness, Unknown };
  /// Lemma form: b = -e - 2a f^2, c = a f^4 + e f^2 + g^2; the point is U^2 = f^2.
  /// Theorem form: b = e + 2a f^2, c = f^2 (e + a f^2) + g^2; the point is U^2 = -f^2.
  enum class WitnessForm { Lemma, Theorem };
  struct Triple {
    UniPoly e, f, g;
    WitnessForm form = WitnessForm::Lemma;
  };

  Kind kind = Kind::Unknown;
  bool a_is_square = false;
  bool c_is_square = false;
  std::optional<UniPoly> root;  // alpha with alpha^2 = a, or g with g^2 = c
  std::optional<Triple> witness;
  /// The certified point: U^2, V with V^2 = a U^4 + b U^2 + c. SquareA certifies [1 : alpha : 0].
  std::optional<UniPoly> u_squared;
  std::optional<UniPoly> v;
  bool point_at_infinity = false;
  /// Whether U itself is defined over Q(t) (U^2 a square).
  bool point_over_base = false;
};

const char* to_string(RationalPointCert::Kind k);
const char* to_string(RationalPointCert::WitnessForm f);

struct WitnessError : std::invalid_argument {
  UniPoly residual_b, residual_c;
  WitnessError(const std::string& what, UniPoly rb, UniPoly rc)
      : std::invalid_argument(what), residual_b(std::move(rb)), residual_c(std::move(rc)) {}
};

/// Square tests on a and c; then the optional caller-supplied witness. Throws WitnessError
/// when a supplied witness fails.
RationalPointCert rational_point_cert(const UniPoly& a, const UniPoly& b, const UniPoly& c,
                                      const std::optional<RationalPointCert::Triple>& witness = std::nullopt);

/// The symbolic two-isogeny package with a, b, c indeterminate.
struct SymbolicTwoIsogeny {
  CurveSpec e;         // y^2 = x (x^2 + b x + ac)
  CurveSpec ehat;      // Y^2 = X (X^2 - 2b X + b^2 - 4ac)
  CurveSpec c_torsor;  // v^2 = u^4 + b u^2 + ac
  CurveSpec chat;      // V^2 = a U^4 + b U^2 + c
  PointMap phi_hat;    // E -> E_hat
  PointMap phi;        // E_hat -> E
  PointMap iota_e;
  PointMap iota_ehat;
  PointMap psi;        // C_hat -> E
  PointMap iota_chat;  // (U, V) -> (-U, -V)
  PointMap to_c;       // E_hat -> C, u = Y/(2X)
  PointMap from_c;     // C -> E_hat
};

SymbolicTwoIsogeny make_symbolic_two_isogeny();

/// The C ~ E_hat isomorphism: the image satisfies the torsor equation and the displayed
/// inverse composes to the identity on both sides.
bool torsor_iso_check(const SymbolicTwoIsogeny& s);
/// (X, Y) -> (X, -Y) on E_hat corresponds to (u, v) -> (-u, v) on C.
bool torsor_equivariance_check(const SymbolicTwoIsogeny& s);

}  // namespace k3
