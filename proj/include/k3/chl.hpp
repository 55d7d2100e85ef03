#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "k3/families.hpp"
#include "k3/fibration.hpp"
#include "k3/isogeny.hpp"
#include "k3/sympoly.hpp"

namespace k3 {

/// Nine-tuple moduli for alpha = a2 t0^2 + 2 a1 t0 t1 + a0 t1^2 and likewise beta (b*) and
/// gamma (g*). K is Rational or SymRat.
template <class K>
struct ModuliNineT {
  K a2, a1, a0, b2, b1, b0, g2, g1, g0;

  std::array<K, 9> values() const { return {a2, a1, a0, b2, b1, b0, g2, g1, g0}; }
  static ModuliNineT from(const std::array<K, 9>& v) { return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]}; }
  friend bool operator==(const ModuliNineT& x, const ModuliNineT& y) { return x.values() == y.values(); }
};

using ModuliNine = ModuliNineT<Rational>;

/// Row i of the coefficient array is (alpha, beta, gamma)[i]; the dual is the transpose.
template <class K>
ModuliNineT<K> dual_nine(const ModuliNineT<K>& m) {
  return {m.a2, m.b2, m.g2, m.a1, m.b1, m.g1, m.a0, m.b0, m.g0};
}

template <class K>
struct ScaleTripleT {
  K lambda, mu, nu;
};

struct ScaleTriple : ScaleTripleT<Rational> {
  /// Throws std::invalid_argument if an entry is zero.
  static ScaleTriple make(Rational lambda, Rational mu, Rational nu);
  ScaleTriple compose(const ScaleTriple& o) const;
  ScaleTriple swapped() const { return make(lambda, nu, mu); }
};

/// a2 -> l m n a2, a1 -> l m a1, a0 -> l m / n a0, b2 -> l n b2, b1 -> l b1, b0 -> l / n b0,
/// g2 -> l n / m g2, g1 -> l / m g1, g0 -> l / (m n) g0.
template <class K>
ModuliNineT<K> scale_nine(const ModuliNineT<K>& m, const ScaleTripleT<K>& s) {
  const K& l = s.lambda;
  const K& u = s.mu;
  const K& n = s.nu;
  return {l * u * n * m.a2, l * u * m.a1,     l * u / n * m.a0,   l * n * m.b2,       l * m.b1,
          l / n * m.b0,     l * n / u * m.g2, l / u * m.g1,       l / (u * n) * m.g0};
}

struct Normalization {
  ModuliNine moduli;
  ScaleTriple scale;
  bool alpha1_fixed = false;
};

/// Representative with a2 = g0 = 1 (and a1 = 1 when a1 != 0 and fix_alpha1). Throws
/// std::invalid_argument("normalization undefined ...") when a2 or g0 vanishes or a2 g0 is not
/// the square of a rational.
Normalization normalize_nine(const ModuliNine& m, bool fix_alpha1 = true);

/// The quadratics alpha, beta, gamma over [t0:t1] (variable var).
std::array<HomogPoly, 3> chl_quadratics(const ModuliNine& m, const std::string& var = "t");

/// X, Y, Z over [t0:t1] with a = t0 t1 alpha, b = 2 t0 t1 beta, c = t0 t1 gamma, after the family
/// genericity checks.
FamilyModels chl_models(const ModuliNine& m);

/// The pullbacks along [s0:s1] -> [s0^2:s1^2] with twists removed:
/// X~: y^2 = x (x^2 + 2 beta x + alpha gamma), Z~: V^2 = alpha U^4 + 2 beta U^2 W^2 + gamma W^4,
/// coefficients of degree 4 in s.
FibrationModel chl_x_tilde(const ModuliNine& m);
FibrationModel chl_y_tilde(const ModuliNine& m);
FibrationModel chl_z_tilde(const ModuliNine& m);

struct ChlCurves {
  QuarticTorsor<Rational> c_alpha, c_gamma;      // V^2 = a2 U^4 + 2 a1 U^2 + a0
  TwoTorsionCurve<Rational> e_alpha, e_gamma;    // y^2 = x (x^2 + 2 a1 x + a2 a0)
  TwoTorsionCurve<Rational> ehat_alpha, ehat_gamma;
};

/// Throws std::domain_error naming the singular curve.
ChlCurves chl_curves(const ModuliNine& m);

struct JSurface {
  FibrationModel model;  // y^2 = x (x^2 + 2 beta x + alpha gamma), weight 1
  FiberReport report;
  /// The double fibers of the Enriques quotient, read from the dual moduli:
  /// E_[1:0] = (2 b2^, a2^ g2^), E_[0:1] = (2 b0^, a0^ g0^).
  TwoTorsionCurve<Rational> double_fiber_inf, double_fiber_zero;
  TwoTorsionCurve<Rational> double_fiber_inf_hat, double_fiber_zero_hat;
};

JSurface rational_surface_J(const ModuliNine& m);

struct EquivResult {
  bool holds = false;
  FibrationModel swapped;   // base/fiber swap of Z~(m)
  FibrationModel expected;  // Z~(dual m)
  std::vector<std::string> residual;  // mismatching coefficients, empty when holds
};

/// Lemma: the base/fiber swap of Z~(m) is Z~(dual m) as exact polynomial data.
EquivResult equiv_fibration_check(const ModuliNine& m);
/// As above against a caller-supplied dual (for negative controls).
EquivResult equiv_fibration_check(const ModuliNine& m, const ModuliNine& claimed_dual);

/// The same identity with the nine moduli indeterminate.
bool equiv_fibration_check_symbolic();
/// x~ -> t, s -> U on y^2 = x (alpha x^2 + 2 beta x + gamma) gives Z(dual) at W = 1, symbolically.
bool second_form_check_symbolic();
/// dual o dual = id and dual o scale(l, m, n) = scale(l, n, m) o dual in nine indeterminates.
bool dual_scale_identities_symbolic();

enum class ChlChoice { Alpha, Gamma };
const char* to_string(ChlChoice c);
ChlChoice parse_chl_choice(const std::string& s);

struct CHLReport {
  ChlChoice choice = ChlChoice::Alpha;
  ModuliNine moduli;  // after the alpha <-> gamma exchange for the gamma choice
  bool normalized = false;
  TwoTorsionCurve<Rational> e;     // with marked subgroup {sigma, tau = (0,0)}
  QuarticTorsor<Rational> c_hat;   // the genus-one curve
  TwoTorsionCurve<Rational> e_hat;
  bool e_hat_is_isogenous = false;
  Rational j_e, j_e_hat, j_jac_c_hat;
  bool j_jac_matches = false;
  /// The closing-remark formula (2 a0 - 4)^3 / (27 a0^2 (a0 - 1)), defined when a2 = a1 = 1.
  std::optional<Rational> j_formula;
  std::optional<bool> j_formula_match;
  JSurface j_surface;
  RationalPointCert::Kind cert = RationalPointCert::Kind::Unknown;
};

/// Throws std::domain_error if E_choice is singular.
CHLReport duality_report(const ModuliNine& m, ChlChoice choice);

/// alpha = t^2 + 1, b / (t0 t1) = t^2 + t + 3, gamma = t^2 + 2 as a nine-tuple.
ModuliNine chl_sample_moduli();

std::string str(const ModuliNine& m);
/// Parses nine comma- or space-separated rationals.
ModuliNine parse_moduli_nine(const std::string& s);

}  // namespace k3
