#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "k3/fibration.hpp"
#include "k3/isogeny.hpp"
#include "k3/sympoly.hpp"

namespace k3 {

enum class FamilyTag { Generic, FourI4, FourI0star, Kummer17, SixLines16, SixLinesParams, CHL14 };
const char* to_string(FamilyTag t);
FamilyTag parse_family_tag(const std::string& s);

/// Six lines z1, z2, z3, z1 + z2 + z3, a z1 + b z2 + z3, c z1 + d z2 + z3 in P^2.
struct SixLinesConfig {
  Rational a, b, c, d;
};

/// Input of build_spec. Which fields are used depends on the tag:
///   Generic (a, b, c), FourI4 (a, b), FourI0star (a, beta), Kummer17 and SixLines16 (rho, alpha,
///   beta), SixLinesParams (six_lines), CHL14 (alpha, beta, gamma).
/// CHL14 builds a = t0 t1 alpha, b = t0 t1 beta, c = t0 t1 gamma, so beta here is twice the middle
/// quadratic of the nine-tuple moduli.
struct SpecKind {
  FamilyTag tag = FamilyTag::Generic;
  HomogPoly a, b, c;
  HomogPoly rho, alpha, beta_form, gamma;
  Rational beta;
  SixLinesConfig six_lines;

  static SpecKind generic(HomogPoly a, HomogPoly b, HomogPoly c);
  static SpecKind four_i4(HomogPoly a, HomogPoly b);
  static SpecKind four_i0star(HomogPoly a, Rational beta);
  static SpecKind kummer17(HomogPoly rho, HomogPoly alpha, HomogPoly beta);
  static SpecKind six_lines16(HomogPoly alpha, HomogPoly beta, HomogPoly rho);
  static SpecKind six_lines_params(SixLinesConfig cfg);
  static SpecKind chl14(HomogPoly alpha, HomogPoly beta, HomogPoly gamma);
};

struct FamilyModels {
  FamilyTag tag = FamilyTag::Generic;
  FibrationModel x, y, z;
  std::optional<FibrationModel> z_prime;
  /// The X model with the factorization (rho, alpha^2 rho) of ac, for the cover from Z'.
  std::optional<FibrationModel> x_prime;
  FiberMultiset expected_x, expected_y, expected_z;
  /// Degeneracies noticed while building that the genericity checks do not exclude.
  std::vector<std::string> notes;
};

/// Builds X, Y, Z (and Z' where defined) after checking the family's genericity conditions.
/// Throws std::invalid_argument naming the failed condition.
FamilyModels build_spec(const SpecKind& kind);

struct SixLinesCoeffs {
  HomogPoly rho;                  // t0 t1
  HomogPoly two_beta_minus_alpha; // (a t0 + b t1)((c-1) t0 + (d-1) t1)
  HomogPoly two_beta_plus_alpha;  // (c t0 + d t1)((a-1) t0 + (b-1) t1)
  HomogPoly alpha, beta;
};
SixLinesCoeffs six_lines_coeffs(const SixLinesConfig& cfg);

using ProjPoint = std::array<Rational, 3>;
using LineCoeffs = std::array<Rational, 3>;

std::array<LineCoeffs, 6> six_lines(const SixLinesConfig& cfg);

struct LineIntersection {
  int i = 0, j = 0;  // 1-based line indices, i < j
  ProjPoint point;
};

/// The 15 pairwise intersections in the order (1,2), (1,3), ..., (5,6). Throws
/// std::invalid_argument if two lines coincide.
std::vector<LineIntersection> line_intersections(const SixLinesConfig& cfg);
bool no_three_concurrent(const SixLinesConfig& cfg);

/// The lines with a, b, c, d indeterminate, and their pairwise intersections as cross products.
std::array<std::array<SymPoly, 3>, 6> symbolic_six_lines();
std::vector<std::array<SymPoly, 3>> symbolic_line_intersections();
/// Whether two projective points with polynomial coordinates are proportional.
bool proportional(const std::array<SymPoly, 3>& p, const std::array<SymPoly, 3>& q);
bool proportional(const ProjPoint& p, const ProjPoint& q);

/// abc - abd - acd + bcd + ad - bc
Rational conic_tangency_value(const SixLinesConfig& cfg);
bool conic_tangency(const SixLinesConfig& cfg);
/// alpha (1 - alpha) - (alpha - p)(1 - alpha - q): zero iff p z1 + q z2 + z3 is tangent to the
/// conic (alpha z1 + (1 - alpha) z2 + z3)^2 = 4 alpha (1 - alpha) z1 z2.
Rational tangency_residual(const Rational& alpha, const Rational& p, const Rational& q);
/// a (1 - b)/(a - b), or nullopt when a = b.
std::optional<Rational> tangency_parameter(const SixLinesConfig& cfg);

enum class Special2 { AEqualsB, CEqualsD, DetZero, DetEqualsSum };
const char* to_string(Special2 s);
std::vector<Special2> special2_classify(const SixLinesConfig& cfg);

/// Matrices M1..M4 of the four bidegree-(1,1) curves m00 xi eta + m01 eta + m10 xi + m11 = 0.
using Mat2 = std::array<std::array<Rational, 2>, 2>;
std::array<Mat2, 4> bidegree_form(const SixLinesConfig& cfg);
Rational det2(const Mat2& m);
/// Substituting X = w eta, Y = w r with w = xi (a xi + b)(c xi + d) into the Y model reproduces
/// w^2 r^2 = w^2 prod_k f_k(xi, eta).
bool bidegree_reconstructs(const SixLinesConfig& cfg);

struct RosenhainTriple {
  Rational l1, l2, l3, L;
  /// Checks distinctness, l_i not in {0, 1}, and L^2 = 4 l1 l2 l3.
  static RosenhainTriple make(Rational l1, Rational l2, Rational l3, Rational L);
};

struct MuTriple {
  Rational m1, m2, m3;
  friend bool operator==(const MuTriple&, const MuTriple&) = default;
};

MuTriple rosenhain_mu(const RosenhainTriple& r);
/// Throws std::invalid_argument when mu2 = mu3 or mu1 = +-1.
MuTriple dual_mu(const MuTriple& m);

struct KummerModels {
  FibrationModel x, y, z, z_prime;
  HomogPoly rho, alpha, beta;
};
/// Models over [u0:u1] with rho = (u0^2 - u1^2) u1, alpha = (mu2 - mu3)(u0 - mu1 u1).
KummerModels kummer_models(const MuTriple& m);
/// y^2 = x (x^2 + 2u x + 1) prod (u - mu_i) in two-torsion form: (a, b, c) = (P, 2uP, P).
FibrationModel kummer_x_affine(const MuTriple& dual);

/// self: 2 chi + 2 (s1.O) - sum(corrections); cross: chi + s1.O + s2.O - s1.s2 - sum(corrections).
Rational height_pairing(int chi_hol, int s1_dot_zero, int s2_dot_zero, int s1_dot_s2,
                        const std::vector<Rational>& corrections, bool self);

/// A witness (e, f, g) in theorem form for the four-I0* family a = c, b = 2 beta a, when
/// f^2 = beta +- sqrt(beta^2 - 1) is a rational square.
std::optional<RationalPointCert::Triple> four_i0star_witness(const UniPoly& a, const Rational& beta);

}  // namespace k3
