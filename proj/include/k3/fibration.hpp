#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "k3/homog.hpp"
#include "k3/ratfunc.hpp"

namespace k3 {

enum class ModelKind { WeierstrassTwoTorsion, QuarticGenusOne };

/// A genus-one family over P^1_[t0:t1].
///
/// WeierstrassTwoTorsion: y^2 = x (x^2 + b x + a c) with deg b = 2n, deg a + deg c = 4n.
/// QuarticGenusOne: V^2 = sum_m e_m U^(4-m) W^m with deg e_m = deg e_0 + m (deg e_4 - deg e_0)/4.
/// The weight n is 2 for K3 surfaces and 1 for rational elliptic surfaces.
struct FibrationModel {
  ModelKind kind = ModelKind::WeierstrassTwoTorsion;
  HomogPoly a, b, c;
  std::array<HomogPoly, 5> e;
  int weight = 2;
  std::string label;

  static FibrationModel weierstrass(HomogPoly a, HomogPoly b, HomogPoly c, std::string label = "");
  static FibrationModel quartic(std::array<HomogPoly, 5> e, std::string label = "");
  /// V^2 = q4 U^4 + q2 U^2 W^2 + q0 W^4
  static FibrationModel even_quartic(HomogPoly q4, HomogPoly q2, HomogPoly q0, std::string label = "");

  bool is_weierstrass() const { return kind == ModelKind::WeierstrassTwoTorsion; }
  const std::string& var() const { return is_weierstrass() ? b.var() : e[2].var(); }
  /// Half the declared degree of a (or e_0).
  int k() const { return (is_weierstrass() ? a : e[0]).declared_degree() / 2; }
  /// The Weierstrass model Y^2 = X (X^2 - 2b X + b^2 - 4ac) with factorization (1, b^2 - 4ac).
  FibrationModel isogenous(const std::string& label = "") const;
  /// The model with coefficients composed with [t0:t1] -> [m0 t0 + m1 t1 : m2 t0 + m3 t1].
  FibrationModel moebius(const std::array<Rational, 4>& m) const;
  std::string str() const;

  friend bool operator==(const FibrationModel& x, const FibrationModel& y);
};

struct Invariants {
  HomogPoly c4, c6, delta;
};

/// c4, c6 and the standard discriminant, with 1728 delta = c4^3 - c6^2. Quartic models use
/// c4 = 16 I, c6 = 32 J, delta = 16 (4 I^3 - J^2)/27.
Invariants invariants_c4c6delta(const FibrationModel& m);

/// (ac)^2 (b^2 - 4ac) for Weierstrass models, (4 I^3 - J^2)/27 for quartic models.
HomogPoly paper_discriminant(const FibrationModel& m);

/// The discriminant places in deterministic order.
std::vector<Place> places(const FibrationModel& m);

struct KodairaType {
  enum class Tag { I, Istar, II, III, IV, IVstar, IIIstar, IIstar };
  Tag tag = Tag::I;
  int n = 0;

  static KodairaType In(int n) { return {Tag::I, n}; }
  static KodairaType Instar(int n) { return {Tag::Istar, n}; }
  /// Parses "I2", "I0*", "II", "IV*", ...
  static KodairaType parse(const std::string& s);

  int euler() const;
  std::string str() const;
  friend auto operator<=>(const KodairaType&, const KodairaType&) = default;
};

/// Fiber multiset counted over geometric points, I0 excluded.
using FiberMultiset = std::map<KodairaType, int>;

/// Parses "{8I2, 8I1}" or "3I0* + I4 + 2I1".
FiberMultiset parse_fiber_multiset(const std::string& s);
/// Canonical text: larger Euler numbers first, e.g. "{2I0*, 4I2, 4I1}".
std::string str(const FiberMultiset& fm);

/// Stands in for the valuation of an identically zero invariant.
inline constexpr int kInfiniteValuation = 1 << 20;

struct LocalInvariants {
  int v_c4 = 0, v_c6 = 0, v_delta = 0;
  int twists_applied = 0;
};

struct FiberEntry {
  Place place;
  LocalInvariants local;
  KodairaType type;
  int degree = 1;
};

struct FiberReport {
  std::vector<FiberEntry> entries;
  int euler_total = 0;
  int weight = 2;

  FiberMultiset summary() const;
  /// Entries of the given type.
  std::vector<Place> places_of(const KodairaType& t) const;
};

/// Minimalizes the local valuations and classifies. Throws std::logic_error on a triple outside
/// the table.
KodairaType classify_valuations(LocalInvariants& inv);
std::pair<LocalInvariants, KodairaType> local_kodaira(const FibrationModel& m, const Place& p);

/// Classifies all places. Throws std::logic_error if a K3-weight model does not total 24.
FiberReport fiber_configuration(const FibrationModel& m);

/// A section of a Weierstrass model given by forms x of degree 2n and y of degree 3n.
struct Section {
  enum class Kind { Zero, TwoTorsion, Explicit };
  Kind kind = Kind::Zero;
  HomogPoly x, y;
  std::string name;

  static Section zero() { return {Kind::Zero, {}, {}, "sigma"}; }
  static Section two_torsion() { return {Kind::TwoTorsion, {}, {}, "tau"}; }
  static Section explicit_section(HomogPoly x, HomogPoly y, std::string name);
};

bool section_on_model(const FibrationModel& m, const Section& s);

struct IncidenceRecord {
  Place place;
  KodairaType type;
  /// "(0,0)" or "(-b/2,0)"
  std::string singular_point;
  bool passes = false;
};

/// Whether the section passes through the singular point of the fiber over p. Throws
/// std::invalid_argument if the section is not on the model or the fiber is not singular.
IncidenceRecord section_incidence(const FibrationModel& m, const Section& s, const Place& p);

struct BisectionRecord {
  std::string name;       // "W=0" or "U=0"
  HomogPoly coefficient;  // V^2 = coefficient on that line
  bool splits = false;    // the bisection is two sections
};

/// The two bisections U=0 and W=0 of an even quartic model.
std::vector<BisectionRecord> z_bisections(const FibrationModel& m);

/// The singular point of the quartic fiber over p: "[1:0:0]" over e0 = 0, "[0:0:1]" over e4 = 0.
std::string z_singular_point(const FibrationModel& m, const Place& p);

enum class BranchCover { Phi, Psi, PsiPrime };
const char* to_string(BranchCover c);

struct BranchComponent {
  std::string label;  // "Theta0", ..., "center"
  bool neutral = false;
  bool central = false;
  bool meets_sigma = false;
  bool meets_tau = false;
  bool in_branch = false;
};

struct BranchFiber {
  Place place;
  KodairaType type;
  int degree = 1;
  int v_f_sigma = 0, v_f_tau = 0;
  std::vector<BranchComponent> components;

  int in_branch_count() const;
};

struct BranchReport {
  BranchCover cover = BranchCover::Phi;
  std::vector<BranchFiber> fibers;
  /// Components in the branch locus, counted over geometric points.
  int total = 0;
};

/// Branch locus on X of the double cover given by w^2 = f_sigma over sigma and w^2 = f_tau over
/// tau: f = (1, ac) for Phi, (a, c) for Psi and PsiPrime (PsiPrime expects the X model carrying
/// the torsor factorization of Z').
BranchReport branch_even_eight_report(BranchCover cover, const FibrationModel& x);

/// All non-central components of the D4 fibers over the listed places (base change by a double
/// cover of P^1 branched there).
BranchReport base_change_branch_report(const FibrationModel& m, const std::vector<Place>& branch_places);

/// The transposed quartic: [U:W] becomes the base, [t0:t1] the fiber. All e_m need degree 4.
FibrationModel swap_base_fiber_raw(const FibrationModel& m, const std::string& new_var = "u");
/// As swap_base_fiber_raw, converted to Weierstrass form when the t0^4 and t1^4 coefficients
/// vanish: V^2 = t0 t1 (f1 t0^2 + f2 t0 t1 + f3 t1^2) becomes (a, b, c) = (f1, f2, f3).
FibrationModel swap_base_fiber(const FibrationModel& m, const std::string& new_var = "u");

/// j = c4^3 / delta as a rational function of t.
RatFunc j_map(const FibrationModel& m);

struct MoebiusMatch {
  bool found = false;
  std::array<Rational, 4> matrix{};
};

/// Searches for a Moebius transformation M of the base with j1 o M = j2, matching ordered triples
/// of rational singular places, and verifies it exactly.
MoebiusMatch find_jmap_moebius(const FibrationModel& m1, const FibrationModel& m2);
bool jmap_equal_up_to_moebius(const FibrationModel& m1, const FibrationModel& m2);

/// Divides out the (x, y) -> (s^2 x, s^3 y) twist at a rational place when v(b) >= 2 and
/// v(a) + v(c) >= 4. Returns false if the valuations do not allow it.
bool remove_twist(FibrationModel& m, const Place& p);

enum class CoverKind { Square, SumOfSquares };

/// Pulls back along [s0:s1] -> [s0^2:s1^2] (twists removed over s0 s1 = 0) or
/// [t0:t1] -> [t0^2 + t1^2 : 2 t0 t1] (twists removed over t0 = +-t1).
FibrationModel base_change_cover(const FibrationModel& m, CoverKind cover);

}  // namespace k3
