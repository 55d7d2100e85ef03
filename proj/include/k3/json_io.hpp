#pragma once

#include <json.hpp>

#include "k3/chl.hpp"
#include "k3/families.hpp"
#include "k3/fibration.hpp"
#include "k3/isogeny.hpp"

namespace k3 {

using Json = nlohmann::json;

// Every number is written as a string: rationals as "p" or "p/q", counts as decimal integers.
// Polynomials use {"var", "coeffs" (ascending), "homdeg"}; readers also accept an expression
// string such as "t^4 - 1/2*t + 3", or {"expr", "homdeg"}.

void to_json(Json& j, const Rational& r);
void from_json(const Json& j, Rational& r);
void to_json(Json& j, const UniPoly& p);
void from_json(const Json& j, UniPoly& p);
void to_json(Json& j, const HomogPoly& p);
void from_json(const Json& j, HomogPoly& p);
void to_json(Json& j, const Place& p);
void from_json(const Json& j, Place& p);
void to_json(Json& j, const KodairaType& t);
void from_json(const Json& j, KodairaType& t);
void to_json(Json& j, const FiberEntry& e);
void from_json(const Json& j, FiberEntry& e);
void to_json(Json& j, const FiberReport& r);
void from_json(const Json& j, FiberReport& r);
void to_json(Json& j, const FibrationModel& m);
void from_json(const Json& j, FibrationModel& m);
void to_json(Json& j, const BranchReport& r);
void from_json(const Json& j, BranchReport& r);
void to_json(Json& j, const RationalPointCert& c);
void from_json(const Json& j, RationalPointCert& c);
void to_json(Json& j, const TwoTorsionCurve<Rational>& e);
void from_json(const Json& j, TwoTorsionCurve<Rational>& e);
void to_json(Json& j, const QuarticTorsor<Rational>& q);
void from_json(const Json& j, QuarticTorsor<Rational>& q);
void to_json(Json& j, const ModuliNine& m);
void from_json(const Json& j, ModuliNine& m);
void to_json(Json& j, const ScaleTriple& s);
void from_json(const Json& j, ScaleTriple& s);
void to_json(Json& j, const Normalization& n);
void from_json(const Json& j, Normalization& n);
void to_json(Json& j, const MuTriple& m);
void from_json(const Json& j, MuTriple& m);
void to_json(Json& j, const SixLinesConfig& c);
void from_json(const Json& j, SixLinesConfig& c);
void to_json(Json& j, const JSurface& s);
void from_json(const Json& j, JSurface& s);
void to_json(Json& j, const CHLReport& r);
void from_json(const Json& j, CHLReport& r);
void to_json(Json& j, const EquivResult& r);
void from_json(const Json& j, EquivResult& r);

Json fiber_multiset_json(const FiberMultiset& fm);
int int_from_json(const Json& j);
Json int_json(int v);

/// {"tag": "Generic", "a": ..., "b": ..., "c": ...} and the analogous keys for the other tags
/// (rho, alpha, beta, gamma; "beta" is a rational for FourI0star; "six_lines" for SixLinesParams).
SpecKind spec_from_json(const Json& j);
Json spec_to_json(const SpecKind& k);

/// X, Y, Z (and Z', X') of a family with their classifications and the expected tables.
Json family_json(const FamilyModels& f);

}  // namespace k3
