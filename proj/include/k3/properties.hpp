#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "k3/isogeny.hpp"

namespace k3 {

struct PropertyResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string counterexample;  // first failure, empty if none

  bool ok() const { return failures == 0 && cases > 0; }
};

// Randomized suites over hand-rolled generators. Each is deterministic for a given seed.
PropertyResult prop_canonical_idempotence(int cases, std::uint64_t seed);
PropertyResult prop_squarefree_reconstruction(int cases, std::uint64_t seed);
PropertyResult prop_gcd_free_basis(int cases, std::uint64_t seed);
PropertyResult prop_valuation_additivity(int cases, std::uint64_t seed);
PropertyResult prop_square_roundtrip(int cases, std::uint64_t seed);
/// 1728 delta = c4^3 - c6^2, Delta_Y = Delta_Z, Euler total 24 on random generic K3 triples.
PropertyResult prop_weierstrass_identities(int cases, std::uint64_t seed);
/// dual_nine, scale_nine and normalize_nine identities on random tuples.
PropertyResult prop_moduli_actions(int cases, std::uint64_t seed);

/// The package with a, b, c replaced by rationals.
SymbolicTwoIsogeny package_at(const SymbolicTwoIsogeny& s, const std::map<std::string, Rational>& params);

/// Every symbolic identity re-checked at random rational specializations of its parameters
/// (and, for curve maps, at random points). One result per identity.
std::vector<PropertyResult> schwartz_zippel_suite(int specializations, std::uint64_t seed);

/// The five engine suites of the acceptance criteria plus the Schwartz-Zippel checks.
std::vector<PropertyResult> engine_property_suite(int cases, int specializations, std::uint64_t seed);

}  // namespace k3
