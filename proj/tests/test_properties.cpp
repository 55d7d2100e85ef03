#include <gtest/gtest.h>

#include "k3/properties.hpp"

using namespace k3;

namespace {

void expect_ok(const PropertyResult& r) {
  EXPECT_TRUE(r.ok()) << r.name << ": " << r.failures << "/" << r.cases << " failed; " << r.counterexample;
}

}  // namespace

TEST(Properties, CanonicalIdempotence) { expect_ok(prop_canonical_idempotence(10000, 1)); }
TEST(Properties, SquarefreeReconstruction) { expect_ok(prop_squarefree_reconstruction(10000, 2)); }
TEST(Properties, GcdFreeBasis) { expect_ok(prop_gcd_free_basis(10000, 3)); }
TEST(Properties, ValuationAdditivity) { expect_ok(prop_valuation_additivity(10000, 4)); }
TEST(Properties, SquareRoundtrip) { expect_ok(prop_square_roundtrip(10000, 5)); }
TEST(Properties, WeierstrassIdentities) { expect_ok(prop_weierstrass_identities(300, 6)); }
TEST(Properties, ModuliActions) { expect_ok(prop_moduli_actions(10000, 7)); }

TEST(Properties, SchwartzZippel) {
  auto rs = schwartz_zippel_suite(20, 8);
  EXPECT_GE(rs.size(), 10u);
  for (const auto& r : rs) {
    EXPECT_EQ(r.cases, 20) << r.name;
    expect_ok(r);
  }
}

TEST(Properties, ResultReportsFailures) {
  PropertyResult r{"x", 3, 1, "case 2: boom"};
  EXPECT_FALSE(r.ok());
  EXPECT_FALSE(PropertyResult{"empty"}.ok());
}
