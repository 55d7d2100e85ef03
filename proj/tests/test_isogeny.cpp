#include <gtest/gtest.h>

#include "k3/isogeny.hpp"

using namespace k3;

namespace {

const SymbolicTwoIsogeny& S() {
  static const SymbolicTwoIsogeny s = make_symbolic_two_isogeny();
  return s;
}

}  // namespace

TEST(Symbolic, ReduceOnCurve) {
  const auto& s = S();
  SymRat y = SymRat::var("y"), x = SymRat::var("x");
  SymRat y2 = reduce_on_curve(y * y, s.e);
  EXPECT_EQ(y2, SymRat(s.e.rhs));
  SymRat r = reduce_on_curve(y * y / (x * x), s.e);
  EXPECT_EQ(r, x + SymRat::var("b") + SymRat::var("a") * SymRat::var("c") / x);
  EXPECT_EQ(reduce_on_curve(r, s.e), r);
}

TEST(Symbolic, CompositionIsDuplication) {
  const auto& s = S();
  EXPECT_TRUE(maps_equal_on_curve(compose_maps(s.phi, s.phi_hat, s.e), duplication_map(s.e), s.e));
  EXPECT_TRUE(maps_equal_on_curve(compose_maps(s.phi_hat, s.phi, s.ehat), duplication_map(s.ehat), s.ehat));
  EXPECT_TRUE(maps_equal_on_curve(compose_maps(s.phi_hat, s.iota_e, s.e), s.phi_hat, s.e));
  EXPECT_TRUE(maps_equal_on_curve(compose_maps(s.iota_e, s.iota_e, s.e), PointMap::identity(s.e), s.e));
  EXPECT_FALSE(maps_equal_on_curve(s.iota_e, PointMap::identity(s.e), s.e));
}

TEST(Symbolic, PullbackScalars) {
  const auto& s = S();
  EXPECT_EQ(pullback_scalar(s.phi, s.ehat, s.e), SymRat(2));
  EXPECT_EQ(pullback_scalar(s.phi_hat, s.e, s.ehat), SymRat(1));
  EXPECT_EQ(pullback_scalar(s.iota_e, s.e, s.e), SymRat(1));
  EXPECT_EQ(pullback_scalar(s.psi, s.chat, s.e), SymRat(2));
  EXPECT_EQ(pullback_scalar(duplication_map(s.e), s.e, s.e), SymRat(2));
}

TEST(Symbolic, TorsorIsomorphism) {
  EXPECT_TRUE(torsor_iso_check(S()));
  EXPECT_TRUE(torsor_equivariance_check(S()));
}
