#include <gtest/gtest.h>

#include <random>

#include "k3/families.hpp"

using namespace k3;

namespace {

const UniPoly t = UniPoly::variable("t");
UniPoly c(int v) { return UniPoly(Rational(v), "t"); }
HomogPoly h(const UniPoly& p, int d) { return HomogPoly(p, d); }
Rational q(long n, long d = 1) { return Rational(n) / Rational(d); }

FiberMultiset fm(const char* s) { return parse_fiber_multiset(s); }

// Entries of the displayed intersection table, row i < column j, as polynomials in a, b, c, d.
std::vector<std::array<SymPoly, 3>> displayed_table() {
  SymPoly o(1), z(0);
  SymPoly a = SymPoly::var("a"), b = SymPoly::var("b"), cc = SymPoly::var("c"), d = SymPoly::var("d");
  return {
      {z, z, o},          {z, o, z},          {z, o, -o},          {z, o, -b},          {z, o, -d},
      {o, z, z},          {o, z, -o},         {o, z, -a},          {o, z, -cc},         {o, -o, z},
      {b, -a, z},         {d, -cc, z},        {b - o, o - a, a - b}, {d - o, o - cc, cc - d},
      {b - d, cc - a, a * d - b * cc},
  };
}

SixLinesConfig generic_six() { return {q(2), q(3), q(5), q(11)}; }

}  // namespace

TEST(Families, BuildSpecTables) {
  auto g = build_spec(SpecKind::generic(h(t.pow(4) - c(1), 4), h(t.pow(4), 4), h(t.pow(4) - c(16), 4)));
  EXPECT_EQ(fiber_configuration(g.x).summary(), g.expected_x);
  EXPECT_EQ(fiber_configuration(g.y).summary(), g.expected_y);
  EXPECT_EQ(fiber_configuration(g.z).summary(), g.expected_z);

  UniPoly a4 = t * (t - c(1)) * (t - c(2)) * (t - c(3));
  auto f4 = build_spec(SpecKind::four_i4(h(a4, 4), h(t.pow(4) + c(1), 4)));
  EXPECT_EQ(fiber_configuration(f4.x).summary(), fm("{4I4, 8I1}"));
  EXPECT_EQ(fiber_configuration(f4.y).summary(), fm("{12I2}"));

  auto f0 = build_spec(SpecKind::four_i0star(h(a4, 4), q(17, 8)));
  EXPECT_EQ(fiber_configuration(f0.x).summary(), fm("{4I0*}"));
  EXPECT_EQ(fiber_configuration(f0.z).summary(), fm("{4I0*}"));

  auto k = build_spec(SpecKind::kummer17(h(t * (t - c(1)) * (t + c(1)), 3), h(t - c(2), 1), h(t - c(3), 1)));
  EXPECT_EQ(fiber_configuration(k.x).summary(), fm("{3I0*, I4, 2I1}"));
  EXPECT_EQ(fiber_configuration(k.y).summary(), fm("{3I0*, 3I2}"));
  ASSERT_TRUE(k.z_prime.has_value());
  EXPECT_EQ(fiber_configuration(*k.z_prime).summary(), fm("{3I0*, 3I2}"));

  auto chl = build_spec(SpecKind::chl14(h(t * t + c(1), 2), h(t * t + t + c(3), 2), h(t * t + c(2), 2)));
  EXPECT_EQ(fiber_configuration(chl.x).summary(), fm("{2I0*, 4I2, 4I1}"));
  EXPECT_EQ(fiber_configuration(chl.y).summary(), fm("{2I0*, 4I2, 4I1}"));
}

TEST(Families, GenericityChecks) {
  UniPoly a4 = t * (t - c(1)) * (t - c(2)) * (t - c(3));
  EXPECT_THROW(build_spec(SpecKind::four_i4(h(t * t * (t - c(1)) * (t - c(2)), 4), h(t.pow(4) + c(1), 4))),
               std::invalid_argument);
  EXPECT_THROW(build_spec(SpecKind::four_i4(h(a4, 4), h(t.pow(4) - c(1), 4))), std::invalid_argument);
  EXPECT_THROW(build_spec(SpecKind::four_i0star(h(a4, 4), q(1))), std::invalid_argument);
  EXPECT_THROW(build_spec(SpecKind::kummer17(h(t * t * (t - c(1)), 3), h(t - c(2), 1), h(t - c(3), 1))),
               std::invalid_argument);
  EXPECT_THROW(build_spec(SpecKind::kummer17(h(t * (t - c(1)) * (t + c(1)), 3), h(t - c(1), 1), h(t - c(3), 1))),
               std::invalid_argument);
  EXPECT_THROW(build_spec(SpecKind::chl14(h(t * t + t, 2), h(t * t + t + c(3), 2), h(t * t + c(2), 2))),
               std::invalid_argument);
  EXPECT_THROW(build_spec(SpecKind::chl14(h(t * t + c(1), 2), h(t * t + c(1), 2), h(t * t + c(2), 2))),
               std::invalid_argument);
  // beta_2^2 = 4 alpha_2 gamma_2 puts a root of beta^2 - 4 alpha gamma at infinity.
  EXPECT_THROW(build_spec(SpecKind::chl14(h(t * t + c(1), 2), h(c(2) * t * t + t + c(3), 2), h(t * t + c(2), 2))),
               std::invalid_argument);
  EXPECT_THROW(parse_family_tag("Nope"), std::invalid_argument);
  EXPECT_EQ(parse_family_tag("CHL14"), FamilyTag::CHL14);
}

TEST(SixLines, CoefficientsAndProduct) {
  SixLinesConfig cfg{q(2), q(3), q(5), q(7)};
  auto co = six_lines_coeffs(cfg);
  EXPECT_EQ(co.two_beta_minus_alpha.poly(), (c(2) * t + c(3)) * (c(4) * t + c(6)));
  EXPECT_EQ(co.two_beta_plus_alpha.poly(), (c(5) * t + c(7)) * (t + c(2)));
  EXPECT_EQ((co.beta - co.alpha).scaled(q(2)), co.two_beta_minus_alpha);
  EXPECT_EQ((co.beta * co.beta - co.alpha * co.alpha).scaled(q(4)),
            co.two_beta_minus_alpha * co.two_beta_plus_alpha);
}

TEST(SixLines, IntersectionTableSymbolic) {
  auto sym = symbolic_line_intersections();
  auto shown = displayed_table();
  ASSERT_EQ(sym.size(), 15u);
  for (size_t k = 0; k < 15; ++k) EXPECT_TRUE(proportional(sym[k], shown[k])) << "entry " << k;
  EXPECT_FALSE(proportional(sym[0], sym[1]));

  SixLinesConfig cfg{q(2), q(3), q(5), q(7)};
  auto pts = line_intersections(cfg);
  ASSERT_EQ(pts.size(), 15u);
  EXPECT_TRUE(proportional(pts[0].point, ProjPoint{q(0), q(0), q(1)}));
  EXPECT_EQ(pts.back().i, 5);
  EXPECT_EQ(pts.back().j, 6);
  EXPECT_TRUE(proportional(pts.back().point, ProjPoint{q(-4), q(3), q(-1)}));
  EXPECT_TRUE(no_three_concurrent(cfg));
  EXPECT_FALSE(no_three_concurrent({q(2), q(2), q(5), q(7)}));
  EXPECT_THROW(line_intersections({q(2), q(3), q(2), q(3)}), std::invalid_argument);
}

TEST(SixLines, Tangency) {
  SixLinesConfig tan{q(2), q(3), q(5), q(-15)};
  EXPECT_TRUE(conic_tangency(tan));
  EXPECT_EQ(conic_tangency_value({q(2), q(3), q(5), q(7)}), q(22));
  // The predicate is symmetric under (a,b) <-> (c,d).
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dist(-9, 9);
  for (int i = 0; i < 200; ++i) {
    SixLinesConfig x{q(dist(rng)), q(dist(rng)), q(dist(rng)), q(dist(rng))};
    SixLinesConfig y{x.c, x.d, x.a, x.b};
    EXPECT_EQ(conic_tangency_value(x), -conic_tangency_value(y));
  }
  // All six lines touch the conic with parameter a(1-b)/(a-b) exactly when the predicate holds.
  auto alpha = tangency_parameter(tan);
  ASSERT_TRUE(alpha.has_value());
  for (const auto& l : six_lines(tan)) {
    if (l[2].is_zero()) continue;  // lines through [.:.:0] are checked by the coordinate lines below
    EXPECT_TRUE(tangency_residual(*alpha, l[0] / l[2], l[1] / l[2]).is_zero());
  }
  auto beta = tangency_parameter({q(2), q(3), q(5), q(7)});
  EXPECT_FALSE(tangency_residual(*beta, q(5), q(7)).is_zero());
  EXPECT_FALSE(tangency_parameter({q(2), q(2), q(5), q(7)}).has_value());
}

TEST(SixLines, Special2) {
  EXPECT_EQ(special2_classify({q(2), q(2), q(5), q(7)}), std::vector<Special2>{Special2::AEqualsB});
  EXPECT_TRUE(special2_classify({q(2), q(3), q(5), q(7)}).empty());
  EXPECT_EQ(special2_classify({q(1), q(2), q(2), q(4)}), std::vector<Special2>{Special2::DetZero});
  EXPECT_EQ(special2_classify({q(2), q(3), q(5), q(5)}), std::vector<Special2>{Special2::CEqualsD});

  auto m = build_spec(SpecKind::six_lines_params({q(2), q(2), q(5), q(7)}));
  EXPECT_EQ(m.expected_y, fm("{3I0*, 3I2}"));
  EXPECT_EQ(fiber_configuration(m.y).summary(), fm("{3I0*, 3I2}"));
  EXPECT_EQ(fiber_configuration(m.x).summary(), fm("{3I0*, I4, 2I1}"));

  auto g = build_spec(SpecKind::six_lines_params(generic_six()));
  EXPECT_TRUE(g.notes.empty());
  EXPECT_EQ(fiber_configuration(g.x).summary(), fm("{2I0*, 2I4, 4I1}"));
  EXPECT_EQ(fiber_configuration(g.y).summary(), fm("{2I0*, 6I2}"));
  ASSERT_TRUE(g.z_prime.has_value());
  EXPECT_EQ(fiber_configuration(*g.z_prime).summary(), fm("{2I0*, 6I2}"));
}

TEST(SixLines, BidegreeForm) {
  SixLinesConfig cfg{q(2), q(3), q(5), q(7)};
  auto m = bidegree_form(cfg);
  EXPECT_EQ(det2(m[0]), q(0));
  EXPECT_EQ(det2(m[1]), q(0));
  EXPECT_EQ(det2(m[2]), cfg.a - cfg.b);
  EXPECT_EQ(det2(m[3]), cfg.c - cfg.d);
  EXPECT_TRUE(bidegree_reconstructs(cfg));
  EXPECT_TRUE(bidegree_reconstructs(generic_six()));
  EXPECT_TRUE(bidegree_reconstructs({q(-1, 3), q(4), q(7, 2), q(-2)}));
}

TEST(SixLines, BaseChangeAndBranch) {
  auto g = build_spec(SpecKind::six_lines_params(generic_six()));
  auto ytilde = base_change_cover(g.y, CoverKind::Square);
  EXPECT_EQ(fiber_configuration(ytilde).summary(), fm("{12I2}"));
  auto rep = base_change_branch_report(g.y, {Place::finite(t), Place::at_infinity()});
  EXPECT_EQ(rep.total, 8);

  ASSERT_TRUE(g.x_prime.has_value());
  EXPECT_EQ(branch_even_eight_report(BranchCover::PsiPrime, *g.x_prime).total, 8);
  EXPECT_EQ(branch_even_eight_report(BranchCover::Phi, g.x).total, 8);
}

TEST(Rosenhain, Example) {
  auto r = RosenhainTriple::make(q(2), q(3), q(6), q(12));
  MuTriple mu = rosenhain_mu(r);
  EXPECT_EQ(mu, (MuTriple{q(5, 3), q(5, 4), q(1)}));
  EXPECT_EQ(dual_mu(mu), (MuTriple{q(13, 3), q(7, 2), q(1)}));
  EXPECT_THROW(RosenhainTriple::make(q(2), q(3), q(6), q(11)), std::invalid_argument);
  EXPECT_THROW(RosenhainTriple::make(q(1), q(3), q(6), q(6)), std::invalid_argument);
  EXPECT_THROW(dual_mu({q(1), q(2), q(3)}), std::invalid_argument);
  EXPECT_THROW(dual_mu({q(2), q(3), q(3)}), std::invalid_argument);
}

TEST(Rosenhain, DualIsInvolution) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 9);
  int checked = 0;
  while (checked < 100) {
    MuTriple m{q(num(rng), den(rng)), q(num(rng), den(rng)), q(num(rng), den(rng))};
    if (m.m2 == m.m3 || m.m1 == q(1) || m.m1 == q(-1)) continue;
    MuTriple d = dual_mu(m);
    if (d.m2 == d.m3 || d.m1 == q(1) || d.m1 == q(-1)) continue;
    EXPECT_EQ(dual_mu(d), m);
    ++checked;
  }
}

TEST(Kummer, ModelsAndDuality) {
  MuTriple mu{q(5, 3), q(5, 4), q(1)};
  auto k = kummer_models(mu);
  auto kd = kummer_models(dual_mu(mu));
  EXPECT_TRUE(jmap_equal_up_to_moebius(k.y, kd.y));
  // mu3 = 1 puts a root of beta^2 - alpha^2 on rho: two I0* merge into I2*.
  EXPECT_EQ(fiber_configuration(k.y).summary(), fm("{2I0*, I2*, 2I2}"));

  MuTriple g{q(3), q(-2), q(1, 2)};
  auto kg = kummer_models(g);
  EXPECT_EQ(fiber_configuration(kg.x).summary(), fm("{3I0*, I4, 2I1}"));
  EXPECT_EQ(fiber_configuration(kg.y).summary(), fm("{3I0*, 3I2}"));
  EXPECT_EQ(fiber_configuration(kg.z_prime).summary(), fm("{3I0*, 3I2}"));
  EXPECT_TRUE(jmap_equal_up_to_moebius(kg.y, kummer_models(dual_mu(g)).y));
  EXPECT_FALSE(jmap_equal_up_to_moebius(kg.x, kg.y));
}

TEST(Kummer, AffineXMatchesDualModuli) {
  for (MuTriple g : {MuTriple{q(3), q(-2), q(1, 2)}, MuTriple{q(5, 3), q(5, 4), q(1)}}) {
    auto x = kummer_x_affine(dual_mu(g));
    EXPECT_EQ(fiber_configuration(x).places_of(KodairaType::Instar(0)).size() >= 2, true);
    EXPECT_TRUE(jmap_equal_up_to_moebius(x, kummer_models(g).x));
  }
}

TEST(Height, PairingExamples) {
  std::vector<Rational> six_halves(6, q(1, 2));
  EXPECT_EQ(height_pairing(2, 0, 0, 0, six_halves, true), q(1));
  EXPECT_EQ(height_pairing(2, 0, 0, 2, {}, false), q(0));
  EXPECT_EQ(height_pairing(2, 0, 0, 0, {}, true), q(4));
}

TEST(FourI0star, Witness) {
  UniPoly a = t * (t - c(1)) * (t - c(2)) * (t - c(3));
  auto w = four_i0star_witness(a, q(17, 8));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->f, UniPoly(q(1, 2), "t"));
  EXPECT_EQ(w->e, a.scaled(q(15, 4)));
  auto cert = rational_point_cert(a, a.scaled(q(17, 4)), a, w);
  EXPECT_EQ(cert.kind, RationalPointCert::Kind::Witness);
  EXPECT_FALSE(four_i0star_witness(a, q(3)).has_value());
}
