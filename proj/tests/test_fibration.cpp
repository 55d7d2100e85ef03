#include <gtest/gtest.h>

#include "k3/fibration.hpp"

using namespace k3;

namespace {

const UniPoly t = UniPoly::variable("t");
UniPoly c(int v) { return UniPoly(Rational(v), "t"); }
HomogPoly h(const UniPoly& p, int d) { return HomogPoly(p, d); }

FibrationModel generic_x() {
  return FibrationModel::weierstrass(h(t.pow(4) - c(1), 4), h(t.pow(4), 4), h(t.pow(4) - c(16), 4), "generic");
}

FibrationModel kummer17_x() {
  UniPoly rho = t * (t - c(1)) * (t + c(1));
  UniPoly alpha = t - c(2), beta = t - c(3);
  HomogPoly a = h(alpha * rho, 4);
  return FibrationModel::weierstrass(a, h((beta * rho).scaled(Rational(2)), 4), a, "kummer17");
}

FibrationModel chl_x() {
  UniPoly al = t * t + c(1), be = t * t + t + c(3), ga = t * t + c(2);
  return FibrationModel::weierstrass(h(t * al, 4), h(t * be, 4), h(t * ga, 4), "chl");
}

// Hand-expanded Delta/16 for y^2 = x(x^2 + b x + ac): b2 = 4b, b4 = 2ac, b6 = 0, b8 = -(ac)^2.
UniPoly delta_oracle(const UniPoly& a, const UniPoly& b, const UniPoly& cc) {
  UniPoly b2 = b.scaled(Rational(4)), b4 = (a * cc).scaled(Rational(2)), b8 = -(a * cc * a * cc);
  UniPoly d = -(b2 * b2 * b8) - (b4 * b4 * b4).scaled(Rational(8));
  return d;
}

}  // namespace

TEST(Kodaira, ParseAndPrint) {
  for (const char* s : {"I0", "I7", "I0*", "I3*", "II", "III", "IV", "IV*", "III*", "II*"}) {
    EXPECT_EQ(KodairaType::parse(s).str(), s);
  }
  EXPECT_THROW(KodairaType::parse("V"), std::invalid_argument);
  EXPECT_EQ(KodairaType::parse("I2*").euler(), 8);
  EXPECT_EQ(KodairaType::parse("II*").euler(), 10);
  auto fm = parse_fiber_multiset("3I0* + I4 + 2I1");
  EXPECT_EQ(str(fm), "{3I0*, I4, 2I1}");
  EXPECT_EQ(parse_fiber_multiset("{8I2, 8I1}"), parse_fiber_multiset("8 I1 + 8 I2"));
}

TEST(Kodaira, ValuationTable) {
  struct Row {
    int c4, c6, d;
    const char* type;
  };
  const Row rows[] = {{0, 0, 0, "I0"},  {0, 0, 2, "I2"},   {1, 1, 2, "II"},   {3, 1, 2, "II"},
                      {1, 2, 3, "III"}, {1, 9, 3, "III"},  {2, 2, 4, "IV"},   {2, 3, 6, "I0*"},
                      {5, 3, 6, "I0*"}, {2, 3, 9, "I3*"},  {3, 4, 8, "IV*"},  {3, 5, 9, "III*"},
                      {4, 5, 10, "II*"}, {4, 6, 14, "I2"}, {6, 9, 18, "I0*"}, {kInfiniteValuation, 3, 6, "I0*"}};
  for (const auto& r : rows) {
    LocalInvariants li{r.c4, r.c6, r.d, 0};
    EXPECT_EQ(classify_valuations(li).str(), r.type) << r.c4 << "," << r.c6 << "," << r.d;
    EXPECT_FALSE(li.v_c4 >= 4 && li.v_c6 >= 6 && li.v_delta >= 12);
  }
  LocalInvariants twisted{4, 6, 14, 0};
  classify_valuations(twisted);
  EXPECT_EQ(twisted.twists_applied, 1);
  EXPECT_EQ(twisted.v_delta, 2);
  LocalInvariants bad{1, 1, 5, 0};
  EXPECT_THROW(classify_valuations(bad), std::logic_error);
}

TEST(Fibration, InvariantsMatchHandExpansion) {
  FibrationModel x = generic_x();
  Invariants inv = invariants_c4c6delta(x);
  EXPECT_EQ(inv.delta.poly(), delta_oracle(x.a.poly(), x.b.poly(), x.c.poly()).scaled(Rational(1)));
  EXPECT_EQ(inv.c4.pow(3) - inv.c6.pow(2), inv.delta.scaled(Rational(1728)));
  EXPECT_EQ(inv.c4.declared_degree(), 8);
  EXPECT_EQ(inv.c6.declared_degree(), 12);
  EXPECT_EQ(inv.delta.declared_degree(), 24);
  EXPECT_EQ(paper_discriminant(x).scaled(Rational(16)), inv.delta);
}

TEST(Fibration, YDiscriminantEqualsZDiscriminant) {
  FibrationModel x = generic_x();
  FibrationModel y = x.isogenous();
  FibrationModel z = FibrationModel::even_quartic(x.a, x.b, x.c);
  EXPECT_EQ(paper_discriminant(y), paper_discriminant(z));
  HomogPoly ac = x.a * x.c, d = x.b * x.b - ac.scaled(Rational(4));
  EXPECT_EQ(invariants_c4c6delta(y).delta, (ac * d * d).scaled(Rational(256)));
  EXPECT_EQ(str(fiber_configuration(z).summary()), str(fiber_configuration(y).summary()));
}

TEST(Fibration, GenericTriple) {
  FibrationModel x = generic_x();
  auto ps = places(x);
  int total = 0;
  for (const auto& p : ps) {
    EXPECT_FALSE(p.infinity);
    total += p.degree();
  }
  EXPECT_EQ(total, 16);
  FiberReport rx = fiber_configuration(x);
  EXPECT_EQ(str(rx.summary()), "{8I2, 8I1}");
  EXPECT_EQ(rx.euler_total, 24);
  FiberReport ry = fiber_configuration(x.isogenous());
  EXPECT_EQ(str(ry.summary()), "{8I2, 8I1}");
  HomogPoly ac = x.a * x.c;
  for (const auto& e : rx.entries) {
    bool over_ac = valuation_at(ac, e.place) > 0;
    EXPECT_EQ(e.type, KodairaType::In(over_ac ? 2 : 1));
  }
  for (const auto& e : ry.entries) {
    bool over_ac = valuation_at(ac, e.place) > 0;
    EXPECT_EQ(e.type, KodairaType::In(over_ac ? 1 : 2));
  }
}

TEST(Fibration, Specializations) {
  UniPoly a4 = t * (t - c(1)) * (t - c(2)) * (t - c(3));
  auto four_i4 = FibrationModel::weierstrass(h(a4, 4), h(t.pow(4) + c(1), 4), h(a4, 4));
  EXPECT_EQ(str(fiber_configuration(four_i4).summary()), "{4I4, 8I1}");
  EXPECT_EQ(str(fiber_configuration(four_i4.isogenous()).summary()), "{12I2}");

  UniPoly a = t.pow(4) - c(1);
  auto four_star = FibrationModel::weierstrass(h(a, 4), h(a.scaled(Rational(17, 4)), 4), h(a, 4));
  EXPECT_EQ(str(fiber_configuration(four_star).summary()), "{4I0*}");
  EXPECT_EQ(str(fiber_configuration(four_star.isogenous()).summary()), "{4I0*}");

  FibrationModel k = kummer17_x();
  FiberReport rk = fiber_configuration(k);
  EXPECT_EQ(str(rk.summary()), "{3I0*, I4, 2I1}");
  EXPECT_EQ(rk.entries.back().place, Place::at_infinity());
  EXPECT_EQ(rk.entries.back().type, KodairaType::In(1));
  EXPECT_EQ(str(fiber_configuration(k.isogenous()).summary()), "{3I0*, 3I2}");

  FibrationModel chl = chl_x();
  FiberReport rc = fiber_configuration(chl);
  EXPECT_EQ(str(rc.summary()), "{2I0*, 4I2, 4I1}");
  auto stars = rc.places_of(KodairaType::Instar(0));
  ASSERT_EQ(stars.size(), 2u);
  EXPECT_EQ(stars[0], Place::finite(t));
  EXPECT_EQ(stars[1], Place::at_infinity());
  EXPECT_EQ(str(fiber_configuration(chl.isogenous()).summary()), "{2I0*, 4I2, 4I1}");
}

TEST(Fibration, RejectsBadModels) {
  EXPECT_THROW(FibrationModel::weierstrass(h(t, 2), h(t, 3), h(t, 4)), std::invalid_argument);
  EXPECT_THROW(FibrationModel::weierstrass(h(t, 2), h(t * t, 4), h(t, 4)), std::invalid_argument);
  UniPoly a = t.pow(4) - c(1);
  // b^2 = 4ac identically
  EXPECT_THROW(FibrationModel::weierstrass(h(a, 4), h(a.scaled(Rational(2)), 4), h(a, 4)), std::invalid_argument);
}

TEST(Fibration, SectionIncidence) {
  FibrationModel x = generic_x();
  HomogPoly ac = x.a * x.c;
  for (const auto& e : fiber_configuration(x).entries) {
    auto rec = section_incidence(x, Section::two_torsion(), e.place);
    bool over_ac = valuation_at(ac, e.place) > 0;
    EXPECT_EQ(rec.passes, over_ac);
    EXPECT_EQ(rec.singular_point, over_ac ? "(0,0)" : "(-b/2,0)");
    EXPECT_FALSE(section_incidence(x, Section::zero(), e.place).passes);
  }
  // y^2 = x(x^2 + b x + ac) with x = t^2, y = t(t^4 + 1), b = t^4 + 3 forces ac below.
  UniPoly ac_poly = (t.pow(4) + c(1)).pow(2) - t.pow(4) - t * t * (t.pow(4) + c(3));
  auto m = FibrationModel::weierstrass(homog_const(Rational(1)), h(t.pow(4) + c(3), 4), h(ac_poly, 8));
  auto s = Section::explicit_section(h(t * t, 4), h(t * (t.pow(4) + c(1)), 6), "s");
  EXPECT_TRUE(section_on_model(m, s));
  auto bad = Section::explicit_section(h(t * t, 4), h(t.pow(5), 6), "bad");
  EXPECT_FALSE(section_on_model(m, bad));
  Place p = places(m).front();
  EXPECT_THROW(section_incidence(m, bad, p), std::invalid_argument);
  auto rec = section_incidence(m, s, p);
  UniPoly xs = rec.singular_point == "(0,0)" ? UniPoly(Rational(0), "t") : (t.pow(4) + c(3)).scaled(Rational(-1, 2));
  bool oracle = (t * t - xs).divmod(p.poly).second.is_zero() &&
                (t * (t.pow(4) + c(1))).divmod(p.poly).second.is_zero();
  EXPECT_EQ(rec.passes, oracle);
}

TEST(Fibration, QuarticBisections) {
  FibrationModel x = generic_x();
  auto z = FibrationModel::even_quartic(x.a, x.b, x.c);
  auto bis = z_bisections(z);
  ASSERT_EQ(bis.size(), 2u);
  EXPECT_EQ(bis[0].name, "W=0");
  EXPECT_FALSE(bis[0].splits);
  auto z2 = FibrationModel::even_quartic(h(t.pow(4), 4), x.b, x.c);
  EXPECT_TRUE(z_bisections(z2)[0].splits);
  Place root_a = places(z).front();
  EXPECT_EQ(z_singular_point(z, root_a), valuation_at(x.a, root_a) > 0 ? "[1:0:0]" : "[0:0:1]");
}

TEST(Branch, GenericPhiPsi) {
  FibrationModel x = generic_x();
  HomogPoly ac = x.a * x.c;
  auto phi = branch_even_eight_report(BranchCover::Phi, x);
  EXPECT_EQ(phi.total, 8);
  for (const auto& f : phi.fibers) {
    ASSERT_EQ(f.components.size(), 2u);
    EXPECT_FALSE(f.components[0].in_branch);
    EXPECT_TRUE(f.components[1].in_branch);
  }
  auto psi = branch_even_eight_report(BranchCover::Psi, x);
  EXPECT_EQ(psi.total, 8);
  for (const auto& f : psi.fibers) {
    bool over_a = valuation_at(x.a, f.place) > 0;
    EXPECT_EQ(f.components[0].in_branch, over_a);
    EXPECT_EQ(f.components[1].in_branch, !over_a);
    EXPECT_TRUE(f.components[0].neutral);
  }
}

TEST(Branch, ChlPsi) {
  auto rep = branch_even_eight_report(BranchCover::Psi, chl_x());
  EXPECT_EQ(rep.total, 8);
  for (const auto& f : rep.fibers) {
    if (f.type == KodairaType::Instar(0)) {
      for (const auto& comp : f.components) {
        EXPECT_EQ(comp.in_branch, comp.meets_sigma || comp.meets_tau) << comp.label;
      }
    }
  }
}

TEST(Swap, Involution) {
  FibrationModel x = kummer17_x();
  auto z = FibrationModel::even_quartic(x.a, x.b, x.c);
  auto back = swap_base_fiber_raw(swap_base_fiber_raw(z), "t");
  EXPECT_EQ(back, z);
  EXPECT_THROW(swap_base_fiber(x), std::invalid_argument);
}

TEST(Swap, WeierstrassConversion) {
  // rho = t0 t1 puts the swapped model in two-torsion form.
  UniPoly al = t * t.scaled(Rational(2)) + t.scaled(Rational(3)) + c(5), be = t * t.scaled(Rational(7)) - t + c(4);
  HomogPoly a = h(t * al, 4);
  auto z = FibrationModel::even_quartic(a, h((t * be).scaled(Rational(2)), 4), a);
  auto s = swap_base_fiber(z);
  ASSERT_TRUE(s.is_weierstrass());
  EXPECT_EQ(s.var(), "u");
  EXPECT_EQ(str(fiber_configuration(s).summary()), "{8I2, 8I1}");
}

TEST(JMap, Moebius) {
  FibrationModel x = generic_x();
  EXPECT_TRUE(jmap_equal_up_to_moebius(x, x));
  auto moved = x.moebius({Rational(2), Rational(1), Rational(0), Rational(1)});
  auto match = find_jmap_moebius(x, moved);
  ASSERT_TRUE(match.found);
  FibrationModel k = kummer17_x();
  EXPECT_TRUE(jmap_equal_up_to_moebius(k, k.moebius({Rational(1), Rational(3), Rational(1), Rational(-1)})));
  EXPECT_FALSE(jmap_equal_up_to_moebius(x, k));
  EXPECT_FALSE(jmap_equal_up_to_moebius(k, k.isogenous()));
}

TEST(BaseChange, SquareDoublesValuations) {
  FibrationModel k = kummer17_x();
  Place zero = Place::finite(t), inf = Place::at_infinity();
  for (const HomogPoly& f : {k.a, k.b, paper_discriminant(k)}) {
    HomogPoly g = f.power_pullback(2);
    EXPECT_EQ(valuation_at(g, zero), 2 * valuation_at(f, zero));
    EXPECT_EQ(valuation_at(g, inf), 2 * valuation_at(f, inf));
  }
  auto twice = k.a.power_pullback(2).power_pullback(2);
  EXPECT_EQ(valuation_at(twice, zero), 4 * valuation_at(k.a, zero));
  auto chl_tilde = base_change_cover(chl_x().isogenous(), CoverKind::Square);
  EXPECT_EQ(str(fiber_configuration(chl_tilde).summary()), "{8I2, 8I1}");
  auto rep = base_change_branch_report(chl_x().isogenous(), {Place::finite(t), Place::at_infinity()});
  EXPECT_EQ(rep.total, 8);
}
