#include <gtest/gtest.h>

#include "k3/homog.hpp"
#include "k3/ratfunc.hpp"
#include "k3/rational.hpp"
#include "k3/sympoly.hpp"
#include "k3/unipoly.hpp"

using namespace k3;

namespace {

UniPoly T() { return UniPoly::variable("t"); }

UniPoly from_roots(std::initializer_list<Rational> roots) {
  UniPoly p(1);
  for (const auto& r : roots) p *= UniPoly::linear_root(r);
  return p;
}

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(Rational::parse("-6/4").str(), "-3/2");
  EXPECT_EQ(Rational::parse("12").str(), "12");
  EXPECT_THROW(Rational::parse("1.5"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Rational, Sqrt) {
  EXPECT_EQ(*rational_sqrt(Rational(9, 4)), Rational(3, 2));
  EXPECT_FALSE(rational_sqrt(Rational(2)).has_value());
  EXPECT_FALSE(rational_sqrt(Rational(-4)).has_value());
  EXPECT_EQ(*rational_sqrt(Rational(0)), Rational(0));
}

TEST(UniPoly, ArithmeticAndDivision) {
  UniPoly p = T().pow(3) - UniPoly(1);
  UniPoly q = T() - UniPoly(1);
  auto [quo, rem] = p.divmod(q);
  EXPECT_EQ(quo, T().pow(2) + T() + UniPoly(1));
  EXPECT_TRUE(rem.is_zero());
  EXPECT_THROW((T() + UniPoly(1)).exact_div(q), std::domain_error);
  EXPECT_EQ(p.eval(Rational(2)), Rational(7));
  EXPECT_EQ(p.derivative(), T().pow(2).scaled(Rational(3)));
  EXPECT_EQ(p.str(), "t^3 - 1");
}

TEST(UniPoly, Gcd) {
  UniPoly a = from_roots({1, 2, 3});
  UniPoly b = from_roots({2, 3, 5});
  EXPECT_EQ(poly_gcd(a.scaled(7), b), from_roots({2, 3}));
  EXPECT_EQ(poly_gcd(a, UniPoly()), a);
}

TEST(UniPoly, SquarefreeDecomposition) {
  UniPoly p = from_roots({1}) * from_roots({2}).pow(2) * from_roots({3}).pow(3);
  auto fm = squarefree_decompose(p.scaled(Rational(-5)));
  EXPECT_EQ(fm.unit, Rational(-5));
  EXPECT_EQ(fm.product(), p.scaled(Rational(-5)));
  for (const auto& [f, e] : fm.factors) {
    if (e == 1) {
      EXPECT_EQ(f, from_roots({1}));
    }
    if (e == 2) {
      EXPECT_EQ(f, from_roots({2}));
    }
    if (e == 3) {
      EXPECT_EQ(f, from_roots({3}));
    }
  }
}

TEST(UniPoly, RationalRoots) {
  UniPoly p = from_roots({Rational(-7, 3), Rational(1, 2), 5}) * (T().pow(2) + UniPoly(1));
  auto roots = rational_roots(p.scaled(Rational(12)));
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_EQ(roots[0], Rational(-7, 3));
  EXPECT_EQ(roots[1], Rational(1, 2));
  EXPECT_EQ(roots[2], Rational(5));
  EXPECT_TRUE(rational_roots(T().pow(2) - UniPoly(2)).empty());
  auto with_zero = rational_roots(T().pow(3) - T());
  EXPECT_EQ(with_zero.size(), 3u);
}

TEST(UniPoly, RationalRootsLargeCoefficients) {
  Rational r(mpz_class("1000000007"), mpz_class("998244353"));
  UniPoly p = from_roots({r, Rational(-3)}) * (T().pow(2) + UniPoly(5));
  auto roots = rational_roots(p);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_EQ(roots[0], Rational(-3));
  EXPECT_EQ(roots[1], r);
}

TEST(UniPoly, GcdFreeBasis) {
  UniPoly a = from_roots({1, 2}).pow(2);
  UniPoly b = from_roots({2, 3});
  auto basis = gcd_free_basis({a, b});
  ASSERT_EQ(basis.size(), 3u);
  for (size_t i = 0; i < basis.size(); ++i) {
    for (size_t j = i + 1; j < basis.size(); ++j) {
      EXPECT_EQ(poly_gcd(basis[i], basis[j]).degree(), 0);
    }
  }
}

TEST(UniPoly, SquareTest) {
  UniPoly s = (T().pow(2).scaled(Rational(3)) - UniPoly(Rational(1, 2)));
  auto r = poly_is_square(s * s);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(*r * *r, s * s);
  EXPECT_FALSE(poly_is_square(s * s.scaled(Rational(2))).has_value());
  EXPECT_FALSE(poly_is_square(from_roots({1, 2})).has_value());
}

TEST(UniPoly, Multiplicity) {
  UniPoly place = T().pow(2) + UniPoly(1);
  UniPoly f = place.pow(3) * from_roots({4});
  EXPECT_EQ(poly_multiplicity(f, place), 3);
  EXPECT_EQ(poly_multiplicity(f, from_roots({5})), 0);
  EXPECT_THROW(poly_multiplicity(f, from_roots({1}).pow(2)), std::invalid_argument);
}

TEST(HomogPoly, ValuationAtInfinity) {
  HomogPoly f(from_roots({1}), 4);
  EXPECT_EQ(valuation_at(f, Place::at_infinity()), 3);
  EXPECT_EQ(valuation_at(f, Place::finite(from_roots({1}))), 1);
  EXPECT_THROW(HomogPoly(T().pow(3), 2), std::invalid_argument);
}

TEST(HomogPoly, SwapAndMoebius) {
  HomogPoly f(T().pow(2) + T().scaled(Rational(2)), 3);
  HomogPoly g = f.swapped();
  for (int n = 0; n <= 3; ++n) EXPECT_EQ(g.coeff_t1(n), f.coeff_t1(3 - n));
  HomogPoly m = f.moebius({Rational(0), Rational(1), Rational(1), Rational(0)});
  EXPECT_EQ(m, g);
  HomogPoly id = f.moebius({Rational(1), Rational(0), Rational(0), Rational(1)});
  EXPECT_EQ(id, f);
}

TEST(HomogPoly, Pullbacks) {
  HomogPoly f(T() + UniPoly(1), 2);
  HomogPoly p = f.power_pullback(2);
  EXPECT_EQ(p.declared_degree(), 4);
  EXPECT_EQ(p.poly(), T().pow(2) + UniPoly(1));
  HomogPoly s = homog_monomial(1, 0).sum_of_squares_pullback();
  EXPECT_EQ(s.poly(), T().pow(2) + UniPoly(1));
  EXPECT_EQ(s.declared_degree(), 2);
}

TEST(Place, Ordering) {
  Place a = Place::finite(from_roots({1}));
  Place b = Place::finite(T().pow(2) + UniPoly(1));
  Place inf = Place::at_infinity();
  EXPECT_TRUE(place_less(a, b));
  EXPECT_TRUE(place_less(b, inf));
  EXPECT_FALSE(place_less(inf, a));
}

TEST(RatFunc, Reduction) {
  RatFunc f(from_roots({1, 2}), from_roots({1}).scaled(Rational(3)));
  EXPECT_EQ(f.den(), UniPoly(1));
  EXPECT_EQ(f.num(), from_roots({2}).scaled(Rational(1, 3)));
  RatFunc g = RatFunc(UniPoly(1), T()) + RatFunc(UniPoly(1), T() + UniPoly(1));
  EXPECT_EQ(g.eval(Rational(1)), Rational(3, 2));
  EXPECT_THROW(g.eval(Rational(0)), std::domain_error);
  auto sq = ratfunc_sqrt(RatFunc(from_roots({1}).pow(2), T().pow(4)));
  ASSERT_TRUE(sq.has_value());
  EXPECT_EQ(sq->pow(2), RatFunc(from_roots({1}).pow(2), T().pow(4)));
}

TEST(SymPoly, Basics) {
  SymPoly x = SymPoly::var("x"), y = SymPoly::var("y");
  SymPoly p = (x + y).pow(3);
  EXPECT_EQ(p.degree_in("x"), 3);
  EXPECT_EQ(p.total_degree(), 3);
  EXPECT_EQ(p.coeff_in("x", 2), y.scaled(Rational(3)));
  EXPECT_EQ(p - p, SymPoly());
  EXPECT_TRUE((p - p).vars().empty());
  EXPECT_EQ(p.eval({{"x", Rational(1)}, {"y", Rational(2)}}), Rational(27));
  EXPECT_EQ(p.partial("y"), (x + y).pow(2).scaled(Rational(3)));
  EXPECT_EQ(p.substitute("y", -x), SymPoly());
}

TEST(SymPoly, ExactQuotient) {
  SymPoly x = SymPoly::var("x"), y = SymPoly::var("y"), z = SymPoly::var("z");
  SymPoly a = x * x - y * z + Rational(3);
  SymPoly b = x * y + z.pow(2) - Rational(1, 2);
  auto q = exact_quotient(a * b, b);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, a);
  EXPECT_FALSE(exact_quotient(a * b + Rational(1), b).has_value());
}

TEST(SymRat, CancellationAndEquality) {
  SymPoly x = SymPoly::var("x"), y = SymPoly::var("y");
  SymRat r(x * x - y * y, (x - y).scaled(Rational(2)));
  EXPECT_EQ(r.den(), SymPoly(1));
  EXPECT_EQ(r.num(), (x + y).scaled(Rational(1, 2)));
  SymRat s = SymRat(x) / SymRat(y) + SymRat(y) / SymRat(x);
  EXPECT_EQ(s, SymRat(x * x + y * y, x * y));
  EXPECT_THROW(s.eval({{"x", Rational(0)}, {"y", Rational(1)}}), std::domain_error);
}

TEST(SymRat, Substitution) {
  SymPoly x = SymPoly::var("x"), y = SymPoly::var("y"), u = SymPoly::var("u");
  SymPoly p = x.pow(2) * y + y.pow(3) - x;
  std::map<std::string, SymRat> sub{{"x", SymRat(u) / SymRat(u + Rational(1))}, {"y", SymRat(u * u)}};
  SymRat r = substitute(p, sub);
  for (int k = 1; k <= 5; ++k) {
    Rational uv(k, 3);
    Rational xv = uv / (uv + Rational(1)), yv = uv * uv;
    EXPECT_EQ(r.eval({{"u", uv}}), xv * xv * yv + yv.pow(3) - xv);
  }
}
