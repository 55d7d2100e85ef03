#include "k3/properties.hpp"

#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "k3/chl.hpp"
#include "k3/families.hpp"
#include "k3/fibration.hpp"
#include "k3/isogeny.hpp"
#include "k3/symbolic.hpp"

namespace k3 {

namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Rational rand_q(Rng& rng, int num = 20, int den = 9) {
  return Rational(mpz_class(uniform(rng, -num, num)), mpz_class(uniform(rng, 1, den)));
}

Rational rand_nonzero(Rng& rng, int num = 20, int den = 9) {
  Rational r;
  while (r.is_zero()) r = rand_q(rng, num, den);
  return r;
}

UniPoly rand_poly(Rng& rng, int max_deg, const std::string& var = "t") {
  std::vector<Rational> c(static_cast<size_t>(uniform(rng, 0, max_deg)) + 1);
  for (auto& x : c) x = rand_q(rng, 6, 3);
  c.back() = rand_nonzero(rng, 6, 3);
  return UniPoly(c, var);
}

UniPoly rand_exact(Rng& rng, int deg) {
  std::vector<Rational> c(static_cast<size_t>(deg) + 1);
  for (auto& x : c) x = rand_q(rng, 6, 3);
  c.back() = rand_nonzero(rng, 6, 3);
  return UniPoly(c, "t");
}

UniPoly rand_nonconstant(Rng& rng, int max_deg) {
  UniPoly p;
  while (p.degree() < 1) p = rand_poly(rng, max_deg);
  return p;
}

// Runs body once per case; body returns an empty string on success, otherwise a description.
PropertyResult run(const std::string& name, int cases, std::uint64_t seed,
                   const std::function<std::string(Rng&)>& body) {
  PropertyResult r{name, 0, 0, {}};
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    std::string why;
    try {
      why = body(rng);
    } catch (const std::exception& e) {
      why = std::string("threw: ") + e.what();
    }
    ++r.cases;
    if (!why.empty()) {
      if (r.failures++ == 0) r.counterexample = "case " + std::to_string(i) + ": " + why;
    }
  }
  return r;
}

std::string fail_if(bool bad, const std::string& what) { return bad ? what : std::string(); }

}  // namespace

PropertyResult prop_canonical_idempotence(int cases, std::uint64_t seed) {
  return run("canonical idempotence", cases, seed, [](Rng& rng) -> std::string {
    mpz_class n = uniform(rng, -1000, 1000), d = uniform(rng, 1, 1000), k = uniform(rng, 1, 50);
    Rational r(n, d), scaled(n * k, d * k);
    if (!(r == scaled)) return "unreduced rational " + scaled.str() + " != " + r.str();
    if (!(Rational::parse(r.str()) == r) || Rational::parse(r.str()).str() != r.str())
      return "parse(str) not idempotent for " + r.str();
    if (r.den() <= 0) return "denominator not positive for " + r.str();

    UniPoly p = rand_poly(rng, 6);
    std::vector<Rational> padded = p.coeffs();
    padded.resize(padded.size() + static_cast<size_t>(uniform(rng, 1, 3)));
    UniPoly q(padded, "t");
    if (!(q == p) || q.degree() != p.degree()) return "trailing zeros kept in " + q.str();
    if (!(p.monic().monic() == p.monic()) || !(p.monic().lead() == Rational(1)))
      return "monic not idempotent for " + p.str();

    UniPoly num = rand_poly(rng, 4), den = rand_poly(rng, 4), g = rand_poly(rng, 3);
    RatFunc f(num, den), h(num * g, den * g);
    if (!(f == h)) return "RatFunc not canonical: " + f.str() + " vs " + h.str();
    if (!(RatFunc(f.num(), f.den()) == f)) return "RatFunc re-reduction changed " + f.str();
    if (!(f.den().lead() == Rational(1))) return "denominator not monic in " + f.str();
    if (poly_gcd(f.num(), f.den()).degree() > 0) return "common factor left in " + f.str();
    return {};
  });
}

PropertyResult prop_squarefree_reconstruction(int cases, std::uint64_t seed) {
  return run("squarefree reconstruction", cases, seed, [](Rng& rng) -> std::string {
    UniPoly p = rand_poly(rng, 0);
    int nf = uniform(rng, 1, 3);
    for (int i = 0; i < nf; ++i) p *= rand_nonconstant(rng, 2).pow(uniform(rng, 1, 3));
    FactorMultiset fm = squarefree_decompose(p);
    if (!(fm.product() == p)) return "product mismatch for " + p.str();
    for (size_t i = 0; i < fm.factors.size(); ++i) {
      const UniPoly& f = fm.factors[i].first;
      if (f.degree() < 1 || !(f.lead() == Rational(1))) return "factor not monic non-constant: " + f.str();
      if (poly_gcd(f, f.derivative()).degree() > 0) return "factor not squarefree: " + f.str();
      for (size_t j = i + 1; j < fm.factors.size(); ++j) {
        if (fm.factors[i].second == fm.factors[j].second) return "repeated multiplicity in " + p.str();
        if (poly_gcd(f, fm.factors[j].first).degree() > 0) return "factors not coprime in " + p.str();
      }
    }
    return {};
  });
}

PropertyResult prop_gcd_free_basis(int cases, std::uint64_t seed) {
  return run("gcd-free basis", cases, seed, [](Rng& rng) -> std::string {
    std::vector<UniPoly> pool;
    for (int i = 0; i < 3; ++i) pool.push_back(rand_nonconstant(rng, 2));
    std::vector<UniPoly> in;
    int n = uniform(rng, 2, 4);
    for (int i = 0; i < n; ++i) {
      UniPoly p = rand_poly(rng, 0);
      for (const auto& f : pool) p *= f.pow(uniform(rng, 0, 2));
      if (uniform(rng, 0, 1)) p *= rand_nonconstant(rng, 1);
      in.push_back(p);
    }
    auto basis = gcd_free_basis(in);
    for (size_t i = 0; i < basis.size(); ++i) {
      if (basis[i].degree() < 1) return "constant basis element";
      if (poly_gcd(basis[i], basis[i].derivative()).degree() > 0) return "basis element not squarefree";
      for (size_t j = i + 1; j < basis.size(); ++j) {
        if (poly_gcd(basis[i], basis[j]).degree() > 0) return "basis not pairwise coprime";
      }
    }
    for (const auto& p : in) {
      UniPoly rest = p;
      for (const auto& b : basis) {
        while (rest.degree() >= b.degree() && rest.divisible_by(b)) rest = rest.exact_div(b);
      }
      if (rest.degree() != 0) return "input not spanned: " + p.str();
    }
    return {};
  });
}

PropertyResult prop_valuation_additivity(int cases, std::uint64_t seed) {
  return run("valuation additivity", cases, seed, [](Rng& rng) -> std::string {
    UniPoly shared = rand_nonconstant(rng, 2);
    UniPoly f = rand_poly(rng, 3) * shared.pow(uniform(rng, 0, 2));
    UniPoly g = rand_poly(rng, 3) * shared.pow(uniform(rng, 0, 2));
    HomogPoly hf = homog(f, f.degree() + uniform(rng, 0, 3));
    HomogPoly hg = homog(g, g.degree() + uniform(rng, 0, 3));
    HomogPoly fg = hf * hg;
    std::vector<Place> ps{Place::at_infinity(), Place::finite(UniPoly::linear_root(rand_q(rng), "t"))};
    for (const auto& b : gcd_free_basis({f, g, shared})) ps.push_back(Place::finite(b));
    for (const auto& p : ps) {
      int lhs = valuation_at(fg, p), rhs = valuation_at(hf, p) + valuation_at(hg, p);
      if (lhs != rhs) return "v_" + p.str() + "(" + fg.str() + ") = " + std::to_string(lhs) + " != " + std::to_string(rhs);
    }
    int total = 0;
    for (const auto& b : gcd_free_basis({f})) total += valuation_at(hf, Place::finite(b)) * b.degree();
    total += valuation_at(hf, Place::at_infinity());
    if (total != hf.declared_degree()) return "valuations of " + hf.str() + " do not sum to its degree";
    return {};
  });
}

PropertyResult prop_square_roundtrip(int cases, std::uint64_t seed) {
  return run("square roundtrip", cases, seed, [](Rng& rng) -> std::string {
    UniPoly q = rand_poly(rng, 6);
    auto r = poly_is_square(q * q);
    if (!r) return "square not recognized: " + (q * q).str();
    if (!(*r == q) && !(*r == -q)) return "wrong root " + r->str() + " of " + (q * q).str();
    if (!((*r) * (*r) == q * q)) return "root does not square back";
    UniPoly ns = q * q * UniPoly::linear_root(rand_q(rng), "t");
    if (poly_is_square(ns)) return "odd-degree polynomial reported square: " + ns.str();
    return {};
  });
}

PropertyResult prop_weierstrass_identities(int cases, std::uint64_t seed) {
  return run("weierstrass identities", cases, seed, [](Rng& rng) -> std::string {
    HomogPoly a, b, c;
    for (;;) {
      a = homog(rand_exact(rng, 4));
      b = homog(rand_exact(rng, 4));
      c = homog(rand_exact(rng, 4));
      HomogPoly d = b * b - (a * c).scaled(Rational(4));
      if (!a.is_zero() && !c.is_zero() && !d.is_zero()) break;
    }
    FibrationModel x = FibrationModel::weierstrass(a, b, c, "X");
    FibrationModel y = x.isogenous("Y");
    FibrationModel z = FibrationModel::even_quartic(a, b, c, "Z");
    for (const auto* m : {&x, &y, &z}) {
      Invariants inv = invariants_c4c6delta(*m);
      if (!(inv.delta.scaled(Rational(1728)) == inv.c4.pow(3) - inv.c6.pow(2)))
        return "1728 delta != c4^3 - c6^2 on " + m->str();
    }
    if (!(paper_discriminant(y) == paper_discriminant(z))) return "Delta_Y != Delta_Z for " + x.str();
    for (const auto* m : {&x, &y, &z}) {
      FiberReport r = fiber_configuration(*m);
      if (r.euler_total != 24) return "Euler total " + std::to_string(r.euler_total) + " on " + m->str();
    }
    return {};
  });
}

PropertyResult prop_moduli_actions(int cases, std::uint64_t seed) {
  return run("moduli actions", cases, seed, [](Rng& rng) -> std::string {
    std::array<Rational, 9> v;
    for (auto& x : v) x = rand_q(rng, 12, 5);
    ModuliNine m = ModuliNine::from(v);
    ScaleTriple s1 = ScaleTriple::make(rand_nonzero(rng, 9, 9), rand_nonzero(rng, 9, 9), rand_nonzero(rng, 9, 9));
    ScaleTriple s2 = ScaleTriple::make(rand_nonzero(rng, 9, 9), rand_nonzero(rng, 9, 9), rand_nonzero(rng, 9, 9));
    if (!(dual_nine(dual_nine(m)) == m)) return "dual not an involution on " + str(m);
    if (!(dual_nine(scale_nine(m, s1)) == scale_nine(dual_nine(m), s1.swapped())))
      return "dual does not intertwine scale on " + str(m);
    if (!(scale_nine(scale_nine(m, s1), s2) == scale_nine(m, s1.compose(s2))))
      return "scale not an action on " + str(m);

    // Half the draws are made normalizable.
    if (uniform(rng, 0, 1)) {
      m.a2 = rand_nonzero(rng, 12, 5);
      Rational k = rand_nonzero(rng, 9, 9);
      m.g0 = m.a2 * k * k;
    }
    auto sq = m.a2.is_zero() || m.g0.is_zero() ? std::nullopt : rational_sqrt(m.a2 * m.g0);
    if (!sq) {
      try {
        normalize_nine(m);
      } catch (const std::invalid_argument&) {
        return {};
      }
      return "normalize_nine accepted " + str(m);
    }
    Normalization n = normalize_nine(m);
    if (!(n.moduli.a2 == Rational(1)) || !(n.moduli.g0 == Rational(1))) return "not normalized: " + str(n.moduli);
    if (!m.a1.is_zero() && !(n.moduli.a1 == Rational(1))) return "alpha1 not fixed: " + str(n.moduli);
    if (!(scale_nine(m, n.scale) == n.moduli)) return "scale does not reproduce normal form of " + str(m);
    if (!(normalize_nine(n.moduli).moduli == n.moduli)) return "normalization not idempotent on " + str(m);
    return {};
  });
}

namespace {

using Params = std::map<std::string, Rational>;

CurveSpec spec_at(const CurveSpec& c, const Params& p) {
  CurveSpec out = c;
  out.rhs = c.rhs.specialize(p);
  return out;
}

PointMap map_at(const PointMap& m, const Params& p) {
  return PointMap{m.src_x, m.src_y, m.x_image.specialize(p), m.y_image.specialize(p)};
}

}  // namespace

SymbolicTwoIsogeny package_at(const SymbolicTwoIsogeny& s, const std::map<std::string, Rational>& p) {
  return {spec_at(s.e, p),        spec_at(s.ehat, p),      spec_at(s.c_torsor, p),  spec_at(s.chat, p),
          map_at(s.phi_hat, p),   map_at(s.phi, p),        map_at(s.iota_e, p),     map_at(s.iota_ehat, p),
          map_at(s.psi, p),       map_at(s.iota_chat, p),  map_at(s.to_c, p),       map_at(s.from_c, p)};
}

namespace {

// Nonsingular a, b, c: a c != 0 and b^2 != 4 a c.
Params random_abc(Rng& rng) {
  for (;;) {
    Rational a = rand_nonzero(rng), b = rand_q(rng), c = rand_nonzero(rng);
    if (!(b * b == Rational(4) * a * c)) return {{"a", a}, {"b", b}, {"c", c}};
  }
}

std::string params_str(const Params& p) {
  std::ostringstream os;
  for (const auto& [k, v] : p) os << k << "=" << v << " ";
  return os.str();
}

bool on_e(const Params& p, const Rational& x, const Rational& y) {
  const Rational &a = p.at("a"), &b = p.at("b"), &c = p.at("c");
  return y * y == x * (x * x + b * x + a * c);
}

}  // namespace

std::vector<PropertyResult> schwartz_zippel_suite(int specializations, std::uint64_t seed) {
  const SymbolicTwoIsogeny sym = make_symbolic_two_isogeny();
  std::vector<PropertyResult> out;
  std::uint64_t k = 0;
  auto isogeny_identity = [&](const std::string& name,
                              const std::function<bool(const SymbolicTwoIsogeny&)>& check) {
    out.push_back(run(name, specializations, seed + ++k, [&](Rng& rng) -> std::string {
      Params p = random_abc(rng);
      return fail_if(!check(package_at(sym, p)), "fails at " + params_str(p));
    }));
  };

  isogeny_identity("phi o phi_hat = [2] on E", [](const SymbolicTwoIsogeny& s) {
    return maps_equal_on_curve(compose_maps(s.phi, s.phi_hat, s.e), duplication_map(s.e), s.e);
  });
  isogeny_identity("phi_hat o phi = [2] on E_hat", [](const SymbolicTwoIsogeny& s) {
    return maps_equal_on_curve(compose_maps(s.phi_hat, s.phi, s.ehat), duplication_map(s.ehat), s.ehat);
  });
  isogeny_identity("phi_hat o iota_E = phi_hat", [](const SymbolicTwoIsogeny& s) {
    return maps_equal_on_curve(compose_maps(s.phi_hat, s.iota_e, s.e), s.phi_hat, s.e);
  });
  isogeny_identity("phi o iota_E_hat = phi", [](const SymbolicTwoIsogeny& s) {
    return maps_equal_on_curve(compose_maps(s.phi, s.iota_ehat, s.ehat), s.phi, s.ehat);
  });
  isogeny_identity("psi o iota_C_hat = psi", [](const SymbolicTwoIsogeny& s) {
    return maps_equal_on_curve(compose_maps(s.psi, s.iota_chat, s.chat), s.psi, s.chat);
  });
  isogeny_identity("pullback scalars (2, 1, 1, 2)", [](const SymbolicTwoIsogeny& s) {
    return pullback_scalar(s.phi, s.ehat, s.e) == SymRat(2) && pullback_scalar(s.phi_hat, s.e, s.ehat) == SymRat(1) &&
           pullback_scalar(s.iota_e, s.e, s.e) == SymRat(1) && pullback_scalar(s.psi, s.chat, s.e) == SymRat(2);
  });
  isogeny_identity("C ~ E_hat torsor isomorphism", [](const SymbolicTwoIsogeny& s) { return torsor_iso_check(s); });
  isogeny_identity("torsor equivariance", [](const SymbolicTwoIsogeny& s) { return torsor_equivariance_check(s); });

  // Points: pick (x, y) and a, b, then solve for c so that (x, y) lies on E.
  out.push_back(run("phi o phi_hat = [2] at points", specializations, seed + ++k, [&](Rng& rng) -> std::string {
    for (;;) {
      Rational a = rand_nonzero(rng), b = rand_q(rng), x = rand_nonzero(rng), y = rand_nonzero(rng);
      Rational c = (y * y / x - x * x - b * x) / a;
      if (c.is_zero() || b * b == Rational(4) * a * c) continue;
      Params p{{"a", a}, {"b", b}, {"c", c}};
      if (!on_e(p, x, y)) return "generator produced an off-curve point";
      auto h = apply_map(sym.phi_hat, x, y, p);
      auto lhs = h ? apply_map(sym.phi, h->first, h->second, p) : std::nullopt;
      auto rhs = apply_map(duplication_map(sym.e), x, y, p);
      if (lhs != rhs) return "mismatch at (" + x.str() + ", " + y.str() + ") with " + params_str(p);
      if (rhs && !on_e(p, rhs->first, rhs->second)) return "[2]P off the curve";
      return {};
    }
  }));
  out.push_back(run("psi maps C_hat into E at points", specializations, seed + ++k, [&](Rng& rng) -> std::string {
    for (;;) {
      Rational a = rand_nonzero(rng), b = rand_q(rng), u = rand_nonzero(rng), v = rand_nonzero(rng);
      Rational c = v * v - a * u.pow(4) - b * u * u;
      if (c.is_zero() || b * b == Rational(4) * a * c) continue;
      Params p{{"a", a}, {"b", b}, {"c", c}};
      auto img = apply_map(sym.psi, u, v, p);
      auto flipped = apply_map(sym.psi, -u, -v, p);
      if (!img) return "psi sent an affine point to infinity";
      if (!on_e(p, img->first, img->second)) return "psi(P) off E with " + params_str(p);
      return fail_if(img != flipped, "psi(-U,-V) != psi(U,V) with " + params_str(p));
    }
  }));

  auto random_nine = [](Rng& rng) {
    std::array<Rational, 9> v;
    for (auto& x : v) x = rand_nonzero(rng, 12, 5);
    return ModuliNine::from(v);
  };
  out.push_back(run("base/fiber swap of Z~ is Z~ of the dual", specializations, seed + ++k,
                    [&](Rng& rng) -> std::string {
                      ModuliNine m = random_nine(rng);
                      return fail_if(!equiv_fibration_check(m).holds, "fails at " + str(m));
                    }));
  out.push_back(run("second form of the swap", specializations, seed + ++k, [&](Rng& rng) -> std::string {
    ModuliNine m = random_nine(rng);
    auto [al, be, ga] = chl_quadratics(m);
    auto [da, db, dg] = chl_quadratics(dual_nine(m));
    Rational t = rand_q(rng), u = rand_q(rng), u2 = u * u;
    Rational lhs = t * (al.poly().eval(u2) * t * t + Rational(2) * be.poly().eval(u2) * t + ga.poly().eval(u2));
    Rational rhs = t * (da.poly().eval(t) * u2 * u2 + Rational(2) * db.poly().eval(t) * u2 + dg.poly().eval(t));
    return fail_if(!(lhs == rhs), "fails at " + str(m) + " t=" + t.str() + " U=" + u.str());
  }));
  out.push_back(run("dual and scale commute", specializations, seed + ++k, [&](Rng& rng) -> std::string {
    ModuliNine m = random_nine(rng);
    ScaleTriple s = ScaleTriple::make(rand_nonzero(rng), rand_nonzero(rng), rand_nonzero(rng));
    return fail_if(!(dual_nine(scale_nine(m, s)) == scale_nine(dual_nine(m), s.swapped())), "fails at " + str(m));
  }));

  const auto table = symbolic_line_intersections();
  out.push_back(run("six-lines intersection table", specializations, seed + ++k, [&](Rng& rng) -> std::string {
    SixLinesConfig cfg{rand_q(rng), rand_q(rng), rand_q(rng), rand_q(rng)};
    Params p{{"a", cfg.a}, {"b", cfg.b}, {"c", cfg.c}, {"d", cfg.d}};
    std::vector<LineIntersection> pts;
    try {
      pts = line_intersections(cfg);
    } catch (const std::invalid_argument&) {
      return {};  // coincident lines: the table has no meaning there
    }
    for (size_t i = 0; i < pts.size(); ++i) {
      ProjPoint q{table[i][0].eval(p), table[i][1].eval(p), table[i][2].eval(p)};
      if (!proportional(pts[i].point, q)) return "entry " + std::to_string(i) + " at " + params_str(p);
    }
    return {};
  }));
  out.push_back(run("bidegree form reconstructs Y", specializations, seed + ++k, [&](Rng& rng) -> std::string {
    SixLinesConfig cfg{rand_nonzero(rng), rand_nonzero(rng), rand_nonzero(rng), rand_nonzero(rng)};
    return fail_if(!bidegree_reconstructs(cfg), "fails at a,b,c,d = " + cfg.a.str() + "," + cfg.b.str() + "," +
                                                    cfg.c.str() + "," + cfg.d.str());
  }));
  return out;
}

std::vector<PropertyResult> engine_property_suite(int cases, int specializations, std::uint64_t seed) {
  std::vector<PropertyResult> out{
      prop_canonical_idempotence(cases, seed),     prop_squarefree_reconstruction(cases, seed + 1),
      prop_gcd_free_basis(cases, seed + 2),        prop_valuation_additivity(cases, seed + 3),
      prop_square_roundtrip(cases, seed + 4),      prop_weierstrass_identities(cases, seed + 5),
      prop_moduli_actions(cases, seed + 6),
  };
  for (auto& r : schwartz_zippel_suite(specializations, seed + 100)) out.push_back(std::move(r));
  return out;
}

}  // namespace k3
