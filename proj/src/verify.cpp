#include "k3/verify.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "k3/poly_parse.hpp"
#include "k3/properties.hpp"

namespace k3 {

namespace {

using Check = std::function<Json(const Json&)>;

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("fixture needs '") + key + "'");
  return j.at(key);
}

std::string need_string(const Json& j, const char* key) {
  const Json& v = need(j, key);
  if (!v.is_string()) throw std::invalid_argument(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

Rational q(const Json& j) { return j.get<Rational>(); }

MuTriple mu_from(const Json& j) {
  if (j.is_object()) return j.get<MuTriple>();
  auto v = j.get<std::vector<Rational>>();
  if (v.size() != 3) throw std::invalid_argument("mu has three entries");
  return MuTriple{v[0], v[1], v[2]};
}

// ---- sources -------------------------------------------------------------------------------

struct Source {
  std::optional<FamilyModels> family;
  std::optional<SpecKind> spec;
  std::optional<ModuliNine> chl;
  std::optional<KummerModels> kummer;
  std::optional<FibrationModel> affine;
};

Source load_source(const Json& j) {
  Source s;
  if (j.contains("family")) {
    s.spec = spec_from_json(j.at("family"));
    s.family = build_spec(*s.spec);
  } else if (j.contains("chl")) {
    s.chl = j.at("chl").get<ModuliNine>();
    s.family = chl_models(*s.chl);
  } else if (j.contains("kummer")) {
    s.kummer = kummer_models(mu_from(j.at("kummer")));
  } else if (j.contains("kummer_affine")) {
    s.affine = kummer_x_affine(dual_mu(mu_from(j.at("kummer_affine"))));
  } else {
    throw std::invalid_argument("fixture needs a source: family, chl, kummer or kummer_affine");
  }
  return s;
}

FibrationModel model_of(const Source& s, const std::string& name) {
  if (s.affine) {
    if (name != "X") throw std::invalid_argument("kummer_affine only provides X");
    return *s.affine;
  }
  if (s.kummer) {
    if (name == "X") return s.kummer->x;
    if (name == "Y") return s.kummer->y;
    if (name == "Z") return s.kummer->z;
    if (name == "Zprime") return s.kummer->z_prime;
    throw std::invalid_argument("unknown Kummer model '" + name + "'");
  }
  const FamilyModels& f = *s.family;
  if (name == "X") return f.x;
  if (name == "Y") return f.y;
  if (name == "Z") return f.z;
  if (name == "Zprime" && f.z_prime) return *f.z_prime;
  if (name == "Xprime" && f.x_prime) return *f.x_prime;
  if (name == "Zswap") return swap_base_fiber(f.z);
  if (s.chl) {
    if (name == "Xtilde") return chl_x_tilde(*s.chl);
    if (name == "Ytilde") return chl_y_tilde(*s.chl);
    if (name == "Ztilde") return chl_z_tilde(*s.chl);
    if (name == "J") return rational_surface_J(*s.chl).model;
  }
  if (name == "Xtilde") return base_change_cover(f.x, CoverKind::Square);
  if (name == "Ytilde") return base_change_cover(f.y, CoverKind::Square);
  throw std::invalid_argument("model '" + name + "' is not available for this source");
}

std::map<std::string, HomogPoly> forms_of(const Source& s) {
  std::map<std::string, HomogPoly> out;
  FibrationModel x = s.kummer ? s.kummer->x : s.affine ? *s.affine : s.family->x;
  out["a"] = x.a;
  out["b"] = x.b;
  out["c"] = x.c;
  out["ac"] = x.a * x.c;
  out["disc"] = x.b * x.b - (x.a * x.c).scaled(Rational(4));
  if (s.spec) {
    if (!s.spec->rho.is_zero()) out["rho"] = s.spec->rho;
    if (!s.spec->alpha.is_zero()) out["alpha"] = s.spec->alpha;
    if (!s.spec->beta_form.is_zero()) out["beta"] = s.spec->beta_form;
    if (!s.spec->gamma.is_zero()) out["gamma"] = s.spec->gamma;
    if (s.spec->tag == FamilyTag::CHL14) out["rho"] = homog_monomial(1, 1);
    if (s.spec->tag == FamilyTag::SixLinesParams) {
      auto co = six_lines_coeffs(s.spec->six_lines);
      out["rho"] = co.rho;
      out["alpha"] = co.alpha;
      out["beta"] = co.beta;
    }
  }
  if (s.kummer) {
    out["rho"] = s.kummer->rho;
    out["alpha"] = s.kummer->alpha;
    out["beta"] = s.kummer->beta;
  }
  if (s.chl) {
    auto [al, be, ga] = chl_quadratics(*s.chl);
    out["alpha"] = al;
    out["beta"] = be;
    out["gamma"] = ga;
    out["rho"] = homog_monomial(1, 1);
  }
  return out;
}

const HomogPoly& form(const std::map<std::string, HomogPoly>& forms, const std::string& name) {
  auto it = forms.find(name);
  if (it == forms.end()) throw std::invalid_argument("no form named '" + name + "' for this source");
  return it->second;
}

Place place_from(const Json& j) { return j.get<Place>(); }

// ---- checks --------------------------------------------------------------------------------

Json check_parse_poly(const Json& p) {
  std::string var = p.contains("var") ? need_string(p, "var") : "t";
  UniPoly u = parse_poly(need_string(p, "text"), var);
  // Printing and re-parsing must be stable.
  bool stable = parse_poly(u.str(), var) == u;
  return Json{{"coeffs", u.coeffs()}, {"print", u.str()}, {"stable", stable}};
}

Json check_coprime(const Json& p) {
  Source s = load_source(p);
  auto forms = forms_of(s);
  auto names = need(p, "forms").get<std::vector<std::string>>();
  if (names.size() != 2) throw std::invalid_argument("coprime takes two forms");
  const HomogPoly& f = form(forms, names[0]);
  const HomogPoly& g = form(forms, names[1]);
  bool finite = poly_gcd(f.poly(), g.poly()).degree() == 0;
  bool at_inf = valuation_at(f, Place::at_infinity()) == 0 || valuation_at(g, Place::at_infinity()) == 0;
  return Json{{"coprime", finite && at_inf}};
}

Json check_gcd_free_split(const Json& p) {
  Source s = load_source(p);
  auto forms = forms_of(s);
  const HomogPoly& ac = form(forms, "ac");
  const HomogPoly& disc = form(forms, "disc");
  auto basis = gcd_free_basis({ac.poly(), disc.poly()});
  bool coprime = true;
  int ac_weighted = 0, disc_weighted = 0;
  for (const auto& b : basis) {
    int va = poly_multiplicity(ac.poly(), b), vd = poly_multiplicity(disc.poly(), b);
    if (va > 0 && vd > 0) coprime = false;
    ac_weighted += 2 * va * b.degree();  // in a^2 c^2
    disc_weighted += vd * b.degree();
  }
  ac_weighted += 2 * valuation_at(ac, Place::at_infinity());
  disc_weighted += valuation_at(disc, Place::at_infinity());
  return Json{{"coprime", coprime},
              {"basis_size", int_json(static_cast<int>(basis.size()))},
              {"ac_part_degree", int_json(ac_weighted)},
              {"disc_part_degree", int_json(disc_weighted)}};
}

HomogPoly invariant_named(const FibrationModel& m, const std::string& name) {
  if (name == "paper_discriminant") return paper_discriminant(m);
  Invariants inv = invariants_c4c6delta(m);
  if (name == "delta") return inv.delta;
  if (name == "c4") return inv.c4;
  if (name == "c6") return inv.c6;
  throw std::invalid_argument("unknown invariant '" + name + "'");
}

Json check_valuation(const Json& p) {
  Source s = load_source(p);
  FibrationModel m = model_of(s, need_string(p, "model"));
  HomogPoly f = invariant_named(m, need_string(p, "of"));
  return Json{{"valuation", int_json(valuation_at(f, place_from(need(p, "place"))))}};
}

Json check_homog_valuation(const Json& p) {
  return Json{{"valuation", int_json(valuation_at(need(p, "form").get<HomogPoly>(), place_from(need(p, "place"))))}};
}

Json check_discriminant_identity(const Json& p) {
  Source s = load_source(p);
  const FamilyModels& f = *s.family;
  HomogPoly a = f.x.a, b = f.x.b, c = f.x.c, ac = a * c;
  HomogPoly d = b * b - ac.scaled(Rational(4));
  std::string id = need_string(p, "identity");
  bool holds = false;
  if (id == "delta_x") {
    holds = paper_discriminant(f.x) == ac * ac * d && invariants_c4c6delta(f.x).delta == (ac * ac * d).scaled(Rational(16));
  } else if (id == "delta_y") {
    holds = paper_discriminant(f.y) == (ac * d * d).scaled(Rational(16));
  } else if (id == "delta_y_equals_z") {
    holds = paper_discriminant(f.y) == paper_discriminant(f.z);
  } else if (id == "c4") {
    holds = invariants_c4c6delta(f.x).c4 == (b * b - ac.scaled(Rational(3))).scaled(Rational(16));
  } else if (id == "tate") {
    holds = true;
    for (const auto* m : {&f.x, &f.y, &f.z}) {
      Invariants inv = invariants_c4c6delta(*m);
      holds = holds && inv.delta.scaled(Rational(1728)) == inv.c4.pow(3) - inv.c6.pow(2);
    }
  } else {
    throw std::invalid_argument("unknown identity '" + id + "'");
  }
  return Json{{"holds", holds}};
}

Json check_places(const Json& p) {
  Source s = load_source(p);
  FibrationModel m = model_of(s, need_string(p, "model"));
  auto ps = places(m);
  int geometric = 0;
  bool inf = false;
  Json has = Json::object();
  for (const auto& pl : ps) {
    geometric += pl.degree();
    inf = inf || pl.infinity;
    has[pl.str()] = true;
  }
  return Json{{"count", int_json(static_cast<int>(ps.size()))},
              {"geometric_count", int_json(geometric)},
              {"infinity", inf},
              {"has", has}};
}

Json check_kodaira(const Json& p) {
  LocalInvariants inv{int_from_json(need(p, "v_c4")), int_from_json(need(p, "v_c6")), int_from_json(need(p, "v_delta")), 0};
  KodairaType t = classify_valuations(inv);
  return Json{{"type", t.str()}};
}

Json check_local_fiber(const Json& p) {
  Source s = load_source(p);
  FibrationModel m = model_of(s, need_string(p, "model"));
  auto [inv, type] = local_kodaira(m, place_from(need(p, "place")));
  return Json{{"type", type.str()},
              {"valuations", {int_json(inv.v_c4), int_json(inv.v_c6), int_json(inv.v_delta)}},
              {"twists", int_json(inv.twists_applied)}};
}

Json check_fiber_table(const Json& p) {
  Source s = load_source(p);
  FibrationModel m = model_of(s, need_string(p, "model"));
  FiberReport r = fiber_configuration(m);
  Json loc = Json::object();
  for (const auto& e : r.entries) loc[e.place.str()] = e.type.str();
  return Json{{"fibers", str(r.summary())}, {"euler_total", int_json(r.euler_total)}, {"locations", loc}};
}

Json check_loci_swap(const Json& p) {
  Source s = load_source(p);
  const FamilyModels& f = *s.family;
  FiberReport rx = fiber_configuration(f.x), ry = fiber_configuration(f.y);
  // Places may be grouped differently on X and Y, so compare the loci as divisors.
  auto locus = [](const std::vector<Place>& ps) {
    UniPoly prod(Rational(1));
    bool inf = false;
    for (const auto& pl : ps) {
      if (pl.infinity) inf = true;
      else prod *= pl.poly;
    }
    return std::make_pair(prod.monic(), inf);
  };
  bool swapped = locus(rx.places_of(KodairaType::In(1))) == locus(ry.places_of(KodairaType::In(2))) &&
                 locus(rx.places_of(KodairaType::In(2))) == locus(ry.places_of(KodairaType::In(1)));
  auto forms = forms_of(s);
  bool i2_on_ac = true;
  for (const auto& pl : rx.places_of(KodairaType::In(2))) i2_on_ac = i2_on_ac && valuation_at(form(forms, "ac"), pl) > 0;
  return Json{{"swapped", swapped}, {"x_i2_over_ac", i2_on_ac}};
}

Json check_section_incidence(const Json& p) {
  Source s = load_source(p);
  auto forms = forms_of(s);
  const FibrationModel& x = s.family->x;
  const HomogPoly& locus = form(forms, need_string(p, "over"));
  std::set<std::string> points;
  std::set<bool> tau, sigma;
  for (const auto& e : fiber_configuration(x).entries) {
    if (valuation_at(locus, e.place) == 0) continue;
    auto rec = section_incidence(x, Section::two_torsion(), e.place);
    points.insert(rec.singular_point);
    tau.insert(rec.passes);
    sigma.insert(section_incidence(x, Section::zero(), e.place).passes);
  }
  if (points.empty()) throw std::invalid_argument("no singular fibers over the locus");
  auto one = [](const auto& set) -> Json {
    if (set.size() != 1) return "mixed";
    return *set.begin();
  };
  return Json{{"singular_point", one(points)}, {"on_tau", one(tau)}, {"on_sigma", one(sigma)}};
}

Json check_bisections(const Json& p) {
  Source s = load_source(p);
  auto bis = z_bisections(s.family->z);
  Json names = Json::array(), splits = Json::array();
  for (const auto& b : bis) {
    names.push_back(b.name);
    splits.push_back(b.splits);
  }
  return Json{{"names", names}, {"splits", splits}};
}

bool component_selected(const BranchComponent& c, const std::string& rule) {
  if (rule == "neutral") return c.neutral;
  if (rule == "non_neutral") return !c.neutral && !c.central;
  if (rule == "meets_tau") return c.meets_tau;
  if (rule == "meets_sigma_or_tau") return c.meets_sigma || c.meets_tau;
  if (rule == "not_meeting_sigma_or_tau") return !c.meets_sigma && !c.meets_tau && !c.central;
  throw std::invalid_argument("unknown component rule '" + rule + "'");
}

// Each rule names a locus, optionally a fiber type, and which components of those fibers form the
// branch locus. Fibers not covered by any rule must contribute nothing.
Json check_branch(const Json& p) {
  Source s = load_source(p);
  auto forms = forms_of(s);
  std::string cover = need_string(p, "cover");
  BranchReport rep;
  if (cover == "Phi") {
    rep = branch_even_eight_report(BranchCover::Phi, s.family->x);
  } else if (cover == "Psi") {
    rep = branch_even_eight_report(BranchCover::Psi, s.family->x);
  } else if (cover == "PsiPrime") {
    if (!s.family->x_prime) throw std::invalid_argument("PsiPrime needs a family with Z'");
    rep = branch_even_eight_report(BranchCover::PsiPrime, *s.family->x_prime);
  } else {
    throw std::invalid_argument("unknown cover '" + cover + "'");
  }
  bool rules_hold = true;
  Json detail = Json::array();
  for (const auto& f : rep.fibers) {
    const Json* rule = nullptr;
    for (const auto& r : need(p, "rules")) {
      if (valuation_at(form(forms, need_string(r, "over")), f.place) == 0) continue;
      if (r.contains("type") && KodairaType::parse(need_string(r, "type")) != f.type) continue;
      rule = &r;
      break;
    }
    bool ok = true;
    for (const auto& c : f.components) {
      bool want = rule && component_selected(c, need_string(*rule, "components"));
      ok = ok && want == c.in_branch;
    }
    if (!ok) detail.push_back(f.place.str() + " " + f.type.str());
    rules_hold = rules_hold && ok;
  }
  return Json{{"total", int_json(rep.total)}, {"rules_hold", rules_hold}, {"violations", detail}};
}

Json check_jmap_match(const Json& p) {
  const Json& a = need(p, "first");
  const Json& b = need(p, "second");
  FibrationModel m1 = model_of(load_source(a), need_string(a, "model"));
  FibrationModel m2 = model_of(load_source(b), need_string(b, "model"));
  if (b.contains("moebius")) {
    auto v = b.at("moebius").get<std::vector<Rational>>();
    if (v.size() != 4) throw std::invalid_argument("moebius takes [a, b, c, d]");
    m2 = m2.moebius({v[0], v[1], v[2], v[3]});
  }
  return Json{{"match", jmap_equal_up_to_moebius(m1, m2)}};
}

// ---- symbolic ------------------------------------------------------------------------------

bool double_dual_identity() {
  SymRat a = SymRat::var("a"), b = SymRat::var("b"), c = SymRat::var("c");
  auto e = TwoTorsionCurve<SymRat>::make(a, b, c);
  auto ee = isogenous_curve(isogenous_curve(e));
  if (!(ee.b == SymRat(4) * b) || !(ee.ac() == SymRat(16) * a * c)) return false;
  SymPoly x = SymPoly::var("x"), y = SymPoly::var("y"), ap = SymPoly::var("a"), bp = SymPoly::var("b"),
          cp = SymPoly::var("c");
  SymPoly rel_e = y * y - x * (x * x + bp * x + ap * cp);
  SymPoly X = SymPoly(4) * x, Y = SymPoly(8) * y;
  SymPoly rel_ee = Y * Y - X * (X * X + SymPoly(4) * bp * X + SymPoly(16) * ap * cp);
  return rel_ee == SymPoly(64) * rel_e;
}

const std::set<std::string> kCurveIdentities{"phi_phi_hat_duplication", "phi_hat_phi_duplication", "phi_hat_iota_e",
                                              "psi_iota_chat",           "iota_e_interchanges",     "torsor_iso",
                                              "torsor_equivariance"};

// With "at": [a, b, c] the curve-map identities are checked on that specialization.
Json check_symbolic(const Json& p) {
  static const SymbolicTwoIsogeny generic = make_symbolic_two_isogeny();
  std::string id = need_string(p, "identity");
  SymbolicTwoIsogeny s = generic;
  if (p.contains("at")) {
    if (!kCurveIdentities.count(id) && id != "pullback") {
      throw std::invalid_argument("identity '" + id + "' has no specialization");
    }
    auto v = p.at("at").get<std::vector<Rational>>();
    if (v.size() != 3) throw std::invalid_argument("'at' is [a, b, c]");
    TwoTorsionCurve<Rational>::make(v[0], v[1], v[2]);  // rejects singular curves
    s = package_at(generic, {{"a", v[0]}, {"b", v[1]}, {"c", v[2]}});
  }
  SymRat x = SymRat::var("x"), y = SymRat::var("y"), a = SymRat::var("a"), b = SymRat::var("b"), c = SymRat::var("c");
  if (id == "pullback") {
    std::string map = need_string(p, "map");
    SymRat r;
    if (map == "phi") r = pullback_scalar(s.phi, s.ehat, s.e);
    else if (map == "phi_hat") r = pullback_scalar(s.phi_hat, s.e, s.ehat);
    else if (map == "iota_e") r = pullback_scalar(s.iota_e, s.e, s.e);
    else if (map == "psi") r = pullback_scalar(s.psi, s.chat, s.e);
    else if (map == "duplication") r = pullback_scalar(duplication_map(s.e), s.e, s.e);
    else throw std::invalid_argument("unknown map '" + map + "'");
    return Json{{"scalar", r.str()}};
  }
  bool holds = false;
  if (id == "reduce_relation") {
    holds = reduce_on_curve(y * y, s.e) == x * x * x + b * x * x + a * c * x;
  } else if (id == "reduce_quotient") {
    SymRat r = reduce_on_curve(y * y / (x * x), s.e);
    holds = r == reduce_on_curve(x + b + a * c / x, s.e) && r == (x * x + b * x + a * c) / x;
  } else if (id == "phi_phi_hat_duplication") {
    holds = maps_equal_on_curve(compose_maps(s.phi, s.phi_hat, s.e), duplication_map(s.e), s.e);
  } else if (id == "phi_hat_phi_duplication") {
    holds = maps_equal_on_curve(compose_maps(s.phi_hat, s.phi, s.ehat), duplication_map(s.ehat), s.ehat);
  } else if (id == "phi_hat_iota_e") {
    holds = maps_equal_on_curve(compose_maps(s.phi_hat, s.iota_e, s.e), s.phi_hat, s.e);
  } else if (id == "psi_iota_chat") {
    holds = maps_equal_on_curve(compose_maps(s.psi, s.iota_chat, s.chat), s.psi, s.chat);
  } else if (id == "iota_e_interchanges") {
    // iota_E is an involution sending tau = (0,0) to the point at infinity.
    holds = maps_equal_on_curve(compose_maps(s.iota_e, s.iota_e, s.e), PointMap::identity(s.e), s.e) &&
            !maps_equal_on_curve(s.iota_e, PointMap::identity(s.e), s.e);
  } else if (id == "torsor_iso") {
    holds = torsor_iso_check(s);
  } else if (id == "torsor_equivariance") {
    holds = torsor_equivariance_check(s);
  } else if (id == "double_dual") {
    holds = double_dual_identity();
  } else if (id == "chl_equiv") {
    holds = equiv_fibration_check_symbolic();
  } else if (id == "chl_second_form") {
    holds = second_form_check_symbolic();
  } else if (id == "chl_dual_scale") {
    holds = dual_scale_identities_symbolic();
  } else {
    throw std::invalid_argument("unknown identity '" + id + "'");
  }
  return Json{{"holds", holds}};
}

}  // namespace

Json isogeny_report(const std::optional<std::array<Rational, 3>>& curve) {
  Json checks = Json::array();
  bool ok = true;
  auto add = [&](const std::string& name, const Json& params) {
    Json r = check_symbolic(params);
    bool holds = r.contains("holds") ? r.at("holds").get<bool>() : true;
    ok = ok && holds;
    checks.push_back(Json{{"name", name}, {"result", r}});
  };
  std::vector<std::string> ids{"reduce_relation", "reduce_quotient", "double_dual"};
  ids.insert(ids.end(), kCurveIdentities.begin(), kCurveIdentities.end());
  for (const auto& id : ids) add(id, Json{{"identity", id}});
  Json scalars = Json::object();
  for (const char* m : {"phi", "phi_hat", "iota_e", "psi"}) {
    scalars[m] = check_symbolic(Json{{"identity", "pullback"}, {"map", m}}).at("scalar");
  }
  Json expect_scalars{{"phi", "2"}, {"phi_hat", "1"}, {"iota_e", "1"}, {"psi", "2"}};
  ok = ok && scalars == expect_scalars;
  Json out{{"symbolic", checks}, {"pullback_scalars", scalars}};
  if (curve) {
    Json at{(*curve)[0], (*curve)[1], (*curve)[2]};
    Json special = Json::array();
    for (const auto& id : kCurveIdentities) {
      Json r = check_symbolic(Json{{"identity", id}, {"at", at}});
      ok = ok && r.at("holds").get<bool>();
      special.push_back(Json{{"name", id}, {"result", r}});
    }
    auto e = TwoTorsionCurve<Rational>::make((*curve)[0], (*curve)[1], (*curve)[2]);
    auto eh = isogenous_curve(e);
    auto [cc, ch] = torsors(e);
    bool disc = cc.discriminant() == ch.discriminant() && ch.discriminant() == eh.discriminant();
    bool jac = j_invariant(torsor_jacobian(ch)) == j_invariant(eh) && quartic_j_invariant(ch) == j_invariant(eh);
    bool dd = j_invariant(isogenous_curve(eh)) == j_invariant(e);
    ok = ok && disc && jac && dd;
    out["curve"] = Json{{"e", e},
                        {"e_hat", eh},
                        {"c", cc},
                        {"c_hat", ch},
                        {"j_e", j_invariant(e)},
                        {"j_e_hat", j_invariant(eh)},
                        {"identities", special},
                        {"discriminants_equal", disc},
                        {"jacobian_j_matches", jac},
                        {"double_dual_j_matches", dd}};
  }
  out["ok"] = ok;
  return out;
}

namespace {

// ---- numeric curves ------------------------------------------------------------------------

TwoTorsionCurve<Rational> curve_from(const Json& j) {
  auto v = j.get<std::vector<Rational>>();
  if (v.size() != 3) throw std::invalid_argument("a curve is [a, b, c]");
  return TwoTorsionCurve<Rational>::make(v[0], v[1], v[2]);
}

Json point_json(const PointXY<Rational>& p) {
  if (p.at_infinity) return "infinity";
  return Json{p.x, p.y};
}

PointXY<Rational> point_from(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "infinity") return PointXY<Rational>::infinity();
  auto v = j.get<std::vector<Rational>>();
  if (v.size() != 2) throw std::invalid_argument("a point is [x, y] or \"infinity\"");
  return PointXY<Rational>{v[0], v[1], false};
}

Json check_point_map(const Json& p) {
  auto e = curve_from(need(p, "curve"));
  std::string map = need_string(p, "map");
  PointXY<Rational> pt = point_from(need(p, "point"));
  PointXY<Rational> img;
  if (map == "phi_hat") {
    img = map_forward(e, pt);
  } else if (map == "phi") {
    img = map_dual(isogenous_curve(e), pt);
  } else if (map == "iota_e") {
    img = translate_by_two_torsion(e, pt);
  } else if (map == "psi") {
    img = psi(torsors(e).second, pt.x, pt.y);
  } else if (map == "duplication") {
    static const SymbolicTwoIsogeny s = make_symbolic_two_isogeny();
    require_on_curve(e, pt);
    auto r = pt.at_infinity ? std::nullopt
                            : apply_map(duplication_map(s.e), pt.x, pt.y, {{"a", e.a}, {"b", e.b}, {"c", e.c}});
    img = r ? PointXY<Rational>{r->first, r->second, false} : PointXY<Rational>::infinity();
  } else {
    throw std::invalid_argument("unknown map '" + map + "'");
  }
  return Json{{"image", point_json(img)}};
}

Json check_isogenous_curve(const Json& p) {
  auto e = curve_from(need(p, "curve"));
  Json out{{"e_hat", isogenous_curve(e)}};
  if (p.value("twice", false)) out["e_hat_hat"] = isogenous_curve(isogenous_curve(e));
  return out;
}

Json check_j_invariant(const Json& p) { return Json{{"j", j_invariant(curve_from(need(p, "curve")))}}; }

Json check_random_curves(const Json& p) {
  std::string id = need_string(p, "identity");
  int count = int_from_json(need(p, "count"));
  std::mt19937_64 rng(static_cast<std::uint64_t>(int_from_json(need(p, "seed"))));
  std::uniform_int_distribution<int> num(-30, 30), den(1, 9);
  int failures = 0, cases = 0;
  while (cases < count) {
    Rational a(mpz_class(num(rng)), mpz_class(den(rng))), b(mpz_class(num(rng)), mpz_class(den(rng))),
        c(mpz_class(num(rng)), mpz_class(den(rng)));
    if ((a * a * c * c * (b * b - Rational(4) * a * c)).is_zero()) continue;
    ++cases;
    auto e = TwoTorsionCurve<Rational>::make(a, b, c);
    auto eh = isogenous_curve(e);
    auto [cc, ch] = torsors(e);
    bool ok = false;
    if (id == "discriminants") {
      ok = cc.discriminant() == ch.discriminant() && ch.discriminant() == eh.discriminant() && !eh.discriminant().is_zero();
    } else if (id == "double_dual_j") {
      ok = j_invariant(e) == j_invariant(isogenous_curve(eh));
    } else if (id == "jacobian_j") {
      ok = j_invariant(torsor_jacobian(ch)) == j_invariant(eh) && quartic_j_invariant(ch) == j_invariant(eh) &&
           quartic_j_invariant(cc) == j_invariant(eh);
    } else {
      throw std::invalid_argument("unknown identity '" + id + "'");
    }
    if (!ok) ++failures;
  }
  return Json{{"holds", failures == 0}, {"cases", int_json(cases)}};
}

Json check_rational_point_cert(const Json& p) {
  UniPoly a = need(p, "a").get<UniPoly>(), b = need(p, "b").get<UniPoly>(), c = need(p, "c").get<UniPoly>();
  std::optional<RationalPointCert::Triple> w;
  if (p.contains("witness")) {
    const Json& wj = p.at("witness");
    w = RationalPointCert::Triple{need(wj, "e").get<UniPoly>(), need(wj, "f").get<UniPoly>(), need(wj, "g").get<UniPoly>()};
    std::string form = wj.contains("form") ? need_string(wj, "form") : "lemma";
    w->form = form == "theorem" ? RationalPointCert::WitnessForm::Theorem : RationalPointCert::WitnessForm::Lemma;
  }
  if (p.contains("four_i0star_beta")) w = four_i0star_witness(a, q(p.at("four_i0star_beta")));
  return Json(rational_point_cert(a, b, c, w));
}

// ---- six lines -----------------------------------------------------------------------------

SixLinesConfig six(const Json& p) { return need(p, "six_lines").get<SixLinesConfig>(); }

Json check_six_lines_points(const Json& p) {
  static const auto table = symbolic_line_intersections();
  const std::vector<std::string> vars{"a", "b", "c", "d"};
  Json bad = Json::array();
  for (const auto& e : need(p, "points")) {
    int i = int_from_json(need(e, "i")), j = int_from_json(need(e, "j"));
    if (i < 1 || j > 6 || i >= j) throw std::invalid_argument("line pair out of range");
    int idx = 0;
    for (int r = 1; r < i; ++r) idx += 6 - r;
    idx += j - i - 1;
    auto coords = need(e, "point").get<std::vector<std::string>>();
    if (coords.size() != 3) throw std::invalid_argument("a point has three coordinates");
    std::array<SymPoly, 3> pt{parse_sympoly(coords[0], vars), parse_sympoly(coords[1], vars), parse_sympoly(coords[2], vars)};
    if (!proportional(table[static_cast<size_t>(idx)], pt)) bad.push_back(std::to_string(i) + "," + std::to_string(j));
  }
  return Json{{"all_match", bad.empty()}, {"mismatched", bad}};
}

Json check_no_three_concurrent(const Json& p) { return Json{{"value", no_three_concurrent(six(p))}}; }

Json check_tangency(const Json& p) {
  SixLinesConfig cfg = six(p);
  Json j{{"tangent", conic_tangency(cfg)}, {"value", conic_tangency_value(cfg)}};
  if (auto t = tangency_parameter(cfg)) {
    j["parameter"] = *t;
    j["residuals_vanish"] = tangency_residual(*t, cfg.a, cfg.b).is_zero() && tangency_residual(*t, cfg.c, cfg.d).is_zero();
  }
  return j;
}

Json check_special2(const Json& p) {
  SixLinesConfig cfg = six(p);
  Json conds = Json::array();
  for (auto s : special2_classify(cfg)) conds.push_back(to_string(s));
  auto co = six_lines_coeffs(cfg);
  UniPoly g = poly_gcd(co.two_beta_minus_alpha.poly(), co.two_beta_plus_alpha.poly());
  return Json{{"conditions", conds}, {"shared_factor", g.degree() > 0 ? g.monic().str() : "1"}};
}

Json check_bidegree(const Json& p) {
  const std::vector<std::string> vars{"a", "b", "c", "d"};
  auto dets = need(p, "dets").get<std::vector<std::string>>();
  if (dets.size() != 4) throw std::invalid_argument("four determinants expected");
  std::vector<SixLinesConfig> cfgs;
  if (p.contains("six_lines")) cfgs.push_back(six(p));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 7);
  for (int i = 0; i < 20; ++i) {
    cfgs.push_back({Rational(mpz_class(num(rng)), mpz_class(den(rng))), Rational(mpz_class(num(rng)), mpz_class(den(rng))),
                    Rational(mpz_class(num(rng)), mpz_class(den(rng))), Rational(mpz_class(num(rng)), mpz_class(den(rng)))});
  }
  bool dets_match = true, reconstructs = true;
  for (const auto& cfg : cfgs) {
    auto ms = bidegree_form(cfg);
    std::map<std::string, Rational> at{{"a", cfg.a}, {"b", cfg.b}, {"c", cfg.c}, {"d", cfg.d}};
    for (size_t k = 0; k < 4; ++k) dets_match = dets_match && det2(ms[k]) == parse_sympoly(dets[k], vars).eval(at);
  }
  if (p.contains("six_lines")) reconstructs = bidegree_reconstructs(six(p));
  return Json{{"dets_match", dets_match}, {"reconstructs", reconstructs}};
}

// ---- Rosenhain, heights --------------------------------------------------------------------

Json mu_json(const MuTriple& m) { return Json{m.m1, m.m2, m.m3}; }


Json check_rosenhain_mu(const Json& p) {
  auto l = need(p, "lambda").get<std::vector<Rational>>();
  if (l.size() != 3) throw std::invalid_argument("lambda has three entries");
  return Json{{"mu", mu_json(rosenhain_mu(RosenhainTriple::make(l[0], l[1], l[2], q(need(p, "L")))))}};
}

Json check_dual_mu(const Json& p) { return Json{{"mu", mu_json(dual_mu(mu_from(need(p, "mu"))))}}; }

Json check_dual_mu_involution(const Json& p) {
  int count = int_from_json(need(p, "count"));
  std::mt19937_64 rng(static_cast<std::uint64_t>(int_from_json(need(p, "seed"))));
  std::uniform_int_distribution<int> num(-40, 40), den(1, 9);
  int cases = 0;
  bool holds = true;
  while (cases < count) {
    MuTriple m{Rational(mpz_class(num(rng)), mpz_class(den(rng))), Rational(mpz_class(num(rng)), mpz_class(den(rng))),
               Rational(mpz_class(num(rng)), mpz_class(den(rng)))};
    MuTriple d;
    try {
      d = dual_mu(m);
      if (!(dual_mu(d) == m)) holds = false;
    } catch (const std::invalid_argument&) {
      continue;  // not a valid triple, or its dual is not
    }
    ++cases;
  }
  return Json{{"holds", holds}, {"cases", int_json(cases)}};
}

Json check_height(const Json& p) {
  std::vector<Rational> corr;
  if (p.contains("corrections")) corr = p.at("corrections").get<std::vector<Rational>>();
  Rational h = height_pairing(int_from_json(need(p, "chi")), int_from_json(need(p, "s1_dot_zero")),
                              int_from_json(need(p, "s2_dot_zero")), int_from_json(need(p, "s1_dot_s2")), corr,
                              need(p, "self").get<bool>());
  return Json{{"value", h}};
}

// ---- CHL -----------------------------------------------------------------------------------

ModuliNine moduli(const Json& p) { return need(p, "moduli").get<ModuliNine>(); }

Json check_chl_dual(const Json& p) { return Json{{"moduli", dual_nine(moduli(p))}}; }

Json check_chl_scale(const Json& p) { return Json{{"moduli", scale_nine(moduli(p), need(p, "scale").get<ScaleTriple>())}}; }

Json check_chl_normalize(const Json& p) {
  ModuliNine m = moduli(p);
  bool fix = !p.contains("fix_alpha1") || p.at("fix_alpha1").get<bool>();
  Normalization n = normalize_nine(m, fix);
  auto inv = ScaleTriple::make(Rational(1) / n.scale.lambda, Rational(1) / n.scale.mu, Rational(1) / n.scale.nu);
  bool commutes = dual_nine(n.moduli) == scale_nine(dual_nine(m), n.scale.swapped());
  return Json{{"normalization", n},
              {"reapplies", scale_nine(m, n.scale) == n.moduli && scale_nine(n.moduli, inv) == m},
              {"commutes_with_dual", commutes}};
}

Json check_chl_report(const Json& p) {
  CHLReport r = duality_report(moduli(p), parse_chl_choice(p.contains("choice") ? need_string(p, "choice") : "alpha"));
  Json j = r;
  TwoTorsionCurve<Rational> iso = isogenous_curve(r.e);
  j["e_hat_equals_isogenous_curve"] = iso.a == r.e_hat.a && iso.b == r.e_hat.b && iso.c == r.e_hat.c;
  return j;
}

Json check_chl_choice_exchange(const Json& p) {
  ModuliNine m = moduli(p);
  ModuliNine x = ModuliNine::from({m.g2, m.g1, m.g0, m.b2, m.b1, m.b0, m.a2, m.a1, m.a0});
  Json g = duality_report(m, ChlChoice::Gamma), a = duality_report(x, ChlChoice::Alpha);
  g.erase("choice");
  a.erase("choice");
  return Json{{"equal", g == a}};
}

Json check_chl_j_surface(const Json& p) {
  JSurface s = rational_surface_J(moduli(p));
  auto params = [](const TwoTorsionCurve<Rational>& e) { return Json{e.b / Rational(2), e.ac()}; };
  return Json{{"fibers", str(s.report.summary())},
              {"euler_total", int_json(s.report.euler_total)},
              {"double_fiber_inf", params(s.double_fiber_inf)},
              {"double_fiber_zero", params(s.double_fiber_zero)}};
}

Json check_chl_equiv(const Json& p) {
  ModuliNine m = moduli(p);
  EquivResult r = equiv_fibration_check(m);
  if (p.contains("perturb_dual_b1")) {
    ModuliNine claimed = dual_nine(m);
    claimed.b1 += q(p.at("perturb_dual_b1"));
    r = equiv_fibration_check(m, claimed);
  }
  return Json{{"holds", r.holds}, {"residual", r.residual}};
}

Json check_property_suite(const Json& p) {
  int cases = int_from_json(need(p, "cases"));
  int specs = int_from_json(need(p, "specializations"));
  auto rs = engine_property_suite(cases, specs, static_cast<std::uint64_t>(int_from_json(need(p, "seed"))));
  Json failing = Json::array();
  for (const auto& r : rs) {
    if (!r.ok()) failing.push_back(r.name + ": " + r.counterexample);
  }
  return Json{{"all_pass", failing.empty()}, {"failing", failing}, {"suites", int_json(static_cast<int>(rs.size()))}};
}

const std::map<std::string, Check>& registry() {
  static const std::map<std::string, Check> r{
      {"parse_poly", check_parse_poly},
      {"coprime", check_coprime},
      {"gcd_free_split", check_gcd_free_split},
      {"valuation", check_valuation},
      {"homog_valuation", check_homog_valuation},
      {"discriminant_identity", check_discriminant_identity},
      {"places", check_places},
      {"kodaira", check_kodaira},
      {"local_fiber", check_local_fiber},
      {"fiber_table", check_fiber_table},
      {"loci_swap", check_loci_swap},
      {"section_incidence", check_section_incidence},
      {"bisections", check_bisections},
      {"branch", check_branch},
      {"jmap_match", check_jmap_match},
      {"symbolic", check_symbolic},
      {"point_map", check_point_map},
      {"isogenous_curve", check_isogenous_curve},
      {"j_invariant", check_j_invariant},
      {"random_curves", check_random_curves},
      {"rational_point_cert", check_rational_point_cert},
      {"six_lines_points", check_six_lines_points},
      {"no_three_concurrent", check_no_three_concurrent},
      {"tangency", check_tangency},
      {"special2", check_special2},
      {"bidegree", check_bidegree},
      {"rosenhain_mu", check_rosenhain_mu},
      {"dual_mu", check_dual_mu},
      {"dual_mu_involution", check_dual_mu_involution},
      {"height", check_height},
      {"chl_dual", check_chl_dual},
      {"chl_scale", check_chl_scale},
      {"chl_normalize", check_chl_normalize},
      {"chl_report", check_chl_report},
      {"chl_choice_exchange", check_chl_choice_exchange},
      {"chl_j_surface", check_chl_j_surface},
      {"chl_equiv", check_chl_equiv},
      {"property_suite", check_property_suite},
  };
  return r;
}

std::string normalize_fibers(const std::string& s) { return str(parse_fiber_multiset(s)); }

// Objects match when every expected key matches, arrays element by element, scalars exactly. A
// null expectation matches anything. Fiber multisets compare after canonical printing.
void compare(const Json& expect, const Json& observed, const std::string& path, std::vector<std::string>& out) {
  if (expect.is_object()) {
    if (!observed.is_object()) {
      out.push_back(path + ": expected an object");
      return;
    }
    for (const auto& [k, v] : expect.items()) {
      std::string sub = path.empty() ? k : path + "." + k;
      if (!observed.contains(k)) {
        out.push_back(sub + ": missing");
      } else {
        compare(v, observed.at(k), sub, out);
      }
    }
    return;
  }
  if (expect.is_null()) return;
  if (expect.is_array() && observed.is_array() && expect.size() == observed.size()) {
    for (size_t i = 0; i < expect.size(); ++i) compare(expect[i], observed[i], path + "[" + std::to_string(i) + "]", out);
    return;
  }
  bool fibers = path.size() >= 6 && path.compare(path.size() - 6, 6, "fibers") == 0;
  if (fibers && expect.is_string() && observed.is_string()) {
    if (normalize_fibers(expect.get<std::string>()) != observed.get<std::string>()) {
      out.push_back(path + ": expected " + expect.dump() + ", got " + observed.dump());
    }
    return;
  }
  if (expect != observed) out.push_back(path + ": expected " + expect.dump() + ", got " + observed.dump());
}

}  // namespace

FibrationModel select_model(const Json& source, const std::string& model) { return model_of(load_source(source), model); }

std::vector<std::string> check_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : registry()) out.push_back(k);
  return out;
}

std::vector<Fixture> parse_corpus(const Json& j) {
  if (!j.is_object() || !j.contains("fixtures") || !j.at("fixtures").is_array()) {
    throw std::invalid_argument("corpus must be {\"fixtures\": [...]}");
  }
  std::vector<Fixture> out;
  std::set<std::string> ids;
  for (const auto& f : j.at("fixtures")) {
    Fixture fx{need_string(f, "id"), need_string(f, "check"), f.value("params", Json::object()), need(f, "expect")};
    if (!ids.insert(fx.id).second) throw std::invalid_argument("duplicate fixture id '" + fx.id + "'");
    if (!registry().count(fx.check)) throw std::invalid_argument("fixture '" + fx.id + "': unknown check '" + fx.check + "'");
    if (!fx.expect.is_object()) throw std::invalid_argument("fixture '" + fx.id + "': expect must be an object");
    out.push_back(std::move(fx));
  }
  return out;
}

std::vector<Fixture> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read corpus '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("corpus '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_corpus(j);
}

FixtureResult run_fixture(const Fixture& f) {
  FixtureResult r{f.id, f.check, false, Json::object(), f.expect, "", {}};
  try {
    r.observed = registry().at(f.check)(f.params);
  } catch (const std::exception& e) {
    r.error = e.what();
    if (f.expect.contains("error") && f.expect.at("error").is_string()) {
      std::string want = f.expect.at("error").get<std::string>();
      r.passed = r.error.find(want) != std::string::npos;
      if (!r.passed) r.mismatches.push_back("error: expected text '" + want + "'");
    } else {
      r.mismatches.push_back("error: " + r.error);
    }
    return r;
  }
  if (f.expect.contains("error")) {
    r.mismatches.push_back("error: expected a failure, the check succeeded");
    return r;
  }
  compare(f.expect, r.observed, "", r.mismatches);
  r.passed = r.mismatches.empty();
  return r;
}

VerifyReport run_corpus(const std::vector<Fixture>& fixtures) {
  VerifyReport rep;
  for (const auto& f : fixtures) {
    rep.results.push_back(run_fixture(f));
    (rep.results.back().passed ? rep.passed : rep.failed)++;
  }
  return rep;
}

void to_json(Json& j, const FixtureResult& r) {
  j = Json{{"id", r.id}, {"check", r.check}, {"passed", r.passed}, {"observed", r.observed}, {"expect", r.expect}};
  if (!r.error.empty()) j["error"] = r.error;
  if (!r.mismatches.empty()) j["mismatches"] = r.mismatches;
}

void to_json(Json& j, const VerifyReport& r) {
  j = Json{{"results", r.results}, {"passed", int_json(r.passed)}, {"failed", int_json(r.failed)}, {"ok", r.ok()}};
}

}  // namespace k3
