#include "k3/json_io.hpp"

#include <stdexcept>

#include "k3/poly_parse.hpp"

namespace k3 {

namespace {

const Json& at(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  return j.at(key);
}

bool bool_at(const Json& j, const char* key) {
  const Json& v = at(j, key);
  if (!v.is_boolean()) throw std::invalid_argument(std::string("field '") + key + "' must be a boolean");
  return v.get<bool>();
}

std::string string_at(const Json& j, const char* key) {
  const Json& v = at(j, key);
  if (!v.is_string()) throw std::invalid_argument(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

template <class T>
std::optional<T> optional_at(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

template <class T>
void put_optional(Json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

}  // namespace

Json int_json(int v) { return std::to_string(v); }

int int_from_json(const Json& j) {
  if (j.is_number_integer()) return j.get<int>();
  if (!j.is_string()) throw std::invalid_argument("expected an integer string");
  const std::string s = j.get<std::string>();
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

void to_json(Json& j, const Rational& r) { j = r.str(); }

void from_json(const Json& j, Rational& r) {
  if (j.is_number_integer()) {
    r = Rational(j.get<long>());
    return;
  }
  if (!j.is_string()) throw std::invalid_argument("rationals must be strings \"p\" or \"p/q\"");
  r = Rational::parse(j.get<std::string>());
}

void to_json(Json& j, const UniPoly& p) { j = Json{{"var", p.var()}, {"coeffs", p.coeffs()}}; }

void from_json(const Json& j, UniPoly& p) {
  if (j.is_string()) {
    p = parse_poly(j.get<std::string>());
    return;
  }
  std::string var = j.contains("var") ? string_at(j, "var") : "t";
  if (j.contains("expr")) {
    p = parse_poly(string_at(j, "expr"), var);
    return;
  }
  p = UniPoly(at(j, "coeffs").get<std::vector<Rational>>(), var);
}

void to_json(Json& j, const HomogPoly& p) {
  to_json(j, p.poly());
  j["homdeg"] = int_json(p.declared_degree());
}

void from_json(const Json& j, HomogPoly& p) {
  UniPoly u = j.get<UniPoly>();
  int d = j.is_object() && j.contains("homdeg") ? int_from_json(j.at("homdeg")) : std::max(u.degree(), 0);
  p = HomogPoly(u, d);
}

void to_json(Json& j, const Place& p) {
  if (p.infinity) {
    j = Json{{"infinity", true}};
  } else {
    j = Json{{"infinity", false}, {"poly", p.poly}};
  }
}

void from_json(const Json& j, Place& p) {
  if (j.is_string() && j.get<std::string>() == "inf") {
    p = Place::at_infinity();
  } else if (j.is_string()) {
    p = Place::finite(j.get<UniPoly>());
  } else if (bool_at(j, "infinity")) {
    p = Place::at_infinity();
  } else {
    p = Place::finite(at(j, "poly").get<UniPoly>());
  }
}

void to_json(Json& j, const KodairaType& t) { j = t.str(); }
void from_json(const Json& j, KodairaType& t) { t = KodairaType::parse(j.get<std::string>()); }

Json fiber_multiset_json(const FiberMultiset& fm) { return str(fm); }

void to_json(Json& j, const FiberEntry& e) {
  j = Json{{"place", e.place},
           {"type", e.type},
           {"degree", int_json(e.degree)},
           {"v_c4", int_json(e.local.v_c4)},
           {"v_c6", int_json(e.local.v_c6)},
           {"v_delta", int_json(e.local.v_delta)},
           {"twists", int_json(e.local.twists_applied)}};
}

void from_json(const Json& j, FiberEntry& e) {
  e.place = at(j, "place").get<Place>();
  e.type = at(j, "type").get<KodairaType>();
  e.degree = int_from_json(at(j, "degree"));
  e.local.v_c4 = int_from_json(at(j, "v_c4"));
  e.local.v_c6 = int_from_json(at(j, "v_c6"));
  e.local.v_delta = int_from_json(at(j, "v_delta"));
  e.local.twists_applied = int_from_json(at(j, "twists"));
}

void to_json(Json& j, const FiberReport& r) {
  j = Json{{"entries", r.entries},
           {"euler_total", int_json(r.euler_total)},
           {"weight", int_json(r.weight)},
           {"summary", fiber_multiset_json(r.summary())}};
}

void from_json(const Json& j, FiberReport& r) {
  r.entries = at(j, "entries").get<std::vector<FiberEntry>>();
  r.euler_total = int_from_json(at(j, "euler_total"));
  r.weight = int_from_json(at(j, "weight"));
  if (j.contains("summary") && parse_fiber_multiset(string_at(j, "summary")) != r.summary()) {
    throw std::invalid_argument("fiber report summary does not match its entries");
  }
}

void to_json(Json& j, const FibrationModel& m) {
  j = Json{{"label", m.label}, {"weight", int_json(m.weight)}};
  if (m.is_weierstrass()) {
    j["kind"] = "weierstrass";
    j["a"] = m.a;
    j["b"] = m.b;
    j["c"] = m.c;
  } else {
    j["kind"] = "quartic";
    j["e"] = m.e;
  }
}

void from_json(const Json& j, FibrationModel& m) {
  std::string kind = string_at(j, "kind");
  std::string label = j.contains("label") ? string_at(j, "label") : "";
  if (kind == "weierstrass") {
    m = FibrationModel::weierstrass(at(j, "a").get<HomogPoly>(), at(j, "b").get<HomogPoly>(),
                                    at(j, "c").get<HomogPoly>(), label);
  } else if (kind == "quartic") {
    m = FibrationModel::quartic(at(j, "e").get<std::array<HomogPoly, 5>>(), label);
  } else {
    throw std::invalid_argument("model kind must be weierstrass or quartic");
  }
  if (j.contains("weight") && int_from_json(j.at("weight")) != m.weight) {
    throw std::invalid_argument("model weight does not match its degrees");
  }
}

void to_json(Json& j, const BranchReport& r) {
  Json fibers = Json::array();
  for (const auto& f : r.fibers) {
    Json comps = Json::array();
    for (const auto& c : f.components) {
      comps.push_back(Json{{"label", c.label},
                           {"neutral", c.neutral},
                           {"central", c.central},
                           {"meets_sigma", c.meets_sigma},
                           {"meets_tau", c.meets_tau},
                           {"in_branch", c.in_branch}});
    }
    fibers.push_back(Json{{"place", f.place},
                          {"type", f.type},
                          {"degree", int_json(f.degree)},
                          {"v_f_sigma", int_json(f.v_f_sigma)},
                          {"v_f_tau", int_json(f.v_f_tau)},
                          {"components", comps}});
  }
  j = Json{{"cover", to_string(r.cover)}, {"total", int_json(r.total)}, {"fibers", fibers}};
}

void from_json(const Json& j, BranchReport& r) {
  std::string cover = string_at(j, "cover");
  r.cover = cover == "Phi" ? BranchCover::Phi : cover == "Psi" ? BranchCover::Psi : BranchCover::PsiPrime;
  if (cover != to_string(r.cover)) throw std::invalid_argument("unknown cover '" + cover + "'");
  r.total = int_from_json(at(j, "total"));
  r.fibers.clear();
  for (const auto& fj : at(j, "fibers")) {
    BranchFiber f;
    f.place = at(fj, "place").get<Place>();
    f.type = at(fj, "type").get<KodairaType>();
    f.degree = int_from_json(at(fj, "degree"));
    f.v_f_sigma = int_from_json(at(fj, "v_f_sigma"));
    f.v_f_tau = int_from_json(at(fj, "v_f_tau"));
    for (const auto& cj : at(fj, "components")) {
      f.components.push_back(BranchComponent{string_at(cj, "label"), bool_at(cj, "neutral"), bool_at(cj, "central"),
                                             bool_at(cj, "meets_sigma"), bool_at(cj, "meets_tau"),
                                             bool_at(cj, "in_branch")});
    }
    r.fibers.push_back(std::move(f));
  }
}

void to_json(Json& j, const RationalPointCert& c) {
  j = Json{{"kind", to_string(c.kind)},
           {"a_is_square", c.a_is_square},
           {"c_is_square", c.c_is_square},
           {"point_at_infinity", c.point_at_infinity},
           {"point_over_base", c.point_over_base}};
  put_optional(j, "root", c.root);
  put_optional(j, "u_squared", c.u_squared);
  put_optional(j, "v", c.v);
  if (c.witness) {
    j["witness"] = Json{{"e", c.witness->e}, {"f", c.witness->f}, {"g", c.witness->g}, {"form", to_string(c.witness->form)}};
  }
}

void from_json(const Json& j, RationalPointCert& c) {
  std::string kind = string_at(j, "kind");
  using K = RationalPointCert::Kind;
  c.kind = K::Unknown;
  bool known = false;
  for (K k : {K::SquareA, K::SquareC, K::Witness, K::Unknown}) {
    if (kind == to_string(k)) {
      c.kind = k;
      known = true;
    }
  }
  if (!known) throw std::invalid_argument("unknown certificate kind '" + kind + "'");
  c.a_is_square = bool_at(j, "a_is_square");
  c.c_is_square = bool_at(j, "c_is_square");
  c.point_at_infinity = bool_at(j, "point_at_infinity");
  c.point_over_base = bool_at(j, "point_over_base");
  c.root = optional_at<UniPoly>(j, "root");
  c.u_squared = optional_at<UniPoly>(j, "u_squared");
  c.v = optional_at<UniPoly>(j, "v");
  c.witness.reset();
  if (j.contains("witness")) {
    const Json& w = j.at("witness");
    RationalPointCert::Triple t{at(w, "e").get<UniPoly>(), at(w, "f").get<UniPoly>(), at(w, "g").get<UniPoly>()};
    std::string form = string_at(w, "form");
    if (form != "lemma" && form != "theorem") throw std::invalid_argument("witness form must be lemma or theorem");
    t.form = form == "lemma" ? RationalPointCert::WitnessForm::Lemma : RationalPointCert::WitnessForm::Theorem;
    c.witness = t;
  }
}

void to_json(Json& j, const TwoTorsionCurve<Rational>& e) { j = Json{{"a", e.a}, {"b", e.b}, {"c", e.c}}; }

void from_json(const Json& j, TwoTorsionCurve<Rational>& e) {
  e = TwoTorsionCurve<Rational>::make(at(j, "a").get<Rational>(), at(j, "b").get<Rational>(), at(j, "c").get<Rational>());
}

void to_json(Json& j, const QuarticTorsor<Rational>& q) { j = Json{{"q4", q.q4}, {"q2", q.q2}, {"q0", q.q0}}; }

void from_json(const Json& j, QuarticTorsor<Rational>& q) {
  q = QuarticTorsor<Rational>{at(j, "q4").get<Rational>(), at(j, "q2").get<Rational>(), at(j, "q0").get<Rational>()};
}

void to_json(Json& j, const ModuliNine& m) {
  j = Json{{"alpha", {m.a2, m.a1, m.a0}}, {"beta", {m.b2, m.b1, m.b0}}, {"gamma", {m.g2, m.g1, m.g0}}};
}

void from_json(const Json& j, ModuliNine& m) {
  if (j.is_string()) {
    m = parse_moduli_nine(j.get<std::string>());
    return;
  }
  auto row = [&](const char* key) {
    auto v = at(j, key).get<std::vector<Rational>>();
    if (v.size() != 3) throw std::invalid_argument(std::string("'") + key + "' needs three entries");
    return v;
  };
  auto a = row("alpha"), b = row("beta"), g = row("gamma");
  m = ModuliNine::from({a[0], a[1], a[2], b[0], b[1], b[2], g[0], g[1], g[2]});
}

void to_json(Json& j, const ScaleTriple& s) { j = Json{{"lambda", s.lambda}, {"mu", s.mu}, {"nu", s.nu}}; }

void from_json(const Json& j, ScaleTriple& s) {
  s = ScaleTriple::make(at(j, "lambda").get<Rational>(), at(j, "mu").get<Rational>(), at(j, "nu").get<Rational>());
}

void to_json(Json& j, const Normalization& n) {
  j = Json{{"moduli", n.moduli}, {"scale", n.scale}, {"alpha1_fixed", n.alpha1_fixed}};
}

void from_json(const Json& j, Normalization& n) {
  n.moduli = at(j, "moduli").get<ModuliNine>();
  n.scale = at(j, "scale").get<ScaleTriple>();
  n.alpha1_fixed = bool_at(j, "alpha1_fixed");
}

void to_json(Json& j, const MuTriple& m) { j = Json{{"mu1", m.m1}, {"mu2", m.m2}, {"mu3", m.m3}}; }

void from_json(const Json& j, MuTriple& m) {
  m = MuTriple{at(j, "mu1").get<Rational>(), at(j, "mu2").get<Rational>(), at(j, "mu3").get<Rational>()};
}

void to_json(Json& j, const SixLinesConfig& c) { j = Json{{"a", c.a}, {"b", c.b}, {"c", c.c}, {"d", c.d}}; }

void from_json(const Json& j, SixLinesConfig& c) {
  c = SixLinesConfig{at(j, "a").get<Rational>(), at(j, "b").get<Rational>(), at(j, "c").get<Rational>(),
                     at(j, "d").get<Rational>()};
}

void to_json(Json& j, const JSurface& s) {
  j = Json{{"model", s.model},
           {"fibers", s.report},
           {"double_fiber_inf", s.double_fiber_inf},
           {"double_fiber_zero", s.double_fiber_zero},
           {"double_fiber_inf_hat", s.double_fiber_inf_hat},
           {"double_fiber_zero_hat", s.double_fiber_zero_hat}};
}

void from_json(const Json& j, JSurface& s) {
  s.model = at(j, "model").get<FibrationModel>();
  s.report = at(j, "fibers").get<FiberReport>();
  s.double_fiber_inf = at(j, "double_fiber_inf").get<TwoTorsionCurve<Rational>>();
  s.double_fiber_zero = at(j, "double_fiber_zero").get<TwoTorsionCurve<Rational>>();
  s.double_fiber_inf_hat = at(j, "double_fiber_inf_hat").get<TwoTorsionCurve<Rational>>();
  s.double_fiber_zero_hat = at(j, "double_fiber_zero_hat").get<TwoTorsionCurve<Rational>>();
}

void to_json(Json& j, const CHLReport& r) {
  j = Json{{"choice", to_string(r.choice)},
           {"moduli", r.moduli},
           {"normalized", r.normalized},
           {"e", r.e},
           {"c_hat", r.c_hat},
           {"e_hat", r.e_hat},
           {"e_hat_is_isogenous", r.e_hat_is_isogenous},
           {"j_e", r.j_e},
           {"j_e_hat", r.j_e_hat},
           {"j_jac_c_hat", r.j_jac_c_hat},
           {"j_jac_matches", r.j_jac_matches},
           {"j_surface", r.j_surface},
           {"cert", to_string(r.cert)}};
  put_optional(j, "j_formula", r.j_formula);
  put_optional(j, "j_formula_match", r.j_formula_match);
}

void from_json(const Json& j, CHLReport& r) {
  r.choice = parse_chl_choice(string_at(j, "choice"));
  r.moduli = at(j, "moduli").get<ModuliNine>();
  r.normalized = bool_at(j, "normalized");
  r.e = at(j, "e").get<TwoTorsionCurve<Rational>>();
  r.c_hat = at(j, "c_hat").get<QuarticTorsor<Rational>>();
  r.e_hat = at(j, "e_hat").get<TwoTorsionCurve<Rational>>();
  r.e_hat_is_isogenous = bool_at(j, "e_hat_is_isogenous");
  r.j_e = at(j, "j_e").get<Rational>();
  r.j_e_hat = at(j, "j_e_hat").get<Rational>();
  r.j_jac_c_hat = at(j, "j_jac_c_hat").get<Rational>();
  r.j_jac_matches = bool_at(j, "j_jac_matches");
  r.j_surface = at(j, "j_surface").get<JSurface>();
  r.j_formula = optional_at<Rational>(j, "j_formula");
  r.j_formula_match = optional_at<bool>(j, "j_formula_match");
  Json cert = Json{{"kind", string_at(j, "cert")}, {"a_is_square", false}, {"c_is_square", false},
                   {"point_at_infinity", false}, {"point_over_base", false}};
  r.cert = cert.get<RationalPointCert>().kind;
}

void to_json(Json& j, const EquivResult& r) {
  j = Json{{"holds", r.holds}, {"swapped", r.swapped}, {"expected", r.expected}, {"residual", r.residual}};
}

void from_json(const Json& j, EquivResult& r) {
  r.holds = bool_at(j, "holds");
  r.swapped = at(j, "swapped").get<FibrationModel>();
  r.expected = at(j, "expected").get<FibrationModel>();
  r.residual = at(j, "residual").get<std::vector<std::string>>();
}

SpecKind spec_from_json(const Json& j) {
  FamilyTag tag = parse_family_tag(string_at(j, "tag"));
  auto h = [&](const char* key) { return at(j, key).get<HomogPoly>(); };
  switch (tag) {
    case FamilyTag::Generic: return SpecKind::generic(h("a"), h("b"), h("c"));
    case FamilyTag::FourI4: return SpecKind::four_i4(h("a"), h("b"));
    case FamilyTag::FourI0star: return SpecKind::four_i0star(h("a"), at(j, "beta").get<Rational>());
    case FamilyTag::Kummer17: return SpecKind::kummer17(h("rho"), h("alpha"), h("beta"));
    case FamilyTag::SixLines16: return SpecKind::six_lines16(h("alpha"), h("beta"), h("rho"));
    case FamilyTag::SixLinesParams: return SpecKind::six_lines_params(at(j, "six_lines").get<SixLinesConfig>());
    case FamilyTag::CHL14: return SpecKind::chl14(h("alpha"), h("beta"), h("gamma"));
  }
  throw std::invalid_argument("unhandled family tag");
}

Json spec_to_json(const SpecKind& k) {
  Json j{{"tag", to_string(k.tag)}};
  switch (k.tag) {
    case FamilyTag::Generic:
      j["a"] = k.a;
      j["b"] = k.b;
      j["c"] = k.c;
      break;
    case FamilyTag::FourI4:
      j["a"] = k.a;
      j["b"] = k.b;
      break;
    case FamilyTag::FourI0star:
      j["a"] = k.a;
      j["beta"] = k.beta;
      break;
    case FamilyTag::Kummer17:
    case FamilyTag::SixLines16:
      j["rho"] = k.rho;
      j["alpha"] = k.alpha;
      j["beta"] = k.beta_form;
      break;
    case FamilyTag::SixLinesParams: j["six_lines"] = k.six_lines; break;
    case FamilyTag::CHL14:
      j["alpha"] = k.alpha;
      j["beta"] = k.beta_form;
      j["gamma"] = k.gamma;
      break;
  }
  return j;
}

Json family_json(const FamilyModels& f) {
  auto entry = [](const FibrationModel& m, const std::optional<FiberMultiset>& expected) {
    FiberReport r = fiber_configuration(m);
    Json j{{"model", m}, {"fibers", r}};
    if (expected) {
      j["expected"] = fiber_multiset_json(*expected);
      j["matches_expected"] = r.summary() == *expected;
    }
    return j;
  };
  Json j{{"tag", to_string(f.tag)},
         {"X", entry(f.x, f.expected_x)},
         {"Y", entry(f.y, f.expected_y)},
         {"Z", entry(f.z, f.expected_z)},
         {"notes", f.notes}};
  if (f.z_prime) j["Zprime"] = entry(*f.z_prime, std::nullopt);
  if (f.x_prime) j["Xprime"] = Json{{"model", *f.x_prime}};
  return j;
}

}  // namespace k3
