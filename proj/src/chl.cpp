#include "k3/chl.hpp"

#include <sstream>
#include <stdexcept>

namespace k3 {

namespace {

/// p(x0, x1) = c2 x0^2 + 2 c1 x0 x1 + c0 x1^2
template <class T>
T quad(const T& c2, const T& c1, const T& c0, const T& x0, const T& x1) {
  return c2 * x0 * x0 + T(2) * c1 * x0 * x1 + c0 * x1 * x1;
}

/// alpha(s^2), beta(s^2), gamma(s^2) as degree-4 forms in s.
std::array<HomogPoly, 3> quadratics_in_s_squared(const ModuliNine& m) {
  auto q = [](const Rational& c2, const Rational& c1, const Rational& c0) {
    return HomogPoly(UniPoly({c0, Rational(0), Rational(2) * c1, Rational(0), c2}, "s"), 4);
  };
  return {q(m.a2, m.a1, m.a0), q(m.b2, m.b1, m.b0), q(m.g2, m.g1, m.g0)};
}

ModuliNine exchange_alpha_gamma(const ModuliNine& m) {
  return {m.g2, m.g1, m.g0, m.b2, m.b1, m.b0, m.a2, m.a1, m.a0};
}

ModuliNineT<SymRat> symbolic_nine(const std::string& prefix = "") {
  const char* names[9] = {"a2", "a1", "a0", "b2", "b1", "b0", "g2", "g1", "g0"};
  std::array<SymRat, 9> v;
  for (size_t i = 0; i < 9; ++i) v[i] = SymRat::var(prefix + names[i]);
  return ModuliNineT<SymRat>::from(v);
}

/// alpha(x0^2, x1^2) y0^4 + 2 beta(x0^2, x1^2) y0^2 y1^2 + gamma(x0^2, x1^2) y1^4
SymPoly z_tilde_poly(const ModuliNineT<SymPoly>& m, const SymPoly& x0, const SymPoly& x1, const SymPoly& y0,
                     const SymPoly& y1) {
  SymPoly p0 = x0 * x0, p1 = x1 * x1;
  return quad(m.a2, m.a1, m.a0, p0, p1) * y0.pow(4) +
         quad(m.b2, m.b1, m.b0, p0, p1) * y0 * y0 * y1 * y1 * SymPoly(2) + quad(m.g2, m.g1, m.g0, p0, p1) * y1.pow(4);
}

ModuliNineT<SymPoly> symbolic_nine_poly() {
  const char* names[9] = {"a2", "a1", "a0", "b2", "b1", "b0", "g2", "g1", "g0"};
  std::array<SymPoly, 9> v;
  for (size_t i = 0; i < 9; ++i) v[i] = SymPoly::var(names[i]);
  return ModuliNineT<SymPoly>::from(v);
}

}  // namespace

ScaleTriple ScaleTriple::make(Rational lambda, Rational mu, Rational nu) {
  if (lambda.is_zero() || mu.is_zero() || nu.is_zero()) throw std::invalid_argument("scale entries must be nonzero");
  ScaleTriple s;
  s.lambda = std::move(lambda);
  s.mu = std::move(mu);
  s.nu = std::move(nu);
  return s;
}

ScaleTriple ScaleTriple::compose(const ScaleTriple& o) const {
  return make(lambda * o.lambda, mu * o.mu, nu * o.nu);
}

Normalization normalize_nine(const ModuliNine& m, bool fix_alpha1) {
  if (m.a2.is_zero()) throw std::invalid_argument("normalization undefined: alpha2 = 0 (t1 divides alpha)");
  if (m.g0.is_zero()) throw std::invalid_argument("normalization undefined: gamma0 = 0 (t0 divides gamma)");
  auto r = rational_sqrt(m.a2 * m.g0);
  if (!r) {
    throw std::invalid_argument("normalization undefined over Q: alpha2 gamma0 = " + (m.a2 * m.g0).str() +
                                " is not a rational square");
  }
  Rational lambda = Rational(1) / *r;
  bool fix = fix_alpha1 && !m.a1.is_zero();
  Rational mu = fix ? Rational(1) / (lambda * m.a1) : Rational(1);
  Rational nu = Rational(1) / (lambda * m.a2 * mu);
  ScaleTriple s = ScaleTriple::make(lambda, mu, nu);
  return Normalization{scale_nine(m, s), s, fix};
}

std::array<HomogPoly, 3> chl_quadratics(const ModuliNine& m, const std::string& var) {
  auto q = [&](const Rational& c2, const Rational& c1, const Rational& c0) {
    return HomogPoly(UniPoly({c0, Rational(2) * c1, c2}, var), 2);
  };
  return {q(m.a2, m.a1, m.a0), q(m.b2, m.b1, m.b0), q(m.g2, m.g1, m.g0)};
}

FamilyModels chl_models(const ModuliNine& m) {
  auto [alpha, beta, gamma] = chl_quadratics(m);
  return build_spec(SpecKind::chl14(alpha, beta.scaled(Rational(2)), gamma));
}

FibrationModel chl_x_tilde(const ModuliNine& m) {
  auto [alpha, beta, gamma] = quadratics_in_s_squared(m);
  return FibrationModel::weierstrass(alpha, beta.scaled(Rational(2)), gamma, "X~");
}

FibrationModel chl_y_tilde(const ModuliNine& m) { return chl_x_tilde(m).isogenous("Y~"); }

FibrationModel chl_z_tilde(const ModuliNine& m) {
  auto [alpha, beta, gamma] = quadratics_in_s_squared(m);
  return FibrationModel::even_quartic(alpha, beta.scaled(Rational(2)), gamma, "Z~");
}

ChlCurves chl_curves(const ModuliNine& m) {
  auto curve = [](const Rational& c2, const Rational& c1, const Rational& c0, const char* name) {
    try {
      return TwoTorsionCurve<Rational>::make(c2, Rational(2) * c1, c0);
    } catch (const std::domain_error&) {
      throw std::domain_error(std::string("singular curve ") + name);
    }
  };
  ChlCurves out;
  out.e_alpha = curve(m.a2, m.a1, m.a0, "E_alpha");
  out.e_gamma = curve(m.g2, m.g1, m.g0, "E_gamma");
  out.c_alpha = {m.a2, Rational(2) * m.a1, m.a0};
  out.c_gamma = {m.g2, Rational(2) * m.g1, m.g0};
  out.ehat_alpha = isogenous_curve(out.e_alpha);
  out.ehat_gamma = isogenous_curve(out.e_gamma);
  return out;
}

JSurface rational_surface_J(const ModuliNine& m) {
  chl_models(m);  // genericity
  auto [alpha, beta, gamma] = chl_quadratics(m);
  JSurface out;
  out.model = FibrationModel::weierstrass(alpha, beta.scaled(Rational(2)), gamma, "J");
  out.report = fiber_configuration(out.model);
  ModuliNine d = dual_nine(m);
  out.double_fiber_inf = TwoTorsionCurve<Rational>::make(d.a2, Rational(2) * d.b2, d.g2);
  out.double_fiber_zero = TwoTorsionCurve<Rational>::make(d.a0, Rational(2) * d.b0, d.g0);
  out.double_fiber_inf_hat = isogenous_curve(out.double_fiber_inf);
  out.double_fiber_zero_hat = isogenous_curve(out.double_fiber_zero);
  return out;
}

EquivResult equiv_fibration_check(const ModuliNine& m) { return equiv_fibration_check(m, dual_nine(m)); }

EquivResult equiv_fibration_check(const ModuliNine& m, const ModuliNine& claimed_dual) {
  EquivResult out;
  out.swapped = swap_base_fiber_raw(chl_z_tilde(m), "s");
  out.expected = chl_z_tilde(claimed_dual);
  for (size_t i = 0; i < 5; ++i) {
    if (!(out.swapped.e[i] == out.expected.e[i])) {
      out.residual.push_back("e" + std::to_string(i) + ": " + (out.swapped.e[i] - out.expected.e[i]).str());
    }
  }
  out.holds = out.residual.empty();
  return out;
}

bool equiv_fibration_check_symbolic() {
  auto m = symbolic_nine_poly();
  auto d = dual_nine(m);
  SymPoly s0 = SymPoly::var("s0"), s1 = SymPoly::var("s1"), u = SymPoly::var("U"), w = SymPoly::var("W");
  return z_tilde_poly(m, s0, s1, u, w) == z_tilde_poly(d, u, w, s0, s1);
}

bool second_form_check_symbolic() {
  auto m = symbolic_nine_poly();
  auto d = dual_nine(m);
  SymPoly t = SymPoly::var("t"), u = SymPoly::var("U"), one(1);
  SymPoly u2 = u * u;
  SymPoly x_tilde = t * (quad(m.a2, m.a1, m.a0, u2, one) * t * t + SymPoly(2) * quad(m.b2, m.b1, m.b0, u2, one) * t +
                         quad(m.g2, m.g1, m.g0, u2, one));
  SymPoly z_dual = t * (quad(d.a2, d.a1, d.a0, t, one) * u2 * u2 + SymPoly(2) * quad(d.b2, d.b1, d.b0, t, one) * u2 +
                        quad(d.g2, d.g1, d.g0, t, one));
  return x_tilde == z_dual;
}

bool dual_scale_identities_symbolic() {
  auto m = symbolic_nine();
  if (!(dual_nine(dual_nine(m)) == m)) return false;
  ScaleTripleT<SymRat> s{SymRat::var("lambda"), SymRat::var("mu"), SymRat::var("nu")};
  ScaleTripleT<SymRat> sw{s.lambda, s.nu, s.mu};
  if (!(dual_nine(scale_nine(m, s)) == scale_nine(dual_nine(m), sw))) return false;
  ScaleTripleT<SymRat> s2{SymRat::var("lambda2"), SymRat::var("mu2"), SymRat::var("nu2")};
  ScaleTripleT<SymRat> prod{s.lambda * s2.lambda, s.mu * s2.mu, s.nu * s2.nu};
  return scale_nine(scale_nine(m, s), s2) == scale_nine(m, prod);
}

const char* to_string(ChlChoice c) { return c == ChlChoice::Alpha ? "alpha" : "gamma"; }

ChlChoice parse_chl_choice(const std::string& s) {
  if (s == "alpha") return ChlChoice::Alpha;
  if (s == "gamma") return ChlChoice::Gamma;
  throw std::invalid_argument("choice must be alpha or gamma, got '" + s + "'");
}

CHLReport duality_report(const ModuliNine& m, ChlChoice choice) {
  CHLReport r;
  r.choice = choice;
  r.moduli = choice == ChlChoice::Alpha ? m : exchange_alpha_gamma(m);
  const ModuliNine& x = r.moduli;
  r.normalized = x.a2 == Rational(1) && x.g0 == Rational(1);
  ChlCurves cv = chl_curves(x);
  r.e = cv.e_alpha;
  r.c_hat = cv.c_alpha;
  r.e_hat = cv.ehat_alpha;
  TwoTorsionCurve<Rational> iso = isogenous_curve(r.e);
  r.e_hat_is_isogenous = iso.a == r.e_hat.a && iso.b == r.e_hat.b && iso.c == r.e_hat.c;
  r.j_e = j_invariant(r.e);
  r.j_e_hat = j_invariant(r.e_hat);
  r.j_jac_c_hat = quartic_j_invariant(r.c_hat);
  r.j_jac_matches = r.j_jac_c_hat == r.j_e_hat;
  if (x.a2 == Rational(1) && x.a1 == Rational(1) && !x.a0.is_zero() && x.a0 != Rational(1)) {
    Rational base = Rational(2) * x.a0 - Rational(4);
    r.j_formula = base * base * base / (Rational(27) * x.a0 * x.a0 * (x.a0 - Rational(1)));
    r.j_formula_match = *r.j_formula == r.j_e;
  }
  r.j_surface = rational_surface_J(x);
  r.cert = rational_point_cert(UniPoly(r.c_hat.q4), UniPoly(r.c_hat.q2), UniPoly(r.c_hat.q0)).kind;
  return r;
}

ModuliNine chl_sample_moduli() {
  return {Rational(1), Rational(0), Rational(1), Rational(1, 2), Rational(1, 4), Rational(3, 2),
          Rational(1), Rational(0), Rational(2)};
}

std::string str(const ModuliNine& m) {
  std::ostringstream os;
  auto v = m.values();
  for (size_t i = 0; i < 9; ++i) os << (i == 0 ? "" : i % 3 == 0 ? "; " : ", ") << v[i].str();
  return os.str();
}

ModuliNine parse_moduli_nine(const std::string& s) {
  std::array<Rational, 9> v;
  size_t n = 0, pos = 0;
  while (pos < s.size()) {
    size_t end = s.find_first_of(",; \t", pos);
    if (end == std::string::npos) end = s.size();
    if (end > pos) {
      if (n == 9) throw std::invalid_argument("expected nine moduli, got more");
      v[n++] = Rational::parse(std::string_view(s).substr(pos, end - pos));
    }
    pos = end + 1;
  }
  if (n != 9) throw std::invalid_argument("expected nine moduli, got " + std::to_string(n));
  return ModuliNine::from(v);
}

}  // namespace k3
