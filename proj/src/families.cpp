#include "k3/families.hpp"

#include <stdexcept>

namespace k3 {

namespace {

const std::string kVar = "t";

UniPoly lin(const Rational& c1, const Rational& c0, const std::string& var = kVar) {
  return UniPoly({c0, c1}, var);
}

bool form_squarefree(const HomogPoly& f) {
  if (f.is_zero()) return false;
  const UniPoly& p = f.poly();
  if (f.declared_degree() - p.degree() > 1) return false;
  return p.degree() <= 0 || poly_gcd(p, p.derivative()).degree() == 0;
}

bool forms_coprime(const HomogPoly& f, const HomogPoly& g) {
  if (poly_gcd(f.poly(), g.poly()).degree() > 0) return false;
  bool f_inf = f.declared_degree() > f.poly().degree();
  bool g_inf = g.declared_degree() > g.poly().degree();
  return !(f_inf && g_inf);
}

bool coprime_to_t0t1(const HomogPoly& f) {
  return !f.poly().coeff(0).is_zero() && f.declared_degree() == f.poly().degree();
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("genericity check failed: " + what);
}

void require_degree(const HomogPoly& f, int d, const std::string& name) {
  if (f.declared_degree() != d) {
    throw std::invalid_argument("genericity check failed: deg " + name + " = " +
                                std::to_string(f.declared_degree()) + ", expected " + std::to_string(d));
  }
}

FiberMultiset fm(const char* s) { return parse_fiber_multiset(s); }

HomogPoly t0t1() { return homog_monomial(1, 1, kVar); }

/// X, Y, Z, Z' and the Z'-factored X for a = c = alpha rho, b = 2 beta rho.
FamilyModels alpha_rho_models(FamilyTag tag, const HomogPoly& rho, const HomogPoly& alpha, const HomogPoly& beta,
                              const std::string& label) {
  FamilyModels out;
  out.tag = tag;
  HomogPoly a = alpha * rho, b = (beta * rho).scaled(Rational(2));
  out.x = FibrationModel::weierstrass(a, b, a, label + ".X");
  out.y = out.x.isogenous(label + ".Y");
  out.z = FibrationModel::even_quartic(a, b, a, label + ".Z");
  HomogPoly c2 = alpha * alpha * rho;
  out.z_prime = FibrationModel::even_quartic(rho, b, c2, label + ".Z'");
  out.x_prime = FibrationModel::weierstrass(rho, b, c2, label + ".X'");
  return out;
}

void six_lines_notes(FamilyModels& out, const HomogPoly& rho, const HomogPoly& alpha, const HomogPoly& beta) {
  HomogPoly p = (beta - alpha).scaled(Rational(2)), q = (beta + alpha).scaled(Rational(2));
  if (!form_squarefree(p)) out.notes.push_back("2(beta - alpha) has a repeated root");
  if (!form_squarefree(q)) out.notes.push_back("2(beta + alpha) has a repeated root");
  if (!forms_coprime(p, q)) out.notes.push_back("2(beta - alpha) and 2(beta + alpha) share a root");
  if (!forms_coprime(p * q, rho)) out.notes.push_back("beta^2 - alpha^2 shares a root with rho");
  if (!forms_coprime(p * q, alpha)) out.notes.push_back("beta^2 - alpha^2 shares a root with alpha");
}

}  // namespace

const char* to_string(FamilyTag t) {
  switch (t) {
    case FamilyTag::Generic: return "Generic";
    case FamilyTag::FourI4: return "FourI4";
    case FamilyTag::FourI0star: return "FourI0star";
    case FamilyTag::Kummer17: return "Kummer17";
    case FamilyTag::SixLines16: return "SixLines16";
    case FamilyTag::SixLinesParams: return "SixLinesParams";
    case FamilyTag::CHL14: return "CHL14";
  }
  return "?";
}

FamilyTag parse_family_tag(const std::string& s) {
  for (auto t : {FamilyTag::Generic, FamilyTag::FourI4, FamilyTag::FourI0star, FamilyTag::Kummer17,
                 FamilyTag::SixLines16, FamilyTag::SixLinesParams, FamilyTag::CHL14}) {
    if (s == to_string(t)) return t;
  }
  throw std::invalid_argument("unknown family tag '" + s + "'");
}

SpecKind SpecKind::generic(HomogPoly a, HomogPoly b, HomogPoly c) {
  SpecKind k;
  k.tag = FamilyTag::Generic;
  k.a = std::move(a);
  k.b = std::move(b);
  k.c = std::move(c);
  return k;
}

SpecKind SpecKind::four_i4(HomogPoly a, HomogPoly b) {
  SpecKind k;
  k.tag = FamilyTag::FourI4;
  k.a = std::move(a);
  k.b = std::move(b);
  return k;
}

SpecKind SpecKind::four_i0star(HomogPoly a, Rational beta) {
  SpecKind k;
  k.tag = FamilyTag::FourI0star;
  k.a = std::move(a);
  k.beta = std::move(beta);
  return k;
}

SpecKind SpecKind::kummer17(HomogPoly rho, HomogPoly alpha, HomogPoly beta) {
  SpecKind k;
  k.tag = FamilyTag::Kummer17;
  k.rho = std::move(rho);
  k.alpha = std::move(alpha);
  k.beta_form = std::move(beta);
  return k;
}

SpecKind SpecKind::six_lines16(HomogPoly alpha, HomogPoly beta, HomogPoly rho) {
  SpecKind k;
  k.tag = FamilyTag::SixLines16;
  k.rho = std::move(rho);
  k.alpha = std::move(alpha);
  k.beta_form = std::move(beta);
  return k;
}

SpecKind SpecKind::six_lines_params(SixLinesConfig cfg) {
  SpecKind k;
  k.tag = FamilyTag::SixLinesParams;
  k.six_lines = std::move(cfg);
  return k;
}

SpecKind SpecKind::chl14(HomogPoly alpha, HomogPoly beta, HomogPoly gamma) {
  SpecKind k;
  k.tag = FamilyTag::CHL14;
  k.alpha = std::move(alpha);
  k.beta_form = std::move(beta);
  k.gamma = std::move(gamma);
  return k;
}

FamilyModels build_spec(const SpecKind& kind) {
  FamilyModels out;
  out.tag = kind.tag;
  switch (kind.tag) {
    case FamilyTag::Generic: {
      require_degree(kind.b, 4, "b");
      require(kind.a.declared_degree() + kind.c.declared_degree() == 8, "deg a + deg c = 8");
      require(kind.a.poly().degree() >= 1, "a non-constant");
      HomogPoly d = kind.b * kind.b - (kind.a * kind.c).scaled(Rational(4));
      require(form_squarefree(kind.a * kind.c * d), "ac(b^2 - 4ac) has no repeated roots");
      out.x = FibrationModel::weierstrass(kind.a, kind.b, kind.c, "generic.X");
      out.expected_x = out.expected_y = fm("{8I2, 8I1}");
      break;
    }
    case FamilyTag::FourI4: {
      require_degree(kind.a, 4, "a");
      require_degree(kind.b, 4, "b");
      require(form_squarefree(kind.a), "a has no repeated roots");
      require(forms_coprime(kind.a, kind.b), "a and b have no common factor");
      out.x = FibrationModel::weierstrass(kind.a, kind.b, kind.a, "fourI4.X");
      out.expected_x = fm("{4I4, 8I1}");
      out.expected_y = fm("{12I2}");
      break;
    }
    case FamilyTag::FourI0star: {
      require_degree(kind.a, 4, "a");
      require(form_squarefree(kind.a), "a has no repeated roots");
      require(kind.beta != Rational(1) && kind.beta != Rational(-1), "beta != +-1");
      out.x = FibrationModel::weierstrass(kind.a, kind.a.scaled(Rational(2) * kind.beta), kind.a, "fourI0star.X");
      out.expected_x = out.expected_y = fm("{4I0*}");
      break;
    }
    case FamilyTag::Kummer17:
    case FamilyTag::SixLines16: {
      bool k17 = kind.tag == FamilyTag::Kummer17;
      require_degree(kind.rho, k17 ? 3 : 2, "rho");
      require_degree(kind.alpha, k17 ? 1 : 2, "alpha");
      require_degree(kind.beta_form, k17 ? 1 : 2, "beta");
      require(form_squarefree(kind.rho), "rho has no repeated roots");
      require(form_squarefree(kind.alpha), "alpha has no repeated roots");
      require(form_squarefree(kind.beta_form), "beta has no repeated roots");
      require(forms_coprime(kind.alpha, kind.rho), "alpha and rho have no common factor");
      require(forms_coprime(kind.beta_form, kind.rho), "beta and rho have no common factor");
      require(forms_coprime(kind.alpha, kind.beta_form), "alpha and beta have no common factor");
      out = alpha_rho_models(kind.tag, kind.rho, kind.alpha, kind.beta_form, k17 ? "kummer17" : "sixlines");
      if (k17) {
        out.expected_x = fm("{3I0*, I4, 2I1}");
        out.expected_y = fm("{3I0*, 3I2}");
      } else {
        out.expected_x = fm("{2I0*, 2I4, 4I1}");
        out.expected_y = fm("{2I0*, 6I2}");
        six_lines_notes(out, kind.rho, kind.alpha, kind.beta_form);
      }
      break;
    }
    case FamilyTag::SixLinesParams: {
      SixLinesConfig cfg = kind.six_lines;
      SixLinesCoeffs co = six_lines_coeffs(cfg);
      require(!co.alpha.is_zero(), "alpha not identically zero");
      out = alpha_rho_models(kind.tag, co.rho, co.alpha, co.beta, "sixlines");
      six_lines_notes(out, co.rho, co.alpha, co.beta);
      if (!special2_classify(cfg).empty()) {
        out.expected_x = fm("{3I0*, I4, 2I1}");
        out.expected_y = fm("{3I0*, 3I2}");
        out.notes.push_back("special configuration: three lines concurrent");
      } else {
        out.expected_x = fm("{2I0*, 2I4, 4I1}");
        out.expected_y = fm("{2I0*, 6I2}");
        if (conic_tangency(cfg)) out.notes.push_back("six lines tangent to a conic");
      }
      break;
    }
    case FamilyTag::CHL14: {
      require_degree(kind.alpha, 2, "alpha");
      require_degree(kind.beta_form, 2, "beta");
      require_degree(kind.gamma, 2, "gamma");
      const HomogPoly* f[3] = {&kind.alpha, &kind.beta_form, &kind.gamma};
      const char* names[3] = {"alpha", "beta", "gamma"};
      for (int i = 0; i < 3; ++i) {
        require(form_squarefree(*f[i]), std::string(names[i]) + " has no repeated roots");
        require(coprime_to_t0t1(*f[i]), std::string(names[i]) + " has no common factor with t0 t1");
        for (int j = i + 1; j < 3; ++j) {
          require(forms_coprime(*f[i], *f[j]),
                  std::string(names[i]) + " and " + names[j] + " have no common factor");
        }
      }
      HomogPoly disc = kind.beta_form * kind.beta_form - (kind.alpha * kind.gamma).scaled(Rational(4));
      require(form_squarefree(disc), "beta^2 - 4 alpha gamma has no repeated roots");
      require(forms_coprime(disc, kind.alpha * kind.gamma) && coprime_to_t0t1(disc),
              "beta^2 - 4 alpha gamma has no common factor with t0 t1 alpha gamma");
      HomogPoly r = t0t1();
      out.x = FibrationModel::weierstrass(r * kind.alpha, r * kind.beta_form, r * kind.gamma, "chl.X");
      out.expected_x = out.expected_y = fm("{2I0*, 4I2, 4I1}");
      break;
    }
  }
  if (kind.tag != FamilyTag::Kummer17 && kind.tag != FamilyTag::SixLines16 &&
      kind.tag != FamilyTag::SixLinesParams) {
    std::string base = out.x.label.substr(0, out.x.label.size() - 2);
    out.y = out.x.isogenous(base + ".Y");
    out.z = FibrationModel::even_quartic(out.x.a, out.x.b, out.x.c, base + ".Z");
  }
  out.expected_z = out.expected_y;
  return out;
}

SixLinesCoeffs six_lines_coeffs(const SixLinesConfig& cfg) {
  const auto& [a, b, c, d] = cfg;
  UniPoly p = lin(a, b) * lin(c - Rational(1), d - Rational(1));
  UniPoly q = lin(c, d) * lin(a - Rational(1), b - Rational(1));
  SixLinesCoeffs out;
  out.rho = t0t1();
  out.two_beta_minus_alpha = HomogPoly(p, 2);
  out.two_beta_plus_alpha = HomogPoly(q, 2);
  out.alpha = HomogPoly((q - p).scaled(Rational(1, 4)), 2);
  out.beta = HomogPoly((q + p).scaled(Rational(1, 4)), 2);
  return out;
}

std::array<LineCoeffs, 6> six_lines(const SixLinesConfig& cfg) {
  Rational o(1), z(0);
  return {LineCoeffs{o, z, z}, LineCoeffs{z, o, z}, LineCoeffs{z, z, o},
          LineCoeffs{o, o, o}, LineCoeffs{cfg.a, cfg.b, o}, LineCoeffs{cfg.c, cfg.d, o}};
}

namespace {

template <class T>
std::array<T, 3> cross(const std::array<T, 3>& u, const std::array<T, 3>& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

template <class T>
T det3(const std::array<T, 3>& u, const std::array<T, 3>& v, const std::array<T, 3>& w) {
  auto c = cross(v, w);
  return u[0] * c[0] + u[1] * c[1] + u[2] * c[2];
}

}  // namespace

std::vector<LineIntersection> line_intersections(const SixLinesConfig& cfg) {
  auto l = six_lines(cfg);
  std::vector<LineIntersection> out;
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      ProjPoint p = cross(l[static_cast<size_t>(i)], l[static_cast<size_t>(j)]);
      if (p[0].is_zero() && p[1].is_zero() && p[2].is_zero()) {
        throw std::invalid_argument("lines " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                    " coincide");
      }
      out.push_back({i + 1, j + 1, p});
    }
  }
  return out;
}

bool no_three_concurrent(const SixLinesConfig& cfg) {
  auto l = six_lines(cfg);
  for (size_t i = 0; i < 6; ++i) {
    for (size_t j = i + 1; j < 6; ++j) {
      for (size_t k = j + 1; k < 6; ++k) {
        if (det3(l[i], l[j], l[k]).is_zero()) return false;
      }
    }
  }
  return true;
}

std::array<std::array<SymPoly, 3>, 6> symbolic_six_lines() {
  SymPoly o(1), z(0);
  SymPoly a = SymPoly::var("a"), b = SymPoly::var("b"), c = SymPoly::var("c"), d = SymPoly::var("d");
  return {{{o, z, z}, {z, o, z}, {z, z, o}, {o, o, o}, {a, b, o}, {c, d, o}}};
}

std::vector<std::array<SymPoly, 3>> symbolic_line_intersections() {
  auto l = symbolic_six_lines();
  std::vector<std::array<SymPoly, 3>> out;
  for (size_t i = 0; i < 6; ++i) {
    for (size_t j = i + 1; j < 6; ++j) out.push_back(cross(l[i], l[j]));
  }
  return out;
}

bool proportional(const std::array<SymPoly, 3>& p, const std::array<SymPoly, 3>& q) {
  for (const auto& m : cross(p, q)) {
    if (!m.is_zero()) return false;
  }
  return true;
}

bool proportional(const ProjPoint& p, const ProjPoint& q) {
  for (const auto& m : cross(p, q)) {
    if (!m.is_zero()) return false;
  }
  return true;
}

Rational conic_tangency_value(const SixLinesConfig& cfg) {
  const auto& [a, b, c, d] = cfg;
  return a * b * c - a * b * d - a * c * d + b * c * d + a * d - b * c;
}

bool conic_tangency(const SixLinesConfig& cfg) { return conic_tangency_value(cfg).is_zero(); }

Rational tangency_residual(const Rational& alpha, const Rational& p, const Rational& q) {
  Rational one(1);
  return alpha * (one - alpha) - (alpha - p) * (one - alpha - q);
}

std::optional<Rational> tangency_parameter(const SixLinesConfig& cfg) {
  if (cfg.a == cfg.b) return std::nullopt;
  return cfg.a * (Rational(1) - cfg.b) / (cfg.a - cfg.b);
}

const char* to_string(Special2 s) {
  switch (s) {
    case Special2::AEqualsB: return "a=b";
    case Special2::CEqualsD: return "c=d";
    case Special2::DetZero: return "ad-bc=0";
    case Special2::DetEqualsSum: return "ad-bc=a-b-c+d";
  }
  return "?";
}

std::vector<Special2> special2_classify(const SixLinesConfig& cfg) {
  const auto& [a, b, c, d] = cfg;
  std::vector<Special2> out;
  if (a == b) out.push_back(Special2::AEqualsB);
  if (c == d) out.push_back(Special2::CEqualsD);
  Rational det = a * d - b * c;
  if (det.is_zero()) out.push_back(Special2::DetZero);
  if (det == a - b - c + d) out.push_back(Special2::DetEqualsSum);
  return out;
}

std::array<Mat2, 4> bidegree_form(const SixLinesConfig& cfg) {
  Rational o(1), z(0);
  const auto& [a, b, c, d] = cfg;
  return {Mat2{{{z, o}, {z, z}}}, Mat2{{{z, z}, {o, z}}}, Mat2{{{a, b}, {o - a, o - b}}},
          Mat2{{{c, d}, {o - c, o - d}}}};
}

Rational det2(const Mat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

bool bidegree_reconstructs(const SixLinesConfig& cfg) {
  SymPoly xi = SymPoly::var("xi"), eta = SymPoly::var("eta");
  auto from = [&](const HomogPoly& f) { return SymPoly::from_unipoly(f.poly()).substitute(kVar, xi); };
  SixLinesCoeffs co = six_lines_coeffs(cfg);
  SymPoly rho = from(co.rho), p = from(co.two_beta_minus_alpha), q = from(co.two_beta_plus_alpha);
  SymPoly w = xi * (xi.scaled(cfg.a) + SymPoly(cfg.b)) * (xi.scaled(cfg.c) + SymPoly(cfg.d));
  SymPoly x = w * eta;
  SymPoly rhs = x * (x - p * rho) * (x - q * rho);
  SymPoly prod(1);
  for (const auto& m : bidegree_form(cfg)) {
    prod = prod * ((xi * eta).scaled(m[0][0]) + eta.scaled(m[0][1]) + xi.scaled(m[1][0]) + SymPoly(m[1][1]));
  }
  return rhs == w * w * prod;
}

RosenhainTriple RosenhainTriple::make(Rational l1, Rational l2, Rational l3, Rational L) {
  for (const Rational* l : {&l1, &l2, &l3}) {
    if (l->is_zero() || *l == Rational(1)) throw std::invalid_argument("Rosenhain roots must avoid 0 and 1");
  }
  if (l1 == l2 || l1 == l3 || l2 == l3) throw std::invalid_argument("Rosenhain roots must be distinct");
  if (L * L != Rational(4) * l1 * l2 * l3) throw std::invalid_argument("L^2 != 4 l1 l2 l3");
  return RosenhainTriple{std::move(l1), std::move(l2), std::move(l3), std::move(L)};
}

MuTriple rosenhain_mu(const RosenhainTriple& r) {
  return MuTriple{(r.l1 + r.l2 * r.l3) / r.L, (r.l2 + r.l1 * r.l3) / r.L, (r.l3 + r.l1 * r.l2) / r.L};
}

MuTriple dual_mu(const MuTriple& m) {
  if (m.m2 == m.m3) throw std::invalid_argument("dual moduli undefined: mu2 = mu3");
  if (m.m1 == Rational(1) || m.m1 == Rational(-1)) throw std::invalid_argument("dual moduli undefined: mu1 = +-1");
  Rational d = m.m2 - m.m3;
  Rational k = Rational(2) * (m.m1 - m.m2) * (m.m1 - m.m3);
  Rational c1 = (Rational(2) * m.m1 - m.m2 - m.m3) / d;
  return MuTriple{c1, c1 - k / ((m.m1 + Rational(1)) * d), c1 - k / ((m.m1 - Rational(1)) * d)};
}

KummerModels kummer_models(const MuTriple& m) {
  const std::string u = "u";
  HomogPoly rho(UniPoly({Rational(-1), Rational(0), Rational(1)}, u), 3);
  HomogPoly alpha(lin(Rational(1), -m.m1, u).scaled(m.m2 - m.m3), 1);
  HomogPoly beta(lin(Rational(2) * m.m1 - m.m2 - m.m3, Rational(2) * m.m2 * m.m3 - m.m1 * m.m2 - m.m1 * m.m3, u), 1);
  if (alpha.is_zero() || !forms_coprime(alpha, rho) || !forms_coprime(beta, rho) || !forms_coprime(alpha, beta)) {
    throw std::invalid_argument("degenerate moduli: alpha, beta, rho are not pairwise coprime");
  }
  HomogPoly a = alpha * rho, b = (beta * rho).scaled(Rational(2));
  KummerModels out{FibrationModel::weierstrass(a, b, a, "kummer.X"),
                   {},
                   FibrationModel::even_quartic(a, b, a, "kummer.Z"),
                   FibrationModel::even_quartic(rho, b, alpha * alpha * rho, "kummer.Z'"),
                   rho,
                   alpha,
                   beta};
  out.y = out.x.isogenous("kummer.Y");
  return out;
}

FibrationModel kummer_x_affine(const MuTriple& dual) {
  const std::string u = "u";
  UniPoly p = lin(Rational(1), -dual.m1, u) * lin(Rational(1), -dual.m2, u) * lin(Rational(1), -dual.m3, u);
  HomogPoly ph(p, 4);
  HomogPoly b(UniPoly::variable(u).scaled(Rational(2)) * p, 4);
  return FibrationModel::weierstrass(ph, b, ph, "kummer.X_affine");
}

Rational height_pairing(int chi_hol, int s1_dot_zero, int s2_dot_zero, int s1_dot_s2,
                        const std::vector<Rational>& corrections, bool self) {
  Rational corr(0);
  for (const auto& c : corrections) corr += c;
  if (self) return Rational(2 * chi_hol + 2 * s1_dot_zero) - corr;
  return Rational(chi_hol + s1_dot_zero + s2_dot_zero - s1_dot_s2) - corr;
}

std::optional<RationalPointCert::Triple> four_i0star_witness(const UniPoly& a, const Rational& beta) {
  auto r = rational_sqrt(beta * beta - Rational(1));
  if (!r) return std::nullopt;
  for (const Rational& f2 : {beta - *r, beta + *r}) {
    auto f = rational_sqrt(f2);
    if (!f || f->is_zero()) continue;
    UniPoly e = a.scaled(Rational(2) * beta - Rational(2) * f2);
    return RationalPointCert::Triple{e, UniPoly(*f, a.var()), UniPoly(Rational(0), a.var()),
                                     RationalPointCert::WitnessForm::Theorem};
  }
  return std::nullopt;
}

}  // namespace k3
