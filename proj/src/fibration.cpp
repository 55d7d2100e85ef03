#include "k3/fibration.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace k3 {

namespace {

HomogPoly zero_form(int d, const std::string& var) { return HomogPoly(UniPoly(Rational(0), var), d); }

int val(const HomogPoly& f, const Place& p) {
  return f.is_zero() ? kInfiniteValuation : valuation_at(f, p);
}

bool infinite(int v) { return v >= kInfiniteValuation / 2; }

bool form_is_square(const HomogPoly& f) {
  if (f.is_zero()) return true;
  if ((f.declared_degree() - f.poly().degree()) % 2 != 0) return false;
  return poly_is_square(f.poly()).has_value();
}

/// Projective coordinates of a rational place.
std::pair<Rational, Rational> place_point(const Place& p) {
  if (p.infinity) return {Rational(1), Rational(0)};
  if (p.degree() != 1) throw std::invalid_argument("place " + p.str() + " is not rational");
  return {-p.poly.coeff(0), Rational(1)};
}

std::optional<Rational> value_at(const RatFunc& f, const std::pair<Rational, Rational>& pt) {
  if (pt.second.is_zero()) {
    int dn = f.num().degree(), dd = f.den().degree();
    if (dn > dd) return std::nullopt;
    if (dn < dd) return Rational(0);
    return f.num().lead() / f.den().lead();
  }
  Rational t = pt.first / pt.second;
  Rational d = f.den().eval(t);
  if (d.is_zero()) return std::nullopt;
  return f.num().eval(t) / d;
}

HomogPoly place_form(const Place& p, int k) {
  if (p.infinity) throw std::logic_error("no finite form for the place at infinity");
  return HomogPoly(p.poly.pow(k), k * p.poly.degree());
}

HomogPoly divide_at(const HomogPoly& f, const Place& p, int k) {
  if (k == 0) return f;
  if (f.is_zero()) return HomogPoly(f.poly(), f.declared_degree() - k * p.degree());
  if (p.infinity) return HomogPoly(f.poly(), f.declared_degree() - k);
  return f.exact_div(place_form(p, k));
}

}  // namespace

FibrationModel FibrationModel::weierstrass(HomogPoly a, HomogPoly b, HomogPoly c, std::string label) {
  FibrationModel m;
  m.kind = ModelKind::WeierstrassTwoTorsion;
  if (b.declared_degree() % 2 != 0) throw std::invalid_argument("deg b must be even");
  m.weight = b.declared_degree() / 2;
  if (a.declared_degree() + c.declared_degree() != 4 * m.weight) {
    throw std::invalid_argument("deg a + deg c must equal 2 deg b");
  }
  if (a.is_zero() || c.is_zero()) throw std::invalid_argument("a and c must be nonzero");
  m.a = std::move(a);
  m.b = std::move(b);
  m.c = std::move(c);
  m.label = std::move(label);
  if (paper_discriminant(m).is_zero()) throw std::invalid_argument("discriminant vanishes identically");
  return m;
}

FibrationModel FibrationModel::quartic(std::array<HomogPoly, 5> e, std::string label) {
  FibrationModel m;
  m.kind = ModelKind::QuarticGenusOne;
  int d0 = e[0].declared_degree(), d4 = e[4].declared_degree();
  bool even = e[1].is_zero() && e[3].is_zero();
  if ((d4 - d0) % (even ? 2 : 4) != 0 || (d0 + d4) % 4 != 0) {
    throw std::invalid_argument("inconsistent quartic degrees");
  }
  for (int i = 0; i < 5; ++i) {
    if (e[static_cast<size_t>(i)].is_zero() && i % 2 == 1) continue;
    if (2 * e[static_cast<size_t>(i)].declared_degree() != 2 * d0 + i * (d4 - d0) / 2) {
      throw std::invalid_argument("coefficient " + std::to_string(i) + " has the wrong degree");
    }
  }
  m.weight = (d0 + d4) / 4;
  m.e = std::move(e);
  m.label = std::move(label);
  if (paper_discriminant(m).is_zero()) throw std::invalid_argument("discriminant vanishes identically");
  return m;
}

FibrationModel FibrationModel::even_quartic(HomogPoly q4, HomogPoly q2, HomogPoly q0, std::string label) {
  int d0 = q4.declared_degree(), d4 = q0.declared_degree();
  if ((d4 - d0) % 2 != 0) throw std::invalid_argument("inconsistent quartic degrees");
  int step = (d4 - d0) / 4;
  const std::string& v = q2.var();
  return quartic({std::move(q4), zero_form(d0 + step, v), std::move(q2), zero_form(d0 + 3 * step, v),
                  std::move(q0)},
                 std::move(label));
}

FibrationModel FibrationModel::isogenous(const std::string& lbl) const {
  if (!is_weierstrass()) throw std::invalid_argument("isogenous model of a quartic");
  HomogPoly d = b * b - (a * c).scaled(Rational(4));
  return weierstrass(homog_const(Rational(1), b.var()), b.scaled(Rational(-2)), d, lbl);
}

FibrationModel FibrationModel::moebius(const std::array<Rational, 4>& mm) const {
  FibrationModel r = *this;
  if (is_weierstrass()) {
    r.a = a.moebius(mm);
    r.b = b.moebius(mm);
    r.c = c.moebius(mm);
  } else {
    for (auto& f : r.e) f = f.moebius(mm);
  }
  if (paper_discriminant(r).is_zero()) throw std::invalid_argument("degenerate change of coordinates");
  return r;
}

std::string FibrationModel::str() const {
  std::ostringstream os;
  if (is_weierstrass()) {
    os << "y^2 = x(x^2 + b x + a c) with a = " << a.str() << ", b = " << b.str() << ", c = " << c.str();
  } else {
    os << "V^2 = sum e_m U^(4-m) W^m with";
    for (int i = 0; i < 5; ++i) os << " e" << i << " = " << e[static_cast<size_t>(i)].str() << (i < 4 ? "," : "");
  }
  return os.str();
}

bool operator==(const FibrationModel& x, const FibrationModel& y) {
  if (x.kind != y.kind || x.weight != y.weight) return false;
  if (x.is_weierstrass()) return x.a == y.a && x.b == y.b && x.c == y.c;
  return x.e == y.e;
}

namespace {

struct QuarticInvariants {
  HomogPoly i, j, disc;
};

QuarticInvariants quartic_invariants(const FibrationModel& m) {
  const auto& e = m.e;
  HomogPoly i = (e[0] * e[4]).scaled(Rational(12)) - (e[1] * e[3]).scaled(Rational(3)) + e[2] * e[2];
  HomogPoly j = (e[0] * e[2] * e[4]).scaled(Rational(72)) + (e[1] * e[2] * e[3]).scaled(Rational(9)) -
                (e[0] * e[3] * e[3]).scaled(Rational(27)) - (e[4] * e[1] * e[1]).scaled(Rational(27)) -
                (e[2] * e[2] * e[2]).scaled(Rational(2));
  HomogPoly disc = ((i * i * i).scaled(Rational(4)) - j * j).scaled(Rational(1, 27));
  return {i, j, disc};
}

}  // namespace

Invariants invariants_c4c6delta(const FibrationModel& m) {
  if (!m.is_weierstrass()) {
    auto q = quartic_invariants(m);
    return {q.i.scaled(Rational(16)), q.j.scaled(Rational(32)), q.disc.scaled(Rational(16))};
  }
  HomogPoly ac = m.a * m.c;
  HomogPoly bb = m.b * m.b;
  HomogPoly c4 = (bb - ac.scaled(Rational(3))).scaled(Rational(16));
  HomogPoly c6 = (m.b * (bb.scaled(Rational(2)) - ac.scaled(Rational(9)))).scaled(Rational(-32));
  return {c4, c6, paper_discriminant(m).scaled(Rational(16))};
}

HomogPoly paper_discriminant(const FibrationModel& m) {
  if (!m.is_weierstrass()) return quartic_invariants(m).disc;
  HomogPoly ac = m.a * m.c;
  return ac * ac * (m.b * m.b - ac.scaled(Rational(4)));
}

std::vector<Place> places(const FibrationModel& m) {
  Invariants inv = invariants_c4c6delta(m);
  std::vector<HomogPoly> forms;
  if (m.is_weierstrass()) {
    forms = {m.a, m.c, m.b * m.b - (m.a * m.c).scaled(Rational(4))};
  } else {
    auto q = quartic_invariants(m);
    forms = {m.e[0], m.e[1], m.e[2], m.e[3], m.e[4], q.i, q.j};
  }
  forms.push_back(inv.c4);
  forms.push_back(inv.c6);
  forms.push_back(inv.delta);
  std::vector<UniPoly> polys;
  for (const auto& f : forms) {
    if (f.poly().degree() >= 1) polys.push_back(f.poly());
  }
  std::vector<Place> out;
  for (const auto& p : split_rational_roots(gcd_free_basis(polys))) {
    Place pl = Place::finite(p);
    if (valuation_at(inv.delta, pl) > 0) out.push_back(pl);
  }
  std::sort(out.begin(), out.end(), place_less);
  if (valuation_at(inv.delta, Place::at_infinity()) > 0) out.push_back(Place::at_infinity());
  return out;
}

KodairaType KodairaType::parse(const std::string& raw) {
  std::string s;
  for (char ch : raw) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  bool star = !s.empty() && s.back() == '*';
  if (star) s.pop_back();
  if (s == "II") return {star ? Tag::IIstar : Tag::II, 0};
  if (s == "III") return {star ? Tag::IIIstar : Tag::III, 0};
  if (s == "IV") return {star ? Tag::IVstar : Tag::IV, 0};
  if (s.size() >= 2 && s[0] == 'I' &&
      std::all_of(s.begin() + 1, s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
    return {star ? Tag::Istar : Tag::I, std::stoi(s.substr(1))};
  }
  throw std::invalid_argument("unknown Kodaira type '" + raw + "'");
}

int KodairaType::euler() const {
  switch (tag) {
    case Tag::I: return n;
    case Tag::Istar: return n + 6;
    case Tag::II: return 2;
    case Tag::III: return 3;
    case Tag::IV: return 4;
    case Tag::IVstar: return 8;
    case Tag::IIIstar: return 9;
    case Tag::IIstar: return 10;
  }
  return 0;
}

std::string KodairaType::str() const {
  switch (tag) {
    case Tag::I: return "I" + std::to_string(n);
    case Tag::Istar: return "I" + std::to_string(n) + "*";
    case Tag::II: return "II";
    case Tag::III: return "III";
    case Tag::IV: return "IV";
    case Tag::IVstar: return "IV*";
    case Tag::IIIstar: return "III*";
    case Tag::IIstar: return "II*";
  }
  return "?";
}

FiberMultiset parse_fiber_multiset(const std::string& raw) {
  FiberMultiset out;
  std::string tok;
  auto flush = [&]() {
    std::string t;
    for (char ch : tok) {
      if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
    }
    tok.clear();
    if (t.empty()) return;
    size_t i = 0;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
    int count = i == 0 ? 1 : std::stoi(t.substr(0, i));
    KodairaType k = KodairaType::parse(t.substr(i));
    if (!(k == KodairaType::In(0))) out[k] += count;
  };
  for (char ch : raw) {
    if (ch == '{' || ch == '}') continue;
    if (ch == ',' || ch == '+') {
      flush();
    } else {
      tok.push_back(ch);
    }
  }
  flush();
  return out;
}

std::string str(const FiberMultiset& fm) {
  std::vector<std::pair<KodairaType, int>> v(fm.begin(), fm.end());
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
    if (x.first.euler() != y.first.euler()) return x.first.euler() > y.first.euler();
    return x.first < y.first;
  });
  std::string s = "{";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    if (v[i].second != 1) s += std::to_string(v[i].second);
    s += v[i].first.str();
  }
  return s + "}";
}

FiberMultiset FiberReport::summary() const {
  FiberMultiset out;
  for (const auto& e : entries) {
    if (!(e.type == KodairaType::In(0))) out[e.type] += e.degree;
  }
  return out;
}

std::vector<Place> FiberReport::places_of(const KodairaType& t) const {
  std::vector<Place> out;
  for (const auto& e : entries) {
    if (e.type == t) out.push_back(e.place);
  }
  return out;
}

KodairaType classify_valuations(LocalInvariants& inv) {
  if (infinite(inv.v_delta)) throw std::logic_error("discriminant vanishes identically");
  while (inv.v_c4 >= 4 && inv.v_c6 >= 6 && inv.v_delta >= 12) {
    if (!infinite(inv.v_c4)) inv.v_c4 -= 4;
    if (!infinite(inv.v_c6)) inv.v_c6 -= 6;
    inv.v_delta -= 12;
    ++inv.twists_applied;
  }
  int c4 = inv.v_c4, c6 = inv.v_c6, d = inv.v_delta;
  auto bad = [&]() {
    return std::logic_error("valuation triple (" + std::to_string(c4) + ", " + std::to_string(c6) + ", " +
                            std::to_string(d) + ") is outside the Kodaira table");
  };
  if (d == 0) return KodairaType::In(0);
  if (c4 == 0) {
    if (c6 != 0) throw bad();
    return KodairaType::In(d);
  }
  using Tag = KodairaType::Tag;
  switch (d) {
    case 2:
      if (c6 == 1) return {Tag::II, 0};
      break;
    case 3:
      if (c4 == 1 && c6 >= 2) return {Tag::III, 0};
      break;
    case 4:
      if (c4 >= 2 && c6 == 2) return {Tag::IV, 0};
      break;
    case 6:
      if (c4 >= 2 && c6 >= 3) return KodairaType::Instar(0);
      break;
    case 8:
      if (c4 >= 3 && c6 == 4) return {Tag::IVstar, 0};
      break;
    case 9:
      if (c4 == 3 && c6 >= 5) return {Tag::IIIstar, 0};
      break;
    case 10:
      if (c4 >= 4 && c6 == 5) return {Tag::IIstar, 0};
      break;
    default:
      break;
  }
  if (d > 6 && c4 == 2 && c6 == 3) return KodairaType::Instar(d - 6);
  throw bad();
}

std::pair<LocalInvariants, KodairaType> local_kodaira(const FibrationModel& m, const Place& p) {
  Invariants inv = invariants_c4c6delta(m);
  LocalInvariants li{val(inv.c4, p), val(inv.c6, p), val(inv.delta, p), 0};
  KodairaType t = classify_valuations(li);
  return {li, t};
}

FiberReport fiber_configuration(const FibrationModel& m) {
  FiberReport r;
  r.weight = m.weight;
  for (const auto& p : places(m)) {
    auto [li, t] = local_kodaira(m, p);
    r.entries.push_back(FiberEntry{p, li, t, p.degree()});
    r.euler_total += t.euler() * p.degree();
  }
  if (m.weight == 2 && r.euler_total != 24) {
    throw std::logic_error("Euler total " + std::to_string(r.euler_total) + " != 24 for a K3 model");
  }
  return r;
}

Section Section::explicit_section(HomogPoly x, HomogPoly y, std::string name) {
  return Section{Kind::Explicit, std::move(x), std::move(y), std::move(name)};
}

bool section_on_model(const FibrationModel& m, const Section& s) {
  if (!m.is_weierstrass()) return false;
  if (s.kind != Section::Kind::Explicit) return true;
  if (s.x.declared_degree() != 2 * m.weight || s.y.declared_degree() != 3 * m.weight) return false;
  HomogPoly rhs = s.x * (s.x * s.x + m.b * s.x + m.a * m.c);
  return (s.y * s.y).poly() == rhs.poly();
}

IncidenceRecord section_incidence(const FibrationModel& m, const Section& s, const Place& p) {
  if (!section_on_model(m, s)) throw std::invalid_argument("section " + s.name + " is not on the model");
  auto [li, t] = local_kodaira(m, p);
  if (t == KodairaType::In(0)) throw std::invalid_argument("fiber over " + p.str() + " is smooth");
  IncidenceRecord rec{p, t, "", false};
  bool at_origin = val(m.a * m.c, p) > 0;
  rec.singular_point = at_origin ? "(0,0)" : "(-b/2,0)";
  switch (s.kind) {
    case Section::Kind::Zero:
      rec.passes = false;
      break;
    case Section::Kind::TwoTorsion:
      rec.passes = at_origin;
      break;
    case Section::Kind::Explicit: {
      HomogPoly xs = at_origin ? zero_form(2 * m.weight, m.var()) : m.b.scaled(Rational(-1, 2));
      rec.passes = val(s.x - xs, p) > 0 && val(s.y, p) > 0;
      break;
    }
  }
  return rec;
}

std::vector<BisectionRecord> z_bisections(const FibrationModel& m) {
  if (m.is_weierstrass()) throw std::invalid_argument("bisections are defined for quartic models");
  return {BisectionRecord{"W=0", m.e[0], form_is_square(m.e[0])},
          BisectionRecord{"U=0", m.e[4], form_is_square(m.e[4])}};
}

std::string z_singular_point(const FibrationModel& m, const Place& p) {
  if (m.is_weierstrass()) throw std::invalid_argument("quartic model expected");
  if (val(m.e[0], p) > 0) return "[1:0:0]";
  if (val(m.e[4], p) > 0) return "[0:0:1]";
  return "other";
}

const char* to_string(BranchCover c) {
  switch (c) {
    case BranchCover::Phi: return "Phi";
    case BranchCover::Psi: return "Psi";
    case BranchCover::PsiPrime: return "PsiPrime";
  }
  return "?";
}

int BranchFiber::in_branch_count() const {
  return static_cast<int>(std::count_if(components.begin(), components.end(),
                                        [](const BranchComponent& c) { return c.in_branch; }));
}

namespace {

/// Components of a reducible fiber with the sections sigma and tau placed on them.
std::vector<BranchComponent> fiber_components(const KodairaType& t, bool tau_passes) {
  std::vector<BranchComponent> comps;
  if (t.tag == KodairaType::Tag::I && t.n >= 2 && t.n <= 4) {
    for (int i = 0; i < t.n; ++i) comps.push_back({"Theta" + std::to_string(i), i == 0, false, i == 0, false, false});
    comps[static_cast<size_t>(tau_passes ? t.n / 2 : 0)].meets_tau = true;
    return comps;
  }
  if (t == KodairaType::Instar(0)) {
    comps.push_back({"center", false, true, false, false, false});
    for (int i = 0; i < 4; ++i) comps.push_back({"Theta" + std::to_string(i), i == 0, false, i == 0, false, false});
    comps[tau_passes ? 2 : 1].meets_tau = true;
    return comps;
  }
  throw std::invalid_argument("branch analysis does not support fibers of type " + t.str());
}

}  // namespace

BranchReport branch_even_eight_report(BranchCover cover, const FibrationModel& x) {
  if (!x.is_weierstrass()) throw std::invalid_argument("branch analysis needs a Weierstrass model");
  HomogPoly f_sigma = cover == BranchCover::Phi ? homog_const(Rational(1), x.var()) : x.a;
  HomogPoly f_tau = cover == BranchCover::Phi ? x.a * x.c : x.c;
  BranchReport rep;
  rep.cover = cover;
  for (const auto& e : fiber_configuration(x).entries) {
    const KodairaType& t = e.type;
    bool reducible = (t.tag == KodairaType::Tag::I && t.n >= 2) || t.tag != KodairaType::Tag::I;
    if (!reducible) continue;
    bool tau_passes = section_incidence(x, Section::two_torsion(), e.place).passes;
    BranchFiber bf{e.place, t, e.degree, val(f_sigma, e.place), val(f_tau, e.place),
                   fiber_components(t, tau_passes)};
    bool forced = false;
    for (auto& comp : bf.components) {
      bool in_s = comp.meets_sigma && bf.v_f_sigma % 2 != 0;
      bool in_t = comp.meets_tau && bf.v_f_tau % 2 != 0;
      if (comp.meets_sigma && comp.meets_tau && (bf.v_f_sigma % 2) != (bf.v_f_tau % 2)) {
        throw std::logic_error("inconsistent branch parity on a component met by both sections");
      }
      comp.in_branch = in_s || in_t;
      forced = forced || comp.in_branch;
    }
    if (!forced) {
      for (auto& comp : bf.components) {
        if (!comp.central && !comp.meets_sigma && !comp.meets_tau) comp.in_branch = true;
      }
    }
    rep.total += bf.in_branch_count() * bf.degree;
    rep.fibers.push_back(std::move(bf));
  }
  return rep;
}

BranchReport base_change_branch_report(const FibrationModel& m, const std::vector<Place>& branch_places) {
  BranchReport rep;
  rep.cover = BranchCover::Phi;
  for (const auto& p : branch_places) {
    auto [li, t] = local_kodaira(m, p);
    if (!(t == KodairaType::Instar(0))) {
      throw std::invalid_argument("fiber over " + p.str() + " is " + t.str() + ", expected I0*");
    }
    bool tau_passes = m.is_weierstrass() && section_incidence(m, Section::two_torsion(), p).passes;
    BranchFiber bf{p, t, p.degree(), 0, 0, fiber_components(t, tau_passes)};
    for (auto& comp : bf.components) comp.in_branch = !comp.central;
    rep.total += bf.in_branch_count() * bf.degree;
    rep.fibers.push_back(std::move(bf));
  }
  return rep;
}

FibrationModel swap_base_fiber_raw(const FibrationModel& m, const std::string& new_var) {
  if (m.is_weierstrass()) throw std::invalid_argument("base/fiber swap needs a quartic model");
  for (const auto& f : m.e) {
    if (f.declared_degree() != 4) throw std::invalid_argument("base/fiber swap needs k = 2 (all degrees 4)");
  }
  std::array<HomogPoly, 5> out;
  for (int n = 0; n < 5; ++n) {
    std::vector<Rational> c(5);
    for (int mm = 0; mm < 5; ++mm) c[static_cast<size_t>(4 - mm)] = m.e[static_cast<size_t>(mm)].coeff_t1(n);
    out[static_cast<size_t>(n)] = HomogPoly(UniPoly(std::move(c), new_var), 4);
  }
  return FibrationModel::quartic(std::move(out), m.label.empty() ? "" : "swap(" + m.label + ")");
}

FibrationModel swap_base_fiber(const FibrationModel& m, const std::string& new_var) {
  FibrationModel s = swap_base_fiber_raw(m, new_var);
  if (s.e[0].is_zero() && s.e[4].is_zero()) {
    return FibrationModel::weierstrass(s.e[1], s.e[2], s.e[3], s.label);
  }
  return s;
}

RatFunc j_map(const FibrationModel& m) {
  Invariants inv = invariants_c4c6delta(m);
  return RatFunc(inv.c4.pow(3).poly(), inv.delta.poly());
}

namespace {

using Mat = std::array<Rational, 4>;

Mat mat_mul(const Mat& x, const Mat& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

std::optional<Mat> mat_inv(const Mat& x) {
  Rational d = x[0] * x[3] - x[1] * x[2];
  if (d.is_zero()) return std::nullopt;
  return Mat{x[3] / d, -x[1] / d, -x[2] / d, x[0] / d};
}

using Pt = std::pair<Rational, Rational>;

/// A with A[1:0] = p1, A[0:1] = p2, A[1:1] = p3.
std::optional<Mat> frame(const Pt& p1, const Pt& p2, const Pt& p3) {
  Rational det = p1.first * p2.second - p2.first * p1.second;
  if (det.is_zero()) return std::nullopt;
  Rational l = (p3.first * p2.second - p2.first * p3.second) / det;
  Rational mu = (p1.first * p3.second - p3.first * p1.second) / det;
  if (l.is_zero() || mu.is_zero()) return std::nullopt;
  return Mat{l * p1.first, mu * p2.first, l * p1.second, mu * p2.second};
}

struct Marked {
  Pt point;
  KodairaType type;
  std::optional<Rational> j;
  friend bool operator==(const Marked& x, const Marked& y) { return x.type == y.type && x.j == y.j; }
};

std::vector<Marked> marked_points(const FibrationModel& m, const FiberReport& r, const RatFunc& j) {
  std::vector<Marked> out;
  for (const auto& e : r.entries) {
    if (e.degree != 1 || e.type == KodairaType::In(0)) continue;
    Pt pt = place_point(e.place);
    out.push_back({pt, e.type, value_at(j, pt)});
  }
  (void)m;
  return out;
}

}  // namespace

MoebiusMatch find_jmap_moebius(const FibrationModel& m1, const FibrationModel& m2) {
  MoebiusMatch res;
  FiberReport r1 = fiber_configuration(m1), r2 = fiber_configuration(m2);
  if (r1.summary() != r2.summary()) return res;
  RatFunc j1 = j_map(m1), j2 = j_map(m2);
  auto p = marked_points(m2, r2, j2);
  auto q = marked_points(m1, r1, j1);
  if (p.size() < 3) return res;
  auto ap = frame(p[0].point, p[1].point, p[2].point);
  if (!ap) return res;
  Mat ap_inv = *mat_inv(*ap);
  Invariants i1 = invariants_c4c6delta(m1), i2 = invariants_c4c6delta(m2);
  HomogPoly n1 = i1.c4.pow(3), d1 = i1.delta, n2 = i2.c4.pow(3), d2 = i2.delta;
  for (size_t x = 0; x < q.size(); ++x) {
    if (!(q[x] == p[0])) continue;
    for (size_t y = 0; y < q.size(); ++y) {
      if (y == x || !(q[y] == p[1])) continue;
      for (size_t z = 0; z < q.size(); ++z) {
        if (z == x || z == y || !(q[z] == p[2])) continue;
        auto aq = frame(q[x].point, q[y].point, q[z].point);
        if (!aq) continue;
        Mat mm = mat_mul(*aq, ap_inv);
        if (n1.moebius(mm) * d2 == n2 * d1.moebius(mm)) {
          res.found = true;
          res.matrix = mm;
          return res;
        }
      }
    }
  }
  return res;
}

bool jmap_equal_up_to_moebius(const FibrationModel& m1, const FibrationModel& m2) {
  return find_jmap_moebius(m1, m2).found;
}

bool remove_twist(FibrationModel& m, const Place& p) {
  if (!m.is_weierstrass()) throw std::invalid_argument("twist removal needs a Weierstrass model");
  if (p.degree() != 1) throw std::invalid_argument("twist removal needs a rational place");
  int va = val(m.a, p), vb = val(m.b, p), vc = val(m.c, p);
  if (vb < 2 || va + vc < 4) return false;
  int i = std::min(va, 4);
  m = FibrationModel::weierstrass(divide_at(m.a, p, i), divide_at(m.b, p, 2), divide_at(m.c, p, 4 - i), m.label);
  return true;
}

FibrationModel base_change_cover(const FibrationModel& m, CoverKind cover) {
  if (!m.is_weierstrass()) throw std::invalid_argument("base change needs a Weierstrass model");
  FibrationModel r;
  std::vector<Place> ramification;
  if (cover == CoverKind::Square) {
    auto pull = [](const HomogPoly& f) {
      HomogPoly g = f.power_pullback(2);
      return HomogPoly(g.poly().with_var("s"), g.declared_degree());
    };
    r = FibrationModel::weierstrass(pull(m.a), pull(m.b), pull(m.c), m.label.empty() ? "" : m.label + "~");
    ramification = {Place::finite(UniPoly::variable("s")), Place::at_infinity()};
  } else {
    auto pull = [](const HomogPoly& f) {
      HomogPoly g = f.sum_of_squares_pullback();
      return HomogPoly(g.poly().with_var("t"), g.declared_degree());
    };
    r = FibrationModel::weierstrass(pull(m.a), pull(m.b), pull(m.c), m.label.empty() ? "" : m.label + "^");
    ramification = {Place::finite(UniPoly::linear_root(Rational(-1), "t")),
                    Place::finite(UniPoly::linear_root(Rational(1), "t"))};
  }
  for (const auto& p : ramification) remove_twist(r, p);
  return r;
}

}  // namespace k3
