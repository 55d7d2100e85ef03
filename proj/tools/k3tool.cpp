// k3tool: command-line front end for the fibration, isogeny and CHL engines.
//
// Exit codes: 0 all checks pass, 1 a verification returned false, 2 input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include "k3/poly_parse.hpp"
#include "k3/verify.hpp"

#ifndef K3_DEFAULT_CORPUS
#define K3_DEFAULT_CORPUS "corpus.json"
#endif

using namespace k3;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  bool text = false;
  std::string path;

  void emit(const Json& j, const std::string& text_form) const {
    std::string body = text ? text_form : j.dump(2) + "\n";
    if (path.empty()) {
      std::cout << body;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << body;
  }
};

std::vector<Rational> rationals(const std::string& s, size_t n, const std::string& what) {
  std::vector<Rational> out;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, ',')) {
    auto b = tok.find_first_not_of(" \t"), e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw InputError(what + ": empty entry");
    out.push_back(Rational::parse(tok.substr(b, e - b + 1)));
  }
  if (out.size() != n) throw InputError(what + " needs " + std::to_string(n) + " comma-separated rationals");
  return out;
}

Json read_json_arg(const std::string& arg) {
  std::string text = arg;
  if (arg.empty() || (arg[0] != '{' && arg[0] != '[')) {
    std::ifstream in(arg);
    if (!in) throw InputError("cannot read '" + arg + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

struct SpecArgs {
  std::string spec, tag, a, b, c, rho, alpha, beta, gamma, six_lines;

  void add(CLI::App* app) {
    app->add_option("--spec", spec, "Family spec as JSON text or a path to a JSON file");
    app->add_option("--tag", tag, "Generic, FourI4, FourI0star, Kummer17, SixLines16, SixLinesParams or CHL14");
    app->add_option("--a", a, "Polynomial in t");
    app->add_option("--b", b, "Polynomial in t");
    app->add_option("--c", c, "Polynomial in t");
    app->add_option("--rho", rho, "Polynomial in t");
    app->add_option("--alpha", alpha, "Polynomial in t");
    app->add_option("--beta", beta, "Polynomial in t, or a rational for FourI0star");
    app->add_option("--gamma", gamma, "Polynomial in t");
    app->add_option("--six-lines", six_lines, "a,b,c,d of the six-line configuration");
  }

  Json json() const {
    if (!spec.empty()) return read_json_arg(spec);
    if (tag.empty()) throw InputError("give --spec or --tag");
    Json j{{"tag", tag}};
    auto put = [&](const char* key, const std::string& v) {
      if (!v.empty()) j[key] = v;
    };
    put("a", a);
    put("b", b);
    put("c", c);
    put("rho", rho);
    put("alpha", alpha);
    put("beta", beta);
    put("gamma", gamma);
    if (!six_lines.empty()) {
      auto v = rationals(six_lines, 4, "--six-lines");
      j["six_lines"] = Json{{"a", v[0]}, {"b", v[1]}, {"c", v[2]}, {"d", v[3]}};
    }
    return j;
  }
};

std::string model_text(const std::string& name, const Json& entry) {
  std::ostringstream os;
  os << name << ": " << entry.at("fibers").at("summary").get<std::string>() << ", Euler "
     << entry.at("fibers").at("euler_total").get<std::string>();
  if (entry.contains("expected")) {
    os << (entry.at("matches_expected").get<bool>() ? " (as expected)" : " (expected " + entry.at("expected").get<std::string>() + ")");
  }
  os << "\n";
  return os.str();
}

int cmd_classify(const SpecArgs& args, const Output& out) {
  FamilyModels f = build_spec(spec_from_json(args.json()));
  Json j = family_json(f);
  bool ok = true;
  std::string text;
  for (const char* name : {"X", "Y", "Z"}) {
    ok = ok && j.at(name).at("matches_expected").get<bool>();
    text += model_text(name, j.at(name));
  }
  for (const auto& n : f.notes) text += "note: " + n + "\n";
  j["ok"] = ok;
  out.emit(j, text);
  return ok ? 0 : 1;
}

int cmd_family(const SpecArgs& args, const Output& out) {
  SpecKind spec = spec_from_json(args.json());
  FamilyModels f = build_spec(spec);
  auto model = [](const FibrationModel& m) { return Json(m); };
  Json j{{"spec", spec_to_json(spec)},
         {"X", model(f.x)},
         {"Y", model(f.y)},
         {"Z", model(f.z)},
         {"expected", {{"X", fiber_multiset_json(f.expected_x)}, {"Y", fiber_multiset_json(f.expected_y)}, {"Z", fiber_multiset_json(f.expected_z)}}},
         {"notes", f.notes}};
  if (f.z_prime) j["Zprime"] = model(*f.z_prime);
  std::ostringstream os;
  os << "X: " << f.x.str() << "\nY: " << f.y.str() << "\nZ: " << f.z.str() << "\n";
  if (f.z_prime) os << "Z': " << f.z_prime->str() << "\n";
  for (const auto& n : f.notes) os << "note: " << n << "\n";
  out.emit(j, os.str());
  return 0;
}

int cmd_isogeny(const std::string& curve, const Output& out) {
  std::optional<std::array<Rational, 3>> c;
  if (!curve.empty()) {
    auto v = rationals(curve, 3, "--curve");
    c = std::array<Rational, 3>{v[0], v[1], v[2]};
  }
  Json j = isogeny_report(c);
  std::ostringstream os;
  for (const auto& r : j.at("symbolic")) {
    const Json& res = r.at("result");
    os << (res.value("holds", true) ? "ok   " : "FAIL ") << r.at("name").get<std::string>() << "\n";
  }
  for (const auto& [k, v] : j.at("pullback_scalars").items()) os << "pullback " << k << " = " << v.get<std::string>() << "\n";
  if (j.contains("curve")) {
    const Json& cj = j.at("curve");
    for (const auto& r : cj.at("identities")) {
      os << (r.at("result").at("holds").get<bool>() ? "ok   " : "FAIL ") << r.at("name").get<std::string>() << " at curve\n";
    }
    os << "j(E) = " << cj.at("j_e").get<std::string>() << ", j(E^) = " << cj.at("j_e_hat").get<std::string>() << "\n";
  }
  bool ok = j.at("ok").get<bool>();
  os << (ok ? "all identities hold\n" : "some identities fail\n");
  out.emit(j, os.str());
  return ok ? 0 : 1;
}

ModuliNine moduli_arg(const std::string& s) {
  if (s.empty()) throw InputError("--moduli is required");
  if (s[0] == '{') return read_json_arg(s).get<ModuliNine>();
  return parse_moduli_nine(s);
}

int cmd_chl(const std::string& sub, const std::string& moduli, const std::string& choice, bool no_fix, const Output& out) {
  ModuliNine m = moduli_arg(moduli);
  if (sub == "dualize") {
    ModuliNine d = dual_nine(m);
    out.emit(Json{{"moduli", d}}, str(d) + "\n");
    return 0;
  }
  if (sub == "normalize") {
    Normalization n = normalize_nine(m, !no_fix);
    std::ostringstream os;
    os << str(n.moduli) << "\nscale lambda=" << n.scale.lambda << " mu=" << n.scale.mu << " nu=" << n.scale.nu << "\n";
    out.emit(Json(n), os.str());
    return 0;
  }
  if (sub == "equiv") {
    EquivResult r = equiv_fibration_check(m);
    std::string text = r.holds ? "swapped Z~ equals Z~ of the dual moduli\n" : "swap mismatch:\n";
    for (const auto& line : r.residual) text += "  " + line + "\n";
    out.emit(Json(r), text);
    return r.holds ? 0 : 1;
  }
  CHLReport r = duality_report(m, parse_chl_choice(choice));
  bool ok = r.e_hat_is_isogenous && r.j_jac_matches;
  std::ostringstream os;
  os << "choice " << to_string(r.choice) << (r.normalized ? ", normalized" : ", not normalized") << "\n"
     << "j(E) = " << r.j_e << "\n"
     << "E^ isogenous: " << (r.e_hat_is_isogenous ? "yes" : "no") << ", j(Jac C^) = j(E^): " << (r.j_jac_matches ? "yes" : "no") << "\n";
  if (r.j_formula) os << "closing-remark formula = " << *r.j_formula << (*r.j_formula_match ? " (matches)" : " (differs)") << "\n";
  os << "J fibers " << str(r.j_surface.report.summary()) << "\n";
  out.emit(Json(r), os.str());
  return ok ? 0 : 1;
}

int cmd_kummer(const std::string& sub, const std::string& lambda, const std::string& L, const std::string& mu, const Output& out) {
  auto mu_text = [](const MuTriple& m) { return m.m1.str() + ", " + m.m2.str() + ", " + m.m3.str() + "\n"; };
  if (sub == "mu") {
    if (lambda.empty() || L.empty()) throw InputError("kummer mu needs --lambda and --L");
    auto l = rationals(lambda, 3, "--lambda");
    MuTriple m = rosenhain_mu(RosenhainTriple::make(l[0], l[1], l[2], Rational::parse(L)));
    out.emit(Json{{"mu", m}}, mu_text(m));
    return 0;
  }
  if (mu.empty()) throw InputError("--mu is required");
  auto v = rationals(mu, 3, "--mu");
  MuTriple m{v[0], v[1], v[2]};
  if (sub == "dual") {
    MuTriple d = dual_mu(m);
    out.emit(Json{{"mu", d}}, mu_text(d));
    return 0;
  }
  KummerModels k = kummer_models(m);
  Json j = Json::object();
  std::string text;
  for (auto [name, model] : {std::pair<const char*, const FibrationModel*>{"X", &k.x}, {"Y", &k.y}, {"Z", &k.z}, {"Zprime", &k.z_prime}}) {
    FiberReport r = fiber_configuration(*model);
    j[name] = Json{{"model", *model}, {"fibers", r}};
    text += std::string(name) + ": " + str(r.summary()) + "\n";
  }
  out.emit(j, text);
  return 0;
}

int cmd_verify_all(const std::string& corpus, const std::string& only, const Output& out) {
  std::vector<Fixture> fixtures = load_corpus(corpus);
  if (!only.empty()) {
    std::erase_if(fixtures, [&](const Fixture& f) { return f.id != only; });
    if (fixtures.empty()) throw InputError("no fixture '" + only + "'");
  }
  VerifyReport rep = run_corpus(fixtures);
  std::ostringstream os;
  for (const auto& r : rep.results) {
    os << (r.passed ? "PASS " : "FAIL ") << r.id;
    for (const auto& m : r.mismatches) os << "\n     " << m;
    os << "\n";
  }
  os << rep.passed << " passed, " << rep.failed << " failed\n";
  out.emit(Json(rep), os.str());
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of two-isogenies of elliptic K3 fibrations"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Output out;
  bool json_flag = false;
  app.add_flag("--json", json_flag, "JSON output (default)");
  app.add_flag("--text", out.text, "Plain-text summary");
  app.add_option("-o,--output", out.path, "Write the output to a file");

  SpecArgs classify_args, family_args;
  auto* classify = app.add_subcommand("classify", "Fiber tables of X, Y and Z for a family");
  classify_args.add(classify);
  auto* family = app.add_subcommand("family", "Coefficients of the X, Y and Z models of a family");
  family_args.add(family);

  std::string curve;
  auto* iso = app.add_subcommand("isogeny-verify", "Check the 2-isogeny identities");
  iso->add_option("--curve", curve, "a,b,c of y^2 = x(x^2 + b x + a c)");

  std::string moduli, choice = "alpha";
  bool no_fix = false;
  auto* chl = app.add_subcommand("chl", "CHL moduli operations");
  chl->require_subcommand(1);
  std::string chl_sub;
  const std::pair<const char*, const char*> chl_cmds[] = {
      {"dualize", "Dual nine-tuple (transpose)"},
      {"normalize", "Scale to alpha2 = gamma0 = 1"},
      {"equiv", "Check the dual fibration against the swapped one"},
      {"report", "Dual curves and j-invariants for one choice"},
  };
  for (auto [name, help] : chl_cmds) {
    auto* s = chl->add_subcommand(name, help);
    s->add_option("--moduli", moduli, "alpha2 alpha1 alpha0; beta2 beta1 beta0; gamma2 gamma1 gamma0")->required();
    if (std::string(name) == "normalize") s->add_flag("--no-fix-alpha1", no_fix, "Leave the residual scaling unused");
    if (std::string(name) == "report") s->add_option("--choice", choice, "alpha or gamma");
    s->callback([&chl_sub, name] { chl_sub = name; });
  }

  std::string lambda, L, mu, kummer_sub;
  auto* kummer = app.add_subcommand("kummer", "Kummer moduli");
  kummer->require_subcommand(1);
  auto* kmu = kummer->add_subcommand("mu", "Rosenhain roots to mu");
  kmu->add_option("--lambda", lambda, "l1,l2,l3");
  kmu->add_option("--L", L, "L with L^2 = 4 l1 l2 l3");
  kmu->callback([&] { kummer_sub = "mu"; });
  const std::pair<const char*, const char*> kummer_cmds[] = {
      {"dual", "Dual moduli mu -> mu-check"},
      {"models", "Fiber tables of the Kummer models"},
  };
  for (auto [name, help] : kummer_cmds) {
    auto* s = kummer->add_subcommand(name, help);
    s->add_option("--mu", mu, "mu1,mu2,mu3");
    s->callback([&kummer_sub, name] { kummer_sub = name; });
  }

  std::string corpus = K3_DEFAULT_CORPUS, only;
  auto* verify = app.add_subcommand("verify-all", "Run every fixture of a corpus");
  verify->add_option("--corpus", corpus, "Corpus JSON file");
  verify->add_option("--fixture", only, "Run a single fixture by id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (json_flag && out.text) {
    std::cerr << "error: --json and --text are exclusive\n";
    return 2;
  }

  try {
    if (*classify) return cmd_classify(classify_args, out);
    if (*family) return cmd_family(family_args, out);
    if (*iso) return cmd_isogeny(curve, out);
    if (*chl) return cmd_chl(chl_sub, moduli, choice, no_fix, out);
    if (*kummer) return cmd_kummer(kummer_sub, lambda, L, mu, out);
    if (*verify) return cmd_verify_all(corpus, only, out);
  } catch (const WitnessError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
