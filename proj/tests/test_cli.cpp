#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "k3/poly_parse.hpp"
#include "k3/verify.hpp"

using namespace k3;

namespace {

Rational q(long n, long d = 1) { return Rational(n) / Rational(d); }
const UniPoly t = UniPoly::variable("t");

struct ToolRun {
  int code;
  std::string out;
};

ToolRun run(const std::string& args) {
  std::string cmd = std::string(K3TOOL_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return std::string(K3_TEST_DATA) + "/" + name; }

// The value survives a JSON round trip and re-serializes to the same document.
template <class T>
void roundtrip(const T& value) {
  Json j = value;
  T back = j.get<T>();
  EXPECT_EQ(Json(back).dump(), j.dump());
  EXPECT_EQ(Json::parse(j.dump()).get<T>(), value);
}

template <class T>
void roundtrip_doc(const T& value) {
  Json j = value;
  EXPECT_EQ(Json(Json::parse(j.dump()).get<T>()).dump(), j.dump());
}

}  // namespace

TEST(Parse, Examples) {
  EXPECT_EQ(parse_poly("t^4 - 1").coeffs(), (std::vector<Rational>{q(-1), q(0), q(0), q(0), q(1)}));
  EXPECT_EQ(parse_poly("(t-1)*(t+1)"), t * t - UniPoly(1));
  EXPECT_EQ(parse_poly("1/2*t^2 - -3"), t * t * UniPoly(q(1, 2)) + UniPoly(3));
  EXPECT_EQ(parse_poly("2*(t+1)^2"), UniPoly(2) * (t + UniPoly(1)).pow(2));
  EXPECT_EQ(parse_poly("-t^4"), -t.pow(4));
  EXPECT_EQ(parse_poly("(-t)^3"), -t.pow(3));
  EXPECT_EQ(parse_poly("-2*t^2 + -t"), UniPoly(-2) * t * t - t);
  EXPECT_EQ(parse_poly("u^3", "u"), UniPoly::variable("u").pow(3));
  EXPECT_EQ(parse_poly("  7  "), UniPoly(7));
}

TEST(Parse, Errors) {
  auto position = [](const std::string& text) -> long {
    try {
      parse_poly(text);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position);
    }
    return -1;
  };
  auto message = [](const std::string& text) -> std::string {
    try {
      parse_poly(text);
    } catch (const ParseError& e) {
      return e.what();
    }
    return "";
  };
  EXPECT_NE(message("0.5*t").find("floating-point"), std::string::npos);
  EXPECT_EQ(position("0.5*t"), 1);
  EXPECT_NE(message("1e3").find("floating-point"), std::string::npos);
  EXPECT_NE(message("x + 1").find("unknown variable 'x'"), std::string::npos);
  EXPECT_EQ(position("x + 1"), 0);
  EXPECT_NE(message("t/2").find("division"), std::string::npos);
  EXPECT_NE(message("(t + 1").find("at position 6"), std::string::npos);
  EXPECT_GE(position("t + 1)"), 5);
  EXPECT_NE(message("").find("empty"), std::string::npos);
  EXPECT_NE(message("1/0").find("zero"), std::string::npos);
  EXPECT_GE(position("t^"), 2);
  EXPECT_GE(position("t + * 2"), 4);
  EXPECT_EQ(position("2(t+1)"), 1);
}

TEST(Parse, PrintParseStable) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> deg(0, 7), num(-30, 30), den(1, 12);
  for (int i = 0; i < 2000; ++i) {
    std::vector<Rational> c(static_cast<size_t>(deg(rng)) + 1);
    for (auto& x : c) x = q(num(rng), den(rng));
    UniPoly p(c, "t");
    UniPoly once = parse_poly(p.str());
    EXPECT_EQ(once, p) << p.str();
    EXPECT_EQ(parse_poly(once.str()).str(), once.str());
  }
}

TEST(Parse, Multivariate) {
  std::vector<std::string> vars{"a", "b", "c", "d"};
  SymPoly a = SymPoly::var("a"), d = SymPoly::var("d");
  EXPECT_EQ(parse_sympoly("a*d - b*c", vars), a * d - SymPoly::var("b") * SymPoly::var("c"));
  EXPECT_EQ(parse_sympoly("(a - d)^2", vars), (a - d) * (a - d));
  EXPECT_THROW(parse_sympoly("a + e", vars), ParseError);
}

TEST(JsonIo, RoundTrips) {
  roundtrip(q(-7, 3));
  EXPECT_EQ(Json(q(5)).get<std::string>(), "5");
  EXPECT_EQ(Json::parse("3").get<Rational>(), q(3));
  EXPECT_THROW(Json::parse("0.5").get<Rational>(), std::invalid_argument);
  roundtrip(parse_poly("3/4*t^3 - t + 2"));
  roundtrip(homog(parse_poly("t^23 + 1"), 24));
  roundtrip(Place::at_infinity());
  roundtrip(Place::finite(parse_poly("t^2 + 1")));
  EXPECT_EQ(Json("t^2 + 1").get<UniPoly>(), parse_poly("t^2 + 1"));
  EXPECT_EQ(Json::parse(R"({"expr": "t", "homdeg": "2"})").get<HomogPoly>().declared_degree(), 2);

  FamilyModels g = build_spec(spec_from_json(Json::parse(R"({"tag":"Generic","a":"t^4 - 1","b":"t^4","c":"t^4 - 16"})")));
  roundtrip(g.x);
  roundtrip(g.z);
  roundtrip_doc(fiber_configuration(g.x));
  roundtrip_doc(branch_even_eight_report(BranchCover::Psi, g.x));
  roundtrip_doc(rational_point_cert(parse_poly("t^2"), parse_poly("t^4 + 1"), parse_poly("t^4 - 2")));
  roundtrip_doc(TwoTorsionCurve<Rational>::make(q(1), q(0), q(4)));
  roundtrip_doc(torsors(TwoTorsionCurve<Rational>::make(q(1), q(2), q(4))).second);

  ModuliNine m = parse_moduli_nine("1 1 -1; 2 1 3; 5 -1 1");
  roundtrip(m);
  roundtrip_doc(normalize_nine(parse_moduli_nine("4 3 2; 1 2 3; 5 7 1")));
  roundtrip(MuTriple{q(5, 3), q(5, 4), q(1)});
  roundtrip_doc(SixLinesConfig{q(2), q(3), q(5), q(11)});
  roundtrip_doc(rational_surface_J(m));
  roundtrip_doc(duality_report(m, ChlChoice::Alpha));
  roundtrip_doc(equiv_fibration_check(m));

  for (const char* spec : {R"({"tag":"FourI0star","a":"t^4 - 1","beta":"17/8"})",
                           R"({"tag":"SixLinesParams","six_lines":{"a":"2","b":"3","c":"5","d":"11"}})",
                           R"({"tag":"CHL14","alpha":"t^2 + 1","beta":"t^2 + t + 3","gamma":"t^2 + 2"})"}) {
    Json j = spec_to_json(spec_from_json(Json::parse(spec)));
    EXPECT_EQ(spec_to_json(spec_from_json(j)).dump(), j.dump());
  }
}

TEST(JsonIo, RejectsBadInput) {
  EXPECT_THROW(Json::parse(R"({"kind": "nope"})").get<FibrationModel>(), std::invalid_argument);
  EXPECT_THROW(Json::parse(R"({"alpha": ["1", "2"], "beta": ["1","1","1"], "gamma": ["1","1","1"]})").get<ModuliNine>(),
               std::invalid_argument);
  EXPECT_THROW(spec_from_json(Json::parse(R"({"tag": "Nope"})")), std::invalid_argument);
}

TEST(Corpus, ParseAndCompare) {
  auto fixtures = parse_corpus(Json::parse(R"js({"fixtures": [
    {"id": "a", "check": "j_invariant", "params": {"curve": ["1","0","1"]}, "expect": {"j": "1728"}},
    {"id": "b", "check": "j_invariant", "params": {"curve": ["1","0","1"]}, "expect": {"j": "0"}},
    {"id": "c", "check": "parse_poly", "params": {"text": "0.5"}, "expect": {"error": "floating-point"}},
    {"id": "d", "check": "parse_poly", "params": {"text": "t"}, "expect": {"error": "anything"}},
    {"id": "e", "check": "fiber_table",
     "params": {"family": {"tag":"FourI4","a":"t*(t-1)*(t-2)*(t-3)","b":"t^4 + 1"}, "model": "X"},
     "expect": {"fibers": "{8I1, 4I4}", "euler_total": null}}
  ]})js"));
  VerifyReport r = run_corpus(fixtures);
  ASSERT_EQ(r.results.size(), 5u);
  EXPECT_TRUE(r.results[0].passed);
  EXPECT_FALSE(r.results[1].passed);
  EXPECT_EQ(r.results[1].mismatches.at(0), R"(j: expected "0", got "1728")");
  EXPECT_TRUE(r.results[2].passed);
  EXPECT_FALSE(r.results[3].passed);
  EXPECT_TRUE(r.results[4].passed) << Json(r.results[4]).dump();
  EXPECT_EQ(r.passed, 3);
  EXPECT_FALSE(r.ok());

  EXPECT_THROW(parse_corpus(Json::parse(R"({"fixtures": [{"id": "a", "check": "nope", "expect": {}}]})")),
               std::invalid_argument);
  EXPECT_THROW(parse_corpus(Json::parse(R"({"fixtures": [
    {"id": "a", "check": "j_invariant", "expect": {}}, {"id": "a", "check": "j_invariant", "expect": {}}]})")),
               std::invalid_argument);
  EXPECT_THROW(parse_corpus(Json::parse("[]")), std::invalid_argument);
}

TEST(Corpus, BundledCorpusLoads) {
  auto fixtures = load_corpus(data("corpus.json"));
  EXPECT_GE(fixtures.size(), 100u);
  auto names = check_names();
  for (const auto& f : fixtures) EXPECT_NE(std::find(names.begin(), names.end(), f.check), names.end());
  EXPECT_THROW(load_corpus(data("missing.json")), std::invalid_argument);
}

TEST(Commands, Classify) {
  ToolRun r = run("--text classify --tag Generic --a 't^4-1' --b 't^4' --c 't^4-16'");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("X: {8I2, 8I1}, Euler 24"), std::string::npos) << r.out;

  ToolRun j = run("classify --spec '{\"tag\":\"Generic\",\"a\":\"t^4-1\",\"b\":\"t^4\",\"c\":\"t^4-16\"}'");
  EXPECT_EQ(j.code, 0);
  Json doc = Json::parse(j.out);
  EXPECT_EQ(doc.at("X").at("fibers").at("summary"), "{8I2, 8I1}");
  EXPECT_TRUE(doc.at("ok").get<bool>());

  // Spec example that does not reproduce: the verification is false.
  EXPECT_EQ(run("classify --tag SixLinesParams --six-lines 2,3,5,7").code, 1);
  EXPECT_EQ(run("classify --tag SixLinesParams --six-lines 2,3,5,11").code, 0);
  EXPECT_EQ(run("classify --tag Generic --a 't^4-1' --b 't^4' --c '0.5'").code, 2);
  EXPECT_EQ(run("classify --tag Generic --a 't^4-1' --b 't^4'").code, 2);
  EXPECT_EQ(run("classify --tag FourI4 --a 't^4-1' --b 't^4-1'").code, 2);
  EXPECT_EQ(run("classify").code, 2);
}

TEST(Commands, OutputFile) {
  std::string path = std::string(K3_TEST_TMP) + "/classify_out.json";
  std::remove(path.c_str());
  ToolRun r = run("classify --tag FourI0star --a 't^4-1' --beta 17/8 -o " + path);
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  ASSERT_TRUE(in.good());
  Json doc = Json::parse(in);
  EXPECT_EQ(doc.at("Y").at("fibers").at("summary"), "{4I0*}");
}

TEST(Commands, Chl) {
  EXPECT_EQ(run("chl equiv --moduli '1,0,1; 1/2,1/4,3/2; 1,0,2'").code, 0);
  ToolRun n = run("chl normalize --moduli '0 3 2; 1 2 3; 5 7 1'");
  EXPECT_EQ(n.code, 2);
  EXPECT_NE(n.out.find("normalization undefined"), std::string::npos);
  EXPECT_EQ(run("chl normalize --moduli '1 0 1; 1/2 1/4 3/2; 1 0 2'").code, 2);

  ToolRun d = run("chl dualize --moduli '1 2 3; 4 5 6; 7 8 9'");
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(Json::parse(d.out).at("moduli").get<ModuliNine>(), parse_moduli_nine("1 4 7; 2 5 8; 3 6 9"));

  ToolRun rep = run("chl report --moduli '1 1 -1; 2 1 3; 5 -1 1'");
  EXPECT_EQ(rep.code, 0);
  Json doc = Json::parse(rep.out);
  EXPECT_EQ(doc.at("j_e"), "10976");
  EXPECT_EQ(doc.at("j_formula"), "4");
  EXPECT_FALSE(doc.at("j_formula_match").get<bool>());
  EXPECT_EQ(run("chl report --choice gamma --moduli '1 1 -1; 2 1 3; 5 -1 1'").code, 0);
  EXPECT_EQ(run("chl report --choice beta --moduli '1 1 -1; 2 1 3; 5 -1 1'").code, 2);
  EXPECT_EQ(run("chl report --moduli '1 2 3'").code, 2);
  EXPECT_EQ(run("chl frobnicate --moduli '1 2 3'").code, 2);
}

TEST(Commands, IsogenyAndKummer) {
  ToolRun iso = run("isogeny-verify --curve 1,0,4");
  EXPECT_EQ(iso.code, 0);
  Json doc = Json::parse(iso.out);
  EXPECT_TRUE(doc.at("ok").get<bool>());
  EXPECT_EQ(doc.at("curve").at("j_e"), "1728");
  EXPECT_EQ(run("isogeny-verify --curve 1,2,1").code, 2);  // b^2 = 4ac
  EXPECT_EQ(run("isogeny-verify --curve 1,2").code, 2);

  ToolRun mu = run("kummer mu --lambda 2,3,6 --L 12");
  EXPECT_EQ(mu.code, 0);
  EXPECT_EQ(Json::parse(mu.out).at("mu").get<MuTriple>(), (MuTriple{q(5, 3), q(5, 4), q(1)}));
  EXPECT_EQ(run("kummer mu --lambda 2,3,6 --L 11").code, 2);
  ToolRun dual = run("--text kummer dual --mu 5/3,5/4,1");
  EXPECT_EQ(dual.code, 0);
  EXPECT_EQ(dual.out, "13/3, 7/2, 1\n");
  EXPECT_EQ(run("kummer models --mu 3,5/4,2").code, 0);
}

TEST(Commands, VerifyAll) {
  ToolRun ok = run("--text verify-all --corpus " + data("mini_corpus.json"));
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_NE(ok.out.find("0 failed"), std::string::npos);

  std::string bad = std::string(K3_TEST_TMP) + "/corrupt_corpus.json";
  Json corpus = Json::parse(std::ifstream(data("mini_corpus.json")));
  corpus["fixtures"][0]["expect"]["coeffs"][0] = "1";
  std::ofstream(bad) << corpus.dump();
  ToolRun fail = run("--text verify-all --corpus " + bad);
  EXPECT_EQ(fail.code, 1);
  EXPECT_NE(fail.out.find("FAIL parse-quartic"), std::string::npos) << fail.out;

  EXPECT_EQ(run("verify-all --corpus " + data("missing.json")).code, 2);
  EXPECT_EQ(run("verify-all --corpus " + data("mini_corpus.json") + " --fixture nope").code, 2);
  EXPECT_EQ(run("verify-all --corpus " + data("mini_corpus.json") + " --fixture j-1-0-1").code, 0);
}

TEST(Commands, Deterministic) {
  for (const char* args : {"verify-all --corpus", "classify --tag Kummer17 --rho 't^3-t' --alpha 't-2' --beta 't-3'",
                           "chl report --moduli '1 1 -1; 2 1 3; 5 -1 1'", "isogeny-verify --curve 2,3,5"}) {
    std::string a = args;
    if (a == "verify-all --corpus") a += " " + data("mini_corpus.json");
    ToolRun first = run(a), second = run(a);
    EXPECT_EQ(first.out, second.out) << a;
    EXPECT_FALSE(first.out.empty());
  }
}
