// Acceptance run: one PASS/FAIL line per criterion. Most criteria are groups of bundled corpus
// fixtures; a few add inline fixtures or call the property suites directly.
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "k3/properties.hpp"
#include "k3/verify.hpp"

namespace {

using k3::Fixture;
using k3::Json;

struct Criterion {
  int number;
  std::string title;
  std::vector<std::string> ids;
  std::vector<Fixture> inline_fixtures;
};

Fixture make(const std::string& id, const std::string& check, const std::string& params, const std::string& expect) {
  return Fixture{id, check, Json::parse(params), Json::parse(expect)};
}

const char* kChl14 = R"({"tag":"CHL14","alpha":"t^2 + 1","beta":"t^2 + t + 3","gamma":"t^2 + 2"})";

std::vector<Criterion> criteria() {
  std::string chl14 = kChl14;
  return {
      {1,
       "symbolic isogeny suite",
       {"phi-phi-hat-duplication", "phi-hat-phi-duplication", "phi-hat-iota-e", "pullback-phi", "pullback-iota-e",
        "pullback-psi", "torsor-iso-symbolic", "torsor-equivariance"},
       {}},
      {2,
       "generic family tables and loci swap",
       {"fibers-generic-x", "fibers-generic-y", "fibers-generic-z", "loci-swap-generic", "delta-y-equals-z-generic"},
       {}},
      {3,
       "specialization fiber tables",
       {"fibers-four-i4-x", "fibers-four-i4-y", "fibers-four-i0star-x", "fibers-four-i0star-y", "fibers-kummer17-x",
        "fibers-kummer17-y", "fibers-six-lines-2357-x", "fibers-six-lines-2357-y", "fibers-chl14-x"},
       {make("chl14-y", "fiber_table", R"({"family":)" + chl14 + R"(,"model":"Y"})",
             R"({"fibers":"{2I0*, 4I2, 4I1}","euler_total":"24"})"),
        make("chl14-z", "fiber_table", R"({"family":)" + chl14 + R"(,"model":"Z"})",
             R"({"fibers":"{2I0*, 4I2, 4I1}","euler_total":"24"})")}},
      {4,
       "branch components of the double covers",
       {"branch-generic-phi", "branch-generic-psi", "branch-four-i4-phi", "branch-four-i4-psi",
        "branch-four-i0star-phi", "branch-four-i0star-psi", "branch-six-lines-phi", "branch-six-lines-psi",
        "branch-six-lines-psi-prime", "branch-chl-psi"},
       {}},
      {5, "rational point certificates", {"cert-four-i0star-theorem-witness", "cert-generic-unknown"}, {}},
      {6,
       "Rosenhain and dual moduli",
       {"rosenhain-2-3-6", "dual-mu-example", "dual-mu-involution", "jmap-kummer-y-dual"},
       {}},
      {7,
       "six-lines geometry",
       {"six-lines-points", "tangency-2-3-5-m15", "tangency-2357", "special2-a-equals-b"},
       {make("special2-y-table", "fiber_table",
             R"({"family":{"tag":"SixLinesParams","six_lines":{"a":"2","b":"2","c":"5","d":"7"}},"model":"Y"})",
             R"({"fibers":"{3I0*, 3I2}","euler_total":"24"})")}},
      {8,
       "CHL moduli",
       {"chl-dual-scale-symbolic", "chl-equiv-symbolic", "chl-j-surface", "height-six-halves", "height-orthogonal",
        "chl-report-sample"},
       {}},
  };
}

bool run_criterion(const Criterion& c, const std::map<std::string, Fixture>& corpus) {
  std::vector<Fixture> run = c.inline_fixtures;
  std::vector<std::string> problems;
  for (const auto& id : c.ids) {
    auto it = corpus.find(id);
    if (it == corpus.end()) {
      problems.push_back(id + ": not in corpus");
    } else {
      run.push_back(it->second);
    }
  }
  auto report = k3::run_corpus(run);
  for (const auto& r : report.results) {
    if (r.passed) continue;
    std::string why = r.error.empty() ? "" : " (" + r.error + ")";
    for (const auto& m : r.mismatches) why += " [" + m + "]";
    problems.push_back(r.id + why);
  }
  bool ok = problems.empty();
  std::printf("criterion %d: %s - %s (%d/%zu checks)\n", c.number, ok ? "PASS" : "FAIL", c.title.c_str(),
              report.passed, run.size());
  for (const auto& p : problems) std::printf("    %s\n", p.c_str());
  return ok;
}

bool run_properties() {
  std::vector<k3::PropertyResult> results{
      k3::prop_canonical_idempotence(10000, 91),
      k3::prop_squarefree_reconstruction(10000, 92),
      k3::prop_gcd_free_basis(10000, 93),
      k3::prop_valuation_additivity(10000, 94),
  };
  for (auto& r : k3::schwartz_zippel_suite(20, 95)) results.push_back(std::move(r));
  int good = 0;
  std::vector<std::string> problems;
  for (const auto& r : results) {
    if (r.ok()) {
      ++good;
    } else {
      problems.push_back(r.name + ": " + std::to_string(r.failures) + "/" + std::to_string(r.cases) + " " +
                         r.counterexample);
    }
  }
  bool ok = problems.empty();
  std::printf("criterion 9: %s - engine property suites (%d/%zu suites)\n", ok ? "PASS" : "FAIL", good,
              results.size());
  for (const auto& p : problems) std::printf("    %s\n", p.c_str());
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  std::string path = argc > 1 ? argv[1] : K3_CORPUS;
  std::map<std::string, Fixture> corpus;
  try {
    for (auto& f : k3::load_corpus(path)) corpus.emplace(f.id, std::move(f));
  } catch (const std::exception& e) {
    std::fprintf(stderr, "cannot load corpus %s: %s\n", path.c_str(), e.what());
    return 2;
  }
  int failed = 0;
  for (const auto& c : criteria()) failed += run_criterion(c, corpus) ? 0 : 1;
  failed += run_properties() ? 0 : 1;
  std::printf("%d of 9 criteria pass\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
