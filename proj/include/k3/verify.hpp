#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "k3/json_io.hpp"

namespace k3 {

/// One worked example: a named check, its inputs and the expected observations.
struct Fixture {
  std::string id;
  std::string check;
  Json params;
  Json expect;
};

struct FixtureResult {
  std::string id;
  std::string check;
  bool passed = false;
  Json observed;  // what the check computed, in the same shape as the expectation
  Json expect;
  std::string error;  // exception text when the check could not run
  std::vector<std::string> mismatches;
};

struct VerifyReport {
  std::vector<FixtureResult> results;
  int passed = 0;
  int failed = 0;
  bool ok() const { return failed == 0; }
};

/// Reads {"fixtures": [...]}. Throws std::invalid_argument on malformed input, including
/// duplicate ids and unknown check names.
std::vector<Fixture> parse_corpus(const Json& j);
std::vector<Fixture> load_corpus(const std::string& path);

/// The registered check names, sorted.
std::vector<std::string> check_names();

/// Runs one fixture. Expected keys are compared against the observation; a key "error" in the
/// expectation passes when the check throws with a message containing that text.
FixtureResult run_fixture(const Fixture& f);
VerifyReport run_corpus(const std::vector<Fixture>& fixtures);

void to_json(Json& j, const FixtureResult& r);
void to_json(Json& j, const VerifyReport& r);

/// The three surfaces and their relatives named by a model selector: X, Y, Z, Zprime, Xprime,
/// Xtilde, Ytilde, Zswap (families); J (CHL moduli). source is {"family": spec},
/// {"kummer": mu}, {"kummer_affine": mu} or {"chl": moduli}.
/// Symbolic 2-isogeny identities, and with a curve their specializations plus numeric torsor checks.
Json isogeny_report(const std::optional<std::array<Rational, 3>>& curve);

FibrationModel select_model(const Json& source, const std::string& model);

}  // namespace k3
