#pragma once
// Verification suites: each bundles a set of exact checks over a session
// (p, f, M) into a deterministic machine-readable report.

#include "psv/density.hpp"
#include "psv/fixture.hpp"

namespace psv {

struct SuiteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SessionConfig {
  long p = 2;
  int f = 1;
  int M = 1;
  unsigned seed = 1;
  long budget = 2000000;  // maximal admissible flag-model size
};

struct CheckRecord {
  std::string id;      // stable check identifier, e.g. "explicit.theorem"
  std::string anchor;  // human-readable statement of what is verified
  bool pass = true;
  std::string detail;  // first counterexample / failure description
  // measured constants, insertion-ordered for deterministic output
  std::vector<std::pair<std::string, std::string>> measured;
};

struct Report {
  std::string suite;
  SessionConfig config;
  std::vector<CheckRecord> records;

  bool all_pass() const;
  std::string to_json() const;  // deterministic given (config, seed)
};

// number of flag cosets at level M: (q^2+q+1)(q+1) q^{3(M-1)}
long flag_cost(long p, int f, int M);

// built-in generic character triples for a session; at least three, among
// them (when the level supports the conductor) one with ramified eta2 and one
// with ramified eta1 eta2 of the minimal conductor (1, or 2 at q = 2)
std::vector<std::pair<std::string, std::array<SmoothChar, 3>>>
builtin_char_fixtures(const PadicContext* ctx);

Report run_explicit_suite(const SessionConfig& cfg);
Report run_density_suite(const SessionConfig& cfg);
Report run_lemmas_suite(const SessionConfig& cfg);
Report run_eigenspace_suite(const SessionConfig& cfg);
Report run_criterion_suite(const SessionConfig& cfg);

// decisions for the tuples of a fixture file; records never fail, they carry
// the verdicts in the measured fields
Report run_decide(const FixtureFile& fx);

Report run_suite(const std::string& name, const SessionConfig& cfg);

}  // namespace psv
