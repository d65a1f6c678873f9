// psverify: run the exact verification suites and the irreducibility
// decision procedure from the command line.
//
// Exit codes: 0 all checks pass, 1 at least one check failed, 2 bad
// configuration or fixture (parse error, unknown suite, budget exceeded).

#include "CLI11.hpp"
#include "psv/suites.hpp"

#include <fstream>
#include <iostream>

namespace {

int emit(const psv::Report& rep, const std::string& out_path) {
  std::string json = rep.to_json();
  if (out_path.empty()) {
    std::cout << json;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "psverify: cannot write " << out_path << "\n";
      return 2;
    }
    out << json;
  }
  long failed = 0;
  for (const psv::CheckRecord& r : rep.records)
    if (!r.pass) ++failed;
  std::cerr << "psverify: " << rep.suite << ": " << rep.records.size()
            << " checks, " << failed << " failed\n";
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification of principal-series identities"};
  app.require_subcommand(1);

  std::string fixture_path;
  CLI::App* decide = app.add_subcommand(
      "decide", "irreducibility decisions for the tuples of a fixture file");
  decide->add_option("fixture", fixture_path, "fixture file")->required();

  std::string suite, out_path;
  psv::SessionConfig cfg;
  CLI::App* verify =
      app.add_subcommand("verify", "run a verification suite exactly");
  verify->add_option("suite", suite,
                     "explicit | density | lemmas | eigenspace | criterion")
      ->required();
  verify->add_option("--p", cfg.p, "residue characteristic")
      ->capture_default_str();
  verify->add_option("--f", cfg.f, "residue degree")->capture_default_str();
  verify->add_option("--level", cfg.M, "model precision M")
      ->capture_default_str();
  verify->add_option("--seed", cfg.seed, "randomized-check seed")
      ->capture_default_str();
  verify->add_option("--budget", cfg.budget,
                     "maximal admissible flag-model size")
      ->capture_default_str();
  verify->add_option("--out", out_path, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (decide->parsed())
      return emit(psv::run_decide(psv::load_fixture(fixture_path)), "");
    return emit(psv::run_suite(suite, cfg), out_path);
  } catch (const std::exception& e) {
    std::cerr << "psverify: " << e.what() << "\n";
    return 2;
  }
}
