#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace origami {

struct VerificationReport {
  std::string claim;        // e.g. "lemma-X-iii-Q"
  bool pass = false;
  std::string description;
  std::string expected;
  std::string computed;
  std::string oracle;       // how the computed value was obtained
  double elapsed_ms = 0;
};

struct SuiteOptions {
  bool deep = false;
  std::size_t orbit_cap = 20000;  // forms explored when sampling Veech elements
  std::size_t action_checks = 48;
};

// Suites never throw on a failing claim; an exception inside a claim becomes
// a failed report. Reports come back sorted by claim id.
std::vector<VerificationReport> verify_X_suite();
// n odd and n >= 5; throws Error otherwise. Deep adds the Gamma(6) claim for
// the Veech group of CovM4(n).
std::vector<VerificationReport> verify_orni_suite(std::size_t n, SuiteOptions const& options = {});
std::vector<VerificationReport> verify_homology_suite(SuiteOptions const& options = {});

bool all_pass(std::vector<VerificationReport> const& reports);
// Without timing the output is byte-for-byte reproducible.
std::string reports_to_json(std::string const& suite, std::vector<VerificationReport> const& reports,
                            bool timing = true);
std::string reports_to_text(std::vector<VerificationReport> const& reports, bool timing = true);

}  // namespace origami
