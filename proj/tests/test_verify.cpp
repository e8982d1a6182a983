#include <algorithm>
#include <set>

#include "doctest.h"
#include "origami/error.hpp"
#include "origami/homology.hpp"
#include "origami/verify.hpp"

using namespace origami;

namespace {

VerificationReport const& get(std::vector<VerificationReport> const& rs, std::string const& id) {
  auto it = std::find_if(rs.begin(), rs.end(), [&](auto const& r) { return r.claim == id; });
  REQUIRE(it != rs.end());
  return *it;
}

bool sorted_unique(std::vector<VerificationReport> const& rs) {
  std::set<std::string> ids;
  for (auto const& r : rs) ids.insert(r.claim);
  return ids.size() == rs.size() &&
         std::is_sorted(rs.begin(), rs.end(), [](auto const& x, auto const& y) { return x.claim < y.claim; });
}

}  // namespace

TEST_CASE("X suite") {
  auto rs = verify_X_suite();
  CHECK(sorted_unique(rs));
  for (auto const& r : rs) {
    CAPTURE(r.claim);
    CAPTURE(r.computed);
    CHECK(r.pass);
  }
  CHECK(get(rs, "lemma-X-i").computed == "15");
  CHECK(get(rs, "lemma-X-iii-Q").computed == "(2^5,1^22)");
  CHECK(get(rs, "lemma-X-iii-A").computed == "(6,4^3,2^7)");
  CHECK(rs.size() == 15);
}

TEST_CASE("orni suite") {
  for (std::size_t n : {5, 7}) {
    auto rs = verify_orni_suite(n);
    CHECK(sorted_unique(rs));
    for (auto const& r : rs) {
      CAPTURE(r.claim);
      CAPTURE(r.computed);
      CHECK(r.pass);
    }
    auto const& t = get(rs, "thm-orni-n" + std::to_string(n));
    if (n == 5) CHECK(t.computed == "H(9,9,4,4,3^6,2^30,1^6), genus 56");
    if (n == 7) CHECK(t.computed == "H(13,13,6,6,5^6,2^42,1^6), genus 80");
    CHECK(get(rs, "ramdata-iii-A3").computed == "(" + std::to_string(n) + "^2)");
  }
  CHECK_THROWS_AS(verify_orni_suite(4), Error);
  CHECK_THROWS_AS(verify_orni_suite(3), Error);
}

TEST_CASE("homology suite, shallow") {
  auto rs = verify_homology_suite();
  CHECK(sorted_unique(rs));
  for (auto const& id : {"homology-ranks", "homology-form", "homology-chain-maps",
                         "homology-symplectic", "homology-torus-T", "homology-split-ew", "prop-p1"}) {
    CAPTURE(id);
    CHECK(get(rs, id).pass);
  }
  // The zero-fixing hypothesis is needed: the level-4 states moving zeros do
  // not act by +-I.
  CHECK(get(rs, "prop-p1").computed.find("0 of 6 level-4 states moving zeros") != std::string::npos);
  // The iff over M4 carries a counterexample in the report.
  auto const& iff = get(rs, "orni-iff");
  CHECK(iff.computed.find("432 states") != std::string::npos);
  CHECK(iff.computed.find("0 congruent fixing states act nontrivially") != std::string::npos);
  CHECK(rs.size() == 8);
}

TEST_CASE("isotropic witness") {
  IsotropicWitnessOptions o;
  o.orbit_cap = 2000;
  o.action_checks = 12;
  auto w = isotropic_witness_X(o);
  CHECK(w.lifted_rank == 4);
  CHECK(w.nondegenerate);
  CHECK(w.congruence.proves_gamma());
  CHECK(w.descent.holds());
  CHECK(w.zeros_distinguished);
  CHECK(w.base_closure);
  CHECK(w.loops_congruent);
  CHECK_FALSE(w.minus_identity);
  CHECK(w.certified());
  CHECK(w.self_pairing == 0);
  CHECK(w.vector.size() == 30);
  CHECK(std::any_of(w.vector.begin(), w.vector.end(), [](auto v) { return v != 0; }));
  CHECK(w.checks.size() >= 7);
  for (auto const& c : w.checks) {
    CAPTURE(c.label);
    CHECK(c.sign != 0);
  }
  CHECK(w.holds());
  CHECK_FALSE(w.failure);
  CHECK(w.to_json().find("\"holds\":true") != std::string::npos);
}

TEST_CASE("report output") {
  auto rs = verify_X_suite();
  CHECK(all_pass(rs));
  CHECK(reports_to_json("x512", rs, false) == reports_to_json("x512", verify_X_suite(), false));
  auto js = reports_to_json("x512", rs);
  CHECK(js.find("\"elapsed_ms\"") != std::string::npos);
  CHECK(reports_to_json("x512", rs, false).find("elapsed_ms") == std::string::npos);
  auto text = reports_to_text(rs, false);
  CHECK(text.find("PASS prop-p2-C") != std::string::npos);
  CHECK(text.find("15 of 15 claims pass") != std::string::npos);
  std::vector<VerificationReport> bad{{"z", false, "d", "1", "2", "o", 0}};
  CHECK_FALSE(all_pass(bad));
  CHECK(reports_to_text(bad, false).find("FAIL z") != std::string::npos);
}
