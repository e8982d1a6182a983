#include "doctest.h"
#include "origami/error.hpp"
#include "origami/fibre_product.hpp"
#include "origami/zoo.hpp"

using namespace origami;

namespace {

RamificationProfile prof(std::vector<std::size_t> p) { return RamificationProfile(std::move(p)); }

std::vector<std::size_t> ones(std::size_t k) { return std::vector<std::size_t>(k, 1); }

}  // namespace

TEST_CASE("predicted profiles") {
  for (std::size_t n : {5, 7, 9}) {
    CHECK(predicted_profile(prof({n}), prof({2, 2, 1, 1})) == prof({2 * n, 2 * n, n, n}));
    CHECK(predicted_profile(prof({1, n - 1}), prof(ones(6))) ==
          prof({1, 1, 1, 1, 1, 1, n - 1, n - 1, n - 1, n - 1, n - 1, n - 1}));
  }
  // Even n: lcm(n, 2) = n with gcd 2.
  CHECK(predicted_profile(prof({6}), prof({2, 2, 1, 1})) == prof({6, 6, 6, 6, 6, 6}));
  auto p = prof({3, 2, 1});
  auto unram = predicted_profile(prof(ones(4)), p);
  CHECK(unram == prof({3, 3, 3, 3, 2, 2, 2, 2, 1, 1, 1, 1}));
  CHECK(predicted_profile(prof({4, 2}), prof({6, 3})) == predicted_profile(prof({6, 3}), prof({4, 2})));
  CHECK(predicted_profile(prof({4, 2}), prof({6, 3})).total() == 6 * 9);
}

TEST_CASE("product with the identity cover reproduces the other factor") {
  auto y = build_y(3);
  auto const& pi1 = y.cover("pi1");
  auto fp = fake_fibre_product(pi1, identity_cover(torus(6)));
  CHECK(fp.origami.size() == y.origami.size());
  CHECK(is_equivalent(fp.origami, y.origami));
  CHECK(fp.to_base.degree == 3);
}

TEST_CASE("product of a cover with itself is not transitive") {
  auto v = VoltageData::trivial(torus(1), 2);
  v.w_a[0] = parse_permutation("(1,2)", 2);
  auto c = voltage_cover(v).cover;
  try {
    fake_fibre_product(c, c);
    FAIL("expected NotTransitive");
  } catch (NotTransitive const& e) {
    CHECK(e.orbits.size() == 2);
  }
  CHECK_THROWS_AS(fake_fibre_product(c, identity_cover(torus(2))), Error);
}

TEST_CASE("fibre product diagram commutes and degrees multiply") {
  auto y = build_y(5);
  auto m = build_m4_tilde_grid6();
  auto fp = fake_fibre_product(y.cover("pi1"), m.cover("pi2tilde"));
  CHECK(fp.origami.size() == 36 * 5 * 6);
  CHECK(fp.to_base.degree == 30);
  auto via1 = compose_covers(fp.to_first, y.cover("pi1"));
  auto via2 = compose_covers(fp.to_second, m.cover("pi2tilde"));
  CHECK(via1.square_map == fp.to_base.square_map);
  CHECK(via2.square_map == fp.to_base.square_map);
  CHECK(fp.to_first.degree == 6);
  CHECK(fp.to_second.degree == 5);
}

TEST_CASE("direct profiles agree with the gcd/lcm rule at every grid point") {
  auto m = build_m4_tilde_grid6();
  auto p2 = ramification_profile(m.cover("pi2tilde"));
  for (std::size_t n : {3, 5, 6}) {
    auto y = build_y(n);
    auto p1 = ramification_profile(y.cover("pi1"));
    auto fp = fake_fibre_product(y.cover("pi1"), m.cover("pi2tilde"));
    auto pq = ramification_profile(fp.to_base);
    for (std::size_t v = 0; v < 36; ++v) {
      CHECK(pq.at_vertex(v) == predicted_profile(p1.at_vertex(v), p2.at_vertex(v)));
    }
  }
}
