#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "origami/error.hpp"
#include "origami/perm.hpp"

using namespace origami;

namespace {

Permutation random_perm(std::size_t n, std::mt19937& rng) {
  std::vector<Point> m(n);
  std::iota(m.begin(), m.end(), Point{0});
  std::shuffle(m.begin(), m.end(), rng);
  return Permutation::from_images(std::move(m));
}

}  // namespace

TEST_CASE("parse cycle notation") {
  auto p = parse_permutation("(1,6,3,8)(2,5,4,7)", 8);
  CHECK(p(0) == 5);
  CHECK(p(5) == 2);
  CHECK(p(7) == 0);
  CHECK(p(1) == 4);
  CHECK(p.str() == "(1,6,3,8)(2,5,4,7)");

  CHECK(parse_permutation("", 5) == Permutation::identity(5));
  CHECK(parse_permutation("()", 5) == Permutation::identity(5));

  auto pi4 = parse_permutation("(1,3,2)", 4);
  CHECK(pi4(3) == 3);
  CHECK(pi4(0) == 2);
  CHECK(pi4.cycle_type() == CycleType({3, 1}));

  CHECK(parse_permutation(" ( 1 2  3 ) (4,5)", 5) == parse_permutation("(1,2,3)(4,5)", 5));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_permutation("(1,2)(2,3)", 4), ParseError);
  CHECK_THROWS_AS(parse_permutation("(1,5)", 4), ParseError);
  CHECK_THROWS_AS(parse_permutation("(0,1)", 4), ParseError);
  CHECK_THROWS_AS(parse_permutation("(1,2", 4), ParseError);
  CHECK_THROWS_AS(parse_permutation("1,2)", 4), ParseError);
  CHECK_THROWS_AS(parse_permutation("(1,,2)", 4), ParseError);
  CHECK_THROWS_AS(parse_permutation("(1,2,)", 4), ParseError);
  CHECK_THROWS_AS(parse_permutation("(a)", 4), ParseError);
}

TEST_CASE("compose applies left factor first") {
  auto p = parse_permutation("(1,2)", 3);
  auto q = parse_permutation("(2,3)", 3);
  // 1 -p-> 2 -q-> 3
  CHECK((p * q)(0) == 2);
  CHECK(compose(Permutation::identity(3), p) == p);
  CHECK_THROWS_AS(compose(p, Permutation::identity(4)), DegreeMismatch);
}

TEST_CASE("compose matches pointwise oracle") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    auto p = random_perm(12, rng);
    auto q = random_perm(12, rng);
    auto pq = compose(p, q);
    for (Point x = 0; x < 12; ++x) {
      Point via = p.images()[x];
      via = q.images()[via];
      CHECK(pq(x) == via);
    }
  }
}

TEST_CASE("cycle types") {
  CHECK(Permutation::identity(8).cycle_type() == CycleType(std::vector<std::size_t>(8, 1)));
  CHECK(parse_permutation("(1,3)(2,4)", 4).cycle_type() == CycleType({2, 2}));
  CHECK(parse_permutation("(1,4,2)", 4).cycle_type() == CycleType({3, 1}));
  CHECK(CycleType({1, 3, 2}).str() == "(3,2,1)");

  auto a = parse_permutation("(1,6,3,8)(2,5,4,7)", 8);
  auto b = parse_permutation("(1,2,3,4)(5,6,7,8)", 8);
  CHECK(commutator(a, b).cycle_type() == CycleType({2, 2, 2, 2}));
}

TEST_CASE("orbits") {
  auto a = parse_permutation("(1,6,3,8)(2,5,4,7)", 8);
  auto b = parse_permutation("(1,2,3,4)(5,6,7,8)", 8);
  std::vector<Permutation> gens{a, b};
  auto o = orbits(gens, 8);
  REQUIRE(o.size() == 1);
  CHECK(o[0].size() == 8);

  std::vector<Permutation> id{Permutation::identity(3)};
  CHECK(orbits(id, 3).size() == 3);

  std::vector<Permutation> rho{parse_permutation("(1,5,6)(2,3,4)", 6),
                               parse_permutation("(1,3,2)(4,6,5)", 6)};
  CHECK(is_transitive(rho, 6));
  CHECK_THROWS_AS(orbits(rho, 7), DegreeMismatch);
}

TEST_CASE("group-law properties on random permutations") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 20;
    auto p = random_perm(n, rng);
    auto g = random_perm(n, rng);
    auto h = random_perm(n, rng);
    CHECK(compose(p, p.inverse()).is_identity());
    CHECK(compose_all(n, {g.inverse(), p, g}).cycle_type() == p.cycle_type());
    CHECK(p.cycle_type().total() == n);
    CHECK(parse_permutation(p.str(), n) == p);
    CHECK(p.pow(5) == compose_all(n, {p, p, p, p, p}));
    CHECK(p.pow(-2) == compose(p.inverse(), p.inverse()));

    // Orbits of a generating set refine the orbits after adding a generator.
    std::vector<Permutation> small{p};
    std::vector<Permutation> big{p, h};
    auto fine = orbits(small, n);
    auto coarse = orbits(big, n);
    std::vector<std::size_t> block(n);
    for (std::size_t i = 0; i < coarse.size(); ++i) {
      for (Point x : coarse[i]) block[x] = i;
    }
    for (auto const& f : fine) {
      for (Point x : f) CHECK(block[x] == block[f[0]]);
    }
  }
}
