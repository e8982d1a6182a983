#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "origami/error.hpp"
#include "origami/homology.hpp"
#include "origami/veech.hpp"
#include "origami/zoo.hpp"

using namespace origami;

namespace {

Origami l_origami() {
  return make_origami(parse_permutation("(1,2)", 3), parse_permutation("(1,3)", 3));
}

Origami random_origami(std::size_t n, std::mt19937& rng) {
  while (true) {
    std::vector<Point> a(n), b(n);
    std::iota(a.begin(), a.end(), Point{0});
    std::iota(b.begin(), b.end(), Point{0});
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    std::vector<Permutation> g{Permutation::from_images(a), Permutation::from_images(b)};
    if (is_transitive(g, n)) return make_origami(g[0], g[1]);
  }
}

using FormKey = std::pair<std::vector<Point>, std::vector<Point>>;

FormKey key_of(Origami const& o) {
  auto f = canonicalize(o);
  return {f.sigma_a, f.sigma_b};
}

// Every connected n-square origami in the given stratum, up to equivalence,
// by running over all pairs of permutations.
std::set<FormKey> all_classes(std::size_t n, Stratum const& stratum) {
  std::vector<Point> base(n);
  std::iota(base.begin(), base.end(), Point{0});
  std::vector<Permutation> perms;
  auto p = base;
  do {
    perms.push_back(Permutation::from_images(p));
  } while (std::next_permutation(p.begin(), p.end()));
  std::set<FormKey> out;
  for (auto const& a : perms) {
    for (auto const& b : perms) {
      std::vector<Permutation> g{a, b};
      if (!is_transitive(g, n)) continue;
      auto o = make_origami(a, b);
      if (stratum_genus(o).stratum == stratum) out.insert(key_of(o));
    }
  }
  return out;
}

Origami form_origami(FormKey const& k) {
  return make_origami(Permutation::from_images(k.first), Permutation::from_images(k.second));
}

}  // namespace

TEST_CASE("words and matrices") {
  CHECK(word_to_matrix(parse_sl2_word("S S")) == SL2Matrix{-1, 0, 0, -1});
  CHECK(is_identity_mod(word_to_matrix(parse_sl2_word("T T T T")), 4));
  CHECK_FALSE(is_identity_mod(word_to_matrix(parse_sl2_word("T T T")), 4));
  CHECK(word_to_matrix(parse_sl2_word("(S T)^6")) == SL2Matrix::identity());
  CHECK(word_to_matrix(parse_sl2_word("S^4")) == SL2Matrix::identity());
  CHECK(word_to_matrix(parse_sl2_word("T")) == SL2Matrix::T());
  CHECK(word_to_matrix(parse_sl2_word("S^-1")) == SL2Matrix::S().inverse());
  CHECK(parse_sl2_word("T T^-1 S").str() == "S");
  CHECK(parse_sl2_word("I").empty());
  CHECK(parse_sl2_word("T^2 S^-1").str() == "T^2 S^-1");
  CHECK_THROWS_AS(parse_sl2_word("T U"), ParseError);

  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<SL2Letter> ls;
    for (int i = 0; i < 12; ++i) {
      ls.push_back({rng() % 2 ? SL2Gen::T : SL2Gen::S, rng() % 2 ? 1 : -1});
    }
    SL2Word w(ls);
    auto m = word_to_matrix(w);
    CHECK(m.det() == 1);
    CHECK(word_to_matrix(w.inverse()) == m.inverse());
    CHECK(word_to_matrix_mod(w, 6) == reduce_mod(m, 6));
    CHECK(parse_sl2_word(w.str()) == w);
  }
}

TEST_CASE("generators fix the torus and respect the relations") {
  CHECK(apply_generator(torus(1), SL2Gen::T) == torus(1));
  CHECK(apply_generator(torus(1), SL2Gen::S) == torus(1));
  std::mt19937 rng(9);
  auto s4 = parse_sl2_word("S^4");
  auto st6 = parse_sl2_word("(S T)^6");
  for (int trial = 0; trial < 20; ++trial) {
    auto o = random_origami(4 + rng() % 9, rng);
    CHECK(is_equivalent(apply_word(o, s4), o));
    CHECK(is_equivalent(apply_word(o, st6), o));
    CHECK(is_equivalent(apply_generator(apply_generator(o, SL2Letter{SL2Gen::T, 1}),
                                        SL2Letter{SL2Gen::T, -1}),
                        o));
    CHECK(is_equivalent(apply_generator(apply_generator(o, SL2Letter{SL2Gen::S, -1}),
                                        SL2Letter{SL2Gen::S, 1}),
                        o));
  }
}

TEST_CASE("action is well defined on equivalence classes") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    auto o = random_origami(5 + rng() % 8, rng);
    std::vector<Point> r(o.size());
    std::iota(r.begin(), r.end(), Point{0});
    std::shuffle(r.begin(), r.end(), rng);
    auto c = o.relabeled(Permutation::from_images(r));
    for (SL2Gen g : {SL2Gen::T, SL2Gen::S}) {
      CHECK(is_equivalent(apply_generator(o, g), apply_generator(c, g)));
    }
  }
}

TEST_CASE("fast canonical form agrees with the full one") {
  std::mt19937 rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    auto x = random_origami(6 + rng() % 6, rng);
    auto y = rng() % 2 ? apply_word(x, parse_sl2_word("S^4 T^-1 T"))
                       : random_origami(x.size(), rng);
    CHECK((fast_canonicalize(x) == fast_canonicalize(y)) == is_equivalent(x, y));
  }
}

TEST_CASE("orbit sizes") {
  auto ew = orbit_stabilizer(build_ew().origami);
  CHECK(ew.index() == 1);
  CHECK(ew.complete);
  CHECK(orbit_stabilizer(build_m4().origami).index() == 1);
  CHECK(orbit_stabilizer(torus(1)).index() == 1);

  // EW: the Schreier generators are T and S themselves.
  std::set<std::string> gens;
  for (auto const& w : ew.generators) gens.insert(w.str());
  CHECK(gens == std::set<std::string>{"T", "S"});

  auto l = orbit_stabilizer(l_origami());
  CHECK(l.index() == 3);
}

TEST_CASE("H(2) orbits against exhaustive enumeration") {
  Stratum h2(std::vector<std::size_t>{2});
  for (std::size_t n : {3u, 4u}) {
    auto classes = all_classes(n, h2);
    // Orbits of the enumerated classes partition them.
    std::set<FormKey> covered;
    std::size_t total = 0;
    for (auto const& k : classes) {
      if (covered.count(k)) continue;
      auto r = orbit_stabilizer(form_origami(k));
      total += r.index();
      for (auto const& f : r.forms) {
        auto fk = key_of(f.origami());
        CHECK(classes.count(fk) == 1);
        covered.insert(fk);
      }
    }
    CHECK(covered == classes);
    CHECK(total == classes.size());
    if (n == 3) CHECK(classes.size() == 3);
  }
}

TEST_CASE("stabilizer soundness and coset words") {
  for (auto const& o : {l_origami(), build_m4_tilde().origami}) {
    auto r = orbit_stabilizer(o);
    auto base = fast_canonicalize(o);
    for (auto const& w : r.generators) CHECK(fast_canonicalize(apply_word(o, w)) == base);
    for (std::size_t i = 0; i < r.index(); ++i) {
      CHECK(fast_canonicalize(apply_word(o, r.coset_words[i])) == r.forms[i]);
    }
    // Connected coset graph with two out-edges per node.
    CHECK(r.edges.size() == 2 * r.index());
  }
  CHECK(orbit_stabilizer(build_m4_tilde().origami).index() == 32);
}

TEST_CASE("orbit-stabilizer consistency mod N") {
  auto r = orbit_stabilizer(build_m4_tilde().origami);
  for (std::int64_t N : {2, 3, 4, 6}) {
    auto image = image_size_mod(r.generators, N);
    auto total = enumerate_sl2_mod(N).size();
    // [SL2Z : Veech] >= [SL(2, Z/N) : image of Veech].
    CHECK(r.index() * image >= total);
    if (contained_in_gamma(r.generators, N)) CHECK(image == 1);
  }
}

TEST_CASE("congruence containment") {
  auto ew = orbit_stabilizer(build_ew().origami);
  CHECK_FALSE(contained_in_gamma(ew.generators, 4));
  CHECK(contained_in_gamma(ew.generators, 1));
  CHECK(contains_minus_identity(build_ew().origami));
  CHECK(enumerate_sl2_mod(4).size() == 48);
  CHECK(enumerate_sl2_mod(6).size() == 144);
  CHECK(image_size_mod(ew.generators, 4) == 48);
}

TEST_CASE("division point stabilizers") {
  CHECK(division_stabilizer_is_gamma({{0, 0, 1}, {1, 0, 6}, {0, 1, 6}}, 6));
  CHECK(division_stabilizer_is_gamma({{0, 0, 1}, {3, 0, 4}, {0, 1, 4}}, 4));
  CHECK_FALSE(division_stabilizer_is_gamma({{0, 0, 1}}, 2));
  CHECK_FALSE(division_stabilizer_is_gamma({{0, 0, 1}, {1, 0, 4}}, 4));
  CHECK_THROWS_AS(division_stabilizer_is_gamma({{1, 0, 5}}, 4), Error);
}

TEST_CASE("cap handling") {
  auto x = build_x().origami;
  CHECK_THROWS_AS(orbit_stabilizer(x, 20), CapExceeded);
  auto partial = explore_orbit(x, 20);
  CHECK_FALSE(partial.complete);
  CHECK(partial.index() == 20);
  auto base = fast_canonicalize(x);
  for (auto const& w : partial.generators) CHECK(fast_canonicalize(apply_word(x, w)) == base);
}

TEST_CASE("cusp parabolics") {
  auto t = cusp_parabolic(torus(1), SL2Word(), 10);
  REQUIRE(t);
  CHECK(t->str() == "T");
  auto l = cusp_parabolic(l_origami(), SL2Word(), 10);
  REQUIRE(l);
  CHECK(fast_canonicalize(apply_word(l_origami(), *l)) == fast_canonicalize(l_origami()));
  CHECK_FALSE(cusp_parabolic(l_origami(), SL2Word(), 1));

  auto x = build_x().origami;
  for (auto c : {"I", "S", "T S", "T^2 S", "T^3 S", "S T^2 S"}) {
    auto w = cusp_parabolic(x, parse_sl2_word(c), 1000);
    REQUIRE(w);
    CHECK(is_identity_mod(word_to_matrix(*w), 4));
  }
  CHECK_FALSE(contains_minus_identity(x));
}

TEST_CASE("period certificate") {
  auto x = build_x();
  auto cert = period_certificate(x.origami, 4);
  CHECK(cert.lattice_in_level);
  CHECK(cert.proves_gamma());
  CHECK(cert.zeros.size() == 17);

  // Oracle: the lattice spanned by the torus images of a homology basis.
  auto hd = homology_basis(x.origami);
  auto tor = homology_basis(torus(1));
  auto push = pushforward(projection_to_unit_torus(x.origami), hd.basis, tor.basis);
  auto lattice = IntMatrix::from_rows({{cert.a, cert.b}, {0, cert.d}});
  REQUIRE(solve_integral(lattice, push));
  REQUIRE(solve_integral(push, lattice));

  auto l = period_certificate(l_origami(), 2);
  CHECK(l.a == 1);
  CHECK(l.d == 1);
  CHECK_FALSE(l.lattice_in_level);
  CHECK_FALSE(l.proves_gamma());
  CHECK_THROWS_AS(period_certificate(torus(2), 2), Error);
}

TEST_CASE("orbit exports") {
  auto r = orbit_stabilizer(l_origami());
  auto dot = orbit_to_dot(r);
  CHECK(dot.find("digraph") != std::string::npos);
  auto js = orbit_to_json(r, {2, 3});
  CHECK(js.find("\"index\":3") != std::string::npos);
  CHECK(js.find("\"complete\":true") != std::string::npos);
}
