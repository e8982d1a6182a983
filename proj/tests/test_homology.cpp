#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "origami/error.hpp"
#include "origami/homology.hpp"
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
    try {
      return make_origami(Permutation::from_images(a), Permutation::from_images(b));
    } catch (NotConnected const&) {
    }
  }
}

std::vector<Origami> sample_surfaces() {
  std::vector<Origami> out{torus(1), torus(3), l_origami(), build_ew().origami,
                           build_m4().origami, build_m4_tilde().origami};
  std::mt19937 rng(11);
  for (int i = 0; i < 6; ++i) out.push_back(random_origami(5 + rng() % 8, rng));
  return out;
}

bool is_pm_identity(IntMatrix const& m) {
  auto id = IntMatrix::identity(m.rows());
  return m == id || m == -id;
}

}  // namespace

TEST_CASE("boundary of boundary vanishes") {
  for (auto const& o : sample_surfaces()) {
    auto cx = chain_complex(o);
    for (Point s = 0; s < o.size(); ++s) {
      std::vector<std::int64_t> f(o.size(), 0);
      f[s] = 1;
      auto c = cx.boundary2(f);
      CHECK(cx.is_cycle(c));
    }
  }
}

TEST_CASE("homology ranks follow the genus") {
  CHECK(homology_basis(torus(1)).rank() == 2);
  CHECK(homology_basis(torus(4)).rank() == 2);
  CHECK(homology_basis(build_ew().origami).rank() == 6);
  CHECK(homology_basis(build_m4().origami).rank() == 8);
  CHECK(homology_basis(build_x().origami).rank() == 30);
  for (auto const& o : sample_surfaces()) {
    CHECK(homology_basis(o).rank() == 2 * stratum_genus(o).genus);
  }
}

TEST_CASE("torus intersection form") {
  auto hd = homology_basis(torus(1));
  REQUIRE(hd.basis.leftover_edges() == std::vector<std::size_t>{0, 1});
  CHECK(hd.form == IntMatrix::from_rows({{0, 1}, {-1, 0}}));
}

TEST_CASE("intersection form is skew and unimodular") {
  for (auto const& o : sample_surfaces()) {
    auto hd = homology_basis(o);
    CHECK(hd.form.transpose() == -hd.form);
    auto d = determinant(hd.form);
    CHECK((d == 1 || d == -1));
  }
}

TEST_CASE("coordinates round-trip and kill boundaries") {
  std::mt19937 rng(3);
  for (auto const& o : sample_surfaces()) {
    CycleBasis b(o);
    for (std::size_t i = 0; i < b.rank(); ++i) {
      auto c = b.coordinates(b.cycle(i));
      for (std::size_t j = 0; j < b.rank(); ++j) CHECK(c[j] == (i == j ? 1 : 0));
    }
    std::vector<std::int64_t> coords(b.rank());
    for (auto& x : coords) x = static_cast<int>(rng() % 7) - 3;
    std::vector<std::int64_t> faces(o.size());
    for (auto& x : faces) x = static_cast<int>(rng() % 5) - 2;
    auto z = b.chain(coords);
    auto bd = b.complex().boundary2(faces);
    for (std::size_t e = 0; e < z.size(); ++e) z[e] += bd[e];
    CHECK(b.coordinates(z) == coords);
  }
  CycleBasis tb(torus(1));
  CHECK(tb.coordinates(Chain{1, 0}).size() == 2);
  CycleBasis t2(torus(2));
  Chain open(8, 0);
  open[0] = 1;
  CHECK_THROWS_AS(t2.coordinates(open), Error);
}

TEST_CASE("letter chain maps satisfy the chain-map law") {
  for (auto const& o : sample_surfaces()) {
    for (auto l : {SL2Letter{SL2Gen::T, 1}, SL2Letter{SL2Gen::T, -1}, SL2Letter{SL2Gen::S, 1},
                   SL2Letter{SL2Gen::S, -1}}) {
      CHECK(letter_commutes_with_boundary(o, l));
    }
  }
}

TEST_CASE("torus generators act by the standard matrices") {
  auto hd = homology_basis(torus(1));
  auto t = affine_action(hd, parse_sl2_word("T"));
  auto s = affine_action(hd, parse_sl2_word("S"));
  CHECK(t.matrix == IntMatrix::from_rows({{1, 1}, {0, 1}}));
  CHECK(s.matrix == IntMatrix::from_rows({{0, -1}, {1, 0}}));
  // Words multiply like their matrices.
  for (auto text : {"T S", "S T^-1 S", "(S T)^3", "T^3 S^-1"}) {
    auto w = parse_sl2_word(text);
    auto m = word_to_matrix(w);
    auto act = affine_action(hd, w);
    CHECK(act.matrix == IntMatrix::from_rows({{m.a, m.b}, {m.c, m.d}}));
  }
}

TEST_CASE("torus(k): T-action conjugate to the unipotent matrix") {
  auto hd = homology_basis(torus(3));
  auto t = affine_action(hd, parse_sl2_word("T"));
  // Conjugate to [[1,1],[0,1]]: trace 2, not the identity, and (M - I)
  // has primitive image.
  auto m = t.matrix;
  CHECK(m(0, 0) + m(1, 1) == 2);
  CHECK(determinant(m) == 1);
  auto n = m + (-IntMatrix::identity(2));
  CHECK_FALSE(n.is_zero());
  CHECK((n * n).is_zero());
  CHECK(std::gcd(std::gcd(n(0, 0), n(0, 1)), std::gcd(n(1, 0), n(1, 1))) == 1);
}

TEST_CASE("affine and translation actions are symplectic") {
  for (auto name : {"ew", "m4", "torus:2"}) {
    auto s = build_named(name);
    auto hd = homology_basis(s.origami);
    for (auto const& g : sl2z_generators(hd)) CHECK(is_symplectic(g.matrix, hd.form));
    for (auto text : {"T S T^-1", "S^-1 T^2"}) {
      CHECK(is_symplectic(affine_action(hd, parse_sl2_word(text)).matrix, hd.form));
    }
  }
  // An origami whose Veech group is smaller: the L-origami is fixed by S.
  auto hd = homology_basis(l_origami());
  auto s = affine_action(hd, parse_sl2_word("S"));
  CHECK(is_symplectic(s.matrix, hd.form));
  CHECK_THROWS_AS(affine_action(hd, parse_sl2_word("T")), Error);
}

TEST_CASE("witnesses must intertwine") {
  auto hd = homology_basis(build_ew().origami);
  auto t = affine_action(hd, parse_sl2_word("T"));
  CHECK_NOTHROW(affine_action(hd, parse_sl2_word("T"), t.relabel));
  auto bad = Permutation::from_cycles(8, {{0, 1}});
  CHECK_THROWS_AS(affine_action(hd, parse_sl2_word("T"), bad), Error);
}

TEST_CASE("translation automorphisms") {
  CHECK(translation_group(torus(3)).size() == 9);
  CHECK(translation_group(build_ew().origami).size() == 8);
  CHECK(translation_group(l_origami()).size() == 1);
  auto x = translation_group(build_x().origami);
  CHECK(4 % x.size() == 0);
  auto hd = homology_basis(build_ew().origami);
  for (auto const& t : translation_automorphisms(hd)) {
    CHECK(t.derivative == SL2Matrix::identity());
    CHECK(is_symplectic(t.matrix, hd.form));
  }
}

TEST_CASE("EW: S^4 acts as a translation") {
  auto hd = homology_basis(build_ew().origami);
  auto s4 = affine_action(hd, parse_sl2_word("S^4"));
  CHECK(s4.derivative == SL2Matrix::identity());
  bool found = false;
  for (auto const& t : translation_automorphisms(hd)) found = found || t.matrix == s4.matrix;
  CHECK(found);
}

TEST_CASE("pushforward ranks") {
  auto ew = build_ew();
  auto hd = homology_basis(ew.origami);
  auto id = identity_cover(ew.origami);
  CHECK(pushforward(id, hd.basis, hd.basis).is_identity());
  CycleBasis t1(torus(1));
  auto p = pushforward(ew.cover("pi"), hd.basis, t1);
  CHECK(rank(p) == 2);
  CHECK(integer_kernel(p).cols() == 4);

  auto m4 = build_m4();
  auto hm = homology_basis(m4.origami);
  CycleBasis t2(torus(2));
  CHECK(integer_kernel(pushforward(m4.cover("pi2"), hm.basis, t2)).cols() == 6);
}

TEST_CASE("split subspaces") {
  auto ew = build_ew();
  auto hd = homology_basis(ew.origami);
  auto sp = split_subspaces(hd, ew.cover("pi"));
  CHECK(sp.h0.cols() == 4);
  CHECK(sp.hst.cols() == 2);
  // H0 + Hst is all of H1 over Q.
  IntMatrix both(6, 6);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 4; ++j) both(i, j) = sp.h0(i, j);
    for (std::size_t j = 0; j < 2; ++j) both(i, 4 + j) = sp.hst(i, j);
  }
  CHECK(rank(both) == 6);

  auto t = build_torus(1);
  auto ht = homology_basis(t.origami);
  auto st = split_subspaces(ht, t.cover("pi"));
  CHECK(st.h0.cols() == 0);
  CHECK(st.hst.cols() == 2);
}

TEST_CASE("affine actions preserve the splitting") {
  for (auto name : {"ew", "m4"}) {
    auto s = build_named(name);
    auto hd = homology_basis(s.origami);
    auto sp = split_subspaces(hd, s.covers.front().map);
    for (auto const& g : sl2z_generators(hd)) {
      CHECK(restrict_to(g.matrix, sp.h0));
      CHECK(restrict_to(g.matrix, sp.hst));
    }
  }
}

TEST_CASE("naturality along h: M4~ -> M4") {
  auto mt = build_m4_tilde();
  auto m4 = build_m4();
  auto const& h = mt.cover("h");
  // Every affine map of M4~ descends along h.
  REQUIRE(descent_certificate(h).holds());
  auto up = homology_basis(mt.origami);
  auto down = homology_basis(m4.origami);
  auto push = pushforward(h, up.basis, down.basis);
  auto tr_down = translation_automorphisms(down);
  auto orbit = orbit_stabilizer(mt.origami);
  REQUIRE(!orbit.generators.empty());
  std::size_t checked = 0;
  for (auto const& w : orbit.generators) {
    if (checked == 12) break;
    auto a_up = affine_action(up, w);
    auto a_down = affine_action(down, w);
    // The descended map is a_down up to a translation of M4.
    bool ok = false;
    for (auto const& t : tr_down) ok = ok || push * a_up.matrix == t.matrix * a_down.matrix * push;
    CHECK(ok);
    ++checked;
  }
}

TEST_CASE("EW closure: zero-fixing level-4 elements act by +-I on H0") {
  auto ew = build_ew();
  auto hd = homology_basis(ew.origami);
  auto sp = split_subspaces(hd, ew.cover("pi"));
  std::vector<std::size_t> marked;
  for (auto const& m : ew.marked) marked.push_back(m.vertex);
  auto r = monodromy_closure(sl2z_generators(hd), 4, marked, sp.h0,
                             ClosurePredicate::PlusMinusIdentity);
  CHECK(r.holds);
  CHECK(r.group_size() > 1);
  for (auto const& s : r.states) CHECK(is_symplectic(s.matrix, sp.h0.transpose() * hd.form * sp.h0));
}

TEST_CASE("M4 closure at level 3 with the six marked points") {
  auto m4 = build_m4();
  auto hd = homology_basis(m4.origami);
  auto sp = split_subspaces(hd, m4.cover("pi2"));
  std::vector<std::size_t> marked;
  for (auto const& m : m4.marked) marked.push_back(m.vertex);
  auto r = monodromy_closure(sl2z_generators(hd), 3, marked, sp.h0, ClosurePredicate::IffTrivial);
  auto r2 = monodromy_closure(sl2z_generators(hd), 3, marked, sp.h0, ClosurePredicate::IffTrivial);
  CHECK(r2.group_size() == r.group_size());
  CHECK(r.group_size() == 432);

  auto id3 = reduce_mod(SL2Matrix::identity(), 3);
  auto id6 = IntMatrix::identity(sp.h0.cols());
  std::size_t congruent_fixing = 0;
  std::vector<ClosureState const*> trivial_on_h0;
  for (auto const& s : r.states) {
    bool congruent = s.derivative == id3;
    if (congruent && s.trivial_marking()) {
      ++congruent_fixing;
      CHECK(s.matrix == id6);
    }
    if (s.matrix == id6) trivial_on_h0.push_back(&s);
  }
  CHECK(congruent_fixing == 1);
  // The elements acting trivially on H0 form a group of order 3: congruent
  // to I mod 3, fixing A1, A2, A3 and cycling X1, Y1, Z1.
  REQUIRE(trivial_on_h0.size() == 3);
  for (auto const* s : trivial_on_h0) {
    CHECK(s->derivative == id3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(s->marked[i] == i);
  }
  CHECK_FALSE(r.holds);
  REQUIRE(r.counterexample);
  // An explicit lift: S^3 T^3 S T^3 composed with a translation.
  auto w = parse_sl2_word("S^3 T^3 S T^3");
  CHECK(is_identity_mod(word_to_matrix(w), 3));
  CHECK_FALSE(is_identity_mod(word_to_matrix(w), 2));
  auto lift = affine_action(hd, w);
  bool found = false;
  for (auto const& t : translation_automorphisms(hd)) {
    auto rm = restrict_to(t.matrix * lift.matrix, sp.h0);
    REQUIRE(rm);
    found = found || *rm == id6;
  }
  CHECK(found);
}

TEST_CASE("torus closure at level 1 is infinite") {
  auto hd = homology_basis(torus(1));
  CHECK_THROWS_AS(monodromy_closure(sl2z_generators(hd), 1, {}, IntMatrix::identity(2),
                                    ClosurePredicate::PlusMinusIdentity, 2000),
                  CapExceeded);
}

TEST_CASE("X: lifted subspace has rank 4 and is nondegenerate") {
  auto x = build_x();
  auto hd = homology_basis(x.origami);
  auto sp = split_subspaces(hd, x.cover("q"), &x.cover("p"));
  REQUIRE(sp.lifted);
  CHECK(sp.lifted->cols() == 4);
  CHECK(determinant(sp.lifted->transpose() * hd.form * *sp.lifted) != 0);
  for (auto const& t : translation_automorphisms(hd)) {
    auto r = restrict_to(t.matrix, *sp.lifted);
    REQUIRE(r);
    CHECK(is_pm_identity(*r));
  }
}
