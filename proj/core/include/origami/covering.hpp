#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "origami/origami.hpp"
#include "origami/perm.hpp"

namespace origami {

// Degree-d map of square-tiled surfaces given square by square. Satisfies
// f(a(s)) == a(f(s)) and f(b(s)) == b(f(s)); every target square has exactly
// d preimages.
struct CoveringMap {
  Origami source;
  Origami target;
  std::vector<Point> square_map;
  std::size_t degree = 0;

  Point operator()(Point s) const { return square_map[s]; }
  // Source squares over target square t, ascending.
  std::vector<std::vector<Point>> fibers() const;
};

// Throws NotEquivariant (with the offending square) or NonConstantFiber.
CoveringMap cover_from_map(Origami source, Origami target, std::vector<Point> square_map);
CoveringMap identity_cover(Origami const& o);
// Every square map source -> target commuting with both gluings, ordered by
// the image of square 0.
std::vector<CoveringMap> square_coverings(Origami const& source, Origami const& target);
// Every square to the single square of torus(1).
CoveringMap projection_to_unit_torus(Origami const& o);

// c1: X -> Y, c2: Y -> Z gives X -> Z.
CoveringMap compose_covers(CoveringMap const& c1, CoveringMap const& c2);

// (s, i, j) -> (f(s), i, j) between the k-fold subdivisions.
CoveringMap refine_cover(CoveringMap const& c, std::size_t k);

// Degree-1 identification of refine(torus(m), k) with torus(m * k).
CoveringMap grid_relabel(std::size_t m, std::size_t k);

// For a cover of torus(m): refine both sides by k and identify the target with
// torus(m * k), so that k-division points become labelled grid vertices.
// Throws Error if the target is not a grid torus.
CoveringMap refine_over_grid(CoveringMap const& c, std::size_t k);

// Sheet transitions over a base origami: crossing the right edge of base
// square s sends sheet x to w_a[s](x), crossing the top edge sends it to
// w_b[s](x).
struct VoltageData {
  Origami base;
  std::size_t sheets = 1;
  std::vector<Permutation> w_a;
  std::vector<Permutation> w_b;

  // All voltages trivial.
  static VoltageData trivial(Origami base, std::size_t sheets);
};

struct VoltageCover {
  Origami origami;    // square (s, x) has index s * sheets + x
  CoveringMap cover;  // (s, x) -> s
};

// Throws NotConnected with the orbit partition of base squares x sheets.
VoltageCover voltage_cover(VoltageData const& v);

// Re-express a covering as voltage data over its target. Sheets over each
// target square are numbered by ascending source square.
struct VoltageForm {
  VoltageData data;
  std::vector<std::vector<Point>> fibers;  // fibers[t][x] = source square of sheet x over t
};

VoltageForm to_voltage(CoveringMap const& c);

using RamificationProfile = CycleType;

struct GridPoint {
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t k = 1;  // the point is (x/k, y/k)

  friend bool operator==(GridPoint const&, GridPoint const&) = default;
};

struct ProfileEntry {
  std::size_t vertex = 0;
  std::optional<GridPoint> coord;
  RamificationProfile profile;
};

struct ProfileMap {
  std::size_t degree = 0;
  std::vector<ProfileEntry> entries;  // one per target vertex, by vertex id

  RamificationProfile const& at_vertex(std::size_t v) const;
  // Requires a grid-torus target.
  RamificationProfile const& at(std::size_t x, std::size_t y) const;
  std::string to_json() const;
};

// For each target vertex v with cycle length L_v, the multiset L_w / L_v over
// source vertices w above v.
ProfileMap ramification_profile(CoveringMap const& c);

// Target vertex lying under source vertex w.
std::size_t vertex_image(CoveringMap const& c, VertexStructure const& src,
                         VertexStructure const& tgt, std::size_t w);
// Source vertex ids above target vertex v.
std::vector<std::size_t> vertex_fiber(CoveringMap const& c, VertexStructure const& src,
                                      VertexStructure const& tgt, std::size_t v);

// Index of the grid-torus vertex at (x/k, y/k).
std::size_t grid_vertex(std::size_t k, std::size_t x, std::size_t y);

// Sheet permutation picked up by a positively oriented loop around a base
// vertex (left, down, right, up around the lower-left corner, repeated once
// per square of the vertex cycle). Its cycle type is the ramification
// profile of the voltage cover over that vertex.
Permutation local_monodromy_permutation(VoltageData const& v, std::size_t vertex);
CycleType local_monodromy(VoltageData const& v, std::size_t vertex);

// Sheet permutation of the loop spelled by `word` starting at base square
// `base_square`. Letters: x (right), X (left), y (up), Y (down); integer
// exponents allowed, e.g. "y^2 x^6 y^-2". Sheets are numbered as in
// to_voltage. Throws Error if the path is not closed in the base.
Permutation path_monodromy(CoveringMap const& c, Point base_square, std::string_view word);

// Euler characteristic 2 - 2g of an origami.
long long euler_characteristic(Origami const& o);
// chi(source) == d * chi(target) - sum over profiles of (e - 1).
bool riemann_hurwitz_holds(CoveringMap const& c, ProfileMap const& pm);

}  // namespace origami
