#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "origami/covering.hpp"
#include "origami/origami.hpp"

namespace origami {

struct NamedCover {
  std::string name;
  CoveringMap map;
};

struct MarkedPoint {
  std::string name;
  std::size_t vertex = 0;  // vertex id in the origami the point lives on
};

struct NamedSurface {
  std::string name;
  Origami origami;
  std::vector<NamedCover> covers;
  std::vector<MarkedPoint> marked;

  // Throw Error for unknown names.
  CoveringMap const& cover(std::string_view name) const;
  std::size_t marked_vertex(std::string_view name) const;
  bool has_cover(std::string_view name) const;
};

// Eierlegende Wollmilchsau on 8 squares, cover "pi" to torus(1), zeros
// "zero0".."zero3".
NamedSurface build_ew();
// refine(EW, 4) with "pi" to torus(4).
NamedSurface build_ew128();
// 512-square cover of refine(EW, 4): "p" (degree 4 onto ew128) and "q"
// (degree 32 onto torus(4)).
NamedSurface build_x();
// 12 squares, "pi2" onto torus(2); marked A1, A2, A3, X1, Y1, Z1.
NamedSurface build_m4();
// 24 squares, "h" onto M4 and "pi2tilde" onto torus(2).
NamedSurface build_m4_tilde();
// n copies of torus(6) glued along five slit edges; "pi1" onto torus(6).
NamedSurface build_y(std::size_t n);
// Fibre product of pi1(n) and the 3-fold refinement of pi2tilde over
// torus(6). Covers "q" (torus(6)), "q1tilde" (refine(M4tilde, 3)), "q1"
// (refine(M4, 3)), "q2" (Y_n). Requires n >= 5 odd unless `allow_any_n`, in
// which case any n >= 2 is accepted.
NamedSurface build_cov_m4(std::size_t n, bool allow_any_n = false);
NamedSurface build_torus(std::size_t k);

// The M4 pipeline carried to torus(6): refine(M4~, 3) -> torus(6) and
// refine(M4, 3) -> torus(6), with marked points of the refined surfaces.
NamedSurface build_m4_tilde_grid6();
NamedSurface build_m4_grid6();

// Zoo names: ew, ew128, x512, m4, m4tilde, y:<n>, covm4:<n>, torus:<k>.
// Throws ParseError for unknown names.
NamedSurface build_named(std::string_view name);
std::vector<std::string> zoo_names();

// Points on the 6-grid used by the M4 pipeline, as torus(6) vertex ids.
struct Grid6Points {
  static constexpr std::size_t A = 0;        // (0, 0)
  static constexpr std::size_t P = 1;        // (1/6, 0)
  static constexpr std::size_t Q = 6;        // (0, 1/6)
  static constexpr std::size_t X = 3;        // (1/2, 0)
  static constexpr std::size_t Y = 3 * 6 + 3;  // (1/2, 1/2)
  static constexpr std::size_t Z = 3 * 6;    // (0, 1/2)
};

// Covers manifest: the origami text and covers with their targets, as JSON.
std::string covers_manifest(NamedSurface const& s);
// Inverse of covers_manifest. Throws ParseError on malformed input and the
// covering errors on inconsistent maps.
NamedSurface parse_covers_manifest(std::string_view json);
NamedSurface read_covers_manifest(std::string const& path);

}  // namespace origami
