#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "origami/perm.hpp"

namespace origami {

// A connected square-tiled surface on n unit squares. sigma_a sends a square
// to its right neighbour, sigma_b to its upper neighbour.
class Origami {
 public:
  // Throws DegreeMismatch or NotConnected.
  static Origami make(Permutation sigma_a, Permutation sigma_b);
  // Skips the connectivity check; only for callers that already know the
  // pair is transitive (e.g. conjugates of a valid origami).
  static Origami make_unchecked(Permutation sigma_a, Permutation sigma_b);

  std::size_t size() const { return a_.degree(); }
  Permutation const& sigma_a() const { return a_; }
  Permutation const& sigma_b() const { return b_; }

  // Relabel squares by r: square s becomes r(s).
  Origami relabeled(Permutation const& r) const;

  friend bool operator==(Origami const&, Origami const&) = default;

 private:
  Origami(Permutation a, Permutation b) : a_(std::move(a)), b_(std::move(b)) {}
  Permutation a_;
  Permutation b_;
};

Origami make_origami(Permutation sigma_a, Permutation sigma_b);

// k x k grid torus; square (x, y) has index y * k + x and lower-left corner at
// (x/k, y/k).
Origami torus(std::size_t k);
// Returns k when `o` is exactly torus(k) with the standard labelling.
std::optional<std::size_t> grid_side(Origami const& o);

// Vertex permutation: cycles are the sets of squares sharing a lower-left
// corner, in counter-clockwise order around the vertex. A cycle of length L is
// a cone point of angle 2*pi*L, a zero of order L - 1.
Permutation vertex_permutation(Origami const& o);

struct VertexStructure {
  // Ordered by smallest square; vertex id == index into this list.
  std::vector<std::vector<Point>> cycles;
  // vertex_of[s] is the id of the lower-left corner of square s.
  std::vector<std::size_t> vertex_of;

  std::size_t count() const { return cycles.size(); }
  std::size_t order(std::size_t v) const { return cycles[v].size() - 1; }
  std::size_t cone_multiplicity(std::size_t v) const { return cycles[v].size(); }
};

VertexStructure vertex_structure(Origami const& o);

// Zero orders in descending order; order-0 vertices are dropped.
class Stratum {
 public:
  Stratum() = default;
  explicit Stratum(std::vector<std::size_t> orders);

  std::vector<std::size_t> const& orders() const { return orders_; }
  std::size_t zero_count() const { return orders_.size(); }
  std::size_t total_order() const;
  // "H(5,3,3,3,2,1^12)"
  std::string str() const;

  friend bool operator==(Stratum const&, Stratum const&) = default;

 private:
  std::vector<std::size_t> orders_;
};

struct StratumGenus {
  Stratum stratum;
  std::size_t genus = 0;
};

StratumGenus stratum_genus(Origami const& o);

// Square labelling of a k-fold subdivision: subsquare (s, i, j) with row i and
// column j in [0, k) has index (s * k + i) * k + j.
struct Subdivision {
  Origami origami;
  std::size_t k = 1;
  std::vector<Point> parent;  // subsquare -> square of the coarse origami

  Point index(Point s, std::size_t i, std::size_t j) const {
    return static_cast<Point>((s * k + i) * k + j);
  }
};

Subdivision refine(Origami const& o, std::size_t k);

struct CanonicalForm {
  // Images of the relabelled permutations.
  std::vector<Point> sigma_a;
  std::vector<Point> sigma_b;
  // relabel[s] is the canonical label of square s of the input.
  Permutation relabel;

  Origami origami() const;
  friend bool operator==(CanonicalForm const& x, CanonicalForm const& y) {
    return x.sigma_a == y.sigma_a && x.sigma_b == y.sigma_b;
  }
};

// Minimum over the n breadth-first relabellings (start square varies, edges
// explored as sigma_a, sigma_a^-1, sigma_b, sigma_b^-1), compared on the
// interleaved sequence a(0), b(0), a(1), b(1), ...
CanonicalForm canonicalize(Origami const& o);
// Same order, minimum taken only over the given start squares. The result is
// an equivalence invariant whenever the start set is chosen invariantly.
CanonicalForm canonicalize_from(Origami const& o, std::span<Point const> starts);
bool is_equivalent(Origami const& x, Origami const& y);
// r with r(x.a(s)) == y.a(r(s)) and likewise for b, if one exists.
std::optional<Permutation> find_isomorphism(Origami const& x, Origami const& y);

// Text format:
//   squares: 8
//   a: (1,6,3,8)(2,5,4,7)
//   b: (1,2,3,4)(5,6,7,8)
std::string to_text(Origami const& o);
Origami parse_origami(std::string_view text);
Origami read_origami_file(std::string const& path);

}  // namespace origami
