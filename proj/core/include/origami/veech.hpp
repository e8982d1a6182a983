#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "origami/origami.hpp"

namespace origami {

enum class SL2Gen : std::uint8_t { T, S };

struct SL2Letter {
  SL2Gen gen = SL2Gen::T;
  int exp = 1;  // +1 or -1

  SL2Letter inverse() const { return {gen, -exp}; }
  friend bool operator==(SL2Letter const&, SL2Letter const&) = default;
};

// Word in T, S and their inverses, kept freely reduced. The word l1 l2 ... lk
// stands for the matrix product M(l1) M(l2) ... M(lk) and acts on origamis
// with lk applied first.
class SL2Word {
 public:
  SL2Word() = default;
  explicit SL2Word(std::vector<SL2Letter> letters);
  static SL2Word letter(SL2Gen g, int exp = 1);

  std::vector<SL2Letter> const& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  SL2Word inverse() const;
  SL2Word pow(int k) const;
  friend SL2Word operator*(SL2Word const& x, SL2Word const& y);
  friend bool operator==(SL2Word const&, SL2Word const&) = default;

  // "T S^-1 T^2"; the empty word prints as "I".
  std::string str() const;

 private:
  std::vector<SL2Letter> letters_;
};

// Accepts letters T, S, optional exponents (^k, ^-k), parenthesised groups
// with exponents, and "I" for the empty word: "(S T)^6", "T^-1 S S".
SL2Word parse_sl2_word(std::string_view text);

struct SL2Matrix {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  static SL2Matrix identity() { return {}; }
  static SL2Matrix T() { return {1, 1, 0, 1}; }
  static SL2Matrix S() { return {0, -1, 1, 0}; }
  std::int64_t det() const { return a * d - b * c; }
  SL2Matrix inverse() const { return {d, -b, -c, a}; }
  friend bool operator==(SL2Matrix const&, SL2Matrix const&) = default;
  friend auto operator<=>(SL2Matrix const&, SL2Matrix const&) = default;
  std::string str() const;
};

// Throws Error on int64 overflow.
SL2Matrix operator*(SL2Matrix const& x, SL2Matrix const& y);
SL2Matrix word_to_matrix(SL2Word const& w);
// Entries reduced into [0, N).
SL2Matrix reduce_mod(SL2Matrix const& m, std::int64_t N);
// The word's matrix modulo N without forming the integer matrix.
SL2Matrix word_to_matrix_mod(SL2Word const& w, std::int64_t N);
bool is_identity_mod(SL2Matrix const& m, std::int64_t N);

// T: (a, b) -> (a, a^-1 * b); S: (a, b) -> (b^-1, a), products in the
// left-to-right convention of perm-core. Square s of the image is the unit
// square whose lower-left corner is the image of the lower-left corner of s.
Origami apply_generator(Origami const& o, SL2Letter g);
Origami apply_generator(Origami const& o, SL2Gen g);
// Letters applied right to left.
Origami apply_word(Origami const& o, SL2Word const& w);

// Canonical form used for orbit enumeration: minimum over breadth-first
// relabellings started at the squares of the rarest class of a local
// isomorphism invariant. Equal for two origamis exactly when they are
// equivalent, and much cheaper than canonicalize() when a few squares are
// distinguished (e.g. by a high-order zero).
CanonicalForm fast_canonicalize(Origami const& o);

struct OrbitEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  SL2Gen gen = SL2Gen::T;
};

struct OrbitResult {
  std::vector<CanonicalForm> forms;  // forms[0] is the base point
  std::vector<SL2Word> coset_words;  // coset_words[i] applied to the base gives forms[i]
  std::vector<OrbitEdge> edges;      // T and S edges of the coset graph
  std::vector<SL2Word> generators;   // nontrivial Schreier generators of the stabilizer
  bool complete = true;              // false when explore_orbit stopped at its cap

  std::size_t index() const { return forms.size(); }
};

// Default cap 1e5, overridden by the ORIGAMI_CAP environment variable when set.
std::size_t default_cap();

// Breadth-first orbit of O under T and S. Throws CapExceeded.
OrbitResult orbit_stabilizer(Origami const& o, std::size_t cap = default_cap());
// Same search, but stops once `cap` forms are known and returns what it has,
// with complete == false. The loops found by then are still stabilizer
// elements; they just need not generate it.
OrbitResult explore_orbit(Origami const& o, std::size_t cap);

// c T^w c^-1 where w is the length of the T-orbit of c^-1 O, if w <= max_width.
std::optional<SL2Word> cusp_parabolic(Origami const& o, SL2Word const& c, std::size_t max_width);

bool contained_in_gamma(std::vector<SL2Word> const& gens, std::int64_t N);
// Is -I in the Veech group of O? Equivalent to S^2 O being equivalent to O.
bool contains_minus_identity(Origami const& o);

// All elements of SL(2, Z/N), entries in [0, N).
std::vector<SL2Matrix> enumerate_sl2_mod(std::int64_t N);
// Size of the subgroup of SL(2, Z/N) generated by the generators' images.
std::size_t image_size_mod(std::vector<SL2Word> const& gens, std::int64_t N);

// Point (num_x / N, num_y / N) of the torus R^2 / Z^2.
struct TorusPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t den = 1;
};

// True when the identity is the only element of SL(2, Z/N) fixing every point
// (acting on column vectors). Point denominators must divide N.
bool division_stabilizer_is_gamma(std::vector<TorusPoint> const& points, std::int64_t N);

// Positions of the zeros of O in R^2 / Per(O), Per(O) the lattice of absolute
// periods, measured from a base zero of the rarest order. An affine map with
// derivative D sends the base to a zero z' of the same order and the position
// x of any zero to D x + x(z'), modulo Per(O), preserving orders. When Per(O)
// lies in N Z^2, reducing mod N gives a subset of SL(2, Z/N) containing the
// image of the Veech group.
struct PeriodCertificate {
  struct Zero {
    std::size_t vertex = 0;
    std::size_t order = 0;
    std::int64_t x = 0;  // position relative to the base zero, mod N
    std::int64_t y = 0;
  };

  std::int64_t level = 1;
  // Hermite basis of Per(O): columns (a, 0) and (b, d).
  std::int64_t a = 0, b = 0, d = 0;
  bool lattice_in_level = false;
  std::size_t base_vertex = 0;
  std::vector<Zero> zeros;
  // Elements D of SL(2, Z/N) for which some x -> D x + x(z') sends the
  // positions of the zeros of each order to themselves as a multiset.
  std::vector<SL2Matrix> compatible;

  // Per(O) in N Z^2 and only the identity is compatible: Veech(O) lies in Gamma(N).
  bool proves_gamma() const;
  std::string to_json() const;
};

// Throws Error for surfaces without zeros.
PeriodCertificate period_certificate(Origami const& o, std::int64_t N);

std::string orbit_to_dot(OrbitResult const& r);
// {"index": .., "generators": [..], "gamma_levels": {"N": bool}}
std::string orbit_to_json(OrbitResult const& r, std::vector<std::int64_t> const& levels);

}  // namespace origami
