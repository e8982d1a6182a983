#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace origami {

using Point = std::uint32_t;

// Multiset of cycle lengths, stored sorted in descending order.
class CycleType {
 public:
  CycleType() = default;
  explicit CycleType(std::vector<std::size_t> parts);

  std::vector<std::size_t> const& parts() const { return parts_; }
  std::size_t total() const;
  std::size_t size() const { return parts_.size(); }

  // Human form "(3,1)".
  std::string str() const;

  friend bool operator==(CycleType const&, CycleType const&) = default;
  friend auto operator<=>(CycleType const&, CycleType const&) = default;

 private:
  std::vector<std::size_t> parts_;
};

// A bijection of {0, ..., n-1}. Immutable value type.
//
// Composition convention used everywhere in this library: `a * b` means
// "apply a first, then b", i.e. (a * b)(x) == b(a(x)).
class Permutation {
 public:
  Permutation() = default;
  static Permutation identity(std::size_t n);
  // Throws ParseError if `images` is not a bijection of [0, images.size()).
  static Permutation from_images(std::vector<Point> images);
  // 0-based cycles.
  static Permutation from_cycles(std::size_t n, std::vector<std::vector<Point>> const& cycles);

  std::size_t degree() const { return map_.size(); }
  Point operator()(Point x) const { return map_[x]; }
  Point operator[](Point x) const { return map_[x]; }
  std::span<Point const> images() const { return map_; }

  Permutation inverse() const;
  Permutation pow(long long k) const;
  bool is_identity() const;

  // Cycles including fixed points; each cycle starts at its smallest point
  // and cycles are ordered by that point.
  std::vector<std::vector<Point>> cycles() const;
  CycleType cycle_type() const;

  // 1-based cycle notation with fixed points omitted; identity prints "()".
  std::string str() const;

  friend bool operator==(Permutation const&, Permutation const&) = default;
  friend auto operator<=>(Permutation const&, Permutation const&) = default;

 private:
  explicit Permutation(std::vector<Point> map) : map_(std::move(map)) {}
  std::vector<Point> map_;
};

// Apply p, then q. Throws DegreeMismatch.
Permutation compose(Permutation const& p, Permutation const& q);
Permutation operator*(Permutation const& p, Permutation const& q);

// Product left to right: apply ps[0] first.
Permutation compose_all(std::size_t n, std::initializer_list<Permutation> ps);

// p^-1 * q^-1 * p * q in the left-to-right convention.
Permutation commutator(Permutation const& p, Permutation const& q);

CycleType cycle_type(Permutation const& p);

// Parse 1-based cycle notation such as "(1,6,3,8)(2,5,4,7)". Separators inside
// a cycle may be commas or whitespace.
Permutation parse_permutation(std::string_view text, std::size_t n);

// Orbit partition of the group generated by `gens`. Each block is sorted and
// blocks are ordered by their smallest point.
std::vector<std::vector<Point>> orbits(std::span<Permutation const> gens, std::size_t n);
bool is_transitive(std::span<Permutation const> gens, std::size_t n);

}  // namespace origami

template <>
struct std::hash<origami::Permutation> {
  std::size_t operator()(origami::Permutation const& p) const noexcept;
};
