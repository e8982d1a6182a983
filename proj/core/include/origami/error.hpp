#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace origami {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

// Raised when a generated permutation group is not transitive. Carries the
// orbit partition so callers can report which pieces fell apart.
class NotConnected : public Error {
 public:
  NotConnected(std::string const& what, std::vector<std::vector<std::uint32_t>> parts)
      : Error(what), orbits(std::move(parts)) {}

  std::vector<std::vector<std::uint32_t>> orbits;
};

// Fibre product whose componentwise action splits into several orbits.
class NotTransitive : public NotConnected {
 public:
  using NotConnected::NotConnected;
};

class NotEquivariant : public Error {
 public:
  NotEquivariant(std::string const& what, std::size_t square)
      : Error(what), witness_square(square) {}

  std::size_t witness_square;
};

class NonConstantFiber : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  CapExceeded(std::string const& what, std::size_t cap_)
      : Error(what), cap(cap_) {}

  std::size_t cap;
};

class RankUnexpected : public Error {
 public:
  using Error::Error;
};

}  // namespace origami
