#pragma once

#include <cstddef>

#include "origami/covering.hpp"

namespace origami {

// Sheets of the product over a base square are pairs (a, b), a a sheet of the
// first factor and b of the second, stored as index a * d2 + b.
struct ProductSheets {
  std::size_t d1 = 0;
  std::size_t d2 = 0;

  std::size_t index(std::size_t a, std::size_t b) const { return a * d2 + b; }
  std::size_t first(std::size_t sheet) const { return sheet / d2; }
  std::size_t second(std::size_t sheet) const { return sheet % d2; }
};

struct FibreProduct {
  ProductSheets sheets;
  Origami origami;         // square (t, a, b) has index t * d1 * d2 + a * d2 + b
  CoveringMap to_first;    // Z -> source of c1
  CoveringMap to_second;   // Z -> source of c2
  CoveringMap to_base;     // Z -> common target; equals c1 . to_first and c2 . to_second
};

// Both covers must have the same target origami with the same labelling.
// Throws NotTransitive with the orbit partition when the componentwise action
// is not transitive.
FibreProduct fake_fibre_product(CoveringMap const& c1, CoveringMap const& c2);

// Each pair (e, f) contributes gcd(e, f) points of index lcm(e, f).
RamificationProfile predicted_profile(RamificationProfile const& p1,
                                      RamificationProfile const& p2);

}  // namespace origami
