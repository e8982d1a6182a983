#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace origami {

// Dense row-major integer matrix. Arithmetic is checked: any int64 overflow
// throws Error.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::vector<std::vector<std::int64_t>> const& rows);
  static IntMatrix from_columns(std::vector<std::vector<std::int64_t>> const& cols,
                                std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::vector<std::int64_t> const& data() const { return data_; }

  std::vector<std::int64_t> column(std::size_t c) const;
  std::vector<std::int64_t> row(std::size_t r) const;
  IntMatrix transpose() const;
  // Columns [c0, c0 + count).
  IntMatrix columns(std::size_t c0, std::size_t count) const;
  // Rows of *this stacked above the rows of `below`.
  IntMatrix stack(IntMatrix const& below) const;
  bool is_zero() const;
  bool is_identity() const;

  friend bool operator==(IntMatrix const&, IntMatrix const&) = default;
  friend auto operator<=>(IntMatrix const&, IntMatrix const&) = default;
  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

IntMatrix operator*(IntMatrix const& x, IntMatrix const& y);
IntMatrix operator+(IntMatrix const& x, IntMatrix const& y);
IntMatrix operator-(IntMatrix const& x);
IntMatrix operator*(std::int64_t k, IntMatrix const& m);
std::vector<std::int64_t> operator*(IntMatrix const& m, std::vector<std::int64_t> const& v);

// Rank over Q.
std::size_t rank(IntMatrix const& m);
// Exact determinant of a square matrix.
std::int64_t determinant(IntMatrix const& m);
// Inverse of a unimodular matrix; throws Error if det is not +-1.
IntMatrix unimodular_inverse(IntMatrix const& m);
// Exact rational solution X of A X = B when it exists and is integral.
std::optional<IntMatrix> solve_integral(IntMatrix const& a, IntMatrix const& b);
// Z-basis (columns) of the integer kernel {x in Z^cols : m x = 0}. The
// lattice is saturated: it equals (ker m over Q) intersected with Z^cols.
IntMatrix integer_kernel(IntMatrix const& m);
// Reduce by the column Hermite form of the given column basis; two saturated
// bases span the same lattice iff their canonical forms agree.
IntMatrix column_hermite_form(IntMatrix const& basis);

}  // namespace origami
