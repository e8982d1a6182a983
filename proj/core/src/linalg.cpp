#include "origami/linalg.hpp"

#include <algorithm>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "origami/error.hpp"

namespace origami {

namespace {

using Big = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

std::int64_t add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw Error("integer matrix overflow");
  return r;
}

std::int64_t mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw Error("integer matrix overflow");
  return r;
}

std::int64_t to_int64(Big const& b) {
  if (b > Big(INT64_MAX) || b < Big(INT64_MIN)) throw Error("integer matrix overflow");
  return static_cast<std::int64_t>(b);
}

using RatMatrix = std::vector<std::vector<Rat>>;
using BigMatrix = std::vector<std::vector<Big>>;

RatMatrix to_rat(IntMatrix const& m) {
  RatMatrix r(m.rows(), std::vector<Rat>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = m(i, j);
  }
  return r;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    Rat inv = 1 / a[row][c];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c] == 0) continue;
      Rat f = a[r][c];
      for (std::size_t k = 0; k < a[r].size(); ++k) a[r][k] -= f * a[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::vector<std::vector<std::int64_t>> const& rows) {
  std::size_t c = rows.empty() ? 0 : rows[0].size();
  IntMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw Error("from_rows: ragged rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(std::vector<std::vector<std::int64_t>> const& cols,
                                  std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw Error("from_columns: column of wrong length");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

std::vector<std::int64_t> IntMatrix::column(std::size_t c) const {
  std::vector<std::int64_t> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

std::vector<std::int64_t> IntMatrix::row(std::size_t r) const {
  return std::vector<std::int64_t>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

IntMatrix IntMatrix::columns(std::size_t c0, std::size_t count) const {
  IntMatrix m(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(i, c0 + j);
  }
  return m;
}

IntMatrix IntMatrix::stack(IntMatrix const& below) const {
  if (below.cols_ != cols_ && rows_ != 0 && below.rows_ != 0) {
    throw Error("stack: column counts differ");
  }
  IntMatrix m(rows_ + below.rows_, std::max(cols_, below.cols_));
  std::copy(data_.begin(), data_.end(), m.data_.begin());
  std::copy(below.data_.begin(), below.data_.end(),
            m.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::int64_t x) { return x == 0; });
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    }
  }
  return true;
}

std::string IntMatrix::str() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) out << ',';
    out << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out << ',';
      out << (*this)(i, j);
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

IntMatrix operator*(IntMatrix const& x, IntMatrix const& y) {
  if (x.cols() != y.rows()) throw DegreeMismatch("matrix product: shape mismatch");
  IntMatrix r(x.rows(), y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t k = 0; k < x.cols(); ++k) {
      std::int64_t a = x(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < y.cols(); ++j) {
        if (y(k, j) != 0) r(i, j) = add(r(i, j), mul(a, y(k, j)));
      }
    }
  }
  return r;
}

IntMatrix operator+(IntMatrix const& x, IntMatrix const& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw DegreeMismatch("matrix sum: shape mismatch");
  }
  IntMatrix r(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) r(i, j) = add(x(i, j), y(i, j));
  }
  return r;
}

IntMatrix operator-(IntMatrix const& m) { return -1 * m; }

IntMatrix operator*(std::int64_t k, IntMatrix const& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = mul(k, m(i, j));
  }
  return r;
}

std::vector<std::int64_t> operator*(IntMatrix const& m, std::vector<std::int64_t> const& v) {
  if (m.cols() != v.size()) throw DegreeMismatch("matrix-vector product: shape mismatch");
  std::vector<std::int64_t> r(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0 && v[j] != 0) r[i] = add(r[i], mul(m(i, j), v[j]));
    }
  }
  return r;
}

std::size_t rank(IntMatrix const& m) {
  auto a = to_rat(m);
  return rref(a, m.cols()).size();
}

std::int64_t determinant(IntMatrix const& m) {
  if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
  std::size_t n = m.rows();
  auto a = to_rat(m);
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Rat f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return to_int64(boost::multiprecision::numerator(det));
}

std::optional<IntMatrix> solve_integral(IntMatrix const& a, IntMatrix const& b) {
  if (a.rows() != b.rows()) throw DegreeMismatch("solve: row counts differ");
  std::size_t n = a.cols();
  RatMatrix aug(a.rows(), std::vector<Rat>(n + b.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) aug[i][n + j] = b(i, j);
  }
  auto pivots = rref(aug, n);
  // Inconsistent rows: zero in the A part, nonzero on the right.
  for (std::size_t r = pivots.size(); r < aug.size(); ++r) {
    for (std::size_t j = n; j < n + b.cols(); ++j) {
      if (aug[r][j] != 0) return std::nullopt;
    }
  }
  IntMatrix x(n, b.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Rat v = aug[r][n + j];
      if (boost::multiprecision::denominator(v) != 1) return std::nullopt;
      x(pivots[r], j) = to_int64(boost::multiprecision::numerator(v));
    }
  }
  return x;
}

IntMatrix unimodular_inverse(IntMatrix const& m) {
  if (m.rows() != m.cols()) throw Error("inverse of a non-square matrix");
  auto d = determinant(m);
  if (d != 1 && d != -1) throw Error("matrix is not unimodular (det " + std::to_string(d) + ")");
  auto inv = solve_integral(m, IntMatrix::identity(m.rows()));
  if (!inv) throw Error("unimodular inverse failed");
  return *inv;
}

IntMatrix integer_kernel(IntMatrix const& m) {
  // Column operations A U = [H | 0] with U unimodular; the columns of U that
  // become zero in A U form a Z-basis of the integer kernel.
  std::size_t rows = m.rows();
  std::size_t cols = m.cols();
  BigMatrix a(rows, std::vector<Big>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j);
  }
  BigMatrix u(cols, std::vector<Big>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) u[i][i] = 1;

  auto col_op = [&](std::size_t j, std::size_t k, Big const& p, Big const& q, Big const& r,
                    Big const& s) {
    // (col_j, col_k) <- (p col_j + q col_k, r col_j + s col_k)
    for (std::size_t i = 0; i < rows; ++i) {
      Big x = a[i][j], y = a[i][k];
      a[i][j] = p * x + q * y;
      a[i][k] = r * x + s * y;
    }
    for (std::size_t i = 0; i < cols; ++i) {
      Big x = u[i][j], y = u[i][k];
      u[i][j] = p * x + q * y;
      u[i][k] = r * x + s * y;
    }
  };

  std::size_t lead = 0;  // columns [0, lead) carry pivots
  for (std::size_t i = 0; i < rows && lead < cols; ++i) {
    for (std::size_t k = lead + 1; k < cols; ++k) {
      if (a[i][k] == 0) continue;
      Big x = a[i][lead], y = a[i][k];
      if (x == 0) {
        col_op(lead, k, 0, 1, 1, 0);
        continue;
      }
      // Extended gcd: g = s x + t y.
      Big old_r = x, r = y, old_s = 1, s = 0, old_t = 0, t = 1;
      while (r != 0) {
        Big qq = old_r / r;
        Big tmp = old_r - qq * r;
        old_r = r;
        r = tmp;
        tmp = old_s - qq * s;
        old_s = s;
        s = tmp;
        tmp = old_t - qq * t;
        old_t = t;
        t = tmp;
      }
      Big g = old_r;
      // New lead = old_s * x_col + old_t * y_col; new k = -(y/g) x_col + (x/g) y_col.
      col_op(lead, k, old_s, old_t, -(y / g), x / g);
    }
    if (a[i][lead] != 0) ++lead;
  }
  IntMatrix ker(cols, cols - lead);
  for (std::size_t j = lead; j < cols; ++j) {
    for (std::size_t i = 0; i < cols; ++i) ker(i, j - lead) = to_int64(u[i][j]);
  }
  return column_hermite_form(ker);
}

IntMatrix column_hermite_form(IntMatrix const& basis) {
  // Lower-triangular column-style Hermite form via the transpose.
  std::size_t rows = basis.rows();
  std::size_t cols = basis.cols();
  BigMatrix a(cols, std::vector<Big>(rows));  // row j = column j of basis
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[j][i] = basis(i, j);
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < rows && r < cols; ++c) {
    // Euclid on column c among rows r..cols-1.
    while (true) {
      std::size_t best = cols;
      for (std::size_t k = r; k < cols; ++k) {
        if (a[k][c] != 0 && (best == cols || abs(a[k][c]) < abs(a[best][c]))) best = k;
      }
      if (best == cols) break;
      std::swap(a[best], a[r]);
      bool done = true;
      for (std::size_t k = r + 1; k < cols; ++k) {
        if (a[k][c] == 0) continue;
        Big q = a[k][c] / a[r][c];
        for (std::size_t x = 0; x < rows; ++x) a[k][x] -= q * a[r][x];
        if (a[k][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r >= cols || a[r][c] == 0) continue;
    if (a[r][c] < 0) {
      for (auto& x : a[r]) x = -x;
    }
    for (std::size_t k = 0; k < r; ++k) {
      Big q = a[k][c] / a[r][c];
      if (a[k][c] - q * a[r][c] < 0) q -= 1;
      for (std::size_t x = 0; x < rows; ++x) a[k][x] -= q * a[r][x];
    }
    ++r;
  }
  IntMatrix out(rows, r);
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = to_int64(a[j][i]);
  }
  return out;
}

}  // namespace origami
