// Exact rational linear algebra and integer lattice kernels.
//
// Everything here works over arbitrary-precision integers and rationals
// (GMP). There is deliberately no floating point in this header.
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace torusx {

using Integer = mpz_class;
using Rational = mpq_class;
using RatVector = std::vector<Rational>;
using IntVector = std::vector<Integer>;

/// Dense row-major matrix. Entries of a `Matrix<Rational>` are always in
/// canonical form because GMP canonicalizes after every arithmetic step.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Builds a matrix from row vectors. `cols` is needed when `rows` is empty.
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i].at(j);
    }
    return m;
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
    Matrix m(rows.size(), cols);
    std::size_t i = 0;
    for (const auto& r : rows) {
      std::size_t j = 0;
      for (long v : r) m(i, j++) = T(v);
      ++i;
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  std::vector<std::vector<T>> row_list() const {
    std::vector<std::vector<T>> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  void append_row(const std::vector<T>& r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;
using IntMatrix = Matrix<Integer>;

/// num/den in lowest terms. (The two-argument mpq_class constructor does not
/// canonicalize, and GMP arithmetic assumes canonical operands.)
inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

RatMatrix to_rational(const IntMatrix& m);
/// Scales each row by the lcm of its denominators.
IntMatrix clear_denominators(const RatMatrix& m);
IntVector clear_denominators(std::span<const Rational> v);
/// Divides an integer vector by the gcd of its entries (zero stays zero).
IntVector primitive(std::span<const Integer> v);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Integer dot(std::span<const Integer> a, std::span<const Integer> b);

/// Rank over Q, by fraction-free (Bareiss) elimination.
std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);

/// Reduced row echelon form with zero rows dropped.
RatMatrix rref(const RatMatrix& m);

/// Basis (as rows) of {x : m x = 0}.
RatMatrix rational_kernel(const RatMatrix& m);

struct SmithForm {
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix D;  // rows x cols, diagonal, d_1 | d_2 | ...
  IntMatrix V;  // cols x cols, unimodular
};

/// U * m * V == D.
SmithForm smith_normal_form(const IntMatrix& m);

/// Row-style Hermite normal form of the row lattice; zero rows dropped.
IntMatrix hermite_normal_form(const IntMatrix& m);

/// Linear subspace of Q^n, stored by its RREF basis so that equality is
/// structural.
class RatSubspace {
 public:
  explicit RatSubspace(std::size_t ambient_dim = 0);

  static RatSubspace span(std::size_t ambient_dim, const RatMatrix& generators);
  static RatSubspace span(std::size_t ambient_dim, const std::vector<RatVector>& generators);
  static RatSubspace full(std::size_t ambient_dim);
  static RatSubspace kernel_of(const RatMatrix& m);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return basis_.rows(); }
  const RatMatrix& basis() const { return basis_; }

  bool contains(std::span<const Rational> v) const;
  bool contains(const RatSubspace& other) const;
  RatSubspace orthogonal_complement() const;
  RatSubspace intersect(const RatSubspace& other) const;
  RatSubspace operator+(const RatSubspace& other) const;
  bool operator==(const RatSubspace& other) const = default;

 private:
  std::size_t ambient_dim_;
  RatMatrix basis_;
};

/// dim(a + b). Throws std::invalid_argument on an ambient mismatch.
std::size_t sum_dim(const RatSubspace& a, const RatSubspace& b);

/// Sublattice of Z^n given by a Hermite-normal-form basis. The zero lattice
/// has an empty basis and keeps its ambient dimension.
class IntLattice {
 public:
  explicit IntLattice(std::size_t ambient_dim = 0);

  static IntLattice from_generators(std::size_t ambient_dim, const IntMatrix& generators);
  static IntLattice full(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }
  bool is_saturated() const { return saturated_; }

  bool contains(std::span<const Integer> v) const;
  bool contains(std::span<const long> v) const;
  RatSubspace rational_span() const;

  bool operator==(const IntLattice& other) const {
    return ambient_dim_ == other.ambient_dim_ && basis_ == other.basis_;
  }

 private:
  std::size_t ambient_dim_;
  IntMatrix basis_;
  bool saturated_ = true;
};

/// Saturated lattice {v in Z^n : m v = 0}.
IntLattice kernel_lattice(const IntMatrix& m);

/// (Q (x) l) intersected with Z^n.
IntLattice saturate(const IntLattice& l);

/// Nonzero vector of least L1 norm (at most `bound`), ties broken by
/// lexicographic order. Exhaustive enumeration of the L1 ball.
std::optional<std::vector<long>> l1_shortest_nonzero(const IntLattice& l, long bound);

std::string to_string(const Rational& q);

}  // namespace torusx
