#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

#include "gtorsion/integer.hpp"

namespace gtorsion {

using IntVector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> init);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& columns);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] std::span<Integer> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  [[nodiscard]] std::span<const Integer> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  [[nodiscard]] IntVector column(std::size_t j) const;

  [[nodiscard]] IntMatrix transpose() const;
  [[nodiscard]] IntMatrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_identity() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

 private:
  std::size_t rows_{0};
  std::size_t cols_{0};
  std::vector<Integer> data_;
};

[[nodiscard]] IntVector multiply(const IntMatrix& a, std::span<const Integer> x);
[[nodiscard]] IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
[[nodiscard]] IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
/// Exact determinant by fraction-free (Bareiss) elimination.
[[nodiscard]] Integer determinant(const IntMatrix& a);

struct SparseEntry {
  std::uint32_t index;
  Integer value;
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Sorted list of nonzero (index, value) pairs.
using SparseVector = std::vector<SparseEntry>;

[[nodiscard]] SparseVector to_sparse(std::span<const Integer> dense);
[[nodiscard]] IntVector to_dense(const SparseVector& v, std::size_t n);
/// y += factor * x
void axpy(SparseVector& y, const Integer& factor, const SparseVector& x);
/// Returns the coefficient at `index` or zero.
[[nodiscard]] Integer coefficient(const SparseVector& v, std::uint32_t index);

/// Column-compressed sparse integer matrix; column j is the image of e_j.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_dense(const IntMatrix& m);
  /// Permutation matrix with e_j -> e_{perm[j]}.
  static SparseMatrix permutation(std::span<const std::uint32_t> perm);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return columns_.size(); }
  [[nodiscard]] std::size_t nonzeros() const;

  [[nodiscard]] const SparseVector& column(std::size_t j) const { return columns_[j]; }
  SparseVector& column(std::size_t j) { return columns_[j]; }

  [[nodiscard]] SparseVector apply(const SparseVector& x) const;
  [[nodiscard]] IntMatrix to_dense() const;
  [[nodiscard]] SparseMatrix transpose() const;
  [[nodiscard]] bool is_identity() const;

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) = default;
  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);

 private:
  std::size_t rows_{0};
  std::vector<SparseVector> columns_;
};

[[nodiscard]] SparseMatrix kronecker(const SparseMatrix& a, const SparseMatrix& b);
[[nodiscard]] SparseMatrix block_diagonal(const SparseMatrix& a, const SparseMatrix& b);
/// m^k for k >= 0.
[[nodiscard]] SparseMatrix power(const SparseMatrix& m, unsigned k);

}  // namespace gtorsion
