#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gtorsion/int_matrix.hpp"
#include "gtorsion/linalg.hpp"

namespace gtorsion {

/// Gaussian elimination restricted to unit pivots over a set of sparse
/// integer row vectors in Z^ncols.
///
/// Rows are consumed shortest-first; within a row the unit entry whose column
/// is shared by the fewest other rows is chosen. Every row containing the
/// pivot column is cleared with an exact integer row operation, so the row
/// lattice is preserved. What is left when no row carries a +-1 entry is the
/// residual, supported on the non-pivot ("free") columns only.
class SparseElimination {
 public:
  struct Pivot {
    std::uint32_t column;
    /// Row used for the pivot, with coefficient `unit` at `column`.
    SparseVector row;
    std::int64_t unit;
  };

  SparseElimination(std::size_t ncols, std::vector<SparseVector> rows, bool keep_pivots = true);

  [[nodiscard]] std::size_t ncols() const noexcept { return ncols_; }
  /// Pivots in elimination order. A pivot row only involves its own column,
  /// columns pivoted later, and free columns.
  [[nodiscard]] const std::vector<Pivot>& pivots() const noexcept { return pivots_; }
  [[nodiscard]] std::size_t pivot_count() const noexcept { return pivot_count_; }
  /// Non-pivot columns, ascending.
  [[nodiscard]] const std::vector<std::uint32_t>& free_columns() const noexcept { return free_; }
  [[nodiscard]] const std::vector<SparseVector>& residual() const noexcept { return residual_; }
  [[nodiscard]] bool is_pivot_column(std::uint32_t c) const { return pivot_col_[c]; }

  /// Residual rows as a dense matrix over `columns` (ascending free columns
  /// that occur in some residual row). Also returns that column list.
  [[nodiscard]] IntMatrix dense_residual(std::vector<std::uint32_t>& columns) const;

 private:
  std::size_t ncols_;
  std::size_t pivot_count_{0};
  std::vector<Pivot> pivots_;
  std::vector<bool> pivot_col_;
  std::vector<std::uint32_t> free_;
  std::vector<SparseVector> residual_;
};

/// Structure of Z^ncols / rowspan(rows).
[[nodiscard]] AbelianInvariants sparse_cokernel(std::size_t ncols, std::vector<SparseVector> rows);

/// The lattice {x in Z^ncols : <r, x> = 0 for every row r}.
class SparseKernel {
 public:
  SparseKernel(std::size_t ncols, std::vector<SparseVector> rows);

  [[nodiscard]] std::size_t ambient_dimension() const noexcept { return elim_.ncols(); }
  [[nodiscard]] std::size_t dimension() const noexcept { return unconstrained_.size() + dense_kernel_.cols(); }

  /// k-th basis vector in the ambient coordinates.
  [[nodiscard]] SparseVector basis_vector(std::size_t k) const;
  /// All basis vectors.
  [[nodiscard]] std::vector<SparseVector> basis() const;
  /// Coordinates of a kernel element in the basis, read off the free
  /// coordinates. Returns nullopt only when those coordinates are already
  /// inconsistent; full membership is checked by contains().
  [[nodiscard]] std::optional<IntVector> coordinates(const SparseVector& x) const;
  [[nodiscard]] bool contains(const SparseVector& x) const;

 private:
  void back_substitute(std::vector<Integer>& x) const;
  [[nodiscard]] SparseVector expand(const IntVector& coords) const;

  SparseElimination elim_;
  std::vector<std::uint32_t> unconstrained_;  // free columns not in the residual
  std::vector<std::uint32_t> constrained_;    // free columns in the residual
  IntMatrix dense_kernel_;                    // |constrained| x kd
  std::optional<LatticeSolver> solver_;
};

/// The quotient Z^ncols / rowspan(rows), required to be torsion free.
class SparseQuotient {
 public:
  /// Throws NotALatticeError (see errors.hpp) when the quotient has torsion.
  SparseQuotient(std::size_t ncols, std::vector<SparseVector> rows);

  [[nodiscard]] std::size_t ambient_dimension() const noexcept { return elim_.ncols(); }
  [[nodiscard]] std::size_t rank() const noexcept { return unconstrained_.size() + (constrained_.size() - residual_rank_); }

  /// Image of x in Z^rank().
  [[nodiscard]] IntVector project(const SparseVector& x) const;
  /// A preimage in Z^ncols of the k-th quotient basis vector.
  [[nodiscard]] SparseVector lift(std::size_t k) const;

 private:
  SparseElimination elim_;
  std::vector<std::uint32_t> unconstrained_;
  std::vector<std::uint32_t> constrained_;
  std::vector<std::int64_t> column_slot_;  // ambient column -> position in unconstrained_ or -(pos+2) in constrained_
  std::size_t residual_rank_{0};
  IntMatrix V_;
  IntMatrix V_inverse_;
};

}  // namespace gtorsion
