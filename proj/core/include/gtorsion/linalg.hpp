#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gtorsion/int_matrix.hpp"

namespace gtorsion {

/// Finitely generated abelian group Z^free_rank + Z/t_1 + ... + Z/t_k with
/// t_1 | t_2 | ... | t_k and every t_i >= 2.
struct AbelianInvariants {
  std::size_t free_rank{0};
  std::vector<Integer> torsion;

  /// Normalizes arbitrary cyclic orders (entries 0 count as free, 1 are dropped)
  /// into the invariant-factor chain.
  static AbelianInvariants from_cyclic_orders(std::size_t free_rank, const std::vector<Integer>& orders);

  [[nodiscard]] bool is_trivial() const noexcept { return free_rank == 0 && torsion.empty(); }
  [[nodiscard]] bool is_torsion_free() const noexcept { return torsion.empty(); }
  /// Order of the torsion subgroup.
  [[nodiscard]] Integer torsion_order() const;
  /// Checks t_i >= 2 and the divisibility chain.
  [[nodiscard]] bool is_valid() const;
  /// Human-readable form, e.g. "Z^3 + (Z/2)^2 + Z/4"; "0" for the trivial group.
  [[nodiscard]] std::string to_string() const;
  /// Torsion subgroup only, as an AbelianInvariants with free_rank 0.
  [[nodiscard]] AbelianInvariants torsion_part() const { return {0, torsion}; }
  /// The p-primary part of the torsion, as elementary divisors p^k.
  [[nodiscard]] std::vector<Integer> p_primary(const Integer& p) const;

  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

[[nodiscard]] AbelianInvariants direct_sum(const AbelianInvariants& a, const AbelianInvariants& b);

/// U * A * V == D with U, V unimodular and D diagonal (d_1 | d_2 | ... | d_rank, rest zero).
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix V;
  IntMatrix D;
  /// Present only when requested through SmithOptions::inverses.
  IntMatrix U_inverse;
  IntMatrix V_inverse;
  std::size_t rank{0};
  /// Nonzero diagonal entries, units included.
  std::vector<Integer> diagonal;
  /// Nonzero non-unit diagonal entries.
  std::vector<Integer> invariant_factors;
};

struct SmithOptions {
  bool transforms{true};
  bool inverses{false};
};

struct HermiteDecomposition {
  /// Row-style echelon form H == U * A, pivots positive, entries above a
  /// pivot reduced into [0, pivot).
  IntMatrix H;
  IntMatrix U;
  std::vector<std::size_t> pivot_columns;
};

/// Checks U * a * V == D, D diagonal with a divisibility chain and positive
/// entries, and U, V unimodular (through the stored inverses when present,
/// otherwise through determinants). Requires transforms.
[[nodiscard]] bool check_smith_certificate(const IntMatrix& a, const SmithDecomposition& d);

/// While alive, every smith_normal_form call on this thread also builds both
/// transforms with inverses and runs check_smith_certificate on the result.
/// Scopes nest; the innermost one counts.
class SmithAudit {
 public:
  SmithAudit();
  ~SmithAudit();
  SmithAudit(const SmithAudit&) = delete;
  SmithAudit& operator=(const SmithAudit&) = delete;

  [[nodiscard]] std::size_t checked() const noexcept { return checked_; }
  [[nodiscard]] std::size_t failed() const noexcept { return failed_; }
  /// Largest input seen, as rows x cols.
  [[nodiscard]] std::pair<std::size_t, std::size_t> largest() const noexcept { return largest_; }

  void record(const IntMatrix& a, bool ok);

 private:
  SmithAudit* previous_;
  std::size_t checked_{0};
  std::size_t failed_{0};
  std::pair<std::size_t, std::size_t> largest_{0, 0};
};

[[nodiscard]] HermiteDecomposition hermite_normal_form(const IntMatrix& a, bool want_transform = true);

/// Smith normal form by direct elimination.
/// Pivot rule: nonzero entry of least absolute value, ties broken by lowest
/// row, then lowest column.
[[nodiscard]] SmithDecomposition smith_normal_form(const IntMatrix& a, SmithOptions options = {});

/// Columns form a saturated Z-basis of {x : a x = 0}, in Hermite form.
[[nodiscard]] IntMatrix kernel_basis(const IntMatrix& a);

/// Structure of Z^rows / column-span(a).
[[nodiscard]] AbelianInvariants cokernel_invariants(const IntMatrix& a);

[[nodiscard]] std::size_t rank(const IntMatrix& a);

/// Returns x with b x == v when v lies in the Z-span of b's columns.
[[nodiscard]] std::optional<IntVector> solve_in_lattice(const IntMatrix& b, const IntVector& v);

/// Repeated solves against a fixed column basis.
class LatticeSolver {
 public:
  explicit LatticeSolver(const IntMatrix& basis);
  [[nodiscard]] std::optional<IntVector> solve(const IntVector& v) const;
  [[nodiscard]] std::size_t ambient_dimension() const noexcept { return rows_; }
  [[nodiscard]] std::size_t basis_size() const noexcept { return cols_; }

 private:
  std::size_t rows_{0};
  std::size_t cols_{0};
  SmithDecomposition snf_;
};

[[nodiscard]] bool is_unimodular(const IntMatrix& m);

}  // namespace gtorsion
