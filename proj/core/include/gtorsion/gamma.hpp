#pragma once

#include <utility>

#include "gtorsion/modules.hpp"

namespace gtorsion {

/// Whitehead's Gamma of a lattice module in the symmetric-square model.
///
/// Basis: v(b_i) for i ascending, then e_ij = b_i (x) b_j + b_j (x) b_i for
/// i < j in lexicographic order. Inside A (x) A, v(b_i) is b_i (x) b_i.
struct GammaIndex {
  std::size_t base_rank{0};

  [[nodiscard]] static std::size_t rank_for(std::size_t r) { return r * (r + 1) / 2; }
  [[nodiscard]] std::size_t size() const { return rank_for(base_rank); }
  [[nodiscard]] std::size_t v_index(std::size_t i) const { return i; }
  /// Index of e_ij, i < j.
  [[nodiscard]] std::size_t e_index(std::size_t i, std::size_t j) const {
    return base_rank + i * (2 * base_rank - i - 1) / 2 + (j - i - 1);
  }
  /// (i, i) for v(b_i), (i, j) with i < j for e_ij.
  [[nodiscard]] std::pair<std::size_t, std::size_t> label(std::size_t k) const;
};

struct GammaModule {
  LatticeModule module;
  GammaIndex index;
};

[[nodiscard]] GammaModule gamma(const LatticeModule& a, LatticeModule::Check check = LatticeModule::Check::full);

/// Gamma coordinates of the symmetric tensor sum_kl t[k][l] b_k (x) b_l
/// (t dense r x r). Throws ConsistencyError if t is not symmetric.
[[nodiscard]] IntVector gamma_coordinates(const IntMatrix& t);
/// The embedding Gamma(A) -> A (x) A applied to Gamma coordinates.
[[nodiscard]] IntMatrix gamma_embedding(std::size_t r, const IntVector& coords);

/// Checks, inside A (x) A with v(x) = x (x) x, that v(-a) = v(a) and
/// v(a+b+c) - v(b+c) - v(c+a) - v(a+b) + v(a) + v(b) + v(c) = 0, and that the
/// Gamma coordinates of each v(x) map back to x (x) x.
[[nodiscard]] bool gamma_map_check(const LatticeModule& a, const IntVector& x, const IntVector& y,
                                   const IntVector& z);

/// Gamma(A + B) = Gamma(A) + Gamma(B) + A (x) B, realized as a permutation of
/// canonical bases; a_i (x) c_j corresponds to e_{a_i, c_j}.
struct SumDecomposition {
  LatticeModule source;   // Gamma(A + B)
  LatticeModule target;   // Gamma(A) + Gamma(B) + A (x) B
  SparseMatrix iso;       // source coordinates -> target coordinates
  bool equivariant{false};
};
[[nodiscard]] SumDecomposition gamma_of_sum_decomposition(const LatticeModule& a, const LatticeModule& b);

}  // namespace gtorsion
