#pragma once

#include "gtorsion/modules.hpp"

namespace gtorsion {

/// C2 -> C1 -> C0 -> Z from a presentation. Chains are row vectors over
/// Z[pi] and maps act on the right: C2 = (Z pi)^relators, C1 = (Z pi)^gens.
struct PartialResolution {
  GroupPtr group;
  /// gens x 1, entry g - 1.
  GroupRingMatrix d1;
  /// relators x gens, entry d r / d g (Fox derivative).
  GroupRingMatrix d2;
  SparseMatrix d1_z;
  SparseMatrix d2_z;
};

/// Builds d1, d2 and checks d2 d1 = 0, augmentation after d1 is zero, and
/// exactness at C1 (rank of ker d1 equals rank of im d2, with torsion-free
/// cokernel of d2). Throws PresentationDeficiencyError when the relators do
/// not generate all relations.
[[nodiscard]] PartialResolution presentation_complex(const GroupPtr& g);

/// ker(d2) as a lattice; its basis vectors are recorded as provenance lifts
/// in C2.
[[nodiscard]] LatticeModule ker_d2(const PartialResolution& r);

/// coker(d^2) where d^2 = d2* (involute-transpose) maps (Z pi)^gens to
/// (Z pi)^relators.
[[nodiscard]] LatticeModule coker_d2_dual(const PartialResolution& r);

/// The free resolution of Z over Z[C_n x C_m] in degrees 0..4 with the
/// standard matrices; row conventions as in PartialResolution.
struct AbelianResolution {
  GroupPtr group;
  GroupRingMatrix d1;  // 2 x 1
  GroupRingMatrix d2;  // 3 x 2
  GroupRingMatrix d3;  // 4 x 3
  GroupRingMatrix d4;  // 5 x 4
};
[[nodiscard]] AbelianResolution abelian_two_generator_resolution(int n, int m);
/// The same matrices over an existing group with generators a, b.
[[nodiscard]] AbelianResolution abelian_two_generator_resolution(const GroupPtr& g);

/// coker d4 = (Z pi)^4 / rows of d4, which is isomorphic to ker d2.
[[nodiscard]] FpModule ker_d2_presentation(const AbelianResolution& r);

/// Rank of the Z-span of the given vectors in Z^dim.
[[nodiscard]] std::size_t span_rank(std::size_t dim, std::vector<SparseVector> vectors);

}  // namespace gtorsion
