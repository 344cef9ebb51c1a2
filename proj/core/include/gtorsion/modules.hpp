#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gtorsion/group_ring.hpp"
#include "gtorsion/linalg.hpp"

namespace gtorsion {

/// Breadth-first spanning tree of the left Cayley graph: every non-identity
/// element e is s * parent(e) for a generator s.
struct ElementTree {
  std::vector<Element> order;  // identity first, parents before children
  std::vector<Element> parent;
  std::vector<std::uint32_t> generator;
};
[[nodiscard]] ElementTree element_tree(const FiniteGroup& g);

/// Where a lattice basis came from: the lift of each basis vector into an
/// ambient free module of the given Z-dimension.
struct Provenance {
  std::string description;
  std::size_t ambient_dimension{0};
  std::vector<SparseVector> lifts;
};

/// A Z-free module of finite rank with a left pi-action, given by one
/// integer matrix per generator. Matrices use the column convention: column
/// j is the image of the j-th basis vector.
class LatticeModule {
 public:
  enum class Check { full, none };

  /// With Check::full, verifies g^{ord g} = I for every generator (so each
  /// matrix is invertible over Z) and that every relator evaluates to I.
  LatticeModule(GroupPtr group, std::size_t zrank, std::vector<SparseMatrix> action, Check check = Check::full);

  [[nodiscard]] const GroupPtr& group() const noexcept { return group_; }
  [[nodiscard]] const FiniteGroup& g() const noexcept { return *group_; }
  [[nodiscard]] std::size_t zrank() const noexcept { return zrank_; }
  [[nodiscard]] const SparseMatrix& action(std::size_t generator) const { return action_[generator]; }
  [[nodiscard]] const std::vector<SparseMatrix>& actions() const noexcept { return action_; }

  /// Matrix of an arbitrary group element.
  [[nodiscard]] SparseMatrix element_action(Element e) const;
  /// Throws ConsistencyError describing the first failed check.
  void validate() const;

  [[nodiscard]] const std::optional<Provenance>& provenance() const noexcept { return provenance_; }
  void set_provenance(Provenance p) { provenance_ = std::move(p); }

 private:
  GroupPtr group_;
  std::size_t zrank_;
  std::vector<SparseMatrix> action_;
  std::optional<Provenance> provenance_;
};

/// (Z pi)^rank modulo the submodule generated by the relation rows.
struct FpModule {
  GroupPtr group;
  std::size_t rank{0};
  std::vector<std::vector<GroupRingElement>> relations;

  /// The Z-span of the relations: h * r for every relation r and h in pi,
  /// in the coordinates of Z^{rank |pi|} (index i |pi| + g).
  [[nodiscard]] std::vector<SparseVector> z_relations() const;
};

/// Z-basis chosen through a unit-pivot reduction of the relations and a
/// Smith form of what is left; throws NotALatticeError on torsion.
[[nodiscard]] LatticeModule lattice_from_presentation(const FpModule& p);
/// A presentation (Z pi)^r -> A sending e_i to the i-th basis vector; the
/// relations are a Z-basis of the kernel.
[[nodiscard]] FpModule present(const LatticeModule& a);

[[nodiscard]] LatticeModule free_module(const GroupPtr& g, std::size_t k = 1);
[[nodiscard]] LatticeModule trivial_module(const GroupPtr& g, std::size_t r = 1);
/// Basis {g - 1 : g != 1}.
[[nodiscard]] LatticeModule augmentation_ideal(const GroupPtr& g);
/// Z pi / N with basis the images of {g : g != 1}.
[[nodiscard]] LatticeModule quotient_by_norm(const GroupPtr& g);
/// Z pi / N_H for a subgroup H given by its elements.
[[nodiscard]] FpModule quotient_by_subgroup_norm(const GroupPtr& g, std::span<const Element> subgroup);

[[nodiscard]] LatticeModule direct_sum(const LatticeModule& a, const LatticeModule& b);
/// A (x)_Z B with the diagonal action; basis index i * zrank(B) + j.
[[nodiscard]] LatticeModule tensor(const LatticeModule& a, const LatticeModule& b);
/// A + (Z pi)^k.
[[nodiscard]] LatticeModule stabilize(const LatticeModule& a, std::size_t k);
/// The same module in the basis given by the columns of u (u_inverse = u^-1).
[[nodiscard]] LatticeModule change_basis(const LatticeModule& a, const IntMatrix& u, const IntMatrix& u_inverse);

/// A[G] over G x H for an H-module A: basis (gamma, i) at index
/// gamma * zrank(A) + i, action (g', h)(a gamma) = (h a)(g' gamma).
[[nodiscard]] LatticeModule induce(const LatticeModule& a, const GroupPtr& g);
/// (A (x) A)[G] modulo the submodule generated by (a (x) b) - (b (x) a) t for
/// an involution t of G, presented over G x H.
[[nodiscard]] FpModule flip_quotient(const LatticeModule& a, const GroupPtr& g, Element involution);

/// Restriction along a subgroup: each subgroup generator acts through its
/// word in the ambient generators.
[[nodiscard]] LatticeModule restrict(const LatticeModule& a, const Subgroup& h);

/// Structure of A / span{(s - 1) a}.
[[nodiscard]] AbelianInvariants coinvariants(const LatticeModule& a);
/// Torsion subgroup of the coinvariants.
[[nodiscard]] AbelianInvariants tate_h0(const LatticeModule& a);
/// Kernel of the norm map from the coinvariants to the fixed points.
[[nodiscard]] AbelianInvariants tate_h0_via_norm(const LatticeModule& a);
/// Runs both and throws ConsistencyError when they differ.
[[nodiscard]] AbelianInvariants tate_h0_checked(const LatticeModule& a);

/// The two-generator presentations for pi = <a, b | a^n, [a,b], b^m>.
/// M1 = (Z pi)^2 / <(N_a, 0), (0, N_b)>.
[[nodiscard]] FpModule M1(const GroupPtr& g);
/// M2 = (Z pi)^2 / <(1 - a, 0), (N_b, N_a), (0, b - 1)>.
[[nodiscard]] FpModule M2(const GroupPtr& g);
/// (Z pi)^3 / <(N_a, 1 - b, 0), (0, 1 - a, N_b)>.
[[nodiscard]] FpModule coker_presentation(const GroupPtr& g);

}  // namespace gtorsion
