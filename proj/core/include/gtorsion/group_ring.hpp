#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "gtorsion/groups.hpp"
#include "gtorsion/int_matrix.hpp"

namespace gtorsion {

using GroupPtr = std::shared_ptr<const FiniteGroup>;

[[nodiscard]] inline GroupPtr share(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

/// An element of Z[pi], stored as one coefficient per group element.
class GroupRingElement {
 public:
  explicit GroupRingElement(GroupPtr group);
  GroupRingElement(GroupPtr group, std::vector<Integer> coeffs);

  static GroupRingElement zero(const GroupPtr& g) { return GroupRingElement(g); }
  static GroupRingElement one(const GroupPtr& g) { return basis(g, g->identity()); }
  static GroupRingElement basis(const GroupPtr& g, Element e, const Integer& c = Integer(1));

  [[nodiscard]] const GroupPtr& group() const noexcept { return group_; }
  [[nodiscard]] const FiniteGroup& g() const noexcept { return *group_; }
  [[nodiscard]] const std::vector<Integer>& coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] const Integer& operator[](Element e) const { return coeffs_[e]; }
  Integer& operator[](Element e) { return coeffs_[e]; }
  [[nodiscard]] bool is_zero() const;
  /// Sum of the coefficients.
  [[nodiscard]] Integer augmentation() const;

  GroupRingElement& operator+=(const GroupRingElement& y);
  GroupRingElement& operator-=(const GroupRingElement& y);
  GroupRingElement& operator*=(const Integer& c);
  friend GroupRingElement operator+(GroupRingElement x, const GroupRingElement& y) { return x += y; }
  friend GroupRingElement operator-(GroupRingElement x, const GroupRingElement& y) { return x -= y; }
  friend GroupRingElement operator-(GroupRingElement x) { return x *= Integer(-1); }
  friend GroupRingElement operator*(const Integer& c, GroupRingElement x) { return x *= c; }
  friend GroupRingElement operator*(const GroupRingElement& x, const GroupRingElement& y);
  friend bool operator==(const GroupRingElement& x, const GroupRingElement& y);

 private:
  void check_same_group(const GroupRingElement& y) const;

  GroupPtr group_;
  std::vector<Integer> coeffs_;
};

[[nodiscard]] GroupRingElement multiply(const GroupRingElement& x, const GroupRingElement& y);

/// N = sum of all group elements.
[[nodiscard]] GroupRingElement norm_element(const GroupPtr& g);
/// N_g = 1 + g + ... + g^{k-1}; requires g^k = 1.
[[nodiscard]] GroupRingElement partial_norm(const GroupPtr& grp, Element g, int k);

/// x_g = sum_{i=1}^{n-1} (n-i) g^i and y_g = sum_{i=0}^{n-1} i g^i for g of order n.
[[nodiscard]] std::pair<GroupRingElement, GroupRingElement> weighted_elements(const GroupPtr& grp, Element g,
                                                                             int n);

/// Coefficient of g moved to g^-1.
[[nodiscard]] GroupRingElement involute(const GroupRingElement& x);

/// A rows x cols matrix over Z[pi]; vectors are rows and maps act by right
/// multiplication, x -> x M.
class GroupRingMatrix {
 public:
  GroupRingMatrix(GroupPtr group, std::size_t rows, std::size_t cols);
  /// Every inner list is one row.
  GroupRingMatrix(GroupPtr group, std::vector<std::vector<GroupRingElement>> rows);

  [[nodiscard]] const GroupPtr& group() const noexcept { return group_; }
  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  GroupRingElement& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const GroupRingElement& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  [[nodiscard]] bool is_zero() const;
  /// Transpose with the involution applied entrywise (the dual map).
  [[nodiscard]] GroupRingMatrix involute_transpose() const;

  friend GroupRingMatrix operator*(const GroupRingMatrix& a, const GroupRingMatrix& b);
  friend bool operator==(const GroupRingMatrix& a, const GroupRingMatrix& b);

 private:
  GroupPtr group_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<GroupRingElement> data_;
};

/// Left regular representation: entry m_ij becomes the |pi| x |pi| block
/// L(m_ij) with L(m)[h][g] = coefficient of h in m g. This is a ring
/// homomorphism: expand(XY) = expand(X) expand(Y).
[[nodiscard]] IntMatrix expand_matrix(const GroupRingMatrix& m);

/// The Z-linear map x -> x M from (Z pi)^rows to (Z pi)^cols in the basis
/// g e_i (index i |pi| + g). Column (i, g) is the image of g e_i, so the
/// entry at row (j, h) is the coefficient of h in g M_ij.
[[nodiscard]] SparseMatrix expand_linear_map(const GroupRingMatrix& m);

/// Fox derivative of w with respect to generator `gen`, evaluated in Z[pi]:
/// d(uv) = du + u dv, d(g)/dg = 1, d(g^-1)/dg = -g^-1.
[[nodiscard]] GroupRingElement fox_derivative(const GroupPtr& grp, const Word& w, std::uint32_t gen);

/// Index permutation of left multiplication by e: h -> e h.
[[nodiscard]] std::vector<std::uint32_t> left_translation(const FiniteGroup& g, Element e);

}  // namespace gtorsion
