#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gtorsion {

using Element = std::uint32_t;

struct Letter {
  std::uint32_t generator;  // position in FiniteGroup::generators()
  int exponent;             // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

struct Word {
  std::vector<Letter> letters;

  static Word power(std::uint32_t generator, int k);
  /// x y x^-1 y^-1 for generators x, y.
  static Word commutator(std::uint32_t x, std::uint32_t y);
  [[nodiscard]] Word inverse() const;
  friend Word operator*(Word a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;
};

struct Generator {
  std::string name;
  Element element;
  friend bool operator==(const Generator&, const Generator&) = default;
};

/// A finite group given by its Cayley table, together with designated
/// generators and relator words. The table is the ground truth; the
/// presentation is data that is validated against it.
class FiniteGroup {
 public:
  /// Validates the table (closure, identity, inverses, associativity),
  /// generation, and every relator. Throws InvalidArgumentError.
  FiniteGroup(std::string name, std::vector<std::vector<Element>> cayley, std::vector<Generator> generators,
              std::vector<Word> relators);

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] std::size_t order() const noexcept { return cayley_.size(); }
  [[nodiscard]] Element identity() const noexcept { return identity_; }
  [[nodiscard]] Element mul(Element a, Element b) const { return cayley_[a][b]; }
  [[nodiscard]] Element inverse(Element a) const { return inverse_[a]; }
  [[nodiscard]] Element power(Element a, long k) const;
  [[nodiscard]] std::size_t element_order(Element a) const;
  [[nodiscard]] const std::vector<std::vector<Element>>& cayley() const noexcept { return cayley_; }
  [[nodiscard]] const std::vector<Generator>& generators() const noexcept { return generators_; }
  [[nodiscard]] const std::vector<Word>& relators() const noexcept { return relators_; }
  [[nodiscard]] bool is_abelian() const;

  /// Same group and generators with a different relator list (validated).
  [[nodiscard]] FiniteGroup with_relators(std::vector<Word> relators) const;
  [[nodiscard]] FiniteGroup renamed(std::string name) const;

  friend bool operator==(const FiniteGroup&, const FiniteGroup&) = default;

 private:
  std::string name_;
  std::vector<std::vector<Element>> cayley_;
  std::vector<Element> inverse_;
  Element identity_{0};
  std::vector<Generator> generators_;
  std::vector<Word> relators_;
};

[[nodiscard]] Element evaluate_word(const FiniteGroup& g, const Word& w);

/// A shortest word in the generators representing `e`.
[[nodiscard]] Word word_for_element(const FiniteGroup& g, Element e);

/// C_{k1} x ... x C_{kr}, one generator per factor; relators in the order
/// p_1, [g1,g2], ..., [g1,gr], p_2, [g2,g3], ..., p_r where p_i = g_i^{k_i}.
/// Elements are indexed in mixed radix with the first factor most significant.
[[nodiscard]] FiniteGroup make_abelian(std::span<const int> invariant_factors);
[[nodiscard]] FiniteGroup make_abelian(std::initializer_list<int> invariant_factors);

/// C_n x C_m = <a, b | a^n, [a,b], b^m>. Unlike make_abelian, n or m may be 1,
/// in which case the corresponding generator is the identity.
[[nodiscard]] FiniteGroup two_generator_abelian(int n, int m);

/// The trivial group with no generators.
[[nodiscard]] FiniteGroup trivial_group();

/// Dihedral group of order 2k: <r, s | r^k, s^2, srsr>, k >= 2.
[[nodiscard]] FiniteGroup dihedral(int k);

/// <i, j | i^4, i^2 j^-2, j^-1 i j i>, built from unit quaternions.
[[nodiscard]] FiniteGroup quaternion8();

/// G x H, element index i_G * |H| + i_H; generators of G then H; relators of
/// G, relators of H, then every [g, h].
[[nodiscard]] FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

[[nodiscard]] const std::vector<std::string>& catalog_names();
/// Throws CatalogMissError listing the valid names.
[[nodiscard]] FiniteGroup catalog(std::string_view name);

/// Group-spec DSL: factors "C<n>", "D<2k>" or "Q8" joined by 'x', e.g.
/// "C4xC2xC2" or "Q8xC2". An all-cyclic spec goes through make_abelian.
[[nodiscard]] FiniteGroup parse_group_spec(std::string_view spec);
/// Order of the group a spec describes, without building it.
[[nodiscard]] std::uint64_t group_spec_order(std::string_view spec);

/// Group-file JSON: {"order", "cayley", "generators": [{"name","element"}],
/// "relators": [[["a",1], ...], ...]}, optional "name".
[[nodiscard]] FiniteGroup group_from_json(std::string_view text);
[[nodiscard]] std::string group_to_json(const FiniteGroup& g);

/// Elements of the subgroup generated by `gens`, ascending.
[[nodiscard]] std::vector<Element> subgroup_closure(const FiniteGroup& g, std::span<const Element> gens);

/// Element set of a Sylow p-subgroup, ascending.
[[nodiscard]] std::vector<Element> sylow_subgroup(const FiniteGroup& g, unsigned p);

/// A subgroup as a group in its own right.
struct Subgroup {
  FiniteGroup group;
  /// group element index -> ambient element index
  std::vector<Element> embedding;
  /// each subgroup generator as a word in the ambient generators
  std::vector<Word> generator_words;
};

/// Generators are chosen greedily by ascending element index; relators are
/// only the power relators g^{ord g}, which is enough for action checks but
/// not a full presentation.
[[nodiscard]] Subgroup make_subgroup(const FiniteGroup& g, std::span<const Element> elements);

}  // namespace gtorsion
