#include <gtest/gtest.h>

#include <array>
#include <map>
#include <set>

#include "gtorsion/errors.hpp"
#include "gtorsion/groups.hpp"
#include "support/oracles.hpp"

using namespace gtorsion;

namespace {

/// Multiset of element orders, an isomorphism invariant.
std::map<std::size_t, std::size_t> order_census(const FiniteGroup& g) {
  std::map<std::size_t, std::size_t> c;
  for (Element e = 0; e < g.order(); ++e) ++c[g.element_order(e)];
  return c;
}

/// Closure of a set of generators under a multiplication, by breadth-first
/// search. Returns every element reached.
template <class T, class Mul>
std::vector<T> closure(const std::vector<T>& gens, const T& one, Mul mul) {
  std::vector<T> out{one};
  std::set<T> seen{one};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& s : gens) {
      const T next = mul(s, out[i]);
      if (seen.insert(next).second) out.push_back(next);
    }
  return out;
}

template <class T, class Mul>
std::map<std::size_t, std::size_t> census_of(const std::vector<T>& elems, const T& one, Mul mul) {
  std::map<std::size_t, std::size_t> c;
  for (const auto& x : elems) {
    std::size_t k = 1;
    for (T y = x; y != one; y = mul(y, x)) ++k;
    ++c[k];
  }
  return c;
}

using Perm = std::array<int, 4>;
Perm compose(const Perm& a, const Perm& b) {  // a after b
  Perm c{};
  for (int i = 0; i < 4; ++i) c[i] = a[b[i]];
  return c;
}

/// Gaussian-integer 2x2 matrices stored as (re, im) pairs, row-major.
using Mat = std::array<int, 8>;
Mat matmul(const Mat& a, const Mat& b) {
  Mat c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const int ar = a[2 * (2 * i + k)], ai = a[2 * (2 * i + k) + 1];
        const int br = b[2 * (2 * k + j)], bi = b[2 * (2 * k + j) + 1];
        c[2 * (2 * i + j)] += ar * br - ai * bi;
        c[2 * (2 * i + j) + 1] += ar * bi + ai * br;
      }
  return c;
}

}  // namespace

TEST(Abelian, KleinFour) {
  const auto g = make_abelian({2, 2});
  EXPECT_EQ(g.order(), 4u);
  EXPECT_EQ(g.generators().size(), 2u);
  EXPECT_EQ(g.relators().size(), 3u);
  EXPECT_TRUE(g.is_abelian());
}

TEST(Abelian, FourTwoTwo) {
  const auto g = make_abelian({4, 2, 2});
  EXPECT_EQ(g.order(), 16u);
  EXPECT_EQ(g.name(), "C4xC2xC2");
  // Relators: p1, [g1,g2], [g1,g3], p2, [g2,g3], p3.
  ASSERT_EQ(g.relators().size(), 6u);
  EXPECT_EQ(g.relators()[0], Word::power(0, 4));
  EXPECT_EQ(g.relators()[1], Word::commutator(0, 1));
  EXPECT_EQ(g.relators()[5], Word::power(2, 2));
}

TEST(Abelian, Cyclic) {
  const auto g = make_abelian({6});
  EXPECT_EQ(g.order(), 6u);
  ASSERT_EQ(g.relators().size(), 1u);
  EXPECT_EQ(g.relators()[0], Word::power(0, 6));
}

TEST(Abelian, RejectsSmallFactor) {
  EXPECT_THROW((void)make_abelian({1, 2}), InvalidArgumentError);
  EXPECT_THROW((void)make_abelian({}), InvalidArgumentError);
}

TEST(Words, EmptyWordIsIdentity) {
  const auto g = make_abelian({4});
  EXPECT_EQ(evaluate_word(g, Word{}), g.identity());
  EXPECT_EQ(evaluate_word(g, Word::power(0, 4)), g.identity());
  EXPECT_NE(evaluate_word(g, Word::power(0, 3)), g.identity());
}

TEST(Words, InverseAndProduct) {
  const auto g = dihedral(4);
  const Word w = Word::power(0, 1) * Word::power(1, 1);
  EXPECT_EQ(evaluate_word(g, w * w.inverse()), g.identity());
  for (Element e = 0; e < g.order(); ++e) EXPECT_EQ(evaluate_word(g, word_for_element(g, e)), e);
}

TEST(Dihedral, MatchesSymmetriesOfSquare) {
  // Oracle: D8 as permutations of the square's vertices.
  const Perm id{0, 1, 2, 3}, r{1, 2, 3, 0}, s{0, 3, 2, 1};
  const auto elems = closure<Perm>({r, s}, id, compose);
  ASSERT_EQ(elems.size(), 8u);
  EXPECT_EQ(compose(s, compose(r, compose(s, r))), id);  // s r s r = 1

  const auto g = catalog("D8");
  EXPECT_EQ(g.order(), 8u);
  EXPECT_FALSE(g.is_abelian());
  EXPECT_EQ(order_census(g), census_of<Perm>(elems, id, compose));
  const Word srsr{{{1, 1}, {0, 1}, {1, 1}, {0, 1}}};
  EXPECT_EQ(evaluate_word(g, srsr), g.identity());
}

TEST(Quaternion, MatchesMatrixModel) {
  // Oracle: i = diag(i, -i), j = [[0,1],[-1,0]] over the Gaussian integers.
  const Mat one{1, 0, 0, 0, 0, 0, 1, 0};
  const Mat i{0, 1, 0, 0, 0, 0, 0, -1};
  const Mat j{0, 0, 1, 0, -1, 0, 0, 0};
  const auto elems = closure<Mat>({i, j}, one, matmul);
  ASSERT_EQ(elems.size(), 8u);

  const auto g = catalog("Q8");
  EXPECT_EQ(g.order(), 8u);
  EXPECT_EQ(order_census(g), census_of<Mat>(elems, one, matmul));
  // Presentation <i, j | i^4, i^2 j^-2, j^-1 i j i>.
  ASSERT_EQ(g.relators().size(), 3u);
  EXPECT_EQ(g.relators()[0], Word::power(0, 4));
  EXPECT_EQ(g.relators()[1], Word::power(0, 2) * Word::power(1, -2));
  EXPECT_EQ(g.relators()[2], (Word{{{1, -1}, {0, 1}, {1, 1}, {0, 1}}}));
}

TEST(Catalog, OrdersAndSize) {
  const auto& names = catalog_names();
  EXPECT_EQ(names.size(), 29u);
  for (const auto& n : names) {
    const auto g = catalog(n);
    EXPECT_EQ(g.order(), group_spec_order(n)) << n;
    EXPECT_LE(g.order(), 16u);
  }
  EXPECT_EQ(catalog("C2xC2xC2xC2").order(), 16u);
  EXPECT_EQ(catalog("C1").order(), 1u);
  EXPECT_EQ(catalog("Q8xC2").order(), 16u);
}

TEST(Catalog, MissListsNames) {
  try {
    (void)catalog("A5");
    FAIL();
  } catch (const CatalogMissError& e) {
    EXPECT_NE(std::string(e.what()).find("Q8xC2"), std::string::npos);
  }
}

TEST(Catalog, DistinctOrderSixteenGroups) {
  // Element-order census plus abelianness tells the seven apart (C4xC4 and
  // Q8xC2 share a census).
  std::vector<std::string> sixteen;
  for (const auto& n : catalog_names())
    if (group_spec_order(n) == 16) sixteen.push_back(n);
  ASSERT_EQ(sixteen.size(), 7u);
  for (std::size_t a = 0; a < sixteen.size(); ++a)
    for (std::size_t b = a + 1; b < sixteen.size(); ++b) {
      const auto ga = catalog(sixteen[a]), gb = catalog(sixteen[b]);
      const bool same = order_census(ga) == order_census(gb) && ga.is_abelian() == gb.is_abelian();
      EXPECT_FALSE(same) << sixteen[a] << " vs " << sixteen[b];
    }
}

TEST(Spec, ParsesProductsAndTrivialFactors) {
  EXPECT_EQ(parse_group_spec("C2xC2").order(), 4u);
  EXPECT_EQ(parse_group_spec("Q8xC2").order(), 16u);
  EXPECT_EQ(parse_group_spec("D6").order(), 6u);
  EXPECT_EQ(order_census(parse_group_spec("C1xD8")), order_census(catalog("D8")));
  EXPECT_EQ(group_spec_order("C6xC6"), 36u);
  EXPECT_THROW((void)parse_group_spec(""), ParseError);
  EXPECT_THROW((void)parse_group_spec("C0"), ParseError);
  EXPECT_THROW((void)parse_group_spec("D7"), ParseError);
  EXPECT_THROW((void)parse_group_spec("S3"), ParseError);
  EXPECT_THROW((void)parse_group_spec("C2x"), ParseError);
  EXPECT_THROW((void)parse_group_spec("C1024"), InvalidArgumentError);
}

TEST(Products, DirectProductLayout) {
  const auto g = make_abelian({2});
  const auto h = dihedral(3);
  const auto p = direct_product(g, h);
  EXPECT_EQ(p.order(), 12u);
  EXPECT_EQ(p.generators().size(), 3u);
  // relators of G, of H, then [g, h] for each pair.
  EXPECT_EQ(p.relators().size(), g.relators().size() + h.relators().size() + 2);
  // index i_G |H| + i_H
  const Element x = 1 * 6 + 2;
  EXPECT_EQ(p.mul(x, x), g.mul(1, 1) * 6 + h.mul(2, 2));
}

TEST(Products, TrivialFactorIsIdentity) {
  const auto h = catalog("Q8");
  const auto p = direct_product(trivial_group(), h);
  EXPECT_EQ(p.order(), 8u);
  EXPECT_EQ(p.cayley(), h.cayley());
}

TEST(Validation, RejectsBrokenTables) {
  const std::vector<std::vector<Element>> not_assoc{{0, 1, 2}, {1, 0, 0}, {2, 0, 0}};
  EXPECT_THROW(FiniteGroup("bad", not_assoc, {{"a", 1}}, {}), InvalidArgumentError);
  const auto g = make_abelian({4});
  EXPECT_THROW((void)g.with_relators({Word::power(0, 2)}), InvalidArgumentError);
  // Generator that misses half the group.
  EXPECT_THROW(FiniteGroup("C4", g.cayley(), {{"a2", g.power(1, 2)}}, {}), InvalidArgumentError);
}

TEST(Json, RoundTrip) {
  for (const char* name : {"C1", "C4xC2", "D8", "Q8xC2"}) {
    const auto g = catalog(name);
    const auto back = group_from_json(group_to_json(g));
    EXPECT_EQ(back, g) << name;
  }
}

TEST(Json, Errors) {
  EXPECT_THROW((void)group_from_json("{"), ParseError);
  EXPECT_THROW((void)group_from_json(R"({"order": 2, "cayley": [[0,1],[1,0]], "generators": [{"name":"t","element":1}],
                                        "relators": [[["u", 2]]]})"),
               ParseError);
  EXPECT_THROW((void)group_from_json(R"({"order": 3, "cayley": [[0,1],[1,0]], "generators": [], "relators": []})"),
               ParseError);
  // A relator that does not hold is a validation failure.
  EXPECT_THROW((void)group_from_json(R"({"order": 2, "cayley": [[0,1],[1,0]], "generators": [{"name":"t","element":1}],
                                        "relators": [[["t", 1]]]})"),
               InvalidArgumentError);
}

TEST(Sylow, Examples) {
  const auto c6 = make_abelian({6});
  EXPECT_EQ(sylow_subgroup(c6, 2).size(), 2u);
  EXPECT_EQ(sylow_subgroup(c6, 3).size(), 3u);
  EXPECT_EQ(sylow_subgroup(catalog("D8"), 2).size(), 8u);
  EXPECT_EQ(sylow_subgroup(c6, 5).size(), 1u);
  EXPECT_THROW((void)sylow_subgroup(c6, 4), InvalidArgumentError);
}

TEST(Sylow, SizesAcrossCatalog) {
  for (const auto& name : catalog_names()) {
    const auto g = catalog(name);
    for (unsigned p : {2u, 3u, 5u, 7u}) {
      std::size_t expected = 1;
      for (std::size_t n = g.order(); n % p == 0; n /= p) expected *= p;
      const auto s = sylow_subgroup(g, p);
      ASSERT_EQ(s.size(), expected) << name << " p=" << p;
      ASSERT_EQ(subgroup_closure(g, s), s);
    }
  }
}

TEST(Subgroup, EmbeddingIsHomomorphism) {
  const auto g = catalog("Q8xC2");
  const auto s = make_subgroup(g, sylow_subgroup(g, 2));
  EXPECT_EQ(s.group.order(), 16u);
  const auto c = make_subgroup(g, subgroup_closure(g, std::vector<Element>{g.generators()[0].element}));
  EXPECT_EQ(c.group.order(), 4u);
  for (Element x = 0; x < c.group.order(); ++x)
    for (Element y = 0; y < c.group.order(); ++y)
      EXPECT_EQ(c.embedding[c.group.mul(x, y)], g.mul(c.embedding[x], c.embedding[y]));
  for (std::size_t k = 0; k < c.generator_words.size(); ++k)
    EXPECT_EQ(evaluate_word(g, c.generator_words[k]), c.embedding[c.group.generators()[k].element]);
}
