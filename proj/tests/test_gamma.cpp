#include <gtest/gtest.h>

#include "gtorsion/gamma.hpp"
#include "support/oracles.hpp"

using namespace gtorsion;

namespace {

std::vector<Integer> ints(std::initializer_list<std::int64_t> xs) { return {xs.begin(), xs.end()}; }

LatticeModule sign_module(const GroupPtr& c2) {
  return LatticeModule(c2, 1, {SparseMatrix::from_dense(IntMatrix{{-1}})});
}

void expect_matches_tensor_square(const LatticeModule& a) {
  const auto gm = gamma(a);
  const auto expected = oracle::gamma_actions_via_tensor_square(a);
  ASSERT_EQ(gm.module.zrank(), GammaIndex::rank_for(a.zrank()));
  for (std::size_t s = 0; s < expected.size(); ++s) ASSERT_EQ(gm.module.action(s).to_dense(), expected[s]);
}

}  // namespace

TEST(GammaIndex, Layout) {
  const GammaIndex idx{4};
  EXPECT_EQ(idx.size(), 10u);
  EXPECT_EQ(idx.v_index(3), 3u);
  EXPECT_EQ(idx.e_index(0, 1), 4u);
  EXPECT_EQ(idx.e_index(0, 3), 6u);
  EXPECT_EQ(idx.e_index(1, 2), 7u);
  EXPECT_EQ(idx.e_index(2, 3), 9u);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const auto [i, j] = idx.label(k);
    EXPECT_EQ(i == j ? idx.v_index(i) : idx.e_index(i, j), k);
  }
}

TEST(Gamma, ZeroModule) {
  const auto g = share(make_abelian({2}));
  const auto gm = gamma(trivial_module(g, 0));
  EXPECT_EQ(gm.module.zrank(), 0u);
}

TEST(Gamma, TrivialRankTwo) {
  const auto g = share(make_abelian({3}));
  const auto gm = gamma(trivial_module(g, 2));
  EXPECT_EQ(gm.module.zrank(), 3u);
  EXPECT_TRUE(gm.module.action(0).is_identity());
}

TEST(Gamma, SignModuleBecomesTrivial) {
  // v(-a) = v(a).
  const auto c2 = share(make_abelian({2}));
  const auto gm = gamma(sign_module(c2));
  ASSERT_EQ(gm.module.zrank(), 1u);
  EXPECT_EQ(gm.module.action(0).to_dense(), (IntMatrix{{1}}));
  EXPECT_TRUE(tate_h0(gm.module).is_trivial());
}

TEST(Gamma, SignPlusTrivialHasMixedTerm) {
  // Gamma(Z- + Z): v's fixed, e_12 -> -e_12, so H0 = Z/2.
  const auto c2 = share(make_abelian({2}));
  const auto gm = gamma(direct_sum(sign_module(c2), trivial_module(c2)));
  EXPECT_EQ(gm.module.action(0).to_dense(), (IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}));
  EXPECT_EQ(tate_h0(gm.module).torsion, ints({2}));
  EXPECT_EQ(oracle::coinvariant_torsion(gm.module), ints({2}));
}

TEST(Gamma, FreeModuleOfC2) {
  // Gamma(Z C2) = Z C2 (the v's) + Z (e = 1 (x) t + t (x) 1 is fixed).
  const auto c2 = share(make_abelian({2}));
  const auto gm = gamma(free_module(c2));
  EXPECT_EQ(gm.module.action(0).to_dense(), (IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}));
  EXPECT_TRUE(tate_h0(gm.module).is_trivial());
}

TEST(Gamma, CoordinatesAndEmbedding) {
  const IntMatrix t{{1, 2, 0}, {2, 5, -1}, {0, -1, 3}};
  const IntVector c = gamma_coordinates(t);
  EXPECT_EQ(c, (IntVector{1, 5, 3, 2, 0, -1}));
  EXPECT_EQ(gamma_embedding(3, c), t);
  EXPECT_ANY_THROW((void)gamma_coordinates(IntMatrix{{0, 1}, {0, 0}}));
}

TEST(Gamma, MapCheckSimpleCases) {
  const auto g = share(make_abelian({2}));
  const auto a = trivial_module(g, 3);
  const IntVector zero(3);
  EXPECT_TRUE(gamma_map_check(a, zero, zero, zero));
  EXPECT_TRUE(gamma_map_check(a, IntVector{1, -2, 3}, zero, zero));
}

TEST(Gamma, SumDecompositionWithZero) {
  const auto g = share(make_abelian({2}));
  const auto a = quotient_by_norm(g);
  const auto d = gamma_of_sum_decomposition(a, trivial_module(g, 0));
  EXPECT_TRUE(d.iso.is_identity());
  EXPECT_TRUE(d.equivariant);
}

TEST(Gamma, SumDecompositionNormQuotients) {
  const auto g = share(make_abelian({2}));
  const auto a = quotient_by_norm(g);
  const auto d = gamma_of_sum_decomposition(a, a);
  EXPECT_TRUE(d.equivariant);
  EXPECT_EQ(d.source.zrank(), 3u);
  EXPECT_EQ(tate_h0(d.source), tate_h0(d.target));
  // Computed separately: Gamma(A) + Gamma(A) + A (x) A.
  const auto side = direct_sum(direct_sum(gamma(a).module, gamma(a).module), tensor(a, a));
  EXPECT_EQ(tate_h0(d.source), tate_h0(side));
}

TEST(Gamma, RankLedgerAlongExtension) {
  // For 0 -> A -> B -> C -> 0: rank Gamma(B) = rank Gamma(A) + rank(A (x) C) + rank Gamma(C).
  for (std::size_t a = 0; a <= 6; ++a)
    for (std::size_t c = 0; c <= 6; ++c)
      EXPECT_EQ(GammaIndex::rank_for(a + c), GammaIndex::rank_for(a) + a * c + GammaIndex::rank_for(c));
}

// ---------------------------------------------------------------- properties

TEST(GammaProperty, MatchesTensorSquareOnStandardModules) {
  for (const char* name : {"C2", "C3", "C4", "C2xC2", "D8", "Q8", "C6"}) {
    const auto g = share(catalog(name));
    expect_matches_tensor_square(free_module(g));
    expect_matches_tensor_square(augmentation_ideal(g));
    expect_matches_tensor_square(quotient_by_norm(g));
    expect_matches_tensor_square(direct_sum(trivial_module(g), quotient_by_norm(g)));
  }
}

TEST(GammaProperty, MatchesTensorSquareAfterBasisChange) {
  oracle::Gen gen(501);
  for (const char* name : {"C3", "C2xC2", "D8"}) {
    const auto g = share(catalog(name));
    for (int trial = 0; trial < 5; ++trial) {
      const auto m = augmentation_ideal(g);
      const std::size_t r = m.zrank();
      IntMatrix u = IntMatrix::identity(r), ui = IntMatrix::identity(r);
      for (int k = 0; k < 8; ++k) {
        const std::size_t i = gen.index(r), j = gen.index(r);
        if (i == j) continue;
        const auto f = gen.between(-3, 3);
        u.add_col_multiple(j, i, f);
        ui.add_row_multiple(i, j, -f);
      }
      const auto b = change_basis(m, u, ui);
      expect_matches_tensor_square(b);
      // Gamma is functorial, so H0 does not see the basis.
      ASSERT_EQ(tate_h0(gamma(b).module), tate_h0(gamma(m).module)) << name;
    }
  }
}

TEST(GammaProperty, QuadraticMapRelations) {
  oracle::Gen gen(502);
  const auto g = share(make_abelian({2}));
  const auto a = trivial_module(g, 4);
  for (int trial = 0; trial < 100; ++trial) {
    IntVector x(4), y(4), z(4);
    for (std::size_t i = 0; i < 4; ++i) {
      x[i] = gen.between(-9, 9);
      y[i] = gen.between(-9, 9);
      z[i] = gen.between(-9, 9);
    }
    ASSERT_TRUE(gamma_map_check(a, x, y, z));
  }
}

TEST(GammaProperty, ActionsCommuteWhenBaseDoes) {
  for (const char* name : {"C2xC2", "C4xC2", "D8", "Q8"}) {
    const auto g = share(catalog(name));
    const auto base = augmentation_ideal(g);
    const auto gm = gamma(base);
    const auto& x = gm.module.action(0);
    const auto& y = gm.module.action(1);
    const auto& bx = base.action(0);
    const auto& by = base.action(1);
    EXPECT_EQ(x * y == y * x, bx * by == by * bx) << name;
  }
}

TEST(GammaProperty, SumDecompositionIsEquivariantIsomorphism) {
  for (const char* name : {"C2", "C3", "C2xC2", "D8"}) {
    const auto g = share(catalog(name));
    const auto a = quotient_by_norm(g), b = trivial_module(g, 2);
    const auto d = gamma_of_sum_decomposition(a, b);
    ASSERT_TRUE(d.equivariant) << name;
    const std::size_t r = a.zrank(), s = b.zrank();
    ASSERT_EQ(d.source.zrank(), GammaIndex::rank_for(r) + GammaIndex::rank_for(s) + r * s);
    ASSERT_EQ(d.target.zrank(), d.source.zrank());
    ASSERT_EQ(std::abs(determinant(d.iso.to_dense()).to_int64()), 1);
    for (std::size_t k = 0; k < g->generators().size(); ++k)
      ASSERT_EQ(d.iso * d.source.action(k), d.target.action(k) * d.iso);
  }
}
