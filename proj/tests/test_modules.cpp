#include <gtest/gtest.h>

#include "gtorsion/errors.hpp"
#include "gtorsion/modules.hpp"
#include "support/oracles.hpp"

using namespace gtorsion;

namespace {

std::vector<Integer> ints(std::initializer_list<std::int64_t> xs) { return {xs.begin(), xs.end()}; }

LatticeModule sign_module(const GroupPtr& c2) {
  return LatticeModule(c2, 1, {SparseMatrix::from_dense(IntMatrix{{-1}})});
}

/// Tate H0 checked against both library oracles and the textbook reduction.
std::vector<Integer> h0_all_ways(const LatticeModule& m) {
  const auto a = tate_h0(m);
  const auto b = tate_h0_via_norm(m);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.torsion, oracle::coinvariant_torsion(m));
  return a.torsion;
}

std::vector<Element> cyclic_subgroup(const FiniteGroup& g, Element e) {
  return subgroup_closure(g, std::vector<Element>{e});
}

}  // namespace

TEST(Lattice, FreeModuleIsRegularRepresentation) {
  const auto g = share(catalog("D8"));
  const auto f = free_module(g);
  EXPECT_EQ(f.zrank(), 8u);
  for (std::size_t s = 0; s < g->generators().size(); ++s)
    EXPECT_EQ(f.action(s), SparseMatrix::permutation(left_translation(*g, g->generators()[s].element)));
  const auto fp = lattice_from_presentation(FpModule{g, 1, {}});
  EXPECT_EQ(fp.zrank(), 8u);
}

TEST(Lattice, QuotientByNormForC2) {
  const auto c2 = share(make_abelian({2}));
  const auto q = quotient_by_norm(c2);
  ASSERT_EQ(q.zrank(), 1u);
  EXPECT_EQ(q.action(0).to_dense(), (IntMatrix{{-1}}));
  const auto qp = lattice_from_presentation(FpModule{c2, 1, {{norm_element(c2)}}});
  EXPECT_EQ(qp.zrank(), 1u);
  EXPECT_EQ(qp.action(0).to_dense(), (IntMatrix{{-1}}));
}

TEST(Lattice, CokerPresentationZrankForKleinFour) {
  // 3 |pi| - rank of the expanded relations = 12 - 5.
  const auto g = share(make_abelian({2, 2}));
  EXPECT_EQ(lattice_from_presentation(coker_presentation(g)).zrank(), 7u);
}

TEST(Lattice, TorsionPresentationIsRejected) {
  const auto c2 = share(make_abelian({2}));
  // Z C2 / (2) is (Z/2)^2 as an abelian group.
  EXPECT_THROW((void)lattice_from_presentation(FpModule{c2, 1, {{Integer(2) * GroupRingElement::one(c2)}}}),
               NotALatticeError);
}

TEST(Lattice, ChecksRelators) {
  const auto c3 = share(make_abelian({3}));
  EXPECT_THROW(LatticeModule(c3, 1, {SparseMatrix::from_dense(IntMatrix{{-1}})}), ConsistencyError);
  EXPECT_THROW(LatticeModule(c3, 2, {SparseMatrix::identity(1)}), InvalidArgumentError);
}

TEST(Lattice, PresentRoundTrip) {
  const auto g = share(catalog("Q8"));
  for (const auto& m : {augmentation_ideal(g), quotient_by_norm(g), free_module(g, 2)}) {
    const auto back = lattice_from_presentation(present(m));
    EXPECT_EQ(back.zrank(), m.zrank());
    EXPECT_EQ(coinvariants(back), coinvariants(m));
  }
}

TEST(Coinvariants, Examples) {
  const auto g = share(catalog("C4xC2"));
  const auto c = coinvariants(free_module(g));
  EXPECT_EQ(c.free_rank, 1u);
  EXPECT_TRUE(c.torsion.empty());

  const auto c2 = share(make_abelian({2}));
  const auto s = coinvariants(sign_module(c2));
  EXPECT_EQ(s.free_rank, 0u);
  EXPECT_EQ(s.torsion, ints({2}));
}

TEST(Coinvariants, QuotientByPartialNorms) {
  // Z pi / <N_a, N_b> over C_n x C_m is Z-free on {a^i b^j : i < n-1, j < m-1}.
  for (auto [n, m] : {std::pair{2, 2}, {3, 2}, {4, 3}}) {
    const auto g = share(two_generator_abelian(n, m));
    const Element a = g->generators()[0].element, b = g->generators()[1].element;
    const auto lat = lattice_from_presentation(FpModule{g, 1, {{partial_norm(g, a, n)}, {partial_norm(g, b, m)}}});
    EXPECT_EQ(lat.zrank(), static_cast<std::size_t>((n - 1) * (m - 1)));
    const auto c = coinvariants(lat);
    EXPECT_EQ(c.free_rank, 0u);
    EXPECT_EQ(c.torsion, oracle::coinvariant_torsion(lat));
  }
}

TEST(TateH0, Examples) {
  const auto g = share(catalog("D8"));
  EXPECT_TRUE(h0_all_ways(free_module(g)).empty());
  EXPECT_TRUE(h0_all_ways(trivial_module(g)).empty());
  const auto c2 = share(make_abelian({2}));
  EXPECT_EQ(h0_all_ways(sign_module(c2)), ints({2}));
  EXPECT_EQ(tate_h0_checked(sign_module(c2)).torsion, ints({2}));
}

TEST(TateH0, AugmentationIdealAndNormQuotient) {
  // For C_n both are Z/n: H0(I) is the abelianization and Z pi/N is the
  // dual of I.
  for (int n : {2, 3, 4, 6}) {
    const auto g = share(make_abelian({n}));
    EXPECT_EQ(h0_all_ways(augmentation_ideal(g)), ints({n})) << n;
    EXPECT_EQ(h0_all_ways(quotient_by_norm(g)), ints({n})) << n;
  }
}

TEST(Constructions, SumTensorStabilize) {
  const auto c2 = share(make_abelian({2}));
  const auto s = sign_module(c2);
  const auto t = tensor(s, s);
  EXPECT_EQ(t.zrank(), 1u);
  EXPECT_EQ(t.action(0).to_dense(), (IntMatrix{{1}}));
  EXPECT_EQ(direct_sum(s, s).zrank(), 2u);
  EXPECT_EQ(stabilize(s, 0).zrank(), 1u);
  EXPECT_EQ(stabilize(s, 3).zrank(), 7u);
  EXPECT_EQ(h0_all_ways(direct_sum(s, s)), ints({2, 2}));
  EXPECT_EQ(tate_h0(stabilize(s, 2)), tate_h0(s));
}

TEST(Constructions, ChangeBasisPreservesInvariants) {
  const auto g = share(catalog("C4"));
  const auto a = augmentation_ideal(g);
  const IntMatrix u{{1, 2, 0}, {0, 1, 0}, {1, 2, 1}};
  const IntMatrix ui{{1, -2, 0}, {0, 1, 0}, {-1, 0, 1}};
  ASSERT_TRUE((u * ui).is_identity());
  const auto b = change_basis(a, u, ui);
  EXPECT_EQ(coinvariants(b), coinvariants(a));
  EXPECT_EQ(h0_all_ways(b), ints({4}));
  EXPECT_THROW((void)change_basis(a, u, u), InvalidArgumentError);
}

TEST(Constructions, InduceFromTrivialGroupIsFree) {
  const auto g = share(catalog("C3"));
  const auto c1 = share(trivial_group());
  const auto ind = induce(trivial_module(c1), g);
  EXPECT_EQ(ind.zrank(), 3u);
  EXPECT_EQ(coinvariants(ind), coinvariants(free_module(share(direct_product(*g, *c1)))));
  EXPECT_TRUE(h0_all_ways(ind).empty());
}

TEST(Constructions, InducedRank) {
  const auto h = share(make_abelian({2}));
  const auto g = share(make_abelian({3}));
  const auto ind = induce(quotient_by_norm(h), g);
  EXPECT_EQ(ind.zrank(), 3u);
  EXPECT_EQ(ind.g().order(), 6u);
}

TEST(Constructions, FlipQuotientNeedsInvolution) {
  const auto h = share(make_abelian({2}));
  const auto g = share(make_abelian({3}));
  EXPECT_THROW((void)flip_quotient(quotient_by_norm(h), g, g->generators()[0].element), InvalidArgumentError);
}

TEST(SubgroupNorm, KleinFourModCyclic) {
  const auto g = share(make_abelian({2, 2}));
  const auto h = cyclic_subgroup(*g, g->generators()[0].element);
  EXPECT_EQ(lattice_from_presentation(quotient_by_subgroup_norm(g, h)).zrank(), 2u);
}

TEST(TwoGenerator, M1Zrank) {
  const auto g = share(make_abelian({2, 2}));
  const auto m1 = lattice_from_presentation(M1(g));
  EXPECT_EQ(m1.zrank(), 4u);
  // M1 = Z pi/N_a + Z pi/N_b.
  const auto na = lattice_from_presentation(quotient_by_subgroup_norm(g, cyclic_subgroup(*g, g->generators()[0].element)));
  const auto nb = lattice_from_presentation(quotient_by_subgroup_norm(g, cyclic_subgroup(*g, g->generators()[1].element)));
  EXPECT_EQ(tate_h0(m1), tate_h0(direct_sum(na, nb)));
  EXPECT_EQ(coinvariants(m1), coinvariants(direct_sum(na, nb)));
}

TEST(TwoGenerator, M2RankLedger) {
  // zrank M2 = zrank Z pi/<1-a> + zrank Z pi/<N_a, b-1> = m + (n - 1).
  for (int n = 2; n <= 4; ++n)
    for (int m = 2; m <= 4; ++m) {
      const auto g = share(two_generator_abelian(n, m));
      const Element a = g->generators()[0].element, b = g->generators()[1].element;
      const auto one = GroupRingElement::one(g);
      const auto left = lattice_from_presentation(FpModule{g, 1, {{one - GroupRingElement::basis(g, a)}}});
      const auto right = lattice_from_presentation(
          FpModule{g, 1, {{partial_norm(g, a, n)}, {GroupRingElement::basis(g, b) - one}}});
      const auto m2 = lattice_from_presentation(M2(g));
      EXPECT_EQ(left.zrank(), static_cast<std::size_t>(m));
      EXPECT_EQ(right.zrank(), static_cast<std::size_t>(n - 1));
      EXPECT_EQ(m2.zrank(), left.zrank() + right.zrank()) << n << "x" << m;
    }
}

TEST(TwoGenerator, NormQuotientTensorM2) {
  // Z pi/N_a (x) M2 for (2,2): coinvariant torsion Z/2.
  const auto g = share(make_abelian({2, 2}));
  const auto na = lattice_from_presentation(quotient_by_subgroup_norm(g, cyclic_subgroup(*g, g->generators()[0].element)));
  const auto m2 = lattice_from_presentation(M2(g));
  const auto t = tensor(na, m2);
  EXPECT_EQ(coinvariants(t).torsion, ints({2}));
  EXPECT_EQ(oracle::coinvariant_torsion(t), ints({2}));
}

TEST(TwoGenerator, WrongGeneratorCount) {
  const auto g = share(make_abelian({2, 2, 2}));
  EXPECT_THROW((void)M1(g), InvalidArgumentError);
}

TEST(Restriction, SylowRestrictionOfFreeIsFree) {
  const auto g = share(catalog("C6"));
  const auto sub = make_subgroup(*g, sylow_subgroup(*g, 3));
  const auto r = restrict(free_module(g), sub);
  EXPECT_EQ(r.zrank(), 6u);
  EXPECT_EQ(r.g().order(), 3u);
  EXPECT_EQ(coinvariants(r).free_rank, 2u);
  EXPECT_TRUE(h0_all_ways(r).empty());
}

// ---------------------------------------------------------------- properties

namespace {

/// Random small lattice: a sum of a few standard pieces, then a random
/// unimodular basis change.
LatticeModule random_lattice(oracle::Gen& gen, const GroupPtr& g) {
  std::vector<LatticeModule> pieces;
  pieces.push_back(trivial_module(g));
  pieces.push_back(quotient_by_norm(g));
  pieces.push_back(augmentation_ideal(g));
  if (g->order() <= 4) pieces.push_back(free_module(g));
  LatticeModule m = pieces[gen.index(pieces.size())];
  if (gen.coin()) m = direct_sum(m, pieces[gen.index(pieces.size())]);
  if (m.zrank() <= 3 && gen.coin()) m = tensor(m, pieces[gen.index(2)]);
  const std::size_t r = m.zrank();
  IntMatrix u = IntMatrix::identity(r), ui = IntMatrix::identity(r);
  for (int k = 0; k < 6 && r > 1; ++k) {
    const std::size_t i = gen.index(r), j = gen.index(r);
    if (i == j) continue;
    const auto f = gen.between(-2, 2);
    u.add_col_multiple(j, i, f);   // u <- u E
    ui.add_row_multiple(i, j, -f); // ui <- E^-1 ui
  }
  return change_basis(m, u, ui);
}

}  // namespace

TEST(ModuleProperty, TateOraclesAgreeWithTextbookReduction) {
  oracle::Gen gen(401);
  for (const char* name : {"C2", "C3", "C4", "C2xC2", "C6", "D8", "Q8"}) {
    const auto g = share(catalog(name));
    for (int trial = 0; trial < 6; ++trial) {
      const auto m = random_lattice(gen, g);
      const auto h = tate_h0(m);
      ASSERT_EQ(h, tate_h0_via_norm(m)) << name;
      ASSERT_EQ(h.torsion, oracle::coinvariant_torsion(m)) << name;
      // Every invariant factor divides |pi|.
      for (const auto& t : h.torsion) ASSERT_TRUE(divides(t, Integer(static_cast<std::int64_t>(g->order()))));
      // p-torsion counts from modular ranks.
      for (std::int64_t p : {2, 3})
        ASSERT_EQ(oracle::p_torsion_count(oracle::coinvariant_relations(m), p),
                  static_cast<std::size_t>(std::count_if(h.torsion.begin(), h.torsion.end(),
                                                         [&](const Integer& t) { return divides(Integer(p), t); })));
    }
  }
}

TEST(ModuleProperty, StabilizationInvariance) {
  oracle::Gen gen(402);
  for (const char* name : {"C2", "C3", "C2xC2", "C4"}) {
    const auto g = share(catalog(name));
    for (int trial = 0; trial < 4; ++trial) {
      const auto m = random_lattice(gen, g);
      ASSERT_EQ(tate_h0(stabilize(m, 1)), tate_h0(m));
      ASSERT_EQ(tate_h0(stabilize(m, 2)), tate_h0(m));
      ASSERT_EQ(stabilize(m, 2).zrank(), m.zrank() + 2 * g->order());
    }
  }
}
