#include "gtorsion/resolutions.hpp"

#include "gtorsion/errors.hpp"
#include "gtorsion/sparse_reduce.hpp"

namespace gtorsion {

namespace {

std::vector<SparseVector> columns_of(const SparseMatrix& m) {
  std::vector<SparseVector> out;
  out.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.column(j));
  return out;
}

std::vector<SparseVector> rows_of(const SparseMatrix& m) { return columns_of(m.transpose()); }

GroupRingElement el(const GroupPtr& g, Element e) { return GroupRingElement::basis(g, e); }

}  // namespace

std::size_t span_rank(std::size_t dim, std::vector<SparseVector> vectors) {
  SparseElimination e(dim, std::move(vectors), false);
  std::vector<std::uint32_t> cols;
  return e.pivot_count() + rank(e.dense_residual(cols));
}

PartialResolution presentation_complex(const GroupPtr& g) {
  const auto& gens = g->generators();
  const auto& rels = g->relators();
  const std::size_t n = g->order();
  GroupRingMatrix d1(g, gens.size(), 1);
  for (std::size_t i = 0; i < gens.size(); ++i) d1(i, 0) = el(g, gens[i].element) - GroupRingElement::one(g);
  GroupRingMatrix d2(g, rels.size(), gens.size());
  for (std::size_t r = 0; r < rels.size(); ++r)
    for (std::size_t i = 0; i < gens.size(); ++i) d2(r, i) = fox_derivative(g, rels[r], static_cast<std::uint32_t>(i));

  if (!(d2 * d1).is_zero()) throw ConsistencyError("presentation complex: d2 d1 is not zero");
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!d1(i, 0).augmentation().is_zero()) throw ConsistencyError("presentation complex: augmentation of d1");

  PartialResolution out{g, d1, d2, expand_linear_map(d1), expand_linear_map(d2)};
  // exactness at C1
  const std::size_t c1 = gens.size() * n;
  const std::size_t rank_d1 = span_rank(n, columns_of(out.d1_z));
  const std::size_t rank_d2 = span_rank(c1, columns_of(out.d2_z));
  if (c1 - rank_d1 != rank_d2)
    throw PresentationDeficiencyError("relators of " + g->name() + " do not generate the relation module (rank " +
                                      std::to_string(rank_d2) + " of " + std::to_string(c1 - rank_d1) + ")");
  if (!sparse_cokernel(c1, columns_of(out.d2_z)).is_torsion_free())
    throw PresentationDeficiencyError("relators of " + g->name() + " leave torsion in ker d1 / im d2");
  return out;
}

LatticeModule ker_d2(const PartialResolution& r) {
  const FiniteGroup& g = *r.group;
  const std::size_t n = g.order();
  const std::size_t rels = r.d2.rows();
  SparseKernel ker(rels * n, rows_of(r.d2_z));
  const std::size_t k = ker.dimension();
  Provenance prov{"ker d2 inside C2", rels * n, ker.basis()};
  std::vector<SparseMatrix> action;
  for (const auto& s : g.generators()) {
    std::vector<std::uint32_t> perm(rels * n);
    for (std::size_t i = 0; i < rels; ++i)
      for (Element h = 0; h < n; ++h) perm[i * n + h] = static_cast<std::uint32_t>(i * n + g.mul(s.element, h));
    SparseMatrix m(k, k);
    for (std::size_t j = 0; j < k; ++j) {
      SparseVector v;
      for (const auto& e : prov.lifts[j]) v.push_back({perm[e.index], e.value});
      std::sort(v.begin(), v.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
      auto c = ker.coordinates(v);
      if (!c) throw ConsistencyError("ker d2 is not stable under the group action");
      m.column(j) = to_sparse(*c);
    }
    action.push_back(std::move(m));
  }
  LatticeModule out(r.group, k, std::move(action));
  out.set_provenance(std::move(prov));
  return out;
}

LatticeModule coker_d2_dual(const PartialResolution& r) {
  const GroupRingMatrix dual = r.d2.involute_transpose();
  FpModule p{r.group, dual.cols(), {}};
  for (std::size_t i = 0; i < dual.rows(); ++i) {
    std::vector<GroupRingElement> row;
    for (std::size_t j = 0; j < dual.cols(); ++j) row.push_back(dual(i, j));
    p.relations.push_back(std::move(row));
  }
  try {
    return lattice_from_presentation(p);
  } catch (const NotALatticeError& e) {
    std::string f;
    for (const auto& t : e.torsion()) f += " " + t.to_string();
    throw ConsistencyError("coker d^2 has torsion (invariant factors" + f + ")");
  }
}

AbelianResolution abelian_two_generator_resolution(const GroupPtr& g) {
  if (g->generators().size() != 2) throw InvalidArgumentError("expected generators a, b");
  const Element a = g->generators()[0].element, b = g->generators()[1].element;
  const auto one = GroupRingElement::one(g), z = GroupRingElement::zero(g);
  const auto na = partial_norm(g, a, static_cast<int>(g->element_order(a)));
  const auto nb = partial_norm(g, b, static_cast<int>(g->element_order(b)));
  const auto ea = el(g, a), eb = el(g, b);
  AbelianResolution out{
      g,
      GroupRingMatrix(g, {{one - ea}, {one - eb}}),
      GroupRingMatrix(g, {{na, z}, {eb - one, one - ea}, {z, nb}}),
      GroupRingMatrix(g, {{one - ea, z, z}, {one - eb, na, z}, {z, -nb, one - ea}, {z, z, one - eb}}),
      GroupRingMatrix(g, {{na, z, z, z}, {eb - one, one - ea, z, z}, {z, nb, na, z}, {z, z, eb - one, one - ea},
                          {z, z, z, nb}}),
  };
  return out;
}

AbelianResolution abelian_two_generator_resolution(int n, int m) {
  return abelian_two_generator_resolution(share(two_generator_abelian(n, m)));
}

FpModule ker_d2_presentation(const AbelianResolution& r) {
  FpModule p{r.group, r.d4.cols(), {}};
  for (std::size_t i = 0; i < r.d4.rows(); ++i) {
    std::vector<GroupRingElement> row;
    for (std::size_t j = 0; j < r.d4.cols(); ++j) row.push_back(r.d4(i, j));
    p.relations.push_back(std::move(row));
  }
  return p;
}

}  // namespace gtorsion
