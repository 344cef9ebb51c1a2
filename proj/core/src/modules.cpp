#include "gtorsion/modules.hpp"

#include <algorithm>
#include <queue>

#include "gtorsion/errors.hpp"
#include "gtorsion/sparse_reduce.hpp"

namespace gtorsion {

namespace {

SparseVector unit_vector(std::uint32_t i) { return SparseVector{{i, Integer(1)}}; }

std::vector<SparseMatrix> generator_inverses(const LatticeModule& a) {
  std::vector<SparseMatrix> inv;
  for (std::size_t s = 0; s < a.actions().size(); ++s) {
    const auto ord = a.g().element_order(a.g().generators()[s].element);
    inv.push_back(power(a.action(s), static_cast<unsigned>(ord - 1)));
  }
  return inv;
}

SparseMatrix word_matrix(const LatticeModule& a, const std::vector<SparseMatrix>& inverses, const Word& w) {
  SparseMatrix r = SparseMatrix::identity(a.zrank());
  for (const auto& l : w.letters) r = r * (l.exponent > 0 ? a.action(l.generator) : inverses[l.generator]);
  return r;
}

/// Left translation of the free module (Z pi)^k by e: (i, h) -> (i, e h).
std::vector<std::uint32_t> free_translation(const FiniteGroup& g, std::size_t k, Element e) {
  const std::size_t n = g.order();
  std::vector<std::uint32_t> p(k * n);
  for (std::size_t i = 0; i < k; ++i)
    for (Element h = 0; h < n; ++h) p[i * n + h] = static_cast<std::uint32_t>(i * n + g.mul(e, h));
  return p;
}

SparseVector permute(const SparseVector& v, const std::vector<std::uint32_t>& p) {
  SparseVector out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back({p[e.index], e.value});
  std::sort(out.begin(), out.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
  return out;
}

SparseMatrix subtract_identity(const SparseMatrix& m) {
  SparseMatrix out = m;
  for (std::uint32_t j = 0; j < m.cols(); ++j) axpy(out.column(j), Integer(-1), unit_vector(j));
  return out;
}

GroupRingElement element(const GroupPtr& g, Element e) { return GroupRingElement::basis(g, e); }

void require_two_generators(const GroupPtr& g) {
  if (g->generators().size() != 2) throw InvalidArgumentError("expected a group with exactly two generators a, b");
}

}  // namespace

ElementTree element_tree(const FiniteGroup& g) {
  ElementTree t;
  const std::size_t n = g.order();
  t.parent.assign(n, g.identity());
  t.generator.assign(n, 0);
  std::vector<bool> seen(n, false);
  t.order.push_back(g.identity());
  seen[g.identity()] = true;
  for (std::size_t i = 0; i < t.order.size(); ++i) {
    const Element x = t.order[i];
    for (std::uint32_t s = 0; s < g.generators().size(); ++s) {
      const Element y = g.mul(g.generators()[s].element, x);
      if (seen[y]) continue;
      seen[y] = true;
      t.parent[y] = x;
      t.generator[y] = s;
      t.order.push_back(y);
    }
  }
  return t;
}

// ---------------------------------------------------------- LatticeModule

LatticeModule::LatticeModule(GroupPtr group, std::size_t zrank, std::vector<SparseMatrix> action, Check check)
    : group_(std::move(group)), zrank_(zrank), action_(std::move(action)) {
  if (action_.size() != group_->generators().size())
    throw InvalidArgumentError("lattice module needs one action matrix per generator");
  for (const auto& m : action_)
    if (m.rows() != zrank_ || m.cols() != zrank_) throw InvalidArgumentError("action matrix has the wrong shape");
  if (check == Check::full) validate();
}

void LatticeModule::validate() const {
  for (std::size_t s = 0; s < action_.size(); ++s) {
    const auto ord = group_->element_order(group_->generators()[s].element);
    if (!power(action_[s], static_cast<unsigned>(ord)).is_identity())
      throw ConsistencyError("action of generator " + group_->generators()[s].name + " does not have order " +
                             std::to_string(ord));
  }
  const auto inv = generator_inverses(*this);
  for (std::size_t r = 0; r < group_->relators().size(); ++r)
    if (!word_matrix(*this, inv, group_->relators()[r]).is_identity())
      throw ConsistencyError("relator " + std::to_string(r) + " does not act trivially");
}

SparseMatrix LatticeModule::element_action(Element e) const {
  const auto tree = element_tree(*group_);
  std::vector<std::uint32_t> chain;
  for (Element x = e; x != group_->identity(); x = tree.parent[x]) chain.push_back(tree.generator[x]);
  // e = s_1 s_2 ... s_k with s_1 = chain.front()
  SparseMatrix r = SparseMatrix::identity(zrank_);
  for (auto s : chain) r = r * action_[s];
  return r;
}

// ---------------------------------------------------------- presentations

std::vector<SparseVector> FpModule::z_relations() const {
  const FiniteGroup& g = *group;
  const std::size_t n = g.order();
  std::vector<SparseVector> out;
  out.reserve(relations.size() * n);
  for (const auto& rel : relations) {
    if (rel.size() != rank) throw InvalidArgumentError("relation has the wrong length");
    for (Element h = 0; h < n; ++h) {
      SparseVector v;
      for (std::size_t i = 0; i < rank; ++i) {
        std::vector<std::pair<std::uint32_t, Integer>> block;
        for (Element a = 0; a < n; ++a)
          if (!rel[i][a].is_zero()) block.emplace_back(static_cast<std::uint32_t>(i * n + g.mul(h, a)), rel[i][a]);
        std::sort(block.begin(), block.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        for (auto& [idx, c] : block) v.push_back({idx, std::move(c)});
      }
      if (!v.empty()) out.push_back(std::move(v));
    }
  }
  return out;
}

LatticeModule lattice_from_presentation(const FpModule& p) {
  const FiniteGroup& g = *p.group;
  const std::size_t ambient = p.rank * g.order();
  SparseQuotient q(ambient, p.z_relations());
  const std::size_t r = q.rank();
  Provenance prov{"quotient of a free module", ambient, {}};
  for (std::size_t k = 0; k < r; ++k) prov.lifts.push_back(q.lift(k));
  std::vector<SparseMatrix> action;
  for (const auto& s : g.generators()) {
    const auto perm = free_translation(g, p.rank, s.element);
    SparseMatrix m(r, r);
    for (std::size_t k = 0; k < r; ++k) m.column(k) = to_sparse(q.project(permute(prov.lifts[k], perm)));
    action.push_back(std::move(m));
  }
  LatticeModule out(p.group, r, std::move(action));
  out.set_provenance(std::move(prov));
  return out;
}

namespace {

/// Presentation of `a` on the chosen generating basis vectors.
FpModule present_on(const LatticeModule& a, const std::vector<std::uint32_t>& gens) {
  const FiniteGroup& g = a.g();
  const std::size_t n = g.order();
  const std::size_t m = gens.size();
  // column (j, e) of the map (Z pi)^m -> A is rho(e) b_{gens[j]}
  std::vector<std::vector<SparseVector>> images(m, std::vector<SparseVector>(n));
  const auto tree = element_tree(g);
  for (std::size_t j = 0; j < m; ++j) {
    images[j][g.identity()] = unit_vector(gens[j]);
    for (std::size_t t = 1; t < tree.order.size(); ++t) {
      const Element e = tree.order[t];
      images[j][e] = a.action(tree.generator[e]).apply(images[j][tree.parent[e]]);
    }
  }
  std::vector<SparseVector> equations(a.zrank());
  for (std::size_t j = 0; j < m; ++j)
    for (Element e = 0; e < n; ++e)
      for (const auto& en : images[j][e]) equations[en.index].push_back({static_cast<std::uint32_t>(j * n + e), en.value});
  // surjectivity: the image must be all of A
  {
    std::vector<SparseVector> cols;
    for (std::size_t j = 0; j < m; ++j)
      for (Element e = 0; e < n; ++e) cols.push_back(images[j][e]);
    auto coker = sparse_cokernel(a.zrank(), std::move(cols));
    if (!coker.is_trivial()) throw InvalidArgumentError("chosen vectors do not generate the module");
  }
  SparseKernel ker(m * n, std::move(equations));
  FpModule p{a.group(), m, {}};
  for (std::size_t k = 0; k < ker.dimension(); ++k) {
    SparseVector v = ker.basis_vector(k);
    std::vector<GroupRingElement> rel(m, GroupRingElement(a.group()));
    for (const auto& en : v) rel[en.index / n][en.index % n] = en.value;
    p.relations.push_back(std::move(rel));
  }
  return p;
}

}  // namespace

FpModule present(const LatticeModule& a) {
  std::vector<std::uint32_t> all(a.zrank());
  for (std::uint32_t i = 0; i < a.zrank(); ++i) all[i] = i;
  return present_on(a, all);
}

// ------------------------------------------------------------ constructors

LatticeModule free_module(const GroupPtr& g, std::size_t k) {
  std::vector<SparseMatrix> action;
  for (const auto& s : g->generators()) action.push_back(SparseMatrix::permutation(free_translation(*g, k, s.element)));
  return LatticeModule(g, k * g->order(), std::move(action));
}

LatticeModule trivial_module(const GroupPtr& g, std::size_t r) {
  return LatticeModule(g, r, std::vector<SparseMatrix>(g->generators().size(), SparseMatrix::identity(r)));
}

LatticeModule augmentation_ideal(const GroupPtr& g) {
  const std::size_t n = g->order();
  std::vector<std::int64_t> idx(n, -1);
  std::uint32_t next = 0;
  for (Element e = 0; e < n; ++e)
    if (e != g->identity()) idx[e] = next++;
  std::vector<SparseMatrix> action;
  for (const auto& s : g->generators()) {
    SparseMatrix m(n - 1, n - 1);
    for (Element e = 0; e < n; ++e) {
      if (idx[e] < 0) continue;
      // s (e - 1) = (s e - 1) - (s - 1)
      std::vector<Integer> col(n - 1);
      const Element se = g->mul(s.element, e);
      if (idx[se] >= 0) col[idx[se]] += Integer(1);
      if (idx[s.element] >= 0) col[idx[s.element]] -= Integer(1);
      m.column(idx[e]) = to_sparse(col);
    }
    action.push_back(std::move(m));
  }
  return LatticeModule(g, n - 1, std::move(action));
}

LatticeModule quotient_by_norm(const GroupPtr& g) {
  const std::size_t n = g->order();
  std::vector<std::int64_t> idx(n, -1);
  std::uint32_t next = 0;
  for (Element e = 0; e < n; ++e)
    if (e != g->identity()) idx[e] = next++;
  std::vector<SparseMatrix> action;
  for (const auto& s : g->generators()) {
    SparseMatrix m(n - 1, n - 1);
    for (Element e = 0; e < n; ++e) {
      if (idx[e] < 0) continue;
      const Element se = g->mul(s.element, e);
      if (idx[se] >= 0) {
        m.column(idx[e]) = unit_vector(static_cast<std::uint32_t>(idx[se]));
      } else {  // 1 = -sum_{g != 1} g
        SparseVector v;
        for (std::uint32_t k = 0; k < n - 1; ++k) v.push_back({k, Integer(-1)});
        m.column(idx[e]) = std::move(v);
      }
    }
    action.push_back(std::move(m));
  }
  return LatticeModule(g, n - 1, std::move(action));
}

FpModule quotient_by_subgroup_norm(const GroupPtr& g, std::span<const Element> subgroup) {
  GroupRingElement nh(g);
  for (Element h : subgroup) nh[h] += Integer(1);
  return FpModule{g, 1, {{nh}}};
}

LatticeModule direct_sum(const LatticeModule& a, const LatticeModule& b) {
  if (!(a.g() == b.g())) throw InvalidArgumentError("direct_sum: modules over different groups");
  std::vector<SparseMatrix> action;
  for (std::size_t s = 0; s < a.actions().size(); ++s) action.push_back(block_diagonal(a.action(s), b.action(s)));
  return LatticeModule(a.group(), a.zrank() + b.zrank(), std::move(action), LatticeModule::Check::none);
}

LatticeModule tensor(const LatticeModule& a, const LatticeModule& b) {
  if (!(a.g() == b.g())) throw InvalidArgumentError("tensor: modules over different groups");
  std::vector<SparseMatrix> action;
  for (std::size_t s = 0; s < a.actions().size(); ++s) action.push_back(kronecker(a.action(s), b.action(s)));
  return LatticeModule(a.group(), a.zrank() * b.zrank(), std::move(action), LatticeModule::Check::none);
}

LatticeModule stabilize(const LatticeModule& a, std::size_t k) {
  if (k == 0) return a;
  return direct_sum(a, free_module(a.group(), k));
}

LatticeModule change_basis(const LatticeModule& a, const IntMatrix& u, const IntMatrix& u_inverse) {
  if (!(u * u_inverse).is_identity()) throw InvalidArgumentError("change_basis: matrices are not inverse");
  const SparseMatrix su = SparseMatrix::from_dense(u), sui = SparseMatrix::from_dense(u_inverse);
  std::vector<SparseMatrix> action;
  for (const auto& m : a.actions()) action.push_back(sui * (m * su));
  return LatticeModule(a.group(), a.zrank(), std::move(action));
}

LatticeModule induce(const LatticeModule& a, const GroupPtr& g) {
  const FiniteGroup& h = a.g();
  GroupPtr pi = share(direct_product(*g, h));
  const std::size_t r = a.zrank();
  const std::size_t ng = g->order();
  std::vector<SparseMatrix> action;
  for (const auto& s : g->generators()) {
    std::vector<std::uint32_t> perm(ng * r);
    for (Element gamma = 0; gamma < ng; ++gamma)
      for (std::size_t i = 0; i < r; ++i)
        perm[gamma * r + i] = static_cast<std::uint32_t>(g->mul(s.element, gamma) * r + i);
    action.push_back(SparseMatrix::permutation(perm));
  }
  for (const auto& m : a.actions()) {
    SparseMatrix blocks(ng * r, ng * r);
    for (Element gamma = 0; gamma < ng; ++gamma)
      for (std::size_t i = 0; i < r; ++i) {
        SparseVector col;
        for (const auto& e : m.column(i)) col.push_back({static_cast<std::uint32_t>(gamma * r + e.index), e.value});
        blocks.column(gamma * r + i) = std::move(col);
      }
    action.push_back(std::move(blocks));
  }
  return LatticeModule(pi, ng * r, std::move(action));
}

FpModule flip_quotient(const LatticeModule& a, const GroupPtr& g, Element involution) {
  if (involution == g->identity() || g->mul(involution, involution) != g->identity())
    throw InvalidArgumentError("flip_quotient: element is not an involution");
  const LatticeModule sq = induce(tensor(a, a), g);
  const GroupPtr& pi = sq.group();
  const std::size_t r = a.zrank();
  // (A (x) A)[G] is generated over Z pi by the copies at the identity of G
  std::vector<std::uint32_t> gens(r * r);
  for (std::uint32_t i = 0; i < r * r; ++i) gens[i] = static_cast<std::uint32_t>(g->identity() * r * r + i);
  FpModule p = present_on(sq, gens);
  // (t, 1) in G x H
  const Element t = static_cast<Element>(involution * a.g().order() + a.g().identity());
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = 0; l < r; ++l) {
      std::vector<GroupRingElement> rel(r * r, GroupRingElement(pi));
      rel[k * r + l] += element(pi, pi->identity());
      rel[l * r + k] -= element(pi, t);
      p.relations.push_back(std::move(rel));
    }
  return p;
}

LatticeModule restrict(const LatticeModule& a, const Subgroup& h) {
  const auto inv = generator_inverses(a);
  std::vector<SparseMatrix> action;
  for (const auto& w : h.generator_words) action.push_back(word_matrix(a, inv, w));
  return LatticeModule(share(h.group), a.zrank(), std::move(action));
}

// ------------------------------------------------------------- homology

namespace {

std::vector<SparseVector> coinvariant_relations(const LatticeModule& a) {
  std::vector<SparseVector> rows;
  rows.reserve(a.actions().size() * a.zrank());
  for (const auto& m : a.actions()) {
    SparseMatrix d = subtract_identity(m);
    for (std::uint32_t j = 0; j < a.zrank(); ++j)
      if (!d.column(j).empty()) rows.push_back(std::move(d.column(j)));
  }
  return rows;
}

}  // namespace

AbelianInvariants coinvariants(const LatticeModule& a) { return sparse_cokernel(a.zrank(), coinvariant_relations(a)); }

AbelianInvariants tate_h0(const LatticeModule& a) { return coinvariants(a).torsion_part(); }

AbelianInvariants tate_h0_via_norm(const LatticeModule& a) {
  const std::size_t r = a.zrank();
  if (r == 0) return {};

  // coinvariants: generators are the surviving coordinates
  SparseElimination co(r, coinvariant_relations(a), false);
  const auto& gens = co.free_columns();
  std::vector<std::int64_t> local(r, -1);
  for (std::size_t k = 0; k < gens.size(); ++k) local[gens[k]] = static_cast<std::int64_t>(k);

  // fixed points: kernel of the stacked (s - 1)
  std::vector<SparseVector> eqs;
  for (const auto& m : a.actions()) {
    SparseMatrix t = subtract_identity(m).transpose();
    for (std::uint32_t i = 0; i < r; ++i)
      if (!t.column(i).empty()) eqs.push_back(std::move(t.column(i)));
  }
  SparseKernel fixed(r, std::move(eqs));

  // norm of each coinvariant generator, in fixed-point coordinates
  const auto tree = element_tree(a.g());
  std::vector<SparseVector> phi_rows(fixed.dimension());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    std::vector<SparseVector> orbit(a.g().order());
    std::vector<Integer> sum(r);
    for (Element e : tree.order) {
      orbit[e] = e == a.g().identity() ? unit_vector(gens[k]) : a.action(tree.generator[e]).apply(orbit[tree.parent[e]]);
      for (const auto& en : orbit[e]) sum[en.index] += en.value;
    }
    auto c = fixed.coordinates(to_sparse(sum));
    if (!c) throw ConsistencyError("norm of a coinvariant generator is not a fixed point");
    for (std::size_t t = 0; t < c->size(); ++t)
      if (!(*c)[t].is_zero()) phi_rows[t].push_back({static_cast<std::uint32_t>(k), (*c)[t]});
  }

  // kernel of the norm map on Z^gens, modulo the coinvariant relations
  SparseKernel ker_phi(gens.size(), std::move(phi_rows));
  std::vector<SparseVector> rel_coords;
  for (const auto& row : co.residual()) {
    SparseVector v;
    for (const auto& en : row) v.push_back({static_cast<std::uint32_t>(local[en.index]), en.value});
    auto c = ker_phi.coordinates(v);
    if (!c || !ker_phi.contains(v)) throw ConsistencyError("coinvariant relation outside the norm kernel");
    rel_coords.push_back(to_sparse(*c));
  }
  AbelianInvariants h = sparse_cokernel(ker_phi.dimension(), std::move(rel_coords));
  if (h.free_rank != 0) throw ConsistencyError("norm kernel modulo relations is not finite");
  return h;
}

AbelianInvariants tate_h0_checked(const LatticeModule& a) {
  auto x = tate_h0(a);
  auto y = tate_h0_via_norm(a);
  if (!(x == y))
    throw ConsistencyError("Tate H0 oracles disagree: coinvariant torsion " + x.to_string() + " vs norm kernel " +
                           y.to_string());
  return x;
}

// --------------------------------------------------- two-generator modules

FpModule M1(const GroupPtr& g) {
  require_two_generators(g);
  const Element a = g->generators()[0].element, b = g->generators()[1].element;
  auto na = partial_norm(g, a, static_cast<int>(g->element_order(a)));
  auto nb = partial_norm(g, b, static_cast<int>(g->element_order(b)));
  auto z = GroupRingElement::zero(g);
  return FpModule{g, 2, {{na, z}, {z, nb}}};
}

FpModule M2(const GroupPtr& g) {
  require_two_generators(g);
  const Element a = g->generators()[0].element, b = g->generators()[1].element;
  auto na = partial_norm(g, a, static_cast<int>(g->element_order(a)));
  auto nb = partial_norm(g, b, static_cast<int>(g->element_order(b)));
  auto one = GroupRingElement::one(g), z = GroupRingElement::zero(g);
  return FpModule{g, 2, {{one - element(g, a), z}, {nb, na}, {z, element(g, b) - one}}};
}

FpModule coker_presentation(const GroupPtr& g) {
  require_two_generators(g);
  const Element a = g->generators()[0].element, b = g->generators()[1].element;
  auto na = partial_norm(g, a, static_cast<int>(g->element_order(a)));
  auto nb = partial_norm(g, b, static_cast<int>(g->element_order(b)));
  auto one = GroupRingElement::one(g), z = GroupRingElement::zero(g);
  return FpModule{g, 3, {{na, one - element(g, b), z}, {z, one - element(g, a), nb}}};
}

}  // namespace gtorsion
