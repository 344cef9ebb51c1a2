#include "gtorsion/verify.hpp"

#include <algorithm>
#include <concepts>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

#include "gtorsion/errors.hpp"
#include "gtorsion/gamma.hpp"
#include "gtorsion/resolutions.hpp"
#include "gtorsion/sparse_reduce.hpp"

namespace gtorsion {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"linalg",   "gamma-axioms", "theorem-3-1", "prop-3-5",
                                              "prop-4-4", "prop-6-1",     "prop-6-2",    "stability",
                                              "sylow-primes", "structural", "oracle-fuzz", "all"};
  return names;
}

namespace {

/// Shared state of one verify() call: the RNG, the oracle log and a cache of
/// the per-group modules that several suites reuse.
class Context {
 public:
  explicit Context(const VerifyOptions& o) : options(o), rng(o.seed) {}

  /// Runs both Tate oracles and logs whether they agreed.
  AbelianInvariants h0(const LatticeModule& m, const std::string& what) {
    AbelianInvariants a = tate_h0(m);
    const AbelianInvariants b = tate_h0_via_norm(m);
    ++oracle_checks;
    if (!(a == b) && oracle_mismatch.empty())
      oracle_mismatch = what + ": coinvariant torsion " + a.to_string() + ", norm kernel " + b.to_string();
    return a;
  }
  AbelianInvariants h0_gamma(const LatticeModule& m, const std::string& what) {
    return h0(gamma(m).module, "Gamma(" + what + ")");
  }

  struct GroupData {
    GroupPtr group;
    PartialResolution res;
    LatticeModule ker;
    LatticeModule coker;
  };
  const GroupData& group_data(const std::string& name) {
    auto it = cache_.find(name);
    if (it == cache_.end()) {
      GroupPtr g = share(catalog(name));
      PartialResolution r = presentation_complex(g);
      LatticeModule k = ker_d2(r);
      LatticeModule c = coker_d2_dual(r);
      it = cache_.emplace(name, GroupData{g, std::move(r), std::move(k), std::move(c)}).first;
    }
    return it->second;
  }

  std::vector<std::string> catalog_up_to(std::uint64_t n) const {
    std::vector<std::string> out;
    for (const auto& name : catalog_names())
      if (group_spec_order(name) <= n) out.push_back(name);
    return out;
  }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  const VerifyOptions& options;
  std::mt19937_64 rng;
  std::size_t oracle_checks{0};
  std::string oracle_mismatch;

 private:
  std::map<std::string, GroupData> cache_;
};

/// Cases of one property; the first failure is kept as the counterexample.
class Case {
 public:
  template <std::invocable Describe>
  void expect(bool ok, Describe&& describe) {
    ++cases_;
    if (!ok && failure_.empty()) failure_ = describe();
  }
  void expect(bool ok, const std::string& what) {
    expect(ok, [&] { return what; });
  }
  /// Counts n further cases that were checked elsewhere.
  void tally(std::size_t n) { cases_ += n; }
  [[nodiscard]] std::size_t cases() const { return cases_; }
  [[nodiscard]] const std::string& failure() const { return failure_; }
  void fail(std::string what) {
    ++cases_;
    if (failure_.empty()) failure_ = std::move(what);
  }

 private:
  std::size_t cases_{0};
  std::string failure_;
};

class Suite {
 public:
  Suite(std::string name, Context& ctx, std::vector<PropertyResult>& out)
      : name_(std::move(name)), ctx_(ctx), out_(out), oracle_start_(ctx.oracle_checks) {}

  void property(const std::string& name, const std::function<void(Case&)>& body) {
    Case c;
    try {
      body(c);
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    out_.push_back({name_, name, c.failure().empty(), c.cases(), c.failure()});
  }

  /// Closes the suite with the oracle-agreement property.
  void finish() {
    const std::size_t n = ctx_.oracle_checks - oracle_start_;
    out_.push_back({name_, "both Tate oracles agree on every module built", ctx_.oracle_mismatch.empty(), n,
                    ctx_.oracle_mismatch});
  }

 private:
  std::string name_;
  Context& ctx_;
  std::vector<PropertyResult>& out_;
  std::size_t oracle_start_;
};

std::string inv(const AbelianInvariants& a) { return a.to_string(); }

// ------------------------------------------------------------ random data

IntMatrix random_matrix(Context& ctx, std::size_t rows, std::size_t cols, int bound) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = ctx.uniform(-bound, bound);
  return m;
}

/// A random unimodular matrix and its inverse, built from elementary moves.
std::pair<IntMatrix, IntMatrix> random_unimodular(Context& ctx, std::size_t n, std::size_t moves, int bound) {
  IntMatrix u = IntMatrix::identity(n), u_inv = IntMatrix::identity(n);
  if (n == 0) return {u, u_inv};
  for (std::size_t step = 0; step < moves; ++step) {
    const auto i = static_cast<std::size_t>(ctx.uniform(0, static_cast<int>(n) - 1));
    const auto j = static_cast<std::size_t>(ctx.uniform(0, static_cast<int>(n) - 1));
    if (i == j) {
      u.negate_row(i);
      u_inv.negate_col(i);
      continue;
    }
    const Integer f = ctx.uniform(-bound, bound);
    u.add_row_multiple(i, j, f);
    u_inv.add_col_multiple(j, i, -f);
  }
  return {u, u_inv};
}

/// A random lattice module of Z-rank between 1 and max_rank over g, built
/// from small standard pieces and then put into a random basis.
LatticeModule random_module(Context& ctx, const GroupPtr& g, std::size_t max_rank) {
  const std::size_t n = g->order();
  std::vector<LatticeModule> pieces;
  pieces.push_back(trivial_module(g));
  {
    std::vector<SparseMatrix> signs;
    for (std::size_t s = 0; s < g->generators().size(); ++s) {
      SparseMatrix m(1, 1);
      m.column(0) = {{0, Integer(ctx.uniform(0, 1) == 0 ? 1 : -1)}};
      signs.push_back(std::move(m));
    }
    try {
      pieces.emplace_back(g, 1, std::move(signs));
    } catch (const ConsistencyError&) {
      // not a character of this group
    }
  }
  if (n <= max_rank) pieces.push_back(free_module(g));
  if (n >= 2 && n - 1 <= max_rank) {
    pieces.push_back(augmentation_ideal(g));
    pieces.push_back(quotient_by_norm(g));
  }
  for (Element e = 0; e < n; ++e) {
    const std::size_t k = g->element_order(e);
    if (k == 1 || k == n || n - n / k > max_rank) continue;
    const Element gen[] = {e};
    const auto h = subgroup_closure(*g, gen);
    pieces.push_back(lattice_from_presentation(quotient_by_subgroup_norm(g, h)));
    break;
  }
  LatticeModule acc = pieces[static_cast<std::size_t>(ctx.uniform(0, static_cast<int>(pieces.size()) - 1))];
  for (int tries = 0; tries < 4; ++tries) {
    const auto& p = pieces[static_cast<std::size_t>(ctx.uniform(0, static_cast<int>(pieces.size()) - 1))];
    if (acc.zrank() + p.zrank() > max_rank) continue;
    acc = ctx.uniform(0, 3) == 0 && acc.zrank() * p.zrank() <= max_rank ? tensor(acc, p) : direct_sum(acc, p);
  }
  auto [u, u_inv] = random_unimodular(ctx, acc.zrank(), 3 * acc.zrank(), 2);
  return change_basis(acc, u, u_inv);
}

// ------------------------------------------------------------ suites

void suite_linalg(Context& ctx, std::vector<PropertyResult>& out) {
  Suite s("linalg", ctx, out);
  SmithAudit audit;
  s.property("Smith certificate U A V = D with unimodular U, V", [&](Case& c) {
    for (int t = 0; t < 150; ++t) {
      const auto a = random_matrix(ctx, static_cast<std::size_t>(ctx.uniform(0, 12)),
                                   static_cast<std::size_t>(ctx.uniform(0, 12)), 5);
      const auto d = smith_normal_form(a, SmithOptions{true, true});
      c.expect(check_smith_certificate(a, d), [&] { return "matrix " + std::to_string(t); });
    }
  });
  s.property("cokernel invariants unchanged by unimodular multiplication", [&](Case& c) {
    for (int t = 0; t < 60; ++t) {
      const std::size_t m = static_cast<std::size_t>(ctx.uniform(1, 12)), n = static_cast<std::size_t>(ctx.uniform(1, 12));
      const auto a = random_matrix(ctx, m, n, 5);
      const auto [l, l_inv] = random_unimodular(ctx, m, 3 * m, 2);
      const auto [r, r_inv] = random_unimodular(ctx, n, 3 * n, 2);
      const auto x = cokernel_invariants(a), y = cokernel_invariants(l * a * r);
      c.expect(x == y, [&] { return inv(x) + " vs " + inv(y); });
    }
  });
  s.property("kernel basis is saturated and spans the kernel", [&](Case& c) {
    for (int t = 0; t < 60; ++t) {
      const std::size_t m = static_cast<std::size_t>(ctx.uniform(1, 8)), n = static_cast<std::size_t>(ctx.uniform(1, 8));
      auto a = random_matrix(ctx, m, n, 4);
      if (t % 3 == 0 && m > 1)  // force a dependent row
        for (std::size_t j = 0; j < n; ++j) a(m - 1, j) = a(0, j) * Integer(2);
      const auto k = kernel_basis(a);
      const bool annihilated = (a * k).is_zero();
      const auto snf = smith_normal_form(k, SmithOptions{false, false});
      c.expect(annihilated && snf.invariant_factors.empty() && snf.rank == k.cols() && k.cols() == n - rank(a),
               [&] { return "case " + std::to_string(t); });
    }
  });
  s.property("rank + nullity = columns", [&](Case& c) {
    for (int t = 0; t < 100; ++t) {
      const std::size_t m = static_cast<std::size_t>(ctx.uniform(0, 8)), n = static_cast<std::size_t>(ctx.uniform(0, 8));
      const auto a = random_matrix(ctx, m, n, 4);
      c.expect(rank(a) + kernel_basis(a).cols() == n, [&] { return "case " + std::to_string(t); });
    }
  });
  s.property("sparse elimination matches dense Smith form", [&](Case& c) {
    for (int t = 0; t < 60; ++t) {
      const std::size_t m = static_cast<std::size_t>(ctx.uniform(1, 14)), n = static_cast<std::size_t>(ctx.uniform(1, 14));
      IntMatrix a(m, n);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (ctx.uniform(0, 2) == 0) a(i, j) = ctx.uniform(-3, 3);
      std::vector<SparseVector> rows;
      for (std::size_t i = 0; i < m; ++i) rows.push_back(to_sparse(a.row(i)));
      const auto dense = cokernel_invariants(a.transpose());
      const auto sparse = sparse_cokernel(n, rows);
      SparseKernel ker(n, rows);
      c.expect(dense == sparse && ker.dimension() == kernel_basis(a).cols(),
               [&] { return "case " + std::to_string(t) + ": " + inv(dense) + " vs " + inv(sparse); });
    }
  });
  s.property("every Smith decomposition in this suite carries a valid certificate", [&](Case& c) {
    c.expect(audit.checked() > 0 && audit.failed() == 0,
             [&] { return std::to_string(audit.failed()) + " of " + std::to_string(audit.checked()) + " failed"; });
    c.tally(audit.checked() - 1);
  });
  s.finish();
}

/// Rank ledger along an extension 0 -> A -> B -> C -> 0: rank Gamma(B) = rank Gamma(A) + rank A * rank C + rank Gamma(C).
bool ledger(std::size_t a, std::size_t b, std::size_t c) {
  return GammaIndex::rank_for(b) == GammaIndex::rank_for(a) + a * c + GammaIndex::rank_for(c);
}

void suite_gamma_axioms(Context& ctx, std::vector<PropertyResult>& out) {
  Suite s("gamma-axioms", ctx, out);
  const auto names = ctx.catalog_up_to(std::min<std::uint64_t>(ctx.options.max_order, 8));
  s.property("rank Gamma(A) = r(r+1)/2 and actions satisfy the relators", [&](Case& c) {
    for (const auto& name : names) {
      const auto& d = ctx.group_data(name);
      for (const LatticeModule* m : {&d.ker, &d.coker}) {
        const auto gm = gamma(*m);  // Check::full validates the relators
        c.expect(gm.module.zrank() == GammaIndex::rank_for(m->zrank()), name);
      }
    }
  });
  s.property("Gamma actions commute exactly when the group actions do", [&](Case& c) {
    for (const auto& name : names) {
      const auto& d = ctx.group_data(name);
      const auto gm = gamma(d.ker);
      const auto& gens = d.group->generators();
      for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
          const bool commute = d.group->mul(gens[i].element, gens[j].element) ==
                               d.group->mul(gens[j].element, gens[i].element);
          const auto& x = gm.module.action(i);
          const auto& y = gm.module.action(j);
          c.expect(!commute || x * y == y * x, name);
        }
    }
  });
  s.property("quadratic map relations on random triples", [&](Case& c) {
    const GroupPtr g = share(trivial_group());
    const auto a = trivial_module(g, 4);
    for (int t = 0; t < 100; ++t) {
      IntVector x(4), y(4), z(4);
      for (std::size_t i = 0; i < 4; ++i) {
        x[i] = ctx.uniform(-6, 6);
        y[i] = ctx.uniform(-6, 6);
        z[i] = ctx.uniform(-6, 6);
      }
      c.expect(gamma_map_check(a, x, y, z), [&] { return "triple " + std::to_string(t); });
    }
  });
  s.property("Gamma(A + B) splits equivariantly as Gamma(A) + Gamma(B) + A (x) B", [&](Case& c) {
    for (const auto& name : names) {
      const GroupPtr g = ctx.group_data(name).group;
      if (g->order() < 2) continue;
      const auto q = quotient_by_norm(g);
      const auto a = augmentation_ideal(g);
      const auto dec = gamma_of_sum_decomposition(q, a);
      c.expect(dec.equivariant && dec.source.zrank() == dec.target.zrank(), name);
      c.expect(ctx.h0(dec.source, "Gamma(Z/N + I) " + name) == ctx.h0(dec.target, "split " + name), name);
    }
  });
  s.property("rank ledger on the extensions of the two-generator modules", [&](Case& c) {
    for (auto [n, m] : {std::pair{2, 2}, {2, 4}, {4, 2}, {3, 3}, {2, 3}, {4, 4}}) {
      const GroupPtr g = share(two_generator_abelian(n, m));
      const std::string tag = g->name();
      const auto k = ker_d2(presentation_complex(g));
      const auto m1 = lattice_from_presentation(M1(g));
      const auto m2 = lattice_from_presentation(M2(g));
      c.expect(ledger(m1.zrank(), k.zrank(), m2.zrank()), tag + ": M1 -> ker d2 -> M2");
      const GroupRingElement one = GroupRingElement::one(g);
      const GroupRingElement ea = GroupRingElement::basis(g, g->generators()[0].element);
      const GroupRingElement eb = GroupRingElement::basis(g, g->generators()[1].element);
      const auto na = partial_norm(g, g->generators()[0].element, n);
      const auto left = lattice_from_presentation(FpModule{g, 1, {{one - ea}}});
      const auto right = lattice_from_presentation(FpModule{g, 1, {{na}, {eb - one}}});
      c.expect(ledger(left.zrank(), m2.zrank(), right.zrank()), tag + ": Z/(1-a) -> M2 -> Z/(N_a, b-1)");
      const auto mm = lattice_from_presentation(coker_presentation(g));
      const std::size_t qn = g->order() - 1;
      c.expect(ledger(2 * qn, mm.zrank(), 1), tag + ": Z/N + Z/N -> M -> Z");
    }
  });
  s.finish();
}

void suite_theorem_3_1(Context& ctx, std::vector<PropertyResult>& out) {
  Suite s("theorem-3-1", ctx, out);
  s.property("H0(Gamma(L)) = 0 for L = Z pi, augmentation ideal, Z pi / N", [&](Case& c) {
    for (const auto& name : ctx.catalog_up_to(ctx.options.max_order)) {
      const GroupPtr g = share(catalog(name));
      c.expect(ctx.h0_gamma(free_module(g), "Z[" + name + "]").is_trivial(), "Z pi over " + name);
      c.expect(ctx.h0_gamma(augmentation_ideal(g), "I " + name).is_trivial(), "augmentation ideal over " + name);
      c.expect(ctx.h0_gamma(quotient_by_norm(g), "Z/N " + name).is_trivial(), "Z pi / N over " + name);
    }
  });
  s.finish();
}

void suite_prop_3_5(Context& ctx, std::vector<PropertyResult>& out) {
  Suite s("prop-3-5", ctx, out);
  s.property("H0(G x H; Gamma(Z[G x H] / N_H)) = 0", [&](Case& c) {
    const auto names = ctx.catalog_up_to(ctx.options.max_order / 2);
    for (const auto& gn : names)
      for (const auto& hn : names) {
        const FiniteGroup g = catalog(gn), h = catalog(hn);
        if (g.order() < 2 || h.order() < 2 || g.order() * h.order() > ctx.options.max_order) continue;
        const GroupPtr pi = share(direct_product(g, h));
        std::vector<Element> hs;
        for (Element e = 0; e < h.order(); ++e) hs.push_back(static_cast<Element>(g.identity() * h.order() + e));
        const auto a = lattice_from_presentation(quotient_by_subgroup_norm(pi, hs));
        const std::string tag = gn + " x " + hn;
        c.expect(a.zrank() == g.order() * (h.order() - 1), tag + ": zrank");
        c.expect(ctx.h0_gamma(a, tag).is_trivial(), tag);
      }
  });
  s.property("induced module A[G] for A = Z H / N_H has trivial H0 of Gamma", [&](Case& c) {
    for (const auto& [gn, hn] : {std::pair<std::string, std::string>{"C2", "C2"}, {"C3", "C2"}, {"C2", "C3"},
                                 {"C4", "C2"}, {"C2xC2", "C2"}, {"C2", "C4"}}) {
      const GroupPtr g = share(catalog(gn)), h = share(catalog(hn));
      const auto ind = induce(quotient_by_norm(h), g);
      c.expect(ctx.h0_gamma(ind, "A[G] " + gn + " x " + hn).is_trivial(), gn + " x " + hn);
    }
  });
  s.property("rank identity for Gamma(A[G]) with flip quotients", [&](Case& c) {
    for (const auto& [gn, hn] : {std::pair<std::string, std::string>{"C2", "C2"}, {"C3", "C2"}, {"C4", "C2"},
                                 {"C2xC2", "C2"}, {"C2", "C3"}, {"C6", "C2"}}) {
      const GroupPtr g = share(catalog(gn)), h = share(catalog(hn));
      const auto a = quotient_by_norm(h);
      const std::size_t r = a.zrank(), n = g->order();
      const std::size_t lhs = gamma(induce(a, g), LatticeModule::Check::none).module.zrank();
      std::size_t s_count = 0, flips = 0;
      for (Element e = 0; e < n; ++e) {
        if (e == g->identity()) continue;
        if (g->mul(e, e) == g->identity()) {
          flips += lattice_from_presentation(flip_quotient(a, g, e)).zrank();
        } else {
          ++s_count;
        }
      }
      s_count /= 2;
      const std::size_t rhs = n * GammaIndex::rank_for(r) + s_count * n * r * r + flips;
      c.expect(lhs == rhs, [&] {
        return gn + " x " + hn + ": " + std::to_string(lhs) + " vs " + std::to_string(rhs);
      });
    }
  });
  s.finish();
}

void suite_prop_4_4(Context& ctx, std::vector<PropertyResult>& out) {
  Suite s("prop-4-4", ctx, out);
  s.property("coinvariants of ker d2 (x) coker d^2 are torsion free", [&](Case& c) {
    for (const auto& name : ctx.catalog_up_to(ctx.options.max_order)) {
      const auto& d = ctx.group_data(name);
      const auto h = ctx.h0(tensor(d.ker, d.coker), "ker (x) coker " + name);
      c.expect(h.is_trivial(), [&] { return name + ": " + inv(h); });
    }
  });
  s.property("ker d2 and coker d^2 are Z-free of the expected ranks", [&](Case& c) {
    for (const auto& name : ctx.catalog_up_to(ctx.options.max_order)) {
      const auto& d = ctx.group_data(name);
      const std::size_t n = d.group->order(), gens = d.group->generators().size(),
                        rels = d.group->relators().size();
      // ker d2 = C2 - (C1 - ker d1) with ker d1 of rank gens n - (n - 1)
      const std::size_t im_d2 = gens * n - (n - 1);
      c.expect(d.ker.zrank() == rels * n - im_d2 && d.coker.zrank() == rels * n - im_d2, name);
    }
  });
  s.finish();
}

std::vector<std::pair<int, int>> small_pairs() {
  std::vector<std::pair<int, int>> out;
  for (int n : {2, 3, 4})
    for (int m : {2, 3, 4}) out.emplace_back(n, m);
  return out;
}

void suite_prop_6_1(Context& ctx, std::vector<PropertyResult>& out) {
  Suite s("prop-6-1", ctx, out);
  for (auto [n, m] : small_pairs()) {
    const GroupPtr g = share(two_generator_abelian(n, m));
    const std::string tag = g->name();
    s.property("H0(Gamma(ker d2)) = 0 over " + tag, [&](Case& c) {
      const auto fox = ker_d2(presentation_complex(g));
      const auto res = abelian_two_generator_resolution(g);
      const auto explicit_route = lattice_from_presentation(ker_d2_presentation(res));
      const auto a = ctx.h0_gamma(fox, "ker d2 " + tag);
      const auto b = ctx.h0_gamma(explicit_route, "coker d4 " + tag);
      c.expect(a.is_trivial(), [&] { return "Fox route gives " + inv(a); });
      c.expect(b.is_trivial(), [&] { return "four-term resolution gives " + inv(b); });
      c.expect(fox.zrank() == explicit_route.zrank() && fox.zrank() == 2 * g->order() - 1, "zranks");
      c.expect((res.d2 * res.d1).is_zero() && (res.d3 * res.d2).is_zero() && (res.d4 * res.d3).is_zero(),
               "d_i d_{i+1} = 0");
      const auto m1 = lattice_from_presentation(M1(g));
      const auto m2 = lattice_from_presentation(M2(g));
      c.expect(m1.zrank() + m2.zrank() == fox.zrank(), "zrank ker d2 = zrank M1 + zrank M2");
      const std::size_t o = g->order();
      c.expect(m1.zrank() == (o - o / n) + (o - o / m), "zrank M1");
    });
  }
  s.finish();
}

void suite_prop_6_2(Context& ctx, std::vector<PropertyResult>& out) {
  Suite s("prop-6-2", ctx, out);
  for (auto [n, m] : small_pairs()) {
    const GroupPtr g = share(two_generator_abelian(n, m));
    const std::string tag = g->name();
    s.property("H0(Gamma(coker d^2)) = 0 over " + tag, [&](Case& c) {
      const auto dual = coker_d2_dual(presentation_complex(g));
      const auto explicit_route = lattice_from_presentation(coker_presentation(g));
      const auto a = ctx.h0_gamma(dual, "coker d^2 " + tag);
      const auto b = ctx.h0_gamma(explicit_route, "M " + tag);
      c.expect(a.is_trivial(), [&] { return "dual of Fox route gives " + inv(a); });
      c.expect(b.is_trivial(), [&] { return "explicit presentation gives " + inv(b); });
      c.expect(dual.zrank() == explicit_route.zrank() && dual.zrank() == 2 * (g->order() - 1) + 1, "zranks");
    });
  }
  s.finish();
}

void suite_stability(Context& ctx, std::vector<PropertyResult>& out) {
  Suite s("stability", ctx, out);
  const auto names = ctx.catalog_up_to(ctx.options.stability_max_order);
  s.property("H0(Gamma(A + (Z pi)^k)) = H0(Gamma(A)) for k = 1, 2", [&](Case& c) {
    for (const auto& name : names) {
      const auto& d = ctx.group_data(name);
      const std::vector<std::pair<std::string, LatticeModule>> mods{
          {"ker d2", d.ker}, {"coker d^2", d.coker}, {"Z pi / N", quotient_by_norm(d.group)}};
      for (const auto& [label, a] : mods) {
        const std::string tag = label + " over " + name;
        const auto base = ctx.h0_gamma(a, tag);
        for (std::size_t k : {1u, 2u}) {
          const auto st = ctx.h0_gamma(stabilize(a, k), tag + " + free^" + std::to_string(k));
          c.expect(st == base, [&] { return tag + ", k=" + std::to_string(k) + ": " + inv(st) + " vs " + inv(base); });
        }
      }
    }
  });
  s.property("H0(Gamma(A)) unchanged by a random change of lattice basis", [&](Case& c) {
    for (const auto& name : names) {
      const auto& d = ctx.group_data(name);
      const auto [u, u_inv] = random_unimodular(ctx, d.ker.zrank(), d.ker.zrank(), 1);
      const auto moved = change_basis(d.ker, u, u_inv);
      c.expect(ctx.h0_gamma(moved, "ker d2 moved " + name) == ctx.h0_gamma(d.ker, "ker d2 " + name), name);
    }
  });
  s.property("H0(Gamma(ker d2)) unchanged by a redundant relator", [&](Case& c) {
    for (const auto& name : ctx.catalog_up_to(ctx.options.max_order)) {
      const auto& d = ctx.group_data(name);
      if (d.group->relators().empty()) continue;
      auto rels = d.group->relators();
      rels.push_back(rels.front() * rels.back());
      const GroupPtr g2 = share(d.group->with_relators(rels));
      const auto k2 = ker_d2(presentation_complex(g2));
      c.expect(k2.zrank() == d.ker.zrank() + d.group->order(), name + ": zrank grows by |pi|");
      const auto a = ctx.h0_gamma(d.ker, "ker d2 " + name);
      const auto b = ctx.h0_gamma(k2, "ker d2 redundant " + name);
      c.expect(a == b, [&] { return name + ": " + inv(a) + " vs " + inv(b); });
    }
  });
  s.finish();
}

std::vector<unsigned> prime_divisors(std::size_t n) {
  std::vector<unsigned> out;
  for (unsigned p = 2; p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  return out;
}

Integer product(const std::vector<Integer>& v) {
  Integer r(1);
  for (const auto& x : v) r *= x;
  return r;
}

void suite_sylow_primes(Context& ctx, std::vector<PropertyResult>& out) {
  Suite s("sylow-primes", ctx, out);
  s.property("H0 invariant factors divide |pi|; p-torsion is seen by the Sylow p-subgroup", [&](Case& c) {
    for (const auto& name : ctx.catalog_up_to(ctx.options.max_order)) {
      const auto& d = ctx.group_data(name);
      const std::size_t n = d.group->order();
      for (const auto& [label, a] : {std::pair<std::string, const LatticeModule*>{"ker d2", &d.ker}, {"coker d^2", &d.coker}}) {
        const auto gm = gamma(*a).module;
        const std::string tag = "Gamma(" + label + ") over " + name;
        const auto h = ctx.h0(gm, tag);
        for (const auto& t : h.torsion) c.expect(divides(t, Integer(static_cast<std::int64_t>(n))), tag + ": factor divides |pi|");
        for (unsigned p : prime_divisors(n)) {
          const auto sylow = sylow_subgroup(*d.group, p);
          if (sylow.size() == n) continue;  // restriction to pi itself
          const auto sub = make_subgroup(*d.group, sylow);
          const auto hp = ctx.h0(restrict(gm, sub), tag + " restricted to Sylow " + std::to_string(p));
          const auto here = h.p_primary(Integer(static_cast<std::int64_t>(p)));
          const auto there = hp.p_primary(Integer(static_cast<std::int64_t>(p)));
          c.expect(!hp.is_trivial() || here.empty(), tag + ": p = " + std::to_string(p));
          c.expect(divides(product(here), product(there)), tag + ": p-part embeds, p = " + std::to_string(p));
        }
      }
    }
  });
  s.finish();
}

void suite_structural(Context& ctx, std::vector<PropertyResult>& out) {
  Suite s("structural", ctx, out);
  s.property("Fox fundamental identity on every catalog relator", [&](Case& c) {
    for (const auto& name : catalog_names()) {
      const GroupPtr g = share(catalog(name));
      for (const auto& w : g->relators()) {
        GroupRingElement sum(g);
        for (std::uint32_t i = 0; i < g->generators().size(); ++i)
          sum += fox_derivative(g, w, i) *
                 (GroupRingElement::basis(g, g->generators()[i].element) - GroupRingElement::one(g));
        c.expect(sum.is_zero(), name);
      }
    }
  });
  s.property("d2 d1 = 0 and d^1 d^2 = 0 for every catalog presentation", [&](Case& c) {
    for (const auto& name : catalog_names()) {
      const auto r = presentation_complex(share(catalog(name)));
      c.expect((r.d2 * r.d1).is_zero() && (r.d1.involute_transpose() * r.d2.involute_transpose()).is_zero(), name);
    }
  });
  s.property("n - N_a = x_a (a^-1 - 1) and m - N_b = -y_b (1 - b) for n, m <= 8", [&](Case& c) {
    for (int n = 2; n <= 8; ++n)
      for (int m = 2; m <= 8; ++m) {
        const GroupPtr g = share(two_generator_abelian(n, m));
        const Element a = g->generators()[0].element, b = g->generators()[1].element;
        const auto one = GroupRingElement::one(g);
        const auto [xa, ya] = weighted_elements(g, a, n);
        const auto [xb, yb] = weighted_elements(g, b, m);
        const auto na = partial_norm(g, a, n), nb = partial_norm(g, b, m);
        const auto ea = GroupRingElement::basis(g, a), eb = GroupRingElement::basis(g, b);
        const auto ea_inv = GroupRingElement::basis(g, g->inverse(a));
        const Integer in(n), im(m);
        c.expect(in * one - na == xa * (ea_inv - one), g->name() + ": x_a");
        c.expect(im * one - nb == -(yb * (one - eb)), g->name() + ": y_b");
        c.expect(in * one - na == -(ya * (one - ea)), g->name() + ": y_a");
      }
  });
  s.property("Gamma rank formula r(r+1)/2 for r <= 40", [&](Case& c) {
    const GroupPtr g = share(catalog("C2"));
    for (std::size_t r = 0; r <= 40; r += 4) {
      std::vector<SparseMatrix> act{SparseMatrix::identity(r)};
      for (std::size_t j = 0; j < r; ++j) act[0].column(j) = {{static_cast<std::uint32_t>(j), Integer(-1)}};
      const auto gm = gamma(LatticeModule(g, r, std::move(act)));
      c.expect(gm.module.zrank() == r * (r + 1) / 2, "r = " + std::to_string(r));
    }
  });
  s.finish();
}

void suite_oracle_fuzz(Context& ctx, std::vector<PropertyResult>& out) {
  Suite s("oracle-fuzz", ctx, out);
  s.property("tate_h0 = tate_h0_via_norm on random lattice modules and their Gamma", [&](Case& c) {
    const auto names = ctx.catalog_up_to(8);
    std::vector<GroupPtr> groups;
    for (const auto& n : names) groups.push_back(share(catalog(n)));
    for (std::size_t t = 0; t < ctx.options.fuzz_modules; ++t) {
      const GroupPtr& g = groups[static_cast<std::size_t>(ctx.uniform(0, static_cast<int>(groups.size()) - 1))];
      const auto a = random_module(ctx, g, 6);
      const std::string tag = "module " + std::to_string(t) + " over " + g->name();
      c.expect(a.zrank() >= 1 && a.zrank() <= 6, tag + ": zrank");
      (void)ctx.h0(a, tag);
      (void)ctx.h0_gamma(a, tag);
    }
  });
  s.finish();
}

}  // namespace

std::vector<PropertyResult> verify(std::string_view suite, const VerifyOptions& options) {
  using Runner = void (*)(Context&, std::vector<PropertyResult>&);
  static const std::vector<std::pair<std::string, Runner>> runners{
      {"linalg", suite_linalg},         {"gamma-axioms", suite_gamma_axioms}, {"theorem-3-1", suite_theorem_3_1},
      {"prop-3-5", suite_prop_3_5},     {"prop-4-4", suite_prop_4_4},         {"prop-6-1", suite_prop_6_1},
      {"prop-6-2", suite_prop_6_2},     {"stability", suite_stability},       {"sylow-primes", suite_sylow_primes},
      {"structural", suite_structural}, {"oracle-fuzz", suite_oracle_fuzz}};
  Context ctx(options);
  std::vector<PropertyResult> out;
  bool found = false;
  for (const auto& [name, run] : runners)
    if (suite == "all" || suite == name) {
      run(ctx, out);
      found = true;
    }
  if (!found) {
    std::string msg = "unknown suite '" + std::string(suite) + "'; available:";
    for (const auto& n : suite_names()) msg += " " + n;
    throw InvalidArgumentError(msg);
  }
  return out;
}

bool all_passed(std::span<const PropertyResult> results) {
  return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.passed; });
}

std::string to_json(std::span<const PropertyResult> results, int indent) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json j{{"suite", r.suite}, {"property", r.property}, {"passed", r.passed}, {"cases", r.cases}};
    if (!r.passed) j["counterexample"] = r.counterexample;
    a.push_back(std::move(j));
  }
  return nlohmann::ordered_json{{"passed", all_passed(results)}, {"properties", a}}.dump(indent);
}

std::string format_text(std::span<const PropertyResult> results) {
  std::ostringstream os;
  for (const auto& r : results) {
    os << (r.passed ? "PASS " : "FAIL ") << r.suite << ": " << r.property << " (" << r.cases << " cases)";
    if (!r.passed) os << "\n     counterexample: " << r.counterexample;
    os << '\n';
  }
  return os.str();
}

}  // namespace gtorsion
