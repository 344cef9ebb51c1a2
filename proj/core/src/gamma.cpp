#include "gtorsion/gamma.hpp"

#include <algorithm>

#include "gtorsion/errors.hpp"

namespace gtorsion {

std::pair<std::size_t, std::size_t> GammaIndex::label(std::size_t k) const {
  if (k < base_rank) return {k, k};
  std::size_t rest = k - base_rank;
  for (std::size_t i = 0; i < base_rank; ++i) {
    const std::size_t row = base_rank - i - 1;
    if (rest < row) return {i, i + 1 + rest};
    rest -= row;
  }
  throw InvalidArgumentError("gamma basis index out of range");
}

namespace {

struct Accumulator {
  std::vector<std::pair<std::uint32_t, Integer>> items;
  void add(std::size_t idx, Integer v) { items.emplace_back(static_cast<std::uint32_t>(idx), std::move(v)); }
  SparseVector finish() {
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVector out;
    for (auto& [i, v] : items) {
      if (!out.empty() && out.back().index == i) {
        out.back().value += v;
        if (out.back().value.is_zero()) out.pop_back();
      } else if (!v.is_zero()) {
        out.push_back({i, std::move(v)});
      }
    }
    return out;
  }
};

}  // namespace

GammaModule gamma(const LatticeModule& a, LatticeModule::Check check) {
  const std::size_t r = a.zrank();
  const GammaIndex shape{r};
  const std::size_t n = shape.size();
  std::vector<SparseMatrix> action;
  for (const auto& m : a.actions()) {
    SparseMatrix g(n, n);
    for (std::size_t i = 0; i < r; ++i) {
      // v(b_i) -> (M b_i) (x) (M b_i): v_k gets x_k^2, e_kl gets x_k x_l
      const SparseVector& x = m.column(i);
      Accumulator acc;
      for (std::size_t p = 0; p < x.size(); ++p) {
        acc.add(shape.v_index(x[p].index), x[p].value * x[p].value);
        for (std::size_t q = p + 1; q < x.size(); ++q)
          acc.add(shape.e_index(x[p].index, x[q].index), x[p].value * x[q].value);
      }
      g.column(shape.v_index(i)) = acc.finish();
    }
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i + 1; j < r; ++j) {
        // e_ij -> x (x) y + y (x) x: v_k gets 2 x_k y_k, e_kl gets x_k y_l + x_l y_k
        const SparseVector& x = m.column(i);
        const SparseVector& y = m.column(j);
        Accumulator acc;
        for (const auto& ex : x)
          for (const auto& ey : y) {
            const auto k = ex.index, l = ey.index;
            Integer p = ex.value * ey.value;
            if (k == l) {
              acc.add(shape.v_index(k), p + p);
            } else {
              acc.add(shape.e_index(std::min(k, l), std::max(k, l)), std::move(p));
            }
          }
        g.column(shape.e_index(i, j)) = acc.finish();
      }
    action.push_back(std::move(g));
  }
  return GammaModule{LatticeModule(a.group(), n, std::move(action), check), shape};
}

IntVector gamma_coordinates(const IntMatrix& t) {
  const std::size_t r = t.rows();
  if (t.cols() != r) throw InvalidArgumentError("gamma_coordinates: tensor is not square");
  const GammaIndex shape{r};
  IntVector c(shape.size());
  for (std::size_t k = 0; k < r; ++k) {
    c[shape.v_index(k)] = t(k, k);
    for (std::size_t l = k + 1; l < r; ++l) {
      if (t(k, l) != t(l, k)) throw ConsistencyError("tensor is not symmetric");
      c[shape.e_index(k, l)] = t(k, l);
    }
  }
  return c;
}

IntMatrix gamma_embedding(std::size_t r, const IntVector& coords) {
  const GammaIndex shape{r};
  IntMatrix t(r, r);
  for (std::size_t k = 0; k < r; ++k) {
    t(k, k) = coords[shape.v_index(k)];
    for (std::size_t l = k + 1; l < r; ++l) {
      t(k, l) = coords[shape.e_index(k, l)];
      t(l, k) = coords[shape.e_index(k, l)];
    }
  }
  return t;
}

bool gamma_map_check(const LatticeModule& a, const IntVector& x, const IntVector& y, const IntVector& z) {
  const std::size_t r = a.zrank();
  if (x.size() != r || y.size() != r || z.size() != r) throw InvalidArgumentError("gamma_map_check: vector length");
  auto v = [r](const IntVector& u) {
    IntMatrix t(r, r);
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t l = 0; l < r; ++l) t(k, l) = u[k] * u[l];
    return t;
  };
  auto add = [](IntVector p, const IntVector& q) {
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += q[i];
    return p;
  };
  auto neg = [](IntVector p) {
    for (auto& e : p) e.negate();
    return p;
  };
  if (!(v(neg(x)) == v(x))) return false;
  IntMatrix cubic = v(add(add(x, y), z)) - v(add(y, z)) - v(add(z, x)) - v(add(x, y)) + v(x) + v(y) + v(z);
  if (!cubic.is_zero()) return false;
  for (const auto* u : {&x, &y, &z}) {
    const IntMatrix t = v(*u);
    if (!(gamma_embedding(r, gamma_coordinates(t)) == t)) return false;
  }
  return true;
}

SumDecomposition gamma_of_sum_decomposition(const LatticeModule& a, const LatticeModule& b) {
  const std::size_t r = a.zrank(), s = b.zrank();
  GammaModule gs = gamma(direct_sum(a, b));
  GammaModule ga = gamma(a), gb = gamma(b);
  LatticeModule target = direct_sum(direct_sum(ga.module, gb.module), tensor(a, b));
  const std::size_t na = ga.module.zrank(), nb = gb.module.zrank();

  std::vector<std::uint32_t> perm(gs.module.zrank());
  for (std::size_t k = 0; k < perm.size(); ++k) {
    auto [i, j] = gs.index.label(k);
    std::size_t t;
    if (j < r) {
      t = i == j ? ga.index.v_index(i) : ga.index.e_index(i, j);
    } else if (i >= r) {
      t = na + (i == j ? gb.index.v_index(i - r) : gb.index.e_index(i - r, j - r));
    } else {
      t = na + nb + i * s + (j - r);
    }
    perm[k] = static_cast<std::uint32_t>(t);
  }
  SparseMatrix iso = SparseMatrix::permutation(perm);
  bool ok = true;
  for (std::size_t g = 0; g < a.actions().size() && ok; ++g)
    ok = iso * gs.module.action(g) == target.action(g) * iso;
  return SumDecomposition{std::move(gs.module), std::move(target), std::move(iso), ok};
}

}  // namespace gtorsion
