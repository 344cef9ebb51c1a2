#include "gtorsion/sparse_reduce.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "gtorsion/errors.hpp"

namespace gtorsion {

namespace {

/// y += f * x, appending to `added` the indices that were not present in y.
void axpy_tracking(SparseVector& y, const Integer& f, const SparseVector& x, std::vector<std::uint32_t>& added) {
  SparseVector out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].index < x[j].index)) {
      out.push_back(std::move(y[i++]));
    } else if (i == y.size() || x[j].index < y[i].index) {
      added.push_back(x[j].index);
      out.push_back({x[j].index, f * x[j].value});
      ++j;
    } else {
      Integer v = std::move(y[i].value);
      v.add_mul(f, x[j].value);
      if (!v.is_zero()) out.push_back({y[i].index, std::move(v)});
      ++i;
      ++j;
    }
  }
  y = std::move(out);
}

const Integer* find_entry(const SparseVector& v, std::uint32_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const SparseEntry& e, std::uint32_t k) { return e.index < k; });
  if (it == v.end() || it->index != index) return nullptr;
  return &it->value;
}

}  // namespace

SparseElimination::SparseElimination(std::size_t ncols, std::vector<SparseVector> rows, bool keep_pivots)
    : ncols_(ncols), pivot_col_(ncols, false) {
  const std::size_t nrows = rows.size();
  std::vector<bool> alive(nrows, true);
  std::vector<std::vector<std::uint32_t>> col_rows(ncols);
  for (std::size_t r = 0; r < nrows; ++r) {
    if (rows[r].empty()) alive[r] = false;
    for (const auto& e : rows[r]) col_rows[e.index].push_back(static_cast<std::uint32_t>(r));
  }

  using Key = std::pair<std::size_t, std::uint32_t>;  // (length, row)
  std::priority_queue<Key, std::vector<Key>, std::greater<>> queue;
  for (std::size_t r = 0; r < nrows; ++r)
    if (alive[r]) queue.emplace(rows[r].size(), static_cast<std::uint32_t>(r));

  std::vector<std::uint32_t> added;
  while (!queue.empty()) {
    auto [len, p] = queue.top();
    queue.pop();
    if (!alive[p] || rows[p].size() != len) continue;

    // unit entry whose column meets the fewest rows
    std::int64_t best_col = -1;
    std::size_t best_count = 0;
    std::int64_t unit = 0;
    for (const auto& e : rows[p]) {
      if (!e.value.is_unit()) continue;
      const std::size_t cnt = col_rows[e.index].size();
      if (best_col < 0 || cnt < best_count) {
        best_col = e.index;
        best_count = cnt;
        unit = e.value.small_value();
      }
    }
    if (best_col < 0) continue;
    const auto c = static_cast<std::uint32_t>(best_col);

    alive[p] = false;
    const SparseVector& prow = rows[p];
    for (std::uint32_t r : col_rows[c]) {
      if (r == p || !alive[r]) continue;
      const Integer* a = find_entry(rows[r], c);
      if (a == nullptr) continue;  // stale
      Integer f = *a;
      if (unit > 0) f.negate();  // f = -a * unit
      added.clear();
      axpy_tracking(rows[r], f, prow, added);
      for (std::uint32_t j : added) col_rows[j].push_back(r);
      if (rows[r].empty()) {
        alive[r] = false;
      } else {
        queue.emplace(rows[r].size(), r);
      }
    }
    col_rows[c].clear();
    col_rows[c].shrink_to_fit();
    pivot_col_[c] = true;
    ++pivot_count_;
    if (keep_pivots) {
      pivots_.push_back(Pivot{c, std::move(rows[p]), unit});
    } else {
      SparseVector().swap(rows[p]);
    }
  }

  for (std::size_t r = 0; r < nrows; ++r)
    if (alive[r]) residual_.push_back(std::move(rows[r]));
  for (std::uint32_t c = 0; c < ncols; ++c)
    if (!pivot_col_[c]) free_.push_back(c);
}

IntMatrix SparseElimination::dense_residual(std::vector<std::uint32_t>& columns) const {
  std::vector<bool> used(ncols_, false);
  for (const auto& r : residual_)
    for (const auto& e : r) used[e.index] = true;
  columns.clear();
  std::vector<std::uint32_t> slot(ncols_, 0);
  for (std::uint32_t c = 0; c < ncols_; ++c)
    if (used[c]) {
      slot[c] = static_cast<std::uint32_t>(columns.size());
      columns.push_back(c);
    }
  IntMatrix d(residual_.size(), columns.size());
  for (std::size_t i = 0; i < residual_.size(); ++i)
    for (const auto& e : residual_[i]) d(i, slot[e.index]) = e.value;
  return d;
}

AbelianInvariants sparse_cokernel(std::size_t ncols, std::vector<SparseVector> rows) {
  SparseElimination elim(ncols, std::move(rows), false);
  std::vector<std::uint32_t> cols;
  IntMatrix d = elim.dense_residual(cols);
  // free columns outside the residual are free generators
  AbelianInvariants out = cokernel_invariants(d.transpose());
  out.free_rank += elim.free_columns().size() - cols.size();
  return out;
}

// ---------------------------------------------------------------- kernel

SparseKernel::SparseKernel(std::size_t ncols, std::vector<SparseVector> rows)
    : elim_(ncols, std::move(rows), true) {
  IntMatrix d = elim_.dense_residual(constrained_);
  std::vector<bool> in_residual(ncols, false);
  for (auto c : constrained_) in_residual[c] = true;
  for (auto c : elim_.free_columns())
    if (!in_residual[c]) unconstrained_.push_back(c);
  dense_kernel_ = d.rows() == 0 ? IntMatrix::identity(constrained_.size()) : kernel_basis(d);
  if (dense_kernel_.cols() > 0) solver_.emplace(dense_kernel_);
}

void SparseKernel::back_substitute(std::vector<Integer>& x) const {
  const auto& piv = elim_.pivots();
  for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
    Integer s;
    for (const auto& e : it->row)
      if (e.index != it->column) s.add_mul(e.value, x[e.index]);
    if (it->unit > 0) s.negate();  // x_c = -unit * s
    x[it->column] = std::move(s);
  }
}

SparseVector SparseKernel::expand(const IntVector& coords) const {
  std::vector<Integer> x(elim_.ncols());
  for (std::size_t k = 0; k < unconstrained_.size(); ++k) x[unconstrained_[k]] = coords[k];
  for (std::size_t i = 0; i < constrained_.size(); ++i) {
    Integer s;
    for (std::size_t k = 0; k < dense_kernel_.cols(); ++k)
      s.add_mul(dense_kernel_(i, k), coords[unconstrained_.size() + k]);
    x[constrained_[i]] = std::move(s);
  }
  back_substitute(x);
  return to_sparse(x);
}

SparseVector SparseKernel::basis_vector(std::size_t k) const {
  IntVector coords(dimension());
  coords[k] = Integer(1);
  return expand(coords);
}

std::vector<SparseVector> SparseKernel::basis() const {
  std::vector<SparseVector> out;
  out.reserve(dimension());
  for (std::size_t k = 0; k < dimension(); ++k) out.push_back(basis_vector(k));
  return out;
}

std::optional<IntVector> SparseKernel::coordinates(const SparseVector& x) const {
  IntVector coords(dimension());
  for (std::size_t k = 0; k < unconstrained_.size(); ++k) coords[k] = coefficient(x, unconstrained_[k]);
  if (!constrained_.empty()) {
    IntVector part(constrained_.size());
    for (std::size_t i = 0; i < constrained_.size(); ++i) part[i] = coefficient(x, constrained_[i]);
    if (dense_kernel_.cols() == 0) {
      for (const auto& v : part)
        if (!v.is_zero()) return std::nullopt;
    } else {
      auto z = solver_->solve(part);
      if (!z) return std::nullopt;
      for (std::size_t k = 0; k < z->size(); ++k) coords[unconstrained_.size() + k] = (*z)[k];
    }
  }
  return coords;
}

bool SparseKernel::contains(const SparseVector& x) const {
  auto c = coordinates(x);
  return c && expand(*c) == x;
}

// -------------------------------------------------------------- quotient

SparseQuotient::SparseQuotient(std::size_t ncols, std::vector<SparseVector> rows)
    : elim_(ncols, std::move(rows), true), column_slot_(ncols, -1) {
  IntMatrix d = elim_.dense_residual(constrained_);
  std::vector<bool> in_residual(ncols, false);
  for (auto c : constrained_) in_residual[c] = true;
  for (auto c : elim_.free_columns())
    if (!in_residual[c]) unconstrained_.push_back(c);
  for (std::size_t k = 0; k < unconstrained_.size(); ++k) column_slot_[unconstrained_[k]] = static_cast<std::int64_t>(k);
  for (std::size_t k = 0; k < constrained_.size(); ++k)
    column_slot_[constrained_[k]] = -static_cast<std::int64_t>(k) - 2;

  // relations are rows: U * d * V = D, coordinates change as x -> x V
  auto snf = smith_normal_form(d, SmithOptions{true, true});
  residual_rank_ = snf.rank;
  std::vector<Integer> torsion = snf.invariant_factors;
  if (!torsion.empty()) {
    throw NotALatticeError("quotient has torsion", std::move(torsion));
  }
  V_ = std::move(snf.V);
  V_inverse_ = std::move(snf.V_inverse);
  if (constrained_.empty()) {
    V_ = IntMatrix();
    V_inverse_ = IntMatrix();
  }
}

IntVector SparseQuotient::project(const SparseVector& x) const {
  std::vector<Integer> acc(elim_.ncols());
  for (const auto& e : x) acc[e.index] = e.value;
  for (const auto& p : elim_.pivots()) {
    if (acc[p.column].is_zero()) continue;
    Integer f = acc[p.column];
    if (p.unit > 0) f.negate();  // acc += (-acc_c * unit) * row
    for (const auto& e : p.row) acc[e.index].add_mul(f, e.value);
  }
  IntVector out(rank());
  for (std::size_t k = 0; k < unconstrained_.size(); ++k) out[k] = std::move(acc[unconstrained_[k]]);
  const std::size_t nc = constrained_.size();
  for (std::size_t k = residual_rank_; k < nc; ++k) {
    Integer s;
    for (std::size_t i = 0; i < nc; ++i) s.add_mul(acc[constrained_[i]], V_(i, k));
    out[unconstrained_.size() + (k - residual_rank_)] = std::move(s);
  }
  return out;
}

SparseVector SparseQuotient::lift(std::size_t k) const {
  if (k < unconstrained_.size()) return SparseVector{{unconstrained_[k], Integer(1)}};
  const std::size_t r = residual_rank_ + (k - unconstrained_.size());
  SparseVector out;
  for (std::size_t i = 0; i < constrained_.size(); ++i)
    if (!V_inverse_(r, i).is_zero()) out.push_back({constrained_[i], V_inverse_(r, i)});
  std::sort(out.begin(), out.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
  return out;
}

}  // namespace gtorsion
