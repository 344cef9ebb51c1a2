#include "gtorsion/int_matrix.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace gtorsion {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> init) {
  rows_ = init.size();
  cols_ = rows_ == 0 ? 0 : init.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : init) {
    if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
    for (auto v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVector>& columns) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw std::invalid_argument("from_columns: bad column length");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("submatrix");
  IntMatrix s(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) s(i, j) = (*this)(r0 + i, c0 + j);
  return s;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v.is_zero(); });
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != Integer(i == j ? 1 : 0)) return false;
  return true;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor.is_zero()) return;
  for (std::size_t j = 0; j < cols_; ++j) {
    const Integer& s = (*this)(src, j);
    if (!s.is_zero()) (*this)(dst, j).add_mul(factor, s);
  }
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor.is_zero()) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const Integer& s = (*this)(i, src);
    if (!s.is_zero()) (*this)(i, dst).add_mul(factor, s);
  }
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j).negate();
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c).negate();
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix product: shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Integer& bkj = b(k, j);
        if (!bkj.is_zero()) c(i, j).add_mul(aik, bkj);
      }
    }
  }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("IntMatrix sum: shape mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("IntMatrix difference: shape mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows_; ++i) {
    os << (i == 0 ? "[" : ",[");
    for (std::size_t j = 0; j < m.cols_; ++j) os << (j == 0 ? "" : ",") << m(i, j);
    os << ']';
  }
  return os << ']';
}

IntVector multiply(const IntMatrix& a, std::span<const Integer> x) {
  if (x.size() != a.cols()) throw std::invalid_argument("matrix-vector product: shape mismatch");
  IntVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!x[j].is_zero()) y[i].add_mul(a(i, j), x[j]);
  return y;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
  IntMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
  IntMatrix c(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, j) = b(i, j);
  return c;
}

Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: not square");
  const std::size_t n = a.rows();
  if (n == 0) return Integer(1);
  IntMatrix m = a;
  Integer prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m(p, k).is_zero()) ++p;
      if (p == n) return Integer(0);
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k);
        v.sub_mul(m(i, k), m(k, j));
        m(i, j) = divexact(v, prev);
      }
    }
    prev = m(k, k);
  }
  Integer d = m(n - 1, n - 1);
  if (sign < 0) d.negate();
  return d;
}

SparseVector to_sparse(std::span<const Integer> dense) {
  SparseVector v;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (!dense[i].is_zero()) v.push_back({static_cast<std::uint32_t>(i), dense[i]});
  return v;
}

IntVector to_dense(const SparseVector& v, std::size_t n) {
  IntVector d(n);
  for (const auto& e : v) {
    if (e.index >= n) throw std::out_of_range("to_dense: index out of range");
    d[e.index] = e.value;
  }
  return d;
}

void axpy(SparseVector& y, const Integer& factor, const SparseVector& x) {
  if (factor.is_zero() || x.empty()) return;
  SparseVector out;
  out.reserve(y.size() + x.size());
  auto yi = y.begin();
  auto xi = x.begin();
  while (yi != y.end() || xi != x.end()) {
    if (xi == x.end() || (yi != y.end() && yi->index < xi->index)) {
      out.push_back(std::move(*yi++));
    } else if (yi == y.end() || xi->index < yi->index) {
      out.push_back({xi->index, factor * xi->value});
      ++xi;
    } else {
      Integer v = std::move(yi->value);
      v.add_mul(factor, xi->value);
      if (!v.is_zero()) out.push_back({xi->index, std::move(v)});
      ++xi;
      ++yi;
    }
  }
  y = std::move(out);
}

Integer coefficient(const SparseVector& v, std::uint32_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const SparseEntry& e, std::uint32_t i) { return e.index < i; });
  if (it != v.end() && it->index == index) return it->value;
  return Integer(0);
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) m.columns_[j].push_back({static_cast<std::uint32_t>(j), Integer(1)});
  return m;
}

SparseMatrix SparseMatrix::from_dense(const IntMatrix& d) {
  SparseMatrix m(d.rows(), d.cols());
  for (std::size_t j = 0; j < d.cols(); ++j)
    for (std::size_t i = 0; i < d.rows(); ++i)
      if (!d(i, j).is_zero()) m.columns_[j].push_back({static_cast<std::uint32_t>(i), d(i, j)});
  return m;
}

SparseMatrix SparseMatrix::permutation(std::span<const std::uint32_t> perm) {
  SparseMatrix m(perm.size(), perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) m.columns_[j].push_back({perm[j], Integer(1)});
  return m;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

namespace {

/// Dense scatter accumulator reused across columns.
class Accumulator {
 public:
  explicit Accumulator(std::size_t n) : values_(n), mark_(n, 0) {}
  void add(std::uint32_t i, const Integer& a, const Integer& b) {
    if (!mark_[i]) {
      mark_[i] = 1;
      touched_.push_back(i);
    }
    values_[i].add_mul(a, b);
  }
  SparseVector flush() {
    std::sort(touched_.begin(), touched_.end());
    SparseVector out;
    out.reserve(touched_.size());
    for (auto i : touched_) {
      if (!values_[i].is_zero()) out.push_back({i, std::move(values_[i])});
      values_[i] = Integer(0);
      mark_[i] = 0;
    }
    touched_.clear();
    return out;
  }

 private:
  std::vector<Integer> values_;
  std::vector<std::uint8_t> mark_;
  std::vector<std::uint32_t> touched_;
};

}  // namespace

SparseVector SparseMatrix::apply(const SparseVector& x) const {
  Accumulator acc(rows_);
  for (const auto& e : x) {
    if (e.index >= columns_.size()) throw std::out_of_range("SparseMatrix::apply");
    for (const auto& c : columns_[e.index]) acc.add(c.index, e.value, c.value);
  }
  return acc.flush();
}

IntMatrix SparseMatrix::to_dense() const {
  IntMatrix d(rows_, columns_.size());
  for (std::size_t j = 0; j < columns_.size(); ++j)
    for (const auto& e : columns_[j]) d(e.index, j) = e.value;
  return d;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(columns_.size(), rows_);
  for (std::size_t j = 0; j < columns_.size(); ++j)
    for (const auto& e : columns_[j]) t.columns_[e.index].push_back({static_cast<std::uint32_t>(j), e.value});
  return t;
}

bool SparseMatrix::is_identity() const {
  if (rows_ != columns_.size()) return false;
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    const auto& c = columns_[j];
    if (c.size() != 1 || c[0].index != j || !c[0].value.is_one()) return false;
  }
  return true;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("SparseMatrix product: shape mismatch");
  SparseMatrix c(a.rows(), b.cols());
  Accumulator acc(a.rows());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (const auto& e : b.column(j))
      for (const auto& f : a.column(e.index)) acc.add(f.index, e.value, f.value);
    c.column(j) = acc.flush();
  }
  return c;
}

SparseMatrix kronecker(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ja = 0; ja < a.cols(); ++ja) {
    for (std::size_t jb = 0; jb < b.cols(); ++jb) {
      SparseVector col;
      col.reserve(a.column(ja).size() * b.column(jb).size());
      for (const auto& ea : a.column(ja))
        for (const auto& eb : b.column(jb))
          col.push_back({static_cast<std::uint32_t>(ea.index * b.rows() + eb.index), ea.value * eb.value});
      k.column(ja * b.cols() + jb) = std::move(col);
    }
  }
  return k;
}

SparseMatrix block_diagonal(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) m.column(j) = a.column(j);
  const auto shift = static_cast<std::uint32_t>(a.rows());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    SparseVector col = b.column(j);
    for (auto& e : col) e.index += shift;
    m.column(a.cols() + j) = std::move(col);
  }
  return m;
}

SparseMatrix power(const SparseMatrix& m, unsigned k) {
  if (m.rows() != m.cols()) throw std::invalid_argument("power: matrix not square");
  SparseMatrix result = SparseMatrix::identity(m.rows());
  for (unsigned i = 0; i < k; ++i) result = m * result;
  return result;
}

}  // namespace gtorsion
