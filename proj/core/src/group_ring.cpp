#include "gtorsion/group_ring.hpp"

#include "gtorsion/errors.hpp"

namespace gtorsion {

GroupRingElement::GroupRingElement(GroupPtr group) : group_(std::move(group)), coeffs_(group_->order()) {}

GroupRingElement::GroupRingElement(GroupPtr group, std::vector<Integer> coeffs)
    : group_(std::move(group)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != group_->order()) throw InvalidArgumentError("group ring element has wrong length");
}

GroupRingElement GroupRingElement::basis(const GroupPtr& g, Element e, const Integer& c) {
  GroupRingElement x(g);
  x.coeffs_[e] = c;
  return x;
}

bool GroupRingElement::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

Integer GroupRingElement::augmentation() const {
  Integer s;
  for (const auto& c : coeffs_) s += c;
  return s;
}

void GroupRingElement::check_same_group(const GroupRingElement& y) const {
  if (group_ != y.group_ && !(*group_ == *y.group_)) throw InvalidArgumentError("group ring elements over different groups");
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& y) {
  check_same_group(y);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += y.coeffs_[i];
  return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& y) {
  check_same_group(y);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= y.coeffs_[i];
  return *this;
}

GroupRingElement& GroupRingElement::operator*=(const Integer& c) {
  for (auto& v : coeffs_) v *= c;
  return *this;
}

GroupRingElement operator*(const GroupRingElement& x, const GroupRingElement& y) {
  x.check_same_group(y);
  const FiniteGroup& g = x.g();
  GroupRingElement z(x.group_);
  for (Element a = 0; a < g.order(); ++a) {
    if (x.coeffs_[a].is_zero()) continue;
    for (Element b = 0; b < g.order(); ++b) {
      if (y.coeffs_[b].is_zero()) continue;
      z.coeffs_[g.mul(a, b)].add_mul(x.coeffs_[a], y.coeffs_[b]);
    }
  }
  return z;
}

bool operator==(const GroupRingElement& x, const GroupRingElement& y) {
  return (x.group_ == y.group_ || *x.group_ == *y.group_) && x.coeffs_ == y.coeffs_;
}

GroupRingElement multiply(const GroupRingElement& x, const GroupRingElement& y) { return x * y; }

GroupRingElement norm_element(const GroupPtr& g) {
  return GroupRingElement(g, std::vector<Integer>(g->order(), Integer(1)));
}

GroupRingElement partial_norm(const GroupPtr& grp, Element g, int k) {
  if (k < 1 || grp->power(g, k) != grp->identity())
    throw InvalidArgumentError("partial_norm: g^k is not the identity");
  GroupRingElement x(grp);
  Element p = grp->identity();
  for (int i = 0; i < k; ++i) {
    x[p] += Integer(1);
    p = grp->mul(p, g);
  }
  return x;
}

std::pair<GroupRingElement, GroupRingElement> weighted_elements(const GroupPtr& grp, Element g, int n) {
  if (n < 1 || grp->element_order(g) != static_cast<std::size_t>(n))
    throw InvalidArgumentError("weighted_elements: element does not have the stated order");
  GroupRingElement x(grp), y(grp);
  Element p = grp->identity();
  for (int i = 0; i < n; ++i) {
    if (i > 0) x[p] += Integer(n - i);
    y[p] += Integer(i);
    p = grp->mul(p, g);
  }
  return {std::move(x), std::move(y)};
}

GroupRingElement involute(const GroupRingElement& x) {
  GroupRingElement y(x.group());
  for (Element e = 0; e < x.g().order(); ++e) y[x.g().inverse(e)] = x[e];
  return y;
}

// ----------------------------------------------------------------- matrices

GroupRingMatrix::GroupRingMatrix(GroupPtr group, std::size_t rows, std::size_t cols)
    : group_(std::move(group)), rows_(rows), cols_(cols), data_(rows * cols, GroupRingElement(group_)) {}

GroupRingMatrix::GroupRingMatrix(GroupPtr group, std::vector<std::vector<GroupRingElement>> rows)
    : group_(std::move(group)), rows_(rows.size()), cols_(rows.empty() ? 0 : rows[0].size()) {
  data_.reserve(rows_ * cols_);
  for (auto& r : rows) {
    if (r.size() != cols_) throw InvalidArgumentError("ragged group ring matrix");
    for (auto& e : r) {
      if (e.group() != group_ && !(*e.group() == *group_))
        throw InvalidArgumentError("group ring matrix entry over a different group");
      data_.push_back(std::move(e));
    }
  }
}

bool GroupRingMatrix::is_zero() const {
  for (const auto& e : data_)
    if (!e.is_zero()) return false;
  return true;
}

GroupRingMatrix GroupRingMatrix::involute_transpose() const {
  GroupRingMatrix t(group_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = involute((*this)(i, j));
  return t;
}

GroupRingMatrix operator*(const GroupRingMatrix& a, const GroupRingMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidArgumentError("group ring matrix shape mismatch");
  GroupRingMatrix c(a.group_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

bool operator==(const GroupRingMatrix& a, const GroupRingMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix expand_matrix(const GroupRingMatrix& m) {
  const FiniteGroup& g = *m.group();
  const std::size_t n = g.order();
  IntMatrix out(m.rows() * n, m.cols() * n);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& x = m(i, j);
      for (Element a = 0; a < n; ++a) {
        if (x[a].is_zero()) continue;
        // m g has coefficient x[a] at a g
        for (Element col = 0; col < n; ++col) out(i * n + g.mul(a, col), j * n + col) += x[a];
      }
    }
  return out;
}

SparseMatrix expand_linear_map(const GroupRingMatrix& m) {
  const FiniteGroup& g = *m.group();
  const std::size_t n = g.order();
  SparseMatrix out(m.cols() * n, m.rows() * n);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (Element e = 0; e < n; ++e) {
      std::vector<Integer> dense(m.cols() * n);
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const auto& x = m(i, j);
        for (Element a = 0; a < n; ++a)
          if (!x[a].is_zero()) dense[j * n + g.mul(e, a)] += x[a];
      }
      out.column(i * n + e) = to_sparse(dense);
    }
  return out;
}

GroupRingElement fox_derivative(const GroupPtr& grp, const Word& w, std::uint32_t gen) {
  if (gen >= grp->generators().size()) throw InvalidArgumentError("fox_derivative: generator out of range");
  GroupRingElement d(grp);
  Element prefix = grp->identity();
  for (const auto& l : w.letters) {
    if (l.generator >= grp->generators().size()) throw InvalidArgumentError("fox_derivative: invalid word");
    const Element x = grp->generators()[l.generator].element;
    if (l.exponent > 0) {
      if (l.generator == gen) d[prefix] += Integer(1);
      prefix = grp->mul(prefix, x);
    } else {
      prefix = grp->mul(prefix, grp->inverse(x));
      if (l.generator == gen) d[prefix] -= Integer(1);  // u * (-g^-1)
    }
  }
  return d;
}

std::vector<std::uint32_t> left_translation(const FiniteGroup& g, Element e) {
  std::vector<std::uint32_t> p(g.order());
  for (Element h = 0; h < g.order(); ++h) p[h] = g.mul(e, h);
  return p;
}

}  // namespace gtorsion
