#pragma once

// Dense exact linear algebra over a field K (see scalars.hpp).
//
// Vectors are rows.  A matrix M with r rows and c columns is the linear map
// v -> v*M from K^r to K^c, so its rows are the images of the basis vectors.
// Matrices carry no field; every routine that does arithmetic takes one.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ncg/error.hpp"
#include "ncg/scalars.hpp"

namespace ncg {

template <class K>
using Vec = std::vector<typename K::Elem>;

template <class K>
class Matrix {
 public:
  using Elem = typename K::Elem;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const Elem& zero)
      : rows_(rows), cols_(cols), data_(rows * cols, zero) {}

  static Matrix zeros(const K& f, std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols, f.zero());
  }
  static Matrix identity(const K& f, std::size_t n) {
    Matrix m(n, n, f.zero());
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
  }
  /// Empty matrix with a fixed column count, ready for append_row.
  static Matrix with_cols(std::size_t cols) {
    Matrix m;
    m.cols_ = cols;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0; }

  Elem& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Elem& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Elem> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Elem> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Vec<K> row_vec(std::size_t i) const { return Vec<K>(row(i).begin(), row(i).end()); }

  void append_row(std::span<const Elem> r) {
    if (r.size() != cols_) throw Error(ErrorCode::ShapeMismatch, "append_row: wrong length");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }
  void append_rows(const Matrix& other) {
    if (other.rows_ == 0) return;
    if (other.cols_ != cols_) throw Error(ErrorCode::ShapeMismatch, "append_rows: wrong width");
    data_.insert(data_.end(), other.data_.begin(), other.data_.end());
    rows_ += other.rows_;
  }
  void truncate_rows(std::size_t n) {
    rows_ = std::min(rows_, n);
    data_.resize(rows_ * cols_);
  }

  Matrix transpose() const {
    Matrix t;
    t.rows_ = cols_;
    t.cols_ = rows_;
    t.data_.reserve(data_.size());
    for (std::size_t j = 0; j < cols_; ++j)
      for (std::size_t i = 0; i < rows_; ++i) t.data_.push_back(at(i, j));
    return t;
  }
  Matrix select_rows(const std::vector<std::size_t>& idx) const {
    Matrix m = with_cols(cols_);
    for (auto i : idx) m.append_row(row(i));
    return m;
  }
  Matrix select_cols(const std::vector<std::size_t>& idx) const {
    Matrix m;
    m.rows_ = rows_;
    m.cols_ = idx.size();
    m.data_.reserve(rows_ * idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (auto j : idx) m.data_.push_back(at(i, j));
    return m;
  }
  /// Columns [from, from+n).
  Matrix col_range(std::size_t from, std::size_t n) const {
    Matrix m;
    m.rows_ = rows_;
    m.cols_ = n;
    m.data_.reserve(rows_ * n);
    for (std::size_t i = 0; i < rows_; ++i)
      m.data_.insert(m.data_.end(), data_.begin() + i * cols_ + from,
                     data_.begin() + i * cols_ + from + n);
    return m;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

template <class K>
bool is_zero_vec(const K& f, std::span<const typename K::Elem> v) {
  return std::all_of(v.begin(), v.end(), [&](const auto& a) { return f.is_zero(a); });
}

template <class K>
bool is_zero_matrix(const K& f, const Matrix<K>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!is_zero_vec(f, m.row(i))) return false;
  return true;
}

/// Reduced row echelon form in place; zero rows are dropped.  Returns the
/// pivot column of each remaining row (strictly increasing).
template <class K>
std::vector<std::size_t> rref(const K& f, Matrix<K>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && f.is_zero(m.at(sel, c))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r) std::swap_ranges(m.row(sel).begin(), m.row(sel).end(), m.row(r).begin());
    const auto inv = f.inv(m.at(r, c));
    f.scale(m.row(r), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || f.is_zero(m.at(i, c))) continue;
      const auto coef = f.neg(m.at(i, c));
      f.axpy(m.row(i), coef, m.row(r));
    }
    pivots.push_back(c);
    ++r;
  }
  m.truncate_rows(r);
  return pivots;
}

template <class K>
std::size_t rank(const K& f, Matrix<K> m) {
  return rref(f, m).size();
}

template <class K>
Matrix<K> mul(const K& f, const Matrix<K>& a, const Matrix<K>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "matrix product");
  Matrix<K> c = Matrix<K>::zeros(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (!f.is_zero(a.at(i, k))) f.axpy(c.row(i), a.at(i, k), b.row(k));
  return c;
}

/// v * m
template <class K>
Vec<K> vec_mul(const K& f, std::span<const typename K::Elem> v, const Matrix<K>& m) {
  if (v.size() != m.rows()) throw Error(ErrorCode::ShapeMismatch, "vector-matrix product");
  Vec<K> out(m.cols(), f.zero());
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!f.is_zero(v[k])) f.axpy(std::span(out), v[k], m.row(k));
  return out;
}

template <class K>
Matrix<K> add(const K& f, Matrix<K> a, const Matrix<K>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::ShapeMismatch, "matrix sum");
  for (std::size_t i = 0; i < a.rows(); ++i) f.axpy(a.row(i), f.one(), b.row(i));
  return a;
}

/// Basis (as rows) of {x : x * m = 0}.  Each basis row has a 1 in a distinct
/// "free" position where every other basis row vanishes.
template <class K>
Matrix<K> left_kernel(const K& f, const Matrix<K>& m) {
  Matrix<K> t = m.transpose();
  const auto piv = rref(f, t);
  const std::size_t n = m.rows();
  std::vector<char> is_piv(n, 0);
  for (auto c : piv) is_piv[c] = 1;
  Matrix<K> ker = Matrix<K>::with_cols(n);
  Vec<K> v(n, f.zero());
  for (std::size_t free = 0; free < n; ++free) {
    if (is_piv[free]) continue;
    std::fill(v.begin(), v.end(), f.zero());
    v[free] = f.one();
    for (std::size_t r = 0; r < piv.size(); ++r)
      if (!f.is_zero(t.at(r, free))) v[piv[r]] = f.neg(t.at(r, free));
    ker.append_row(v);
  }
  return ker;
}

template <class K>
std::optional<Matrix<K>> inverse(const K& f, const Matrix<K>& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) return std::nullopt;
  Matrix<K> aug = Matrix<K>::zeros(f, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(m.row(i).begin(), m.row(i).end(), aug.row(i).begin());
    aug.at(i, n + i) = f.one();
  }
  const auto piv = rref(f, aug);
  if (piv.size() < n || (n > 0 && piv[n - 1] >= n)) return std::nullopt;
  return aug.col_range(n, n);
}

/// Solves x * m = t for many right-hand sides t, reusing one elimination.
template <class K>
class RowSolver {
 public:
  using Elem = typename K::Elem;

  RowSolver(const K& f, const Matrix<K>& m) : f_(f), n_(m.rows()), c_(m.cols()) {
    Matrix<K> aug = Matrix<K>::zeros(f, n_, c_ + n_);
    for (std::size_t i = 0; i < n_; ++i) {
      std::copy(m.row(i).begin(), m.row(i).end(), aug.row(i).begin());
      aug.at(i, c_ + i) = f.one();
    }
    auto piv = rref(f, aug);
    for (std::size_t r = 0; r < piv.size() && piv[r] < c_; ++r) pivots_.push_back(piv[r]);
    aug.truncate_rows(pivots_.size());
    red_ = std::move(aug);
  }

  std::size_t rank() const noexcept { return pivots_.size(); }

  std::optional<Vec<K>> solve(std::span<const Elem> t) const {
    Vec<K> rest(t.begin(), t.end());
    Vec<K> x(n_, f_.zero());
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
      const Elem coef = rest[pivots_[r]];
      if (f_.is_zero(coef)) continue;
      auto row = red_.row(r);
      f_.axpy(std::span(rest), f_.neg(coef), row.subspan(0, c_));
      f_.axpy(std::span(x), coef, row.subspan(c_, n_));
    }
    if (!is_zero_vec(f_, std::span<const Elem>(rest))) return std::nullopt;
    return x;
  }

 private:
  K f_;
  std::size_t n_, c_;
  std::vector<std::size_t> pivots_;
  Matrix<K> red_;
};

/// A subspace of K^n kept as a reduced basis: row k has a 1 in column
/// pivots()[k] and every other basis row is 0 there.  Pivots need not be
/// increasing; canonical() gives the true reduced row echelon form.
template <class K>
class Subspace {
 public:
  using Elem = typename K::Elem;

  Subspace(const K& f, std::size_t n) : f_(f), n_(n), basis_(Matrix<K>::with_cols(n)) {}

  static Subspace span_of(const K& f, std::size_t n, const Matrix<K>& rows) {
    Subspace s(f, n);
    Matrix<K> m = rows;
    if (m.rows() > 0 && m.cols() != n) throw Error(ErrorCode::ShapeMismatch, "Subspace::span_of");
    s.pivots_ = rref(f, m);
    if (m.rows() == 0) m = Matrix<K>::with_cols(n);
    s.basis_ = std::move(m);
    return s;
  }

  const K& field() const noexcept { return f_; }
  std::size_t ambient_dim() const noexcept { return n_; }
  std::size_t dim() const noexcept { return pivots_.size(); }
  const Matrix<K>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  void reduce(std::span<Elem> v) const {
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
      const Elem c = v[pivots_[k]];
      if (!f_.is_zero(c)) f_.axpy(v, f_.neg(c), basis_.row(k));
    }
  }
  bool contains(std::span<const Elem> v) const {
    Vec<K> w(v.begin(), v.end());
    reduce(std::span(w));
    return is_zero_vec(f_, std::span<const Elem>(w));
  }
  /// Coordinates of a vector known to lie in the subspace.
  Vec<K> coords(std::span<const Elem> v) const {
    Vec<K> c(pivots_.size());
    for (std::size_t k = 0; k < pivots_.size(); ++k) c[k] = v[pivots_[k]];
    return c;
  }

  /// Adds v to the spanning set; returns false if it was already inside.
  bool insert(std::span<const Elem> v) {
    Vec<K> w(v.begin(), v.end());
    reduce(std::span(w));
    std::size_t p = 0;
    while (p < n_ && f_.is_zero(w[p])) ++p;
    if (p == n_) return false;
    f_.scale(std::span(w), f_.inv(w[p]));
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
      const Elem c = basis_.at(k, p);
      if (!f_.is_zero(c)) f_.axpy(basis_.row(k), f_.neg(c), std::span<const Elem>(w));
    }
    basis_.append_row(w);
    pivots_.push_back(p);
    return true;
  }
  void insert_rows(const Matrix<K>& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) insert(m.row(i));
  }

  Matrix<K> canonical() const {
    Matrix<K> m = basis_;
    rref(f_, m);
    if (m.rows() == 0) m = Matrix<K>::with_cols(n_);
    return m;
  }
  bool same_as(const Subspace& o) const {
    if (n_ != o.n_ || dim() != o.dim()) return false;
    for (std::size_t k = 0; k < o.dim(); ++k)
      if (!contains(o.basis_.row(k))) return false;
    return true;
  }

 private:
  K f_;
  std::size_t n_;
  Matrix<K> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace ncg
