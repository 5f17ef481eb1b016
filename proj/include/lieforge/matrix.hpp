#pragma once

#include <cassert>
#include <stdexcept>
#include <vector>

#include "lieforge/vec.hpp"

namespace lieforge {

// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int r, int c) : rows_(r), cols_(c), a_((size_t)r * c, Rat(0)) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& operator()(int i, int j) { return a_[(size_t)i * cols_ + j]; }
  const Rat& operator()(int i, int j) const { return a_[(size_t)i * cols_ + j]; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  Matrix operator*(const Matrix& o) const {
    assert(cols_ == o.rows_);
    Matrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Rat& aik = (*this)(i, k);
        if (is_zero(aik)) continue;
        for (int j = 0; j < o.cols_; ++j) {
          const Rat& bkj = o(k, j);
          if (!is_zero(bkj)) r(i, j) += aik * bkj;
        }
      }
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Matrix r = *this;
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    Matrix r = *this;
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
    return r;
  }

  Matrix& operator*=(const Rat& c) {
    for (auto& x : a_) x *= c;
    return *this;
  }

  Matrix transposed() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Rat trace() const {
    assert(rows_ == cols_);
    Rat t(0);
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  bool is_zero_matrix() const {
    for (auto& x : a_)
      if (!is_zero(x)) return false;
    return true;
  }

  DenseVec apply(const DenseVec& v) const {
    assert((int)v.size() == cols_);
    DenseVec r(rows_, Rat(0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) {
        const Rat& x = (*this)(i, j);
        if (!is_zero(x) && !is_zero(v[j])) r[i] += x * v[j];
      }
    return r;
  }

  DenseVec column(int j) const {
    DenseVec c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  // In-place reduced row echelon form; returns pivot columns.
  std::vector<int> rref() {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
      int p = -1;
      for (int i = r; i < rows_; ++i)
        if (!is_zero((*this)(i, c))) {
          p = i;
          break;
        }
      if (p < 0) continue;
      if (p != r)
        for (int j = c; j < cols_; ++j) std::swap((*this)(p, j), (*this)(r, j));
      Rat inv = 1 / (*this)(r, c);
      for (int j = c; j < cols_; ++j) (*this)(r, j) *= inv;
      for (int i = 0; i < rows_; ++i) {
        if (i == r) continue;
        Rat f = (*this)(i, c);
        if (is_zero(f)) continue;
        for (int j = c; j < cols_; ++j) (*this)(i, j) -= f * (*this)(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  int rank() const {
    Matrix m = *this;
    return (int)m.rref().size();
  }

  Matrix inverse() const {
    assert(rows_ == cols_);
    int n = rows_;
    Matrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
      aug(i, n + i) = 1;
    }
    auto piv = aug.rref();
    if ((int)piv.size() != n || piv.back() != n - 1)
      throw std::runtime_error("matrix not invertible");
    Matrix r(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
    return r;
  }

 private:
  int rows_, cols_;
  std::vector<Rat> a_;
};

// Sparse matrix stored by rows.
class SparseMatrix {
 public:
  SparseMatrix() : rows_(0), cols_(0) {}
  SparseMatrix(int r, int c) : rows_(r), cols_(c), row_(r) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  SparseVec& row(int i) { return row_[i]; }
  const SparseVec& row(int i) const { return row_[i]; }

  void set(int i, int j, const Rat& v) {
    row_[i].push(j, v);  // caller keeps rows sorted or normalizes after
  }
  void normalize() {
    for (auto& r : row_) r.normalize();
  }

  size_t nnz() const {
    size_t n = 0;
    for (auto& r : row_) n += r.terms.size();
    return n;
  }

  static SparseMatrix from_dense(const Matrix& m) {
    SparseMatrix s(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        if (!is_zero(m(i, j))) s.row_[i].terms.emplace_back(j, m(i, j));
    return s;
  }

  Matrix to_dense() const {
    Matrix m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (auto& t : row_[i].terms) m(i, t.first) = t.second;
    return m;
  }

  // Column-major access is needed for derivation actions; build once.
  std::vector<SparseVec> columns() const {
    std::vector<SparseVec> cols(cols_);
    for (int i = 0; i < rows_; ++i)
      for (auto& t : row_[i].terms) cols[t.first].terms.emplace_back(i, t.second);
    return cols;
  }

  SparseVec apply(const SparseVec& v) const {
    SparseVec r;
    for (int i = 0; i < rows_; ++i) {
      Rat s(0);
      auto& rw = row_[i].terms;
      size_t a = 0, b = 0;
      while (a < rw.size() && b < v.terms.size()) {
        if (rw[a].first < v.terms[b].first)
          ++a;
        else if (rw[a].first > v.terms[b].first)
          ++b;
        else {
          s += rw[a].second * v.terms[b].second;
          ++a;
          ++b;
        }
      }
      r.push(i, s);
    }
    return r;
  }

  SparseMatrix transposed() const {
    SparseMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (auto& e : row_[i].terms) t.row_[e.first].terms.emplace_back(i, e.second);
    return t;
  }

  SparseMatrix scaled(const Rat& c) const {
    SparseMatrix s = *this;
    for (auto& r : s.row_)
      for (auto& t : r.terms) t.second *= c;
    return s;
  }

 private:
  int rows_, cols_;
  std::vector<SparseVec> row_;
};

// apply by columns: r = sum_j v_j * col_j(m), useful when m is column-built
inline SparseVec apply_columns(const std::vector<SparseVec>& cols,
                               const SparseVec& v) {
  SparseVec r;
  for (auto& t : v.terms) axpy(r, t.second, cols[t.first]);
  return r;
}

}  // namespace lieforge
