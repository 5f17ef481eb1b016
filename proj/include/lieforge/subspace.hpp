#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lieforge/matrix.hpp"

namespace lieforge {

// A subspace in reduced echelon form: basis rows with strictly increasing
// pivot columns, pivot entries 1, pivot columns cleared elsewhere. Equal
// subspaces compare equal term-by-term.
class Subspace {
 public:
  Subspace() : ambient_(0) {}
  explicit Subspace(int ambient) : ambient_(ambient) {}

  static Subspace full(int ambient) {
    Subspace s(ambient);
    for (int i = 0; i < ambient; ++i) s.insert(SparseVec::unit(i));
    return s;
  }

  int ambient_dim() const { return ambient_; }
  int dim() const { return (int)rows_.size(); }
  bool is_full() const { return dim() == ambient_; }
  const std::vector<SparseVec>& basis() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }

  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && rows_ == o.rows_;
  }

  // Residual of v after subtracting its projection onto the row span.
  // Rows are reduced, so eliminating one pivot never reintroduces another.
  SparseVec reduce(SparseVec v) const {
    if (rows_.empty() || v.empty()) return v;
    std::vector<size_t> hits;
    for (auto& t : v.terms) {
      auto it = std::lower_bound(pivots_.begin(), pivots_.end(), t.first);
      if (it != pivots_.end() && *it == t.first)
        hits.push_back((size_t)(it - pivots_.begin()));
    }
    for (size_t k : hits) {
      Rat c = v.coeff(pivots_[k]);
      if (!is_zero(c)) axpy(v, -c, rows_[k]);
    }
    return v;
  }

  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  // Coordinates of v in the echelon basis; nullopt if v is outside.
  std::optional<DenseVec> coordinates(const SparseVec& v) const {
    DenseVec c(rows_.size(), Rat(0));
    SparseVec w = v;
    for (auto& t : v.terms) {
      auto it = std::lower_bound(pivots_.begin(), pivots_.end(), t.first);
      if (it != pivots_.end() && *it == t.first)
        c[it - pivots_.begin()] = t.second;
    }
    for (size_t k = 0; k < rows_.size(); ++k)
      if (!is_zero(c[k])) axpy(w, -c[k], rows_[k]);
    if (!w.empty()) return std::nullopt;
    return c;
  }

  // Inserts v, maintaining reduced echelon form. Returns true if dim grew.
  bool insert(SparseVec v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    int p = v.leading_index();
    v *= 1 / v.leading_coeff();
    // clear column p from existing rows
    for (size_t k = 0; k < rows_.size(); ++k) {
      Rat c = rows_[k].coeff(p);
      if (!is_zero(c)) axpy(rows_[k], -c, v);
    }
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    size_t pos = (size_t)(it - pivots_.begin());
    pivots_.insert(it, p);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
  }

  // Functionals on the ambient space vanishing on this subspace, expressed
  // in the dual basis. dim = ambient - dim(this).
  Subspace annihilator() const {
    Subspace a(ambient_);
    std::vector<bool> is_pivot(ambient_, false);
    for (int p : pivots_) is_pivot[p] = true;
    // free column f yields functional e_f* - sum_k rows_[k][f] e_{p_k}*
    std::map<int, SparseVec> phis;
    for (size_t k = 0; k < rows_.size(); ++k)
      for (auto& t : rows_[k].terms)
        if (!is_pivot[t.first]) phis[t.first].push(pivots_[k], -t.second);
    for (int f = 0; f < ambient_; ++f) {
      if (is_pivot[f]) continue;
      SparseVec phi = phis.count(f) ? phis[f] : SparseVec();
      phi.push(f, Rat(1));
      phi.normalize();
      a.insert(std::move(phi));
    }
    return a;
  }

 private:
  int ambient_;
  std::vector<SparseVec> rows_;
  std::vector<int> pivots_;
};

// Right null space of m in canonical echelon form.
inline Subspace kernel(const Matrix& m) {
  Matrix w = m;
  auto piv = w.rref();
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : piv) is_pivot[p] = true;
  Subspace k(m.cols());
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    SparseVec v;
    for (size_t r = 0; r < piv.size(); ++r) v.push(piv[r], -w((int)r, f));
    v.push(f, Rat(1));
    v.normalize();
    k.insert(std::move(v));
  }
  return k;
}

// Kernel of a matrix given as sparse rows over `cols` unknowns. Rows are
// eliminated incrementally; suited to tall systems with few unknowns.
inline Subspace kernel_of_rows(const std::vector<SparseVec>& rows, int cols) {
  Subspace row_space(cols);
  for (auto& r : rows) row_space.insert(r);
  return row_space.annihilator();
}

}  // namespace lieforge
