#pragma once

#include <functional>
#include <memory>
#include <string>

#include "lieforge/lie_algebra.hpp"
#include "lieforge/poly_ops.hpp"

namespace lieforge {

// A representation with explicit (sparse) action matrices for every basis
// element of the algebra, plus a distinguished extreme vector generating
// the module. Action matrices are kept in row- and column-major form.
class Rep {
 public:
  Rep() = default;
  Rep(std::shared_ptr<const LieAlgebra> alg, int module_dim,
      std::vector<SparseMatrix> actions, SparseVec extreme,
      std::string label = "")
      : alg_(std::move(alg)),
        dim_(module_dim),
        act_(std::move(actions)),
        extreme_(std::move(extreme)),
        label_(std::move(label)) {
    cols_.reserve(act_.size());
    dual_cols_.reserve(act_.size());
    for (auto& m : act_) {
      cols_.push_back(m.columns());
      std::vector<SparseVec> dc(dim_);
      for (int i = 0; i < dim_; ++i)
        for (auto& e : m.row(i).terms) dc[e.first].push(i, -e.second);
      for (auto& c : dc) c.normalize();
      dual_cols_.push_back(std::move(dc));
    }
  }

  const std::shared_ptr<const LieAlgebra>& algebra_ptr() const { return alg_; }
  const LieAlgebra& algebra() const { return *alg_; }
  int dim() const { return dim_; }
  int algebra_dim() const { return (int)act_.size(); }
  const SparseVec& extreme() const { return extreme_; }
  void set_extreme(SparseVec v) { extreme_ = std::move(v); }
  const std::string& label() const { return label_; }
  void set_label(std::string s) { label_ = std::move(s); }

  const SparseMatrix& action(int g) const { return act_[g]; }
  const std::vector<SparseVec>& action_columns(int g) const { return cols_[g]; }
  // columns of -action(g)^T, i.e. the dual action on T*
  const std::vector<SparseVec>& dual_action_columns(int g) const {
    return dual_cols_[g];
  }

  SparseVec apply(int g, const SparseVec& v) const {
    return apply_columns(cols_[g], v);
  }

  SparseVec apply(const SparseVec& x, const SparseVec& v) const {
    SparseVec r;
    for (auto& t : x.terms) axpy(r, t.second, apply(t.first, v));
    return r;
  }

  // rho([x_i,x_j]) == rho(x_i)rho(x_j) - rho(x_j)rho(x_i) on all basis pairs.
  bool homomorphism_check() const {
    for (int i = 0; i < algebra_dim(); ++i)
      for (int j = i + 1; j < algebra_dim(); ++j)
        if (!commutator_matches(i, j)) return false;
    return true;
  }

  bool commutator_matches(int i, int j) const {
    for (int c = 0; c < dim_; ++c) {
      SparseVec lhs;
      for (auto& t : alg_->bracket(i, j).terms)
        axpy(lhs, t.second, cols_[t.first][c]);
      SparseVec rhs = apply(i, cols_[j][c]);
      axpy(rhs, Rat(-1), apply(j, cols_[i][c]));
      axpy(lhs, Rat(-1), rhs);
      if (!lhs.empty()) return false;
    }
    return true;
  }

 private:
  std::shared_ptr<const LieAlgebra> alg_;
  int dim_ = 0;
  std::vector<SparseMatrix> act_;
  std::vector<std::vector<SparseVec>> cols_;
  std::vector<std::vector<SparseVec>> dual_cols_;
  SparseVec extreme_;
  std::string label_;
};

inline SparseMatrix matrix_from_columns(std::vector<SparseVec> cols, int rows) {
  SparseMatrix m(rows, (int)cols.size());
  for (int j = 0; j < (int)cols.size(); ++j)
    for (auto& t : cols[j].terms) m.row(t.first).push(j, t.second);
  for (int r = 0; r < rows; ++r) m.row(r).normalize();
  return m;
}

inline Rep dual_rep(const Rep& r) {
  std::vector<SparseMatrix> acts;
  acts.reserve(r.algebra_dim());
  for (int g = 0; g < r.algebra_dim(); ++g)
    acts.push_back(r.action(g).transposed().scaled(Rat(-1)));
  if (r.extreme().terms.size() != 1)
    throw std::runtime_error("dual_rep: extreme vector is not a basis line");
  SparseVec ext = SparseVec::unit(r.extreme().terms[0].first);
  return Rep(r.algebra_ptr(), r.dim(), std::move(acts), std::move(ext),
             r.label() + "*");
}

inline Rep tensor_rep(const Rep& a, const Rep& b) {
  if (a.algebra_ptr() != b.algebra_ptr())
    throw std::runtime_error("tensor_rep: different algebras");
  TensorIndex idx = TensorIndex::product({a.dim(), b.dim()});
  int n = (int)idx.dim();
  std::vector<SparseMatrix> acts;
  for (int g = 0; g < a.algebra_dim(); ++g) {
    std::vector<SparseVec> cols(n);
    for (int j1 = 0; j1 < a.dim(); ++j1)
      for (int j2 = 0; j2 < b.dim(); ++j2) {
        SparseVec& c = cols[idx.rank({j1, j2})];
        for (auto& t : a.action_columns(g)[j1].terms)
          c.push((int)idx.rank({t.first, j2}), t.second);
        for (auto& t : b.action_columns(g)[j2].terms)
          c.push((int)idx.rank({j1, t.first}), t.second);
        c.normalize();
      }
    acts.push_back(matrix_from_columns(std::move(cols), n));
  }
  SparseVec ext;
  for (auto& s : a.extreme().terms)
    for (auto& t : b.extreme().terms)
      ext.push((int)idx.rank({s.first, t.first}), s.second * t.second);
  ext.normalize();
  return Rep(a.algebra_ptr(), n, std::move(acts), std::move(ext),
             a.label() + "(x)" + b.label());
}

inline Rep sym_power_rep(const Rep& r, int d) {
  TensorIndex idx = TensorIndex::sym(r.dim(), d);
  int n = (int)idx.dim();
  std::vector<SparseMatrix> acts;
  for (int g = 0; g < r.algebra_dim(); ++g) {
    std::vector<SparseVec> cols(n);
    for (int c = 0; c < n; ++c)
      cols[c] = sym_derivation(idx, r.action_columns(g), SparseVec::unit(c));
    acts.push_back(matrix_from_columns(std::move(cols), n));
  }
  if (r.extreme().terms.size() != 1)
    throw std::runtime_error("sym_power_rep: extreme vector is not a basis line");
  int k = r.extreme().terms[0].first;
  SparseVec ext = SparseVec::unit((int)idx.rank(std::vector<int>(d, k)));
  return Rep(r.algebra_ptr(), n, std::move(acts), std::move(ext),
             "S" + std::to_string(d) + "(" + r.label() + ")");
}

inline Rep wedge_power_rep(const Rep& r, int d) {
  TensorIndex idx = TensorIndex::wedge(r.dim(), d);
  int n = (int)idx.dim();
  std::vector<SparseMatrix> acts;
  for (int g = 0; g < r.algebra_dim(); ++g) {
    std::vector<SparseVec> cols(n);
    for (int c = 0; c < n; ++c)
      cols[c] = wedge_derivation(idx, r.action_columns(g), SparseVec::unit(c));
    acts.push_back(matrix_from_columns(std::move(cols), n));
  }
  return Rep(r.algebra_ptr(), n, std::move(acts), SparseVec{},
             "L" + std::to_string(d) + "(" + r.label() + ")");
}

inline Rep direct_sum_rep(const Rep& a, const Rep& b) {
  if (a.algebra_ptr() != b.algebra_ptr())
    throw std::runtime_error("direct_sum_rep: different algebras");
  int n = a.dim() + b.dim();
  std::vector<SparseMatrix> acts;
  for (int g = 0; g < a.algebra_dim(); ++g) {
    SparseMatrix m(n, n);
    for (int i = 0; i < a.dim(); ++i) m.row(i) = a.action(g).row(i);
    for (int i = 0; i < b.dim(); ++i) {
      SparseVec row;
      for (auto& t : b.action(g).row(i).terms)
        row.push(t.first + a.dim(), t.second);
      m.row(i + a.dim()) = std::move(row);
    }
    acts.push_back(std::move(m));
  }
  SparseVec ext = a.extreme();
  return Rep(a.algebra_ptr(), n, std::move(acts), std::move(ext),
             a.label() + "(+)" + b.label());
}

// Lifts a representation of a summand to the direct-sum algebra; the other
// summand acts by zero.
inline Rep lift_rep(const Rep& r, std::shared_ptr<const LieAlgebra> sum_alg,
                    int offset) {
  std::vector<SparseMatrix> acts(sum_alg->dim(), SparseMatrix(r.dim(), r.dim()));
  for (int g = 0; g < r.algebra_dim(); ++g) acts[offset + g] = r.action(g);
  return Rep(std::move(sum_alg), r.dim(), std::move(acts), r.extreme(), r.label());
}

// Builds a LieAlgebra + Rep from explicit matrices (closed under bracket).
inline std::pair<std::shared_ptr<LieAlgebra>, Rep> matrix_lie_algebra(
    const std::vector<Matrix>& basis, const std::string& label) {
  int n = (int)basis.size();
  int m = basis.empty() ? 0 : basis[0].rows();
  // coordinates of a matrix in the given basis, via one echelon solve
  int mm = m * m;
  Matrix flat(mm, n);
  for (int b = 0; b < n; ++b)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) flat(i * m + j, b) = basis[b](i, j);
  auto coords = [&](const Matrix& x) {
    Matrix aug(mm, n + 1);
    for (int r = 0; r < mm; ++r)
      for (int c = 0; c < n; ++c) aug(r, c) = flat(r, c);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) aug(i * m + j, n) = x(i, j);
    auto piv = aug.rref();
    SparseVec v;
    for (size_t k = 0; k < piv.size(); ++k) {
      if (piv[k] == n) throw std::runtime_error("matrix outside span of basis");
      v.push(piv[k], aug((int)k, n));
    }
    v.normalize();
    return v;
  };
  auto L = std::make_shared<LieAlgebra>(n, label);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      L->set_bracket(i, j, coords(basis[i] * basis[j] - basis[j] * basis[i]));
  L->set_single_simple_ideal();
  std::vector<SparseMatrix> acts;
  for (auto& b : basis) acts.push_back(SparseMatrix::from_dense(b));
  Rep std_rep(L, m, std::move(acts), SparseVec::unit(0), label + ".std");
  return {L, std_rep};
}

// Standard sl_n on C^n: basis E_ij (i != j), then H_i = E_ii - E_{i+1,i+1}.
inline std::pair<std::shared_ptr<LieAlgebra>, Rep> make_sl(int n) {
  std::vector<Matrix> basis;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Matrix e(n, n);
      e(i, j) = 1;
      basis.push_back(e);
    }
  for (int i = 0; i + 1 < n; ++i) {
    Matrix h(n, n);
    h(i, i) = 1;
    h(i + 1, i + 1) = -1;
    basis.push_back(h);
  }
  return matrix_lie_algebra(basis, "sl" + std::to_string(n));
}

// Standard sp_{2m} on C^{2m} for the form J = [[0, I], [-I, 0]].
inline std::pair<std::shared_ptr<LieAlgebra>, Rep> make_sp(int two_m) {
  int m = two_m / 2;
  auto sym_pair = [&](int i, int j) {  // E_ij + E_ji on an m-block
    Matrix s(m, m);
    s(i, j) = 1;
    s(j, i) = 1;
    if (i == j) s(i, j) = 1;
    return s;
  };
  std::vector<Matrix> basis;
  // block form [[A, B],[C, -A^T]], B, C symmetric
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Matrix x(two_m, two_m);
      x(i, j) = 1;
      x(m + j, m + i) = -1;
      basis.push_back(x);
    }
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      Matrix b(two_m, two_m), c(two_m, two_m);
      Matrix s = sym_pair(i, j);
      for (int a = 0; a < m; ++a)
        for (int bcol = 0; bcol < m; ++bcol) {
          b(a, m + bcol) = s(a, bcol);
          c(m + a, bcol) = s(a, bcol);
        }
      basis.push_back(b);
      basis.push_back(c);
    }
  return matrix_lie_algebra(basis, "sp" + std::to_string(two_m));
}

}  // namespace lieforge
