#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lieforge/rng.hpp"
#include "lieforge/subspace.hpp"

namespace lieforge {

struct JacobiCertificate {
  bool full = false;
  long long checked = 0;
  bool ok = true;
  std::array<int, 3> witness{-1, -1, -1};
};

// Lie algebra given by structure constants on a fixed basis.
// Brackets are stored for i<j only; antisymmetry supplies the rest.
class LieAlgebra {
 public:
  struct Ideal {
    std::vector<int> indices;
    bool abelian = false;
  };

  LieAlgebra() = default;
  explicit LieAlgebra(int dim, std::string label = "")
      : dim_(dim), label_(std::move(label)), bk_(dim) {
    for (int i = 0; i < dim; ++i) bk_[i].resize(dim - i - 1);
  }

  int dim() const { return dim_; }
  const std::string& label() const { return label_; }
  void set_label(std::string s) { label_ = std::move(s); }

  void set_bracket(int i, int j, SparseVec v) {
    if (i == j) return;
    if (i > j) {
      v *= Rat(-1);
      std::swap(i, j);
    }
    v.normalize();
    bk_[i][j - i - 1] = std::move(v);
    killing_.reset();
  }

  const SparseVec& bracket_upper(int i, int j) const { return bk_[i][j - i - 1]; }

  SparseVec bracket(int i, int j) const {
    if (i == j) return {};
    if (i < j) return bk_[i][j - i - 1];
    SparseVec v = bk_[j][i - j - 1];
    v *= Rat(-1);
    return v;
  }

  SparseVec bracket(const SparseVec& x, int j) const {
    SparseVec r;
    for (auto& t : x.terms) axpy(r, t.second, bracket(t.first, j));
    return r;
  }

  SparseVec bracket(const SparseVec& x, const SparseVec& y) const {
    SparseVec r;
    for (auto& s : x.terms)
      for (auto& t : y.terms) axpy(r, s.second * t.second, bracket(s.first, t.first));
    return r;
  }

  SparseMatrix ad(int i) const {
    SparseMatrix m(dim_, dim_);
    for (int j = 0; j < dim_; ++j)
      for (auto& t : bracket(i, j).terms) m.row(t.first).push(j, t.second);
    for (int r = 0; r < dim_; ++r) m.row(r).normalize();
    return m;
  }

  // Ideal partition bookkeeping (set by constructions, not recomputed).
  std::vector<Ideal>& ideals() { return ideals_; }
  const std::vector<Ideal>& ideals() const { return ideals_; }
  void set_single_simple_ideal() {
    ideals_.clear();
    Ideal id;
    for (int i = 0; i < dim_; ++i) id.indices.push_back(i);
    id.abelian = false;
    ideals_.push_back(std::move(id));
  }

  std::vector<int> semisimple_indices() const {
    std::vector<int> idx;
    for (auto& id : ideals_)
      if (!id.abelian)
        for (int i : id.indices) idx.push_back(i);
    std::sort(idx.begin(), idx.end());
    return idx;
  }

  // Optional Z-grading: grade per basis index.
  void set_grades(std::vector<int> g) { grades_ = std::move(g); }
  const std::vector<int>& grades() const { return grades_; }
  bool graded() const { return !grades_.empty(); }

  // B(x_i, x_j) = tr(ad x_i ad x_j), computed from the structure constants.
  const Matrix& killing() const {
    if (!killing_) killing_ = compute_killing();
    return *killing_;
  }

  Matrix compute_killing() const {
    Matrix B(dim_, dim_);
    // entry lists of each ad, transposed, for sparse trace dots
    std::vector<std::vector<std::vector<std::pair<int, Rat>>>> adT(dim_);
    for (int j = 0; j < dim_; ++j) {
      adT[j].assign(dim_, {});
      for (int l = 0; l < dim_; ++l)
        for (auto& t : bracket(j, l).terms) adT[j][t.first].emplace_back(l, t.second);
    }
    for (int i = 0; i < dim_; ++i) {
      for (int j = i; j < dim_; ++j) {
        if (graded() && grades_[i] + grades_[j] != 0) continue;
        Rat s(0);
        // tr(ad_i ad_j) = sum_{k,l} (ad_i)_{kl} (ad_j)_{lk}
        for (int l = 0; l < dim_; ++l)
          for (auto& t : bracket(i, l).terms)  // (ad_i)_{t.first, l}
            for (auto& u : adT[j][l])
              if (u.first == t.first) s += t.second * u.second;
        B(i, j) = s;
        B(j, i) = B(i, j);
      }
    }
    return B;
  }

  SparseVec jacobiator(int i, int j, int k) const {
    SparseVec r = bracket(bracket(i, j), k);
    axpy(r, Rat(1), bracket(bracket(j, k), i));
    axpy(r, Rat(1), bracket(bracket(k, i), j));
    return r;
  }

  JacobiCertificate verify_jacobi_full() const {
    JacobiCertificate c;
    c.full = true;
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j)
        for (int k = j + 1; k < dim_; ++k) {
          ++c.checked;
          if (!jacobiator(i, j, k).empty()) {
            c.ok = false;
            c.witness = {i, j, k};
            return c;
          }
        }
    return c;
  }

  JacobiCertificate verify_jacobi_sampled(long long n, Rng& rng) const {
    JacobiCertificate c;
    c.full = false;
    for (long long t = 0; t < n; ++t) {
      int i = rng.uniform(0, dim_ - 1);
      int j = rng.uniform(0, dim_ - 1);
      int k = rng.uniform(0, dim_ - 1);
      ++c.checked;
      if (!jacobiator(i, j, k).empty()) {
        c.ok = false;
        c.witness = {i, j, k};
        return c;
      }
    }
    return c;
  }

  // No proper nonzero ideal: the ad-orbit of each probe vector spans
  // everything. Probes are deterministic.
  bool simplicity_probe(int probes = 10, std::uint64_t seed = 7001) const {
    if (dim_ == 0) return false;
    Rng rng(seed);
    for (int p = 0; p < probes; ++p) {
      SparseVec v;
      for (int i = 0; i < dim_; ++i) v.push(i, rng.small_rat(5, 1));
      v.normalize();
      if (v.empty()) v = SparseVec::unit(0);
      Subspace span(dim_);
      span.insert(v);
      std::vector<SparseVec> work{v};
      while (!work.empty() && !span.is_full()) {
        SparseVec w = std::move(work.back());
        work.pop_back();
        for (int i = 0; i < dim_ && !span.is_full(); ++i) {
          SparseVec b = bracket(SparseVec::unit(i), w);
          b = span.reduce(std::move(b));
          if (!b.empty()) {
            SparseVec copy = b;
            span.insert(std::move(b));
            work.push_back(std::move(copy));
          }
        }
      }
      if (!span.is_full()) return false;
    }
    return true;
  }

 private:
  int dim_ = 0;
  std::string label_;
  std::vector<std::vector<SparseVec>> bk_;
  std::vector<Ideal> ideals_;
  std::vector<int> grades_;
  mutable std::optional<Matrix> killing_;
};

inline std::shared_ptr<LieAlgebra> direct_sum(const LieAlgebra& a,
                                              const LieAlgebra& b,
                                              const std::string& label) {
  auto s = std::make_shared<LieAlgebra>(a.dim() + b.dim(), label);
  int off = a.dim();
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i + 1; j < a.dim(); ++j) s->set_bracket(i, j, a.bracket_upper(i, j));
  for (int i = 0; i < b.dim(); ++i)
    for (int j = i + 1; j < b.dim(); ++j) {
      SparseVec v = b.bracket_upper(i, j);
      SparseVec w;
      for (auto& t : v.terms) w.push(t.first + off, t.second);
      s->set_bracket(i + off, j + off, std::move(w));
    }
  for (auto& id : a.ideals()) s->ideals().push_back(id);
  for (auto id : b.ideals()) {
    for (auto& i : id.indices) i += off;
    s->ideals().push_back(std::move(id));
  }
  return s;
}

}  // namespace lieforge
