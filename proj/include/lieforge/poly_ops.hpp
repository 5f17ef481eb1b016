#pragma once

#include <algorithm>

#include "lieforge/tensor_index.hpp"
#include "lieforge/vec.hpp"

namespace lieforge {

// Operations on coordinate vectors over symmetric / exterior / product
// index spaces. Symmetric vectors are coefficients over plain monomials
// x^m (no divided powers).

// degree k poly -> degree k+1: multiply by x_j
inline SparseVec sym_mul_var(const TensorIndex& from, const TensorIndex& to,
                             const SparseVec& v, int j) {
  SparseVec r;
  for (auto& t : v.terms) {
    auto tup = from.unrank(t.first);
    tup.insert(std::lower_bound(tup.begin(), tup.end(), j), j);
    r.push((int)to.rank(tup), t.second);
  }
  r.normalize();
  return r;
}

// degree k poly -> degree k-1: d/dx_j
inline SparseVec sym_diff(const TensorIndex& from, const TensorIndex& to,
                          const SparseVec& v, int j) {
  SparseVec r;
  for (auto& t : v.terms) {
    auto tup = from.unrank(t.first);
    auto range = std::equal_range(tup.begin(), tup.end(), j);
    long mult = range.second - range.first;
    if (mult == 0) continue;
    tup.erase(range.first);
    r.push((int)to.rank(tup), t.second * mult);
  }
  r.normalize();
  return r;
}

// Derivation action on S^k from base action columns a_cols (a x_j = sum a_ij x_i).
inline SparseVec sym_derivation(const TensorIndex& idx,
                                const std::vector<SparseVec>& a_cols,
                                const SparseVec& v) {
  SparseVec r;
  for (auto& t : v.terms) {
    auto tup = idx.unrank(t.first);
    for (size_t p = 0; p < tup.size(); ++p) {
      if (p > 0 && tup[p] == tup[p - 1]) continue;  // distinct variables once
      long mult = std::count(tup.begin(), tup.end(), tup[p]);
      for (auto& e : a_cols[tup[p]].terms) {
        auto nt = tup;
        nt.erase(std::find(nt.begin(), nt.end(), tup[p]));
        nt.insert(std::lower_bound(nt.begin(), nt.end(), e.first), e.first);
        r.push((int)idx.rank(nt), t.second * mult * e.second);
      }
    }
  }
  r.normalize();
  return r;
}

// Derivation action on Lambda^k from base action columns.
inline SparseVec wedge_derivation(const TensorIndex& idx,
                                  const std::vector<SparseVec>& a_cols,
                                  const SparseVec& v) {
  SparseVec r;
  for (auto& t : v.terms) {
    auto tup = idx.unrank(t.first);
    for (size_t p = 0; p < tup.size(); ++p) {
      for (auto& e : a_cols[tup[p]].terms) {
        int ni = e.first;
        if (ni != tup[p] &&
            std::binary_search(tup.begin(), tup.end(), ni))
          continue;  // repeated index kills the wedge
        auto nt = tup;
        nt.erase(nt.begin() + p);
        auto pos = std::lower_bound(nt.begin(), nt.end(), ni);
        int moved = (int)(pos - nt.begin());
        nt.insert(pos, ni);
        int sign = ((int)p - moved) % 2 == 0 ? 1 : -1;
        r.push((int)idx.rank(nt), t.second * e.second * sign);
      }
    }
  }
  r.normalize();
  return r;
}

// Derivation action on a tensor product from per-factor action columns
// (one factor acted on at a time, others by identity).
inline SparseVec product_derivation(
    const TensorIndex& idx,
    const std::vector<const std::vector<SparseVec>*>& factor_cols,
    const SparseVec& v) {
  SparseVec r;
  for (auto& t : v.terms) {
    auto tup = idx.unrank(t.first);
    for (size_t f = 0; f < tup.size(); ++f) {
      if (!factor_cols[f]) continue;
      for (auto& e : (*factor_cols[f])[tup[f]].terms) {
        auto nt = tup;
        nt[f] = e.first;
        r.push((int)idx.rank(nt), t.second * e.second);
      }
    }
  }
  r.normalize();
  return r;
}

// v ∧ w expanded over the Lambda^2 index (i<j pairs).
inline SparseVec wedge2_of(const TensorIndex& w2, const SparseVec& v,
                           const SparseVec& w) {
  SparseVec r;
  for (auto& a : v.terms)
    for (auto& b : w.terms) {
      if (a.first == b.first) continue;
      if (a.first < b.first)
        r.push((int)w2.rank({a.first, b.first}), a.second * b.second);
      else
        r.push((int)w2.rank({b.first, a.first}), -a.second * b.second);
    }
  r.normalize();
  return r;
}

// x · y for symmetric coordinate vectors (degrees add).
inline SparseVec sym_mul(const TensorIndex& ia, const TensorIndex& ib,
                         const TensorIndex& iout, const SparseVec& a,
                         const SparseVec& b) {
  SparseVec r;
  for (auto& s : a.terms) {
    auto ta = ia.unrank(s.first);
    for (auto& t : b.terms) {
      auto tb = ib.unrank(t.first);
      std::vector<int> m;
      m.reserve(ta.size() + tb.size());
      std::merge(ta.begin(), ta.end(), tb.begin(), tb.end(), std::back_inserter(m));
      r.push((int)iout.rank(m), s.second * t.second);
    }
  }
  r.normalize();
  return r;
}

// Evaluate a symmetric coordinate vector as a polynomial at a point.
inline Rat sym_eval(const TensorIndex& idx, const SparseVec& p,
                    const DenseVec& x) {
  Rat s(0);
  for (auto& t : p.terms) {
    Rat m = t.second;
    for (int i : idx.unrank(t.first)) m *= x[i];
    s += m;
  }
  return s;
}

}  // namespace lieforge
