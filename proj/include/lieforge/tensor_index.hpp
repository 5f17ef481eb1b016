#pragma once

#include <cassert>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "lieforge/rational.hpp"

namespace lieforge {

inline long long binom(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r < 0) throw std::overflow_error("binomial overflow");
  }
  return r;
}

// Indexing of basis elements of tensor products, symmetric powers and
// exterior powers. Symmetric monomials are ordered by ascending multiset
// (equivalently descending exponent-lex); exterior basis by increasing
// index tuples in lexicographic order; tensor factors left-to-right.
class TensorIndex {
 public:
  enum class Kind { Product, Sym, Wedge };

  static TensorIndex product(std::vector<int> factor_dims) {
    TensorIndex t;
    t.kind_ = Kind::Product;
    t.factors_ = std::move(factor_dims);
    t.dim_ = 1;
    for (int d : t.factors_) t.dim_ *= d;
    return t;
  }
  static TensorIndex sym(int base_dim, int degree) {
    TensorIndex t;
    t.kind_ = Kind::Sym;
    t.base_ = base_dim;
    t.deg_ = degree;
    t.dim_ = binom(base_dim + degree - 1, degree);
    return t;
  }
  static TensorIndex wedge(int base_dim, int degree) {
    TensorIndex t;
    t.kind_ = Kind::Wedge;
    t.base_ = base_dim;
    t.deg_ = degree;
    t.dim_ = binom(base_dim, degree);
    return t;
  }

  Kind kind() const { return kind_; }
  long long dim() const { return dim_; }
  int base_dim() const { return base_; }
  int degree() const { return deg_; }
  const std::vector<int>& factor_dims() const { return factors_; }

  // Product: tuple of factor indices. Sym/Wedge: sorted index multiset/set.
  long long rank(const std::vector<int>& tuple) const {
    switch (kind_) {
      case Kind::Product: {
        assert((int)tuple.size() == (int)factors_.size());
        long long r = 0;
        for (size_t i = 0; i < factors_.size(); ++i) r = r * factors_[i] + tuple[i];
        return r;
      }
      case Kind::Sym: {
        // multisets i1<=...<=id over {0..n-1}, lexicographic
        long long r = 0;
        int prev = 0;
        for (int t = 0; t < deg_; ++t) {
          for (int v = prev; v < tuple[t]; ++v)
            r += binom(base_ - v + deg_ - t - 2, deg_ - t - 1);
          prev = tuple[t];
        }
        return r;
      }
      case Kind::Wedge: {
        long long r = 0;
        int prev = 0;
        for (int t = 0; t < deg_; ++t) {
          for (int v = prev; v < tuple[t]; ++v)
            r += binom(base_ - v - 1, deg_ - t - 1);
          prev = tuple[t] + 1;
        }
        return r;
      }
    }
    return -1;
  }

  std::vector<int> unrank(long long r) const {
    std::vector<int> tuple;
    switch (kind_) {
      case Kind::Product: {
        tuple.resize(factors_.size());
        for (int i = (int)factors_.size() - 1; i >= 0; --i) {
          tuple[i] = (int)(r % factors_[i]);
          r /= factors_[i];
        }
        return tuple;
      }
      case Kind::Sym: {
        int prev = 0;
        for (int t = 0; t < deg_; ++t) {
          int v = prev;
          while (true) {
            long long block = binom(base_ - v + deg_ - t - 2, deg_ - t - 1);
            if (r < block) break;
            r -= block;
            ++v;
          }
          tuple.push_back(v);
          prev = v;
        }
        return tuple;
      }
      case Kind::Wedge: {
        int prev = 0;
        for (int t = 0; t < deg_; ++t) {
          int v = prev;
          while (true) {
            long long block = binom(base_ - v - 1, deg_ - t - 1);
            if (r < block) break;
            r -= block;
            ++v;
          }
          tuple.push_back(v);
          prev = v + 1;
        }
        return tuple;
      }
    }
    return tuple;
  }

  // Exponent vector of a symmetric monomial from its sorted index multiset.
  std::vector<int> exponents(const std::vector<int>& tuple) const {
    assert(kind_ == Kind::Sym);
    std::vector<int> e(base_, 0);
    for (int i : tuple) ++e[i];
    return e;
  }

 private:
  Kind kind_ = Kind::Sym;
  std::vector<int> factors_;
  int base_ = 0, deg_ = 0;
  long long dim_ = 0;
};

}  // namespace lieforge
