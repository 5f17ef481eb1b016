#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "lieforge/rational.hpp"

namespace lieforge {

using DenseVec = std::vector<Rat>;

// Sparse vector: terms sorted by index, no explicit zeros.
struct SparseVec {
  std::vector<std::pair<int, Rat>> terms;

  SparseVec() = default;
  static SparseVec unit(int i) {
    SparseVec v;
    v.terms.emplace_back(i, Rat(1));
    return v;
  }

  bool empty() const { return terms.empty(); }
  int leading_index() const { return terms.front().first; }
  const Rat& leading_coeff() const { return terms.front().second; }

  void push(int i, const Rat& c) {
    if (!is_zero(c)) terms.emplace_back(i, c);
  }

  // Collapses unsorted/duplicated terms into canonical form.
  void normalize() {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<int, Rat>> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
      if (!out.empty() && out.back().first == t.first)
        out.back().second += t.second;
      else
        out.push_back(std::move(t));
    }
    terms.clear();
    for (auto& t : out)
      if (!is_zero(t.second)) terms.push_back(std::move(t));
  }

  Rat coeff(int i) const {
    auto it = std::lower_bound(
        terms.begin(), terms.end(), i,
        [](const auto& t, int k) { return t.first < k; });
    if (it != terms.end() && it->first == i) return it->second;
    return Rat(0);
  }

  SparseVec& operator*=(const Rat& c) {
    if (is_zero(c)) {
      terms.clear();
      return *this;
    }
    for (auto& t : terms) t.second *= c;
    return *this;
  }

  bool operator==(const SparseVec& o) const { return terms == o.terms; }
};

// r += c * v  (merge of sorted term lists)
inline void axpy(SparseVec& r, const Rat& c, const SparseVec& v) {
  if (is_zero(c) || v.empty()) return;
  std::vector<std::pair<int, Rat>> out;
  out.reserve(r.terms.size() + v.terms.size());
  size_t i = 0, j = 0;
  while (i < r.terms.size() && j < v.terms.size()) {
    if (r.terms[i].first < v.terms[j].first) {
      out.push_back(std::move(r.terms[i++]));
    } else if (r.terms[i].first > v.terms[j].first) {
      out.emplace_back(v.terms[j].first, c * v.terms[j].second);
      ++j;
    } else {
      Rat s = r.terms[i].second + c * v.terms[j].second;
      if (!is_zero(s)) out.emplace_back(r.terms[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  for (; i < r.terms.size(); ++i) out.push_back(std::move(r.terms[i]));
  for (; j < v.terms.size(); ++j)
    out.emplace_back(v.terms[j].first, c * v.terms[j].second);
  r.terms = std::move(out);
}

inline SparseVec to_sparse(const DenseVec& d) {
  SparseVec v;
  for (int i = 0; i < (int)d.size(); ++i)
    if (!is_zero(d[i])) v.terms.emplace_back(i, d[i]);
  return v;
}

inline DenseVec to_dense(const SparseVec& v, int n) {
  DenseVec d(n, Rat(0));
  for (auto& t : v.terms) d[t.first] = t.second;
  return d;
}

inline Rat dot(const SparseVec& a, const DenseVec& b) {
  Rat s(0);
  for (auto& t : a.terms) s += t.second * b[t.first];
  return s;
}

}  // namespace lieforge
