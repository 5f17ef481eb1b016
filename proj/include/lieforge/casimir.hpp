#pragma once

#include <functional>
#include <optional>
#include <tuple>

#include "lieforge/representation.hpp"

namespace lieforge {

// Module action abstracted as a function of (algebra basis index, vector),
// so large derived modules (wedge squares, symmetric powers) never have to
// materialize their action matrices.
using Applier = std::function<SparseVec(int, const SparseVec&)>;

inline Applier rep_applier(const Rep& r) {
  return [&r](int g, const SparseVec& v) { return r.apply(g, v); };
}

inline Applier dual_applier(const Rep& r) {
  return [&r](int g, const SparseVec& v) {
    return apply_columns(r.dual_action_columns(g), v);
  };
}

inline Applier wedge2_applier(const Rep& r, const TensorIndex& w2) {
  return [&r, &w2](int g, const SparseVec& v) {
    return wedge_derivation(w2, r.action_columns(g), v);
  };
}

inline Applier wedge2_dual_applier(const Rep& r, const TensorIndex& w2) {
  return [&r, &w2](int g, const SparseVec& v) {
    return wedge_derivation(w2, r.dual_action_columns(g), v);
  };
}

inline Applier sym_applier(const Rep& r, const TensorIndex& s) {
  return [&r, &s](int g, const SparseVec& v) {
    return sym_derivation(s, r.action_columns(g), v);
  };
}

inline Applier sym_dual_applier(const Rep& r, const TensorIndex& s) {
  return [&r, &s](int g, const SparseVec& v) {
    return sym_derivation(s, r.dual_action_columns(g), v);
  };
}

// Dual-basis data of an invariant form restricted to the semisimple part.
// The Casimir of a module U is C_U = sum over pairs (i,j,w) of
// w * rho(x_i) rho(x_j).
struct DualStructure {
  std::vector<int> idx;  // semisimple basis indices in the algebra
  Matrix B;              // form restricted to idx
  Matrix Binv;
  std::vector<std::tuple<int, int, Rat>> pairs;  // (i, j, weight)

  // dual basis element paired with x_{idx[a]}, as a sparse algebra vector
  SparseVec dual_element(int a) const {
    SparseVec v;
    for (int b = 0; b < (int)idx.size(); ++b) v.push(idx[b], Binv(b, a));
    v.normalize();
    return v;
  }
};

inline DualStructure dual_structure(const LieAlgebra& L, const Matrix& form) {
  DualStructure d;
  d.idx = L.semisimple_indices();
  int m = (int)d.idx.size();
  d.B = Matrix(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) d.B(a, b) = form(d.idx[a], d.idx[b]);
  if (m > 0) {
    try {
      d.Binv = d.B.inverse();
    } catch (const std::runtime_error&) {
      throw std::runtime_error("casimir: form degenerate on semisimple part");
    }
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        if (!is_zero(d.Binv(b, a)))
          d.pairs.emplace_back(d.idx[a], d.idx[b], d.Binv(b, a));
  }
  return d;
}

inline SparseVec casimir_apply(const DualStructure& d, const Applier& act,
                               const SparseVec& v) {
  SparseVec r;
  for (auto& [i, j, w] : d.pairs) {
    SparseVec u = act(j, v);
    if (u.empty()) continue;
    axpy(r, w, act(i, u));
  }
  return r;
}

// Streaming homothety test: returns the scalar iff C == lambda * Id exactly.
inline std::optional<Rat> casimir_homothety(const DualStructure& d,
                                            const Applier& act, int dim) {
  if (dim == 0) return Rat(0);
  std::optional<Rat> lambda;
  for (int c = 0; c < dim; ++c) {
    SparseVec u = casimir_apply(d, act, SparseVec::unit(c));
    if (!lambda) {
      if (u.empty())
        lambda = Rat(0);
      else if (u.terms.size() == 1 && u.terms[0].first == c)
        lambda = u.terms[0].second;
      else
        return std::nullopt;
    }
    SparseVec expect;
    expect.push(c, *lambda);
    if (!(u == expect)) return std::nullopt;
  }
  return lambda;
}

inline Matrix casimir_matrix(const DualStructure& d, const Applier& act,
                             int dim) {
  Matrix M(dim, dim);
  for (int c = 0; c < dim; ++c) {
    SparseVec u = casimir_apply(d, act, SparseVec::unit(c));
    for (auto& t : u.terms) M(t.first, c) = t.second;
  }
  return M;
}

// Exact check (M - a I)(M - b I) == 0, done in integers after clearing
// denominators: verifies M^2 - (a+b) M + ab I == 0 column by column.
inline bool verify_split_quadratic(const Matrix& M, const Rat& a, const Rat& b) {
  int n = M.rows();
  Rat s = a + b, p = a * b;
  Int den(1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), M(i, j).get_den_mpz_t());
  mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), s.get_den_mpz_t());
  mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), p.get_den_mpz_t());
  std::vector<Int> A((size_t)n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A[(size_t)i * n + j] = Rat(M(i, j) * den).get_num();
  Int sz = Rat(s * den).get_num();
  Int pz = Rat(p * den * den).get_num();
  // check A^2 - sz A + pz I == 0 (everything scaled by den^2)
  std::vector<Int> col(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) col[i] = A[(size_t)i * n + j];
    for (int i = 0; i < n; ++i) {
      Int acc(0);
      const Int* row = &A[(size_t)i * n];
      for (int k = 0; k < n; ++k)
        if (mpz_sgn(col[k].get_mpz_t()) != 0) acc += row[k] * col[k];
      acc -= sz * col[i];
      if (i == j) acc += pz;
      if (mpz_sgn(acc.get_mpz_t()) != 0) return false;
    }
  }
  return true;
}

inline bool verify_quadratic_zero(const Matrix& M, const Rat& c) {
  return verify_split_quadratic(M, Rat(0), c);
}

inline std::optional<Rat> rational_sqrt(const Rat& r) {
  if (sgn(r) < 0) return std::nullopt;
  if (sgn(r) == 0) return Rat(0);
  const Int num = r.get_num(), den = r.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) ||
      !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  Int sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  Rat s(sn, sd);
  s.canonicalize();
  return s;
}

// Attempts to split M as two exact eigenvalues (a, b) with multiplicities,
// via a Krylov probe and an integer-verified quadratic relation.
inline std::vector<std::pair<Rat, long long>> two_eigenvalue_split(
    const Matrix& M) {
  int n = M.rows();
  for (int probe = 0; probe < std::min(n, 4); ++probe) {
    DenseVec v(n, Rat(0));
    v[probe] = 1;
    DenseVec w1 = M.apply(v), w2 = M.apply(w1);
    // find alpha, beta with w2 = alpha w1 + beta v
    int r1 = -1;
    for (int i = 0; i < n; ++i)
      if (i != probe && !is_zero(w1[i])) {
        r1 = i;
        break;
      }
    if (r1 < 0) continue;  // w1 parallel to v; degenerate probe
    Rat alpha = w2[r1] / w1[r1];
    Rat beta = w2[probe] - alpha * w1[probe];
    bool consistent = true;
    for (int i = 0; i < n; ++i)
      if (!(w2[i] == alpha * w1[i] + beta * v[i])) {
        consistent = false;
        break;
      }
    if (!consistent) continue;
    auto disc = rational_sqrt(alpha * alpha + 4 * beta);
    if (!disc) return {};
    Rat a = (alpha + *disc) / 2, b = (alpha - *disc) / 2;
    if (a == b) return {};
    if (!verify_split_quadratic(M, a, b)) return {};
    // multiplicities from the trace: k a + (n-k) b = tr
    Rat tr = M.trace();
    Rat k = (tr - Rat((long)n) * b) / (a - b);
    if (k.get_den() != 1) return {};
    long long ka = (long long)k.get_num().get_si();
    if (ka < 0 || ka > n) return {};
    return {{a, ka}, {b, n - ka}};
  }
  return {};
}

struct CasimirReport {
  std::string module_label;
  long long module_dim = 0;
  std::optional<Rat> scalar;  // present iff the matrix is a homothety
  // (eigenvalue, eigenspace dim) pairs when C annihilates (x)(x-c)
  std::vector<std::pair<Rat, long long>> spectrum;
  bool homothety() const { return scalar.has_value(); }
};

// Casimir of a materialized representation with respect to a form; detects
// homothety exactly, and a clean two-eigenvalue split when present.
inline CasimirReport casimir_on(const Rep& r, const Matrix& form,
                                Matrix* out_matrix = nullptr) {
  CasimirReport rep;
  rep.module_label = r.label();
  rep.module_dim = r.dim();
  DualStructure d = dual_structure(r.algebra(), form);
  Applier act = rep_applier(r);
  Matrix M = casimir_matrix(d, act, r.dim());
  bool hom = true;
  Rat lambda = r.dim() > 0 ? M(0, 0) : Rat(0);
  for (int i = 0; i < r.dim() && hom; ++i)
    for (int j = 0; j < r.dim(); ++j)
      if (!(M(i, j) == (i == j ? lambda : Rat(0)))) {
        hom = false;
        break;
      }
  if (hom) {
    rep.scalar = lambda;
    rep.spectrum = {{lambda, r.dim()}};
  } else {
    rep.spectrum = two_eigenvalue_split(M);
  }
  if (out_matrix) *out_matrix = std::move(M);
  return rep;
}

// Simultaneous kernel of all action matrices.
inline Subspace invariant_vectors(const Rep& r) {
  int n = r.dim();
  std::vector<SparseVec> K;
  for (int i = 0; i < n; ++i) K.push_back(SparseVec::unit(i));
  for (int g = 0; g < r.algebra_dim() && !K.empty(); ++g) {
    Matrix A(n, (int)K.size());
    bool all_zero = true;
    for (int k = 0; k < (int)K.size(); ++k) {
      SparseVec w = r.apply(g, K[k]);
      for (auto& t : w.terms) {
        A(t.first, k) = t.second;
        all_zero = false;
      }
    }
    if (all_zero) continue;
    Subspace ker = kernel(A);
    std::vector<SparseVec> K2;
    for (auto& coeff : ker.basis()) {
      SparseVec v;
      for (auto& t : coeff.terms) axpy(v, t.second, K[t.first]);
      if (!v.empty()) K2.push_back(std::move(v));
    }
    K = std::move(K2);
  }
  Subspace s(n);
  for (auto& v : K) s.insert(v);
  return s;
}

}  // namespace lieforge
