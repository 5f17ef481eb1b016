#pragma once

#include "lieforge/casimir.hpp"

namespace lieforge {

// Smallest subspace containing the seeds and invariant under every action.
// When a dual applier is given and the running span has small codimension,
// invariance is confirmed on the annihilator side (codim many functionals)
// instead of sweeping every basis vector; both routes are exact.
inline Subspace span_closure_fn(const Applier& act, int num_gens,
                                const std::vector<SparseVec>& seeds,
                                int ambient,
                                const Applier* dual_act = nullptr,
                                int dual_check_codim_cap = 64) {
  Subspace span(ambient);
  std::vector<SparseVec> work;
  for (auto& s : seeds) {
    SparseVec r = span.reduce(s);
    if (!r.empty()) {
      work.push_back(r);
      span.insert(std::move(r));
    }
  }
  auto stable_by_dual = [&]() {
    if (!dual_act) return false;
    long long codim = ambient - span.dim();
    if (codim > dual_check_codim_cap) return false;
    Subspace ann = span.annihilator();
    for (int g = 0; g < num_gens; ++g)
      for (auto& phi : ann.basis())
        if (!ann.contains((*dual_act)(g, phi))) return false;
    return true;
  };
  long long since_check = 0;
  while (!work.empty() && !span.is_full()) {
    SparseVec w = std::move(work.back());
    work.pop_back();
    for (int g = 0; g < num_gens && !span.is_full(); ++g) {
      SparseVec u = span.reduce(act(g, w));
      if (!u.empty()) {
        work.push_back(u);
        span.insert(std::move(u));
      }
    }
    if (dual_act && ++since_check >= 16) {
      since_check = 0;
      if (stable_by_dual()) return span;
    }
  }
  return span;
}

inline Subspace span_closure(const std::vector<SparseMatrix>& actions,
                             const std::vector<SparseVec>& seeds, int ambient) {
  for (auto& a : actions)
    if (a.rows() != ambient || a.cols() != ambient)
      throw std::invalid_argument("span_closure: dimension mismatch");
  std::vector<std::vector<SparseVec>> cols;
  cols.reserve(actions.size());
  for (auto& a : actions) cols.push_back(a.columns());
  Applier act = [&cols](int g, const SparseVec& v) {
    return apply_columns(cols[g], v);
  };
  return span_closure_fn(act, (int)actions.size(), seeds, ambient);
}

inline long long sym_weight(const TensorIndex& idx, int rank_idx) {
  auto tup = idx.unrank(rank_idx);
  long long f = 1, run = 1;
  for (size_t i = 1; i < tup.size(); ++i) {
    if (tup[i] == tup[i - 1])
      f *= ++run;
    else
      run = 1;
  }
  return f;
}

inline SparseVec sym_scale_weights(const TensorIndex& idx, SparseVec v,
                                   bool inverse) {
  for (auto& t : v.terms) {
    Rat f((long)sym_weight(idx, t.first));
    t.second = inverse ? t.second / f : t.second * f;
  }
  return v;
}

// Exact transpose of the induced S^d action in monomial coordinates:
// rho_{S^d T}^T = D rho_{S^d T*} D^{-1} up to sign, with D the diagonal of
// monomial self-pairings prod m_i!. `of_dual` transposes the S^d(T*) action
// instead. The overall sign is dropped (span checks are sign-blind).
inline Applier sym_transpose_applier(const Rep& r, const TensorIndex& s,
                                     bool of_dual) {
  return [&r, &s, of_dual](int g, const SparseVec& v) {
    SparseVec w = sym_scale_weights(s, v, true);
    w = of_dual ? sym_derivation(s, r.action_columns(g), w)
                : sym_derivation(s, r.dual_action_columns(g), w);
    return sym_scale_weights(s, std::move(w), false);
  };
}

// Monomials of S^d pair with their duals through prod_i m_i!; converting a
// dual-coordinate subspace into polynomial coefficients divides each
// coordinate by that factor. Wedge and product bases pair with factor 1.
inline Subspace dual_coords_to_polynomials(const Subspace& s,
                                           const TensorIndex& idx) {
  if (idx.kind() != TensorIndex::Kind::Sym) return s;
  Subspace out((int)idx.dim());
  for (auto row : s.basis()) {
    for (auto& t : row.terms) {
      auto tup = idx.unrank(t.first);
      long f = 1, run = 1;
      for (size_t i = 1; i < tup.size(); ++i) {
        if (tup[i] == tup[i - 1])
          f *= ++run;
        else
          run = 1;
      }
      t.second /= f;
    }
    out.insert(std::move(row));
  }
  return out;
}

// Degree-2 ideal of the closed orbit Y in P(T): annihilator of the
// submodule of S^2 T generated by the square of the extreme vector,
// returned as polynomial coefficients in S^2 T*.
inline Subspace cartan_complement_ideal(const Rep& r) {
  if (r.extreme().empty())
    throw std::runtime_error("cartan_complement_ideal: no extreme vector");
  TensorIndex s2 = TensorIndex::sym(r.dim(), 2);
  if (r.extreme().terms.size() != 1)
    throw std::runtime_error("cartan_complement_ideal: extreme not a basis line");
  int k = r.extreme().terms[0].first;
  SparseVec vv = SparseVec::unit((int)s2.rank({k, k}));
  Applier act = sym_applier(r, s2);
  Applier trans = sym_transpose_applier(r, s2, false);
  Subspace cartan = span_closure_fn(act, r.algebra_dim(), {vv}, (int)s2.dim(),
                                    &trans, 192);
  return dual_coords_to_polynomials(cartan.annihilator(), s2);
}

// Linear span of the cone over the variety of embedded tangent lines,
// inside Lambda^2 T: closure of { v ^ (x.v) : x in the algebra basis }.
inline Subspace tangent_line_span(const Rep& r) {
  if (r.extreme().empty())
    throw std::runtime_error("tangent_line_span: no extreme vector");
  TensorIndex w2 = TensorIndex::wedge(r.dim(), 2);
  std::vector<SparseVec> seeds;
  for (int g = 0; g < r.algebra_dim(); ++g) {
    SparseVec xv = r.apply(g, r.extreme());
    SparseVec s = wedge2_of(w2, r.extreme(), xv);
    if (!s.empty()) seeds.push_back(std::move(s));
  }
  Applier act = wedge2_applier(r, w2);
  Applier trans = wedge2_dual_applier(r, w2);  // = -transpose on wedge coords
  return span_closure_fn(act, r.algebra_dim(), seeds, (int)w2.dim(), &trans,
                         64);
}

inline Matrix killing_form(const LieAlgebra& L) { return L.compute_killing(); }

// Coordinates of t^j inside S^j T (the monomial coordinates of the j-th
// symmetric power of a point), used to evaluate dual functionals on powers.
inline DenseVec sym_point_power(const TensorIndex& idx, const DenseVec& t) {
  int n = (int)t.size();
  int d = idx.degree();
  DenseVec out(idx.dim(), Rat(0));
  // iterate monomials by multiset tuple
  for (long long r = 0; r < idx.dim(); ++r) {
    auto tup = idx.unrank(r);
    // multinomial coefficient d! / prod m_i!
    long long coef = 1, seen = 0, run = 1;
    for (size_t i = 0; i < tup.size(); ++i) {
      ++seen;
      coef = coef * seen;
      if (i > 0 && tup[i] == tup[i - 1])
        coef /= ++run;
      else
        run = 1;
    }
    Rat m(coef);
    for (int i : tup) m *= t[i];
    out[r] = m;
  }
  (void)n;
  (void)d;
  return out;
}

}  // namespace lieforge
