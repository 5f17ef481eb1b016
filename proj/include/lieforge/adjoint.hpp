#pragma once

#include "lieforge/minuscule.hpp"

namespace lieforge {

// Data of a five-graded assembly: the symplectic form omega on T1 (matrix),
// the sharp map W = -omega^{-1}, the unscaled theta tensor, and the bracket
// constants. The flat map is u -> u^b = -omega u; theta(u^b (x) v) is the
// semisimple part of [u*, v] up to the factor l.
struct AdjointFrame {
  Rep T1;
  Matrix omega;  // n x n antisymmetric, invariant, nondegenerate
  Matrix sharp;  // W = -omega^{-1}
  std::vector<std::vector<SparseVec>> theta;  // [a][k] over the h basis
  Rat l = 0;
  Rat o = 2, a = 2, m = 2, m_star = -2;
  Rat c_wedge = 0;  // nonzero Casimir eigenvalue on wedge^2 T1

  DenseVec flat(const DenseVec& u) const {  // u^b = -omega u
    DenseVec r(omega.rows(), Rat(0));
    for (int i = 0; i < omega.rows(); ++i)
      for (int j = 0; j < omega.cols(); ++j)
        if (!is_zero(omega(i, j))) r[i] -= omega(i, j) * u[j];
    return r;
  }

  Rat omega_eval(const DenseVec& u, const DenseVec& v) const {
    Rat s(0);
    for (int i = 0; i < omega.rows(); ++i)
      for (int j = 0; j < omega.cols(); ++j)
        if (!is_zero(omega(i, j))) s += u[i] * omega(i, j) * v[j];
    return s;
  }

  // theta(w^b (x) w) as a sparse vector over the h basis
  SparseVec theta_hat(const DenseVec& w) const {
    int n = (int)w.size();
    DenseVec wf = flat(w);
    SparseVec r;
    for (int a2 = 0; a2 < n; ++a2) {
      if (is_zero(wf[a2])) continue;
      for (int k = 0; k < n; ++k) {
        if (is_zero(w[k])) continue;
        axpy(r, wf[a2] * w[k], theta[a2][k]);
      }
    }
    return r;
  }

  // value of Z in h (sparse coords) on a dense module vector
  DenseVec h_apply(const SparseVec& z, const DenseVec& v) const {
    DenseVec r(T1.dim(), Rat(0));
    for (auto& t : z.terms) {
      for (int c = 0; c < T1.dim(); ++c) {
        if (is_zero(v[c])) continue;
        for (auto& e : T1.action_columns(t.first)[c].terms)
          r[e.first] += t.second * v[c] * e.second;
      }
    }
    return r;
  }

  // dual action of Z on a covector (coordinates over the f basis)
  DenseVec h_apply_dual(const SparseVec& z, const DenseVec& xi) const {
    DenseVec r(T1.dim(), Rat(0));
    for (auto& t : z.terms) {
      for (int c = 0; c < T1.dim(); ++c) {
        if (is_zero(xi[c])) continue;
        for (auto& e : T1.dual_action_columns(t.first)[c].terms)
          r[e.first] += t.second * xi[c] * e.second;
      }
    }
    return r;
  }

  // p(w) = omega(theta_hat(w) w, w); the tangential-variety quartic up to
  // the recorded global factor
  Rat quartic_eval(const DenseVec& w) const {
    SparseVec th = theta_hat(w);
    if (th.empty()) return Rat(0);
    return omega_eval(h_apply(th, w), w);
  }

  Rat quartic_eval_killing(const DenseVec& w) const {
    SparseVec th = theta_hat(w);
    Rat s(0);
    const Matrix& B = T1.algebra().killing();
    for (auto& x : th.terms)
      for (auto& y : th.terms) s += x.second * y.second * B(x.first, y.first);
    return s;
  }
};

struct AdjointProbe {
  AdmissibilityDecision dec;
  SparseVec line;       // invariant line in wedge^2 T1
  SparseVec line_dual;  // invariant line in wedge^2 T1*
  Rat c;                // nonzero Casimir eigenvalue
};

// Almost-C-irreducibility: the Casimir on wedge^2 T1 satisfies M(M-c)=0
// with a one-dimensional invariant zero eigenspace. The eigenvalue count
// comes from the trace, the kernel line from a column of M - cI.
inline AdjointProbe adjoint_probe(const Rep& T1, const EngineCaps& caps) {
  AdjointProbe pr;
  const LieAlgebra& h = T1.algebra();
  int n = T1.dim();
  TensorIndex w2 = TensorIndex::wedge(n, 2);
  long long nw = w2.dim();
  pr.dec.report.module_label = "L2(" + T1.label() + ")";
  pr.dec.report.module_dim = nw;
  if (h.semisimple_indices().empty() || nw == 0) {
    pr.dec.admissible = false;
    pr.dec.reason = "degenerate input";
    return pr;
  }
  DualStructure ds = dual_structure(h, h.killing());
  Applier act = wedge2_applier(T1, w2);
  Applier dact = wedge2_dual_applier(T1, w2);

  auto invariant_line = [&](const SparseVec& v, const Applier& a) {
    for (int g = 0; g < T1.algebra_dim(); ++g)
      if (!a(g, v).empty()) return false;
    return true;
  };

  if (nw == 1) {
    pr.line = SparseVec::unit(0);
    pr.line_dual = SparseVec::unit(0);
    if (invariant_line(pr.line, act)) {
      pr.dec.admissible = true;
      pr.c = 0;
      pr.dec.report.spectrum = {{Rat(0), 1}};
      pr.dec.reason = "wedge square is the invariant line";
    } else {
      pr.dec.admissible = false;
      pr.dec.reason = "one-dimensional wedge square not invariant";
    }
    return pr;
  }

  Matrix M = casimir_matrix(ds, act, (int)nw);
  Rat tr = M.trace();
  Rat c = tr / Rat((long)(nw - 1));
  bool ok = !is_zero(c) && verify_quadratic_zero(M, c);
  if (ok) {
    // columns of M - cI span the zero eigenspace, which has dim 1 by trace
    SparseVec v;
    for (int j = 0; j < nw && v.empty(); ++j) {
      for (int i = 0; i < nw; ++i) {
        Rat x = M(i, j) - (i == j ? c : Rat(0));
        v.push(i, x);
      }
      v.normalize();
    }
    if (!v.empty()) {
      v *= 1 / v.leading_coeff();
      ok = invariant_line(v, act);
      pr.line = std::move(v);
    } else {
      ok = false;  // M == cI: no zero eigenspace at all
    }
  }
  if (ok) {
    SparseVec vd;
    for (int i = 0; i < nw && vd.empty(); ++i) {
      for (int j = 0; j < nw; ++j) {
        Rat x = M(i, j) - (i == j ? c : Rat(0));
        vd.push(j, x);
      }
      vd.normalize();
    }
    if (vd.empty() || !invariant_line(vd, dact)) ok = false;
    if (ok) {
      vd *= 1 / vd.leading_coeff();
      pr.line_dual = std::move(vd);
    }
  }
  pr.c = c;
  pr.dec.admissible = ok;
  if (ok) {
    pr.dec.report.spectrum = {{Rat(0), 1}, {c, nw - 1}};
    pr.dec.reason = "almost C-irreducible";
  } else {
    pr.dec.reason = "wedge square is not almost C-irreducible";
    if (nw <= caps.spectrum_report_cap)
      pr.dec.report.spectrum = two_eigenvalue_split(M);
  }
  if (nw <= caps.wedge_crosscheck_cap) {
    Subspace span = tangent_line_span(T1);
    pr.dec.tangent_span_dim = span.dim();
    bool codim1 = span.dim() == nw - 1;
    if (codim1 != pr.dec.admissible) {
      // degenerate symplectic case: the closed orbit is linearly full with
      // no quadratic equations (empty base locus); the construction still
      // goes through, of degree two
      bool degenerate = pr.dec.admissible && span.is_full() &&
                        cartan_complement_ideal(T1).dim() == 0;
      if (!degenerate)
        throw std::logic_error(
            "adjoint_probe: Casimir and tangent-span tests disagree on " +
            T1.label());
      pr.dec.reason = "almost C-irreducible (degenerate: orbit linearly full)";
    }
  }
  return pr;
}

inline AdmissibilityDecision adjoint_admissible(const Rep& T1,
                                                const EngineCaps& caps) {
  return adjoint_probe(T1, caps).dec;
}

// omega from the invariant line in wedge^2 T1*; nondegeneracy gives the
// sharp map, and the induced bivector must span the primal invariant line.
inline AdjointFrame extract_symplectic(const Rep& T1, const AdjointProbe& pr) {
  if (!pr.dec.admissible)
    throw std::runtime_error("extract_symplectic: input not admissible");
  int n = T1.dim();
  TensorIndex w2 = TensorIndex::wedge(n, 2);
  AdjointFrame fr;
  fr.T1 = T1;
  fr.c_wedge = pr.c;
  fr.omega = Matrix(n, n);
  for (auto& t : pr.line_dual.terms) {
    auto ij = w2.unrank(t.first);
    fr.omega(ij[0], ij[1]) = t.second;
    fr.omega(ij[1], ij[0]) = -t.second;
  }
  Matrix minus_omega = fr.omega;
  minus_omega *= Rat(-1);
  try {
    fr.sharp = minus_omega.inverse();
  } catch (const std::runtime_error&) {
    throw std::runtime_error("extract_symplectic: invariant two-form degenerate");
  }
  // the bivector with coefficients W_{ab} spans the primal invariant line
  SparseVec biv;
  for (int a2 = 0; a2 < n; ++a2)
    for (int b = a2 + 1; b < n; ++b)
      biv.push((int)w2.rank({a2, b}), fr.sharp(a2, b));
  biv.normalize();
  SparseVec red = biv;
  if (!red.empty()) {
    Subspace line(w2.dim() > 0 ? (int)w2.dim() : 1);
    line.insert(pr.line);
    red = line.reduce(std::move(red));
  }
  if (!red.empty())
    throw std::logic_error("extract_symplectic: bivector off the invariant line");

  // unscaled theta tensor over the semisimple dual bases
  const LieAlgebra& h = T1.algebra();
  fr.theta.assign(n, std::vector<SparseVec>(n));
  DualStructure ds = dual_structure(h, h.killing());
  for (int a2 = 0; a2 < (int)ds.idx.size(); ++a2) {
    SparseVec dual = ds.dual_element(a2);
    const auto& cols = T1.action_columns(ds.idx[a2]);
    for (int k = 0; k < n; ++k)
      for (auto& e : cols[k].terms) axpy(fr.theta[e.first][k], e.second, dual);
  }
  // theta symmetry: theta(u^b (x) v) = theta(v^b (x) u) on all basis pairs
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) {
      SparseVec lhs, rhs;
      for (int a2 = 0; a2 < n; ++a2) {
        if (!is_zero(fr.omega(a2, j))) axpy(lhs, -fr.omega(a2, j), fr.theta[a2][k]);
        if (!is_zero(fr.omega(a2, k))) axpy(rhs, -fr.omega(a2, k), fr.theta[a2][j]);
      }
      axpy(lhs, Rat(-1), rhs);
      if (!lhs.empty())
        throw std::logic_error("extract_symplectic: theta is not symmetric");
    }
  return fr;
}

// Solves l from
//   l [theta(w^b x) y - theta(w^b y) x] = 4 w(x,y) w - 2 w(w,x) y + 2 w(w,y) x
// on one triple and verifies the identity on all basis triples.
inline Rat solve_l(AdjointFrame& fr) {
  int n = fr.T1.dim();
  auto theta_flat = [&](int c, int j) {  // theta(e_c^b (x) e_j) over h
    SparseVec r;
    for (int a2 = 0; a2 < n; ++a2)
      if (!is_zero(fr.omega(a2, c))) axpy(r, -fr.omega(a2, c), fr.theta[a2][j]);
    return r;
  };
  auto lhs_vec = [&](int c, int j, int k) {
    SparseVec r;
    for (auto& t : theta_flat(c, j).terms)
      axpy(r, t.second, fr.T1.action_columns(t.first)[k]);
    for (auto& t : theta_flat(c, k).terms)
      axpy(r, -t.second, fr.T1.action_columns(t.first)[j]);
    return r;
  };
  auto rhs_vec = [&](int c, int j, int k) {
    SparseVec r;
    r.push(c, 4 * fr.omega(j, k));
    r.push(k, -2 * fr.omega(c, j));
    r.push(j, 2 * fr.omega(c, k));
    r.normalize();
    return r;
  };
  std::optional<Rat> l;
  for (int c = 0; c < n && !l; ++c)
    for (int j = 0; j < n && !l; ++j)
      for (int k = 0; k < n && !l; ++k) {
        SparseVec lv = lhs_vec(c, j, k);
        if (lv.empty()) continue;
        SparseVec rv = rhs_vec(c, j, k);
        if (rv.empty())
          throw std::runtime_error("solve_l: inconsistent identity (rhs zero)");
        l = rv.terms[0].second / lv.coeff(rv.terms[0].first);
      }
  if (!l) throw std::runtime_error("solve_l: theta side identically zero");
  for (int c = 0; c < n; ++c)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        SparseVec lv = lhs_vec(c, j, k);
        lv *= *l;
        axpy(lv, Rat(-1), rhs_vec(c, j, k));
        if (!lv.empty())
          throw std::runtime_error("solve_l: identity fails on a basis triple");
      }
  fr.l = *l;
  return *l;
}

struct AdjointOutput {
  std::shared_ptr<LieAlgebra> algebra;
  AdjointFrame frame;
  JacobiCertificate jacobi;
  bool simple = false;
  std::vector<long long> graded_dims;
  // quartic data (present once quartic_invariant has run and dim permits)
  std::optional<SparseVec> quartic;  // coefficients in S^4 T1*
  std::optional<Subspace> cubics;    // span of the partials in S^3 T1*
  Rat p_factor = 0;                  // killing-form route == p_factor * omega route
  bool p_zero = false;

  int n() const { return frame.T1.dim(); }
  int m() const { return frame.T1.algebra().dim(); }
  int idx_wstar() const { return 0; }
  int idx_f(int a2) const { return 1 + a2; }
  int idx_h(int a2) const { return 1 + n() + a2; }
  int idx_one() const { return 1 + n() + m(); }
  int idx_e(int k) const { return 2 + n() + m() + k; }
  int idx_w() const { return 2 + 2 * n() + m(); }
};

// Five-graded bracket table, with o = a = m = 2, m* = -2 and the solved l.
inline AdjointOutput assemble_adjoint_algebra(AdjointFrame frame,
                                              const EngineCaps& caps) {
  AdjointOutput out;
  int n = frame.T1.dim(), m = frame.T1.algebra().dim();
  const LieAlgebra& h = frame.T1.algebra();
  int dim = 2 * n + m + 3;
  out.frame = std::move(frame);
  const AdjointFrame& fr = out.frame;
  auto g = std::make_shared<LieAlgebra>(dim, "adj(" + fr.T1.label() + ")");
  const AdjointOutput& ix = out;  // index helpers

  // [w*, 1] = 4 w*, [w*, e_k] = -2 sum_a omega_{ak} f_a, [w*, w] = 2*1
  g->set_bracket(ix.idx_wstar(), ix.idx_one(),
                 [&] { SparseVec v; v.push(ix.idx_wstar(), Rat(4)); return v; }());
  for (int k = 0; k < n; ++k) {
    SparseVec v;
    for (int a2 = 0; a2 < n; ++a2)
      if (!is_zero(fr.omega(a2, k))) v.push(ix.idx_f(a2), -2 * fr.omega(a2, k));
    v.normalize();
    g->set_bracket(ix.idx_wstar(), ix.idx_e(k), std::move(v));
  }
  g->set_bracket(ix.idx_wstar(), ix.idx_w(),
                 [&] { SparseVec v; v.push(ix.idx_one(), Rat(2)); return v; }());
  // [f_a, f_b] = 2 W_{ab} w*
  for (int a2 = 0; a2 < n; ++a2)
    for (int b = a2 + 1; b < n; ++b) {
      SparseVec v;
      v.push(ix.idx_wstar(), 2 * fr.sharp(a2, b));
      v.normalize();
      g->set_bracket(ix.idx_f(a2), ix.idx_f(b), std::move(v));
    }
  // [h_a, h_b], [h_b, f_a], [h_b, e_k]
  for (int a2 = 0; a2 < m; ++a2)
    for (int b = a2 + 1; b < m; ++b) {
      SparseVec v;
      for (auto& t : h.bracket_upper(a2, b).terms)
        v.push(ix.idx_h(t.first), t.second);
      g->set_bracket(ix.idx_h(a2), ix.idx_h(b), std::move(v));
    }
  for (int b = 0; b < m; ++b)
    for (int k = 0; k < n; ++k) {
      SparseVec v;
      for (auto& t : fr.T1.action_columns(b)[k].terms)
        v.push(ix.idx_e(t.first), t.second);
      v.normalize();
      g->set_bracket(ix.idx_h(b), ix.idx_e(k), std::move(v));
      SparseVec w;
      for (auto& t : fr.T1.dual_action_columns(b)[k].terms)
        w.push(ix.idx_f(t.first), t.second);
      w.normalize();
      g->set_bracket(ix.idx_h(b), ix.idx_f(k), std::move(w));
    }
  // [f_a, 1] = 2 f_a, [1, e_k] = 2 e_k, [1, w] = 4 w
  for (int a2 = 0; a2 < n; ++a2) {
    SparseVec v;
    v.push(ix.idx_f(a2), Rat(2));
    g->set_bracket(ix.idx_f(a2), ix.idx_one(), std::move(v));
  }
  for (int k = 0; k < n; ++k) {
    SparseVec v;
    v.push(ix.idx_e(k), Rat(2));
    g->set_bracket(ix.idx_one(), ix.idx_e(k), std::move(v));
  }
  g->set_bracket(ix.idx_one(), ix.idx_w(),
                 [&] { SparseVec v; v.push(ix.idx_w(), Rat(4)); return v; }());
  // [f_a, e_k] = delta 1 + l theta[a][k]
  for (int a2 = 0; a2 < n; ++a2)
    for (int k = 0; k < n; ++k) {
      SparseVec v;
      if (a2 == k) v.push(ix.idx_one(), Rat(1));
      for (auto& t : fr.theta[a2][k].terms)
        v.push(ix.idx_h(t.first), fr.l * t.second);
      v.normalize();
      g->set_bracket(ix.idx_f(a2), ix.idx_e(k), std::move(v));
    }
  // [f_a, w] = 2 sum_k W_{ka} e_k
  for (int a2 = 0; a2 < n; ++a2) {
    SparseVec v;
    for (int k = 0; k < n; ++k)
      if (!is_zero(fr.sharp(k, a2))) v.push(ix.idx_e(k), 2 * fr.sharp(k, a2));
    v.normalize();
    g->set_bracket(ix.idx_f(a2), ix.idx_w(), std::move(v));
  }
  // [e_j, e_k] = 2 omega_{jk} w
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      if (is_zero(fr.omega(j, k))) continue;
      SparseVec v;
      v.push(ix.idx_w(), 2 * fr.omega(j, k));
      g->set_bracket(ix.idx_e(j), ix.idx_e(k), std::move(v));
    }

  std::vector<int> grades(dim, 0);
  grades[ix.idx_wstar()] = -2;
  for (int a2 = 0; a2 < n; ++a2) grades[ix.idx_f(a2)] = -1;
  for (int k = 0; k < n; ++k) grades[ix.idx_e(k)] = 1;
  grades[ix.idx_w()] = 2;
  g->set_grades(std::move(grades));
  g->set_single_simple_ideal();

  out.algebra = g;
  out.graded_dims = {1, n, m + 1, n, 1};
  if (dim <= caps.jacobi_full_cap) {
    out.jacobi = g->verify_jacobi_full();
  } else {
    Rng rng(caps.seed);
    out.jacobi = g->verify_jacobi_sampled(caps.jacobi_samples, rng);
  }
  if (!out.jacobi.ok)
    throw std::logic_error("assemble_adjoint_algebra: Jacobi failed for " +
                           g->label());
  out.simple = g->simplicity_probe(10, caps.seed);
  return out;
}

// p(w) both ways: via omega and via the Killing form of h; they must agree
// up to one global factor. Coefficients are assembled when the dimension
// permits; the evaluation route works at any size. skip_killing_route is
// for inputs whose h has an abelian part (non-fundamental series).
inline void quartic_invariant(AdjointOutput& out, const EngineCaps& caps,
                              int coeff_cap = 32,
                              bool skip_killing_route = false) {
  const AdjointFrame& fr = out.frame;
  int n = fr.T1.dim();
  if (n <= coeff_cap) {
    TensorIndex s2 = TensorIndex::sym(n, 2);
    TensorIndex s4 = TensorIndex::sym(n, 4);
    const LieAlgebra& h = fr.T1.algebra();
    int m = h.dim();
    // Q_c(w): c-component of theta_hat; R_c(w) = omega(rho(x_c) w, w)
    std::vector<SparseVec> Q(m), R(m);
    for (int a2 = 0; a2 < n; ++a2)
      for (int k = 0; k < n; ++k) {
        // coefficient of w_a w_k in theta-hat is -sum_b omega_{b a} theta[b][k]
        SparseVec comb;
        for (int b = 0; b < n; ++b)
          if (!is_zero(fr.omega(b, a2))) axpy(comb, -fr.omega(b, a2), fr.theta[b][k]);
        if (comb.empty()) continue;
        int mono = (int)s2.rank({std::min(a2, k), std::max(a2, k)});
        for (auto& t : comb.terms) Q[t.first].push(mono, t.second);
      }
    for (int c = 0; c < m; ++c) Q[c].normalize();
    for (int c = 0; c < m; ++c) {
      const auto& cols = fr.T1.action_columns(c);
      SparseVec r;
      for (int k = 0; k < n; ++k)  // (rho w)^T omega w
        for (auto& e : cols[k].terms)
          for (int j = 0; j < n; ++j)
            if (!is_zero(fr.omega(e.first, j)))
              r.push((int)s2.rank({std::min(k, j), std::max(k, j)}),
                     e.second * fr.omega(e.first, j));
      r.normalize();
      R[c] = std::move(r);
    }
    SparseVec p1, p2;
    for (int c = 0; c < m; ++c)
      if (!Q[c].empty() && !R[c].empty())
        axpy(p1, Rat(1), sym_mul(s2, s2, s4, Q[c], R[c]));
    if (!skip_killing_route) {
      const Matrix& B = h.killing();
      for (int c = 0; c < m; ++c) {
        if (Q[c].empty()) continue;
        for (int d = 0; d < m; ++d) {
          if (Q[d].empty() || is_zero(B(c, d))) continue;
          axpy(p2, B(c, d), sym_mul(s2, s2, s4, Q[c], Q[d]));
        }
      }
    }
    out.p_zero = p1.empty();
    if (!p1.empty()) {
      if (!skip_killing_route) {
        if (p2.empty())
          throw std::runtime_error("quartic_invariant: killing route vanished");
        Rat f = p2.terms[0].second / p1.coeff(p2.terms[0].first);
        SparseVec chk = p1;
        chk *= f;
        axpy(chk, Rat(-1), p2);
        if (!chk.empty())
          throw std::runtime_error(
              "quartic_invariant: the two formulas disagree beyond a factor");
        out.p_factor = f;
      }
      out.quartic = p1;
      TensorIndex s3 = TensorIndex::sym(n, 3);
      Subspace cub((int)s3.dim());
      for (int i = 0; i < n; ++i) cub.insert(sym_diff(s4, s3, p1, i));
      out.cubics = std::move(cub);
    } else {
      if (!p2.empty())
        throw std::runtime_error("quartic_invariant: routes disagree at zero");
      out.p_factor = 0;
    }
  } else {
    // sampled agreement at deterministic rational points
    Rng rng(caps.seed + 17);
    std::optional<Rat> f;
    bool all_zero = true;
    for (int s = 0; s < 25; ++s) {
      DenseVec w(n);
      for (auto& x : w) x = rng.small_rat();
      Rat a2 = fr.quartic_eval(w);
      Rat b = fr.quartic_eval_killing(w);
      if (is_zero(a2)) {
        if (!is_zero(b))
          throw std::runtime_error("quartic_invariant: sampled disagreement");
        continue;
      }
      all_zero = false;
      Rat ratio = b / a2;
      if (!f)
        f = ratio;
      else if (!(*f == ratio))
        throw std::runtime_error("quartic_invariant: sampled factor drift");
    }
    out.p_zero = all_zero;
    if (f) out.p_factor = *f;
  }
}

// Successive ad-powers of X = x w* + u^b applied to the top generator.
inline std::array<SparseVec, 5> orbit_series(const AdjointOutput& out,
                                             const Rat& x, const DenseVec& u) {
  const AdjointFrame& fr = out.frame;
  int n = out.n();
  SparseVec X;
  X.push(out.idx_wstar(), x);
  DenseVec ub = fr.flat(u);
  for (int a2 = 0; a2 < n; ++a2) X.push(out.idx_f(a2), ub[a2]);
  X.normalize();
  std::array<SparseVec, 5> s;
  SparseVec cur = SparseVec::unit(out.idx_w());
  for (int k = 0; k < 5; ++k) {
    cur = out.algebra->bracket(X, cur);
    s[k] = cur;
  }
  return s;
}

// Exact expected values of the orbit series, from the bracket table.
inline bool verify_orbit_series(const AdjointOutput& out, const Rat& x,
                                const DenseVec& u, Rat* x4_coeff = nullptr) {
  const AdjointFrame& fr = out.frame;
  int n = out.n();
  auto s = orbit_series(out, x, u);
  DenseVec ub = fr.flat(u);
  SparseVec th = fr.theta_hat(u);
  // s1 = 2x 1 + 2u
  SparseVec e1;
  e1.push(out.idx_one(), 2 * x);
  for (int k = 0; k < n; ++k) e1.push(out.idx_e(k), 2 * u[k]);
  e1.normalize();
  // s2 = 8x^2 w* + 8x u^b + 2l theta_hat
  SparseVec e2;
  e2.push(out.idx_wstar(), 8 * x * x);
  for (int a2 = 0; a2 < n; ++a2) e2.push(out.idx_f(a2), 8 * x * ub[a2]);
  for (auto& t : th.terms) e2.push(out.idx_h(t.first), 2 * fr.l * t.second);
  e2.normalize();
  // s3 = -2l (theta_hat . u^b) on the f part
  DenseVec tdu = fr.h_apply_dual(th, ub);
  SparseVec e3;
  for (int a2 = 0; a2 < n; ++a2) e3.push(out.idx_f(a2), -2 * fr.l * tdu[a2]);
  e3.normalize();
  // s4 = -4l omega(u, theta_hat u) w* = 4l p(u) w*
  DenseVec tu = fr.h_apply(th, u);
  Rat coeff = -4 * fr.l * fr.omega_eval(u, tu);
  SparseVec e4;
  e4.push(out.idx_wstar(), coeff);
  e4.normalize();
  if (x4_coeff) *x4_coeff = coeff;
  auto eq = [](const SparseVec& a2, const SparseVec& b) {
    SparseVec d = a2;
    axpy(d, Rat(-1), b);
    return d.empty();
  };
  return eq(s[0], e1) && eq(s[1], e2) && eq(s[2], e3) && eq(s[3], e4) &&
         s[4].empty();
}

// phi([x0 : w : xn]) in the graded coordinate blocks
//   [x0^4 | x0^3 w_i | x0^3 xn | x0^2 q_c(w) | x0^2 xn (w^b)_a - (l/12) x0 s_a(w)
//    | x0^2 xn^2 + (l/24) p(w)]
// where q_c are the theta quadrics, s_a the singular-locus cubics in flat
// coordinates, and p the tangential quartic.
inline PhiResult evaluate_phi_adjoint(const AdjointOutput& out,
                                      const DenseVec& point) {
  const AdjointFrame& fr = out.frame;
  int n = out.n(), m = out.m();
  if ((int)point.size() != n + 2)
    throw std::invalid_argument("evaluate_phi_adjoint: point has wrong length");
  Rat x0 = point[0], xn = point[n + 1];
  DenseVec w(point.begin() + 1, point.begin() + 1 + n);
  SparseVec th = fr.theta_hat(w);
  DenseVec wb = fr.flat(w);
  DenseVec sing = fr.h_apply_dual(th, wb);  // cubic block, flat coordinates
  Rat p = fr.quartic_eval(w);
  PhiResult res;
  res.coords.push_back(x0 * x0 * x0 * x0);
  for (int i = 0; i < n; ++i) res.coords.push_back(x0 * x0 * x0 * w[i]);
  res.coords.push_back(x0 * x0 * x0 * xn);
  {
    DenseVec q(m, Rat(0));
    for (auto& t : th.terms) q[t.first] = t.second;
    for (int c = 0; c < m; ++c) res.coords.push_back(x0 * x0 * q[c]);
  }
  for (int a2 = 0; a2 < n; ++a2)
    res.coords.push_back(x0 * x0 * xn * wb[a2] -
                         rat(1, 12) * fr.l * x0 * (-sing[a2]));
  res.coords.push_back(x0 * x0 * xn * xn + rat(1, 24) * fr.l * p);
  bool all_zero = true;
  for (auto& c : res.coords)
    if (!is_zero(c)) {
      all_zero = false;
      break;
    }
  res.indeterminate = all_zero;
  return res;
}

// exp(ad X) w vs phi at [1 : u : x], per graded block with fixed factors.
inline bool exp_phi_crosscheck(const AdjointOutput& out, const Rat& x,
                               const DenseVec& u) {
  auto s = orbit_series(out, x, u);
  SparseVec total = SparseVec::unit(out.idx_w());
  Rat fact(1);
  for (int k = 0; k < 5; ++k) {
    fact *= (k + 1);
    axpy(total, 1 / fact, s[k]);
  }
  DenseVec pt;
  pt.push_back(Rat(1));
  for (auto& c : u) pt.push_back(c);
  pt.push_back(x);
  PhiResult phi = evaluate_phi_adjoint(out, pt);
  int n = out.n(), m = out.m();
  DenseVec expv = to_dense(total, out.algebra->dim());
  // block dictionary: (g2, g1, 1, h, g-1, g-2) <-> factors (1, 2, 2, l, 4, 4)
  if (!(expv[out.idx_w()] == phi.coords[0])) return false;
  for (int k = 0; k < n; ++k)
    if (!(expv[out.idx_e(k)] == 2 * phi.coords[1 + k])) return false;
  if (!(expv[out.idx_one()] == 2 * phi.coords[1 + n])) return false;
  for (int c = 0; c < m; ++c)
    if (!(expv[out.idx_h(c)] == out.frame.l * phi.coords[2 + n + c]))
      return false;
  for (int a2 = 0; a2 < n; ++a2)
    if (!(expv[out.idx_f(a2)] == 4 * phi.coords[2 + n + m + a2])) return false;
  if (!(expv[out.idx_wstar()] == 4 * phi.coords[2 + 2 * n + m])) return false;
  return true;
}

// Standard pipeline entry: probe, frame, l, algebra, quartic.
inline std::pair<AdmissibilityDecision, std::optional<AdjointOutput>>
run_adjoint(const Rep& T1, const EngineCaps& caps) {
  AdjointProbe pr = adjoint_probe(T1, caps);
  if (!pr.dec.admissible) return {pr.dec, std::nullopt};
  AdjointFrame fr = extract_symplectic(T1, pr);
  solve_l(fr);
  AdjointOutput out = assemble_adjoint_algebra(std::move(fr), caps);
  quartic_invariant(out, caps);
  return {pr.dec, std::move(out)};
}

// C(m): the standard pipeline on (sp_{2m-2}, standard); the closed orbit is
// empty (tau(Y) = P(T1) convention), the quartic vanishes identically, and
// the output is sp_{2m}.
inline AdjointOutput special_case_C(int m, const EngineCaps& caps) {
  if (m < 2) throw std::invalid_argument("special_case_C: need m >= 2");
  auto [L, std_rep] = make_sp(2 * m - 2);
  auto [dec, out] = run_adjoint(std_rep, caps);
  if (!dec.admissible || !out)
    throw std::runtime_error("special_case_C: pipeline rejected sp input");
  if (!out->p_zero)
    throw std::runtime_error("special_case_C: quartic did not vanish");
  out->algebra->set_label("sp" + std::to_string(2 * m));
  return std::move(*out);
}

// A(k): the adjoint algebra of sl_{k+1}, assembled from the explicit block
// matrix model with T1 = U (+) U* and a two-dimensional center in degree 0.
// Basis scalings are chosen so the bracket table matches the standard one
// (o = a = m = 2, m* = -2, l = 1 folded into theta).
inline AdjointOutput special_case_A(int k, const EngineCaps& caps) {
  if (k < 2) throw std::invalid_argument("special_case_A: need k >= 2");
  int s = k + 1;  // matrix size; output is sl_{k+1}
  int u = k - 1;  // dim U
  auto E = [&](int i, int j, const Rat& c) {
    Matrix mat(s, s);
    mat(i, j) = c;
    return mat;
  };
  std::vector<Matrix> basis;
  basis.push_back(E(s - 1, 0, Rat(-4)));  // w*
  for (int j = 1; j <= u; ++j) basis.push_back(E(j, 0, Rat(-4)));      // f (U side)
  for (int j = 1; j <= u; ++j) basis.push_back(E(s - 1, j, Rat(-4)));  // f (U* side)
  int h_begin = (int)basis.size();
  for (int i = 1; i <= u; ++i)  // h: gl(U) = sl_u + zeta
    for (int j = 1; j <= u; ++j)
      if (i != j) basis.push_back(E(i, j, Rat(1)));
  for (int i = 1; i < u; ++i) {
    Matrix mat(s, s);
    mat(i, i) = 1;
    mat(i + 1, i + 1) = -1;
    basis.push_back(mat);
  }
  {
    Matrix z(s, s);
    z(0, 0) = u;
    z(s - 1, s - 1) = u;
    for (int i = 1; i <= u; ++i) z(i, i) = -2;
    basis.push_back(z);
  }
  int m_h = (int)basis.size() - h_begin;
  {
    Matrix one(s, s);
    one(0, 0) = 2;
    one(s - 1, s - 1) = -2;
    basis.push_back(one);
  }
  for (int j = 1; j <= u; ++j) basis.push_back(E(0, j, Rat(1)));      // e (U)
  for (int j = 1; j <= u; ++j) basis.push_back(E(j, s - 1, Rat(1)));  // e (U*)
  basis.push_back(E(0, s - 1, Rat(1)));  // w

  auto [L, ignored] = matrix_lie_algebra(basis, "sl" + std::to_string(s));
  (void)ignored;
  int n = 2 * u;
  std::vector<int> grades(L->dim(), 0);
  grades[0] = -2;
  for (int a2 = 0; a2 < n; ++a2) grades[1 + a2] = -1;
  for (int a2 = 0; a2 < n; ++a2) grades[2 + n + m_h + a2] = 1;
  grades[L->dim() - 1] = 2;
  L->set_grades(std::move(grades));

  AdjointOutput out;
  out.algebra = L;
  out.graded_dims = {1, n, m_h + 1, n, 1};
  const int f0 = 1, h0 = 1 + n, one_idx = 1 + n + m_h, e0 = 2 + n + m_h,
            w_idx = L->dim() - 1;

  // standalone h = gl(U), its action on T1, and the frame pieces
  std::vector<Matrix> h_mats(basis.begin() + h_begin,
                             basis.begin() + h_begin + m_h);
  auto [H, h_ignored] = matrix_lie_algebra(h_mats, "gl" + std::to_string(u));
  (void)h_ignored;
  H->ideals().clear();
  if (u > 1) {
    LieAlgebra::Ideal ss;
    for (int i = 0; i < m_h - 1; ++i) ss.indices.push_back(i);
    H->ideals().push_back(std::move(ss));
  }
  H->ideals().push_back(LieAlgebra::Ideal{{m_h - 1}, true});
  std::vector<SparseMatrix> t1acts;
  for (int b = 0; b < m_h; ++b) {
    std::vector<SparseVec> cols(n);
    for (int c = 0; c < n; ++c) {
      for (auto& t : L->bracket(h0 + b, e0 + c).terms) {
        if (t.first < e0 || t.first >= e0 + n)
          throw std::logic_error("special_case_A: h does not preserve T1");
        cols[c].push(t.first - e0, t.second);
      }
      cols[c].normalize();
    }
    t1acts.push_back(matrix_from_columns(std::move(cols), n));
  }
  AdjointFrame fr;
  fr.T1 = Rep(H, n, std::move(t1acts), SparseVec::unit(0), "U(+)U*");
  fr.omega = Matrix(n, n);
  for (int j = 0; j < n; ++j)
    for (int kk = j + 1; kk < n; ++kk) {
      const SparseVec& br = L->bracket_upper(e0 + j, e0 + kk);
      Rat c = br.coeff(w_idx);
      fr.omega(j, kk) = c / 2;
      fr.omega(kk, j) = -c / 2;
    }
  Matrix mo = fr.omega;
  mo *= Rat(-1);
  fr.sharp = mo.inverse();
  fr.theta.assign(n, std::vector<SparseVec>(n));
  for (int a2 = 0; a2 < n; ++a2)
    for (int kk = 0; kk < n; ++kk) {
      SparseVec v;
      for (auto& t : L->bracket(f0 + a2, e0 + kk).terms) {
        if (t.first >= h0 && t.first < h0 + m_h) v.push(t.first - h0, t.second);
        else if (t.first == one_idx) {
          if (!(a2 == kk && t.second == Rat(1)))
            throw std::logic_error("special_case_A: pairing not normalized");
        } else
          throw std::logic_error("special_case_A: bracket outside g0");
      }
      v.normalize();
      fr.theta[a2][kk] = std::move(v);
    }
  fr.l = 1;
  out.frame = std::move(fr);

  if (L->dim() <= caps.jacobi_full_cap) {
    out.jacobi = L->verify_jacobi_full();
  } else {
    Rng rng(caps.seed);
    out.jacobi = L->verify_jacobi_sampled(caps.jacobi_samples, rng);
  }
  if (!out.jacobi.ok)
    throw std::logic_error("special_case_A: Jacobi failed");
  out.simple = L->simplicity_probe(10, caps.seed);
  quartic_invariant(out, caps, 32, /*skip_killing_route=*/true);
  return out;
}

// Quadrics cutting out the base locus P(U) u P(U*) for an A-series output.
inline Subspace a_series_base_quadrics(const AdjointOutput& out) {
  int n = out.n();
  int u = n / 2;
  TensorIndex s2 = TensorIndex::sym(n, 2);
  Subspace q((int)s2.dim());
  for (int i = 0; i < u; ++i)
    for (int j = 0; j < u; ++j)
      q.insert(SparseVec::unit((int)s2.rank({std::min(i, u + j), std::max(i, u + j)})));
  return q;
}

}  // namespace lieforge
