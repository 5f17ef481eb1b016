#pragma once

#include "lieforge/orbit_ideals.hpp"

namespace lieforge {

struct EngineCaps {
  long long wedge_crosscheck_cap = 1600;  // tangent-span cross-check limit
  long long spectrum_report_cap = 700;    // materialize Casimir for reports
  long long jacobi_full_cap = 150;        // exhaustive Jacobi up to this dim
  long long jacobi_samples = 100000;
  long long prolong_work_cap = 1500;      // candidate unknowns per ladder level
  std::uint64_t seed = 20240901;
};

struct AdmissibilityDecision {
  bool admissible = false;
  CasimirReport report;
  std::string reason;
  std::optional<long long> tangent_span_dim;
};

struct ThetaMap {
  // theta[l][k]: semisimple component of the bracket [e_l*, e_k], as a
  // sparse vector over the input algebra's basis
  std::vector<std::vector<SparseVec>> t;
  Rat scale = 0;      // the unique coefficient making the Jacobi identity hold
  Rat homothety = 0;  // lambda with C_{wedge^2 T} - 2 c_T = lambda Id
  Rat c_module = 0;   // Casimir scalar of T itself
};

struct IdealLadder {
  std::vector<Subspace> pieces;  // V_0 .. V_d inside S^j T
  int degree = 0;
  long long total = 0;
  bool capped = false;
  int capped_at = -1;

  std::vector<long long> dims() const {
    std::vector<long long> d;
    for (auto& p : pieces) d.push_back(p.dim());
    return d;
  }
};

// Admissibility: the Casimir on wedge^2 T is a homothety (and the induced
// theta scale exists). Cross-checked against linear fullness of the span
// of tangent lines when the wedge dimension is within the cap.
inline AdmissibilityDecision minuscule_admissible(const Rep& T,
                                                  const EngineCaps& caps) {
  AdmissibilityDecision dec;
  const LieAlgebra& h = T.algebra();
  int n = T.dim();
  TensorIndex w2 = TensorIndex::wedge(n, 2);
  dec.report.module_label = "L2(" + T.label() + ")";
  dec.report.module_dim = w2.dim();

  if (n == 1) {
    dec.admissible = h.semisimple_indices().empty();
    dec.report.scalar = Rat(0);
    dec.reason = dec.admissible ? "trivial wedge square" : "degenerate input";
    return dec;
  }
  if (h.semisimple_indices().empty()) {
    dec.admissible = false;
    dec.reason = "no semisimple part";
    return dec;
  }

  DualStructure ds = dual_structure(h, h.killing());
  Applier w2act = wedge2_applier(T, w2);
  auto lambda = casimir_homothety(ds, w2act, (int)w2.dim());

  auto c_T = casimir_homothety(ds, rep_applier(T), n);
  if (!c_T)
    throw std::runtime_error("minuscule_admissible: input module not C-irreducible");

  if (lambda) {
    dec.report.scalar = *lambda;
    dec.report.spectrum = {{*lambda, w2.dim()}};
    Rat theta_scalar = *lambda - 2 * (*c_T);
    if (is_zero(theta_scalar)) {
      dec.admissible = false;
      dec.reason = "theta homothety vanishes";
    } else {
      dec.admissible = true;
    }
  } else {
    dec.admissible = false;
    dec.reason = "wedge square Casimir is not a homothety";
    if (w2.dim() <= caps.spectrum_report_cap) {
      Matrix M = casimir_matrix(ds, w2act, (int)w2.dim());
      dec.report.spectrum = two_eigenvalue_split(M);
    }
  }

  if (w2.dim() <= caps.wedge_crosscheck_cap) {
    Subspace span = tangent_line_span(T);
    dec.tangent_span_dim = span.dim();
    bool full = span.is_full();
    if (full != dec.admissible)
      throw std::logic_error(
          "minuscule_admissible: Casimir and tangent-span tests disagree on " +
          T.label());
  }
  return dec;
}

// theta(u* (x) v) = sum_i <u*, x_i v> y_i over dual bases of the Killing
// form, with the unique rescaling that satisfies the Jacobi identity
//   scale * [theta(u*(x)v) w - theta(u*(x)w) v] = <u*,w> v - <u*,v> w.
inline ThetaMap build_theta(const Rep& T) {
  const LieAlgebra& h = T.algebra();
  int n = T.dim();
  ThetaMap th;
  th.t.assign(n, std::vector<SparseVec>(n));
  if (h.semisimple_indices().empty()) {
    if (n != 1) throw std::runtime_error("build_theta: no theta scale exists");
    th.scale = 0;
    return th;
  }
  DualStructure ds = dual_structure(h, h.killing());
  for (int a = 0; a < (int)ds.idx.size(); ++a) {
    SparseVec dual = ds.dual_element(a);
    const auto& cols = T.action_columns(ds.idx[a]);
    for (int k = 0; k < n; ++k)
      for (auto& e : cols[k].terms) axpy(th.t[e.first][k], e.second, dual);
  }
  auto c_T = casimir_homothety(ds, rep_applier(T), n);
  TensorIndex w2 = TensorIndex::wedge(n, 2);
  auto lam = casimir_homothety(ds, wedge2_applier(T, w2), (int)w2.dim());
  if (!c_T || !lam) throw std::runtime_error("build_theta: inadmissible input");
  th.homothety = *lam - 2 * (*c_T);
  th.c_module = *c_T;

  auto theta_side = [&](int l, int j, int k) {
    // theta[l][j] e_k - theta[l][k] e_j
    SparseVec r;
    for (auto& a : th.t[l][j].terms)
      axpy(r, a.second, T.action_columns(a.first)[k]);
    for (auto& a : th.t[l][k].terms)
      axpy(r, -a.second, T.action_columns(a.first)[j]);
    return r;
  };
  auto pairing_side = [&](int l, int j, int k) {
    SparseVec r;
    if (l == k) r.push(j, Rat(1));
    if (l == j) r.push(k, Rat(-1));
    r.normalize();
    return r;
  };

  bool solved = false;
  for (int l = 0; l < n && !solved; ++l)
    for (int j = 0; j < n && !solved; ++j)
      for (int k = 0; k < n && !solved; ++k) {
        SparseVec ts = theta_side(l, j, k);
        if (ts.empty()) continue;
        SparseVec ps = pairing_side(l, j, k);
        if (ps.empty()) throw std::runtime_error("build_theta: no theta scale exists");
        th.scale = ps.terms[0].second / ts.coeff(ps.terms[0].first);
        solved = true;
      }
  if (!solved) throw std::runtime_error("build_theta: theta vanishes identically");
  if (th.scale * th.homothety != Rat(-2))
    throw std::logic_error("build_theta: scale inconsistent with Casimir homothety");
  for (int l = 0; l < n; ++l)
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        SparseVec ts = theta_side(l, j, k);
        ts *= th.scale;
        axpy(ts, Rat(-1), pairing_side(l, j, k));
        if (!ts.empty())
          throw std::logic_error("build_theta: Jacobi identity fails globally");
      }
  return th;
}

// g = T* (+) (h (+) C) (+) T with basis blocks in that order; the center
// acts by -1, 0, +1 on the graded parts.
inline std::shared_ptr<LieAlgebra> assemble_algebra(const Rep& T,
                                                    const ThetaMap& th) {
  const LieAlgebra& h = T.algebra();
  int n = T.dim(), m = h.dim();
  int off_h = n, c_idx = n + m, off_T = n + m + 1;
  auto g = std::make_shared<LieAlgebra>(2 * n + m + 1,
                                        "g(" + T.label() + ")");
  // [h,h]
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      SparseVec v;
      for (auto& t : h.bracket_upper(a, b).terms) v.push(t.first + off_h, t.second);
      g->set_bracket(off_h + a, off_h + b, std::move(v));
    }
  // [h, T] and [h, T*]
  for (int a = 0; a < m; ++a) {
    for (int k = 0; k < n; ++k) {
      SparseVec v;
      for (auto& t : T.action_columns(a)[k].terms) v.push(t.first + off_T, t.second);
      v.normalize();
      g->set_bracket(off_h + a, off_T + k, std::move(v));
      SparseVec w;
      for (auto& t : T.dual_action_columns(a)[k].terms) w.push(t.first, t.second);
      w.normalize();
      g->set_bracket(off_h + a, k, std::move(w));
    }
  }
  // center
  for (int k = 0; k < n; ++k) {
    g->set_bracket(c_idx, off_T + k, SparseVec::unit(off_T + k));
    SparseVec mu = SparseVec::unit(k);
    mu *= Rat(-1);
    g->set_bracket(c_idx, k, std::move(mu));
  }
  // [T*, T]
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k) {
      SparseVec v;
      if (l == k) v.push(c_idx, Rat(1));
      for (auto& t : th.t[l][k].terms) v.push(t.first + off_h, th.scale * t.second);
      v.normalize();
      g->set_bracket(l, off_T + k, std::move(v));
    }
  std::vector<int> grades(2 * n + m + 1, 0);
  for (int l = 0; l < n; ++l) grades[l] = -1;
  for (int k = 0; k < n; ++k) grades[off_T + k] = 1;
  g->set_grades(std::move(grades));
  g->set_single_simple_ideal();
  return g;
}

// V_2 = degree-2 part of the ideal of the closed orbit in P(T*); then
// V_k = { p in T * V_{k-1} : every d/dx_j p lies in V_{k-1} }.
inline IdealLadder prolong_ladder(const Rep& T, const EngineCaps& caps) {
  int n = T.dim();
  IdealLadder lad;
  Subspace v0(1);
  v0.insert(SparseVec::unit(0));
  lad.pieces.push_back(std::move(v0));
  lad.pieces.push_back(Subspace::full(n));

  // V_2 via the Cartan component on the dual side
  {
    TensorIndex s2 = TensorIndex::sym(n, 2);
    if (T.extreme().terms.size() != 1)
      throw std::runtime_error("prolong_ladder: extreme not a basis line");
    int k = T.extreme().terms[0].first;
    SparseVec vv = SparseVec::unit((int)s2.rank({k, k}));
    Applier act = sym_dual_applier(T, s2);
    Applier trans = sym_transpose_applier(T, s2, true);
    Subspace cartan = span_closure_fn(act, T.algebra_dim(), {vv},
                                      (int)s2.dim(), &trans, 192);
    Subspace v2 = dual_coords_to_polynomials(cartan.annihilator(), s2);
    if (v2.dim() == 0) {
      lad.degree = 1;
    } else {
      lad.pieces.push_back(std::move(v2));
    }
  }

  while (lad.degree == 0) {
    int k = (int)lad.pieces.size();
    if (k > 16)
      throw std::runtime_error("prolong_ladder: no termination before degree 16");
    const Subspace& prev = lad.pieces[k - 1];
    long long work = (long long)n * prev.dim();
    if (work > caps.prolong_work_cap) {
      lad.capped = true;
      lad.capped_at = k;
      break;
    }
    TensorIndex idx_k = TensorIndex::sym(n, k);
    TensorIndex idx_km1 = TensorIndex::sym(n, k - 1);
    // candidate span W = T * V_{k-1}
    Subspace W((int)idx_k.dim());
    for (auto& row : prev.basis())
      for (int i = 0; i < n; ++i) W.insert(sym_mul_var(idx_km1, idx_k, row, i));
    // constraints: for every j, d/dx_j p == 0 mod V_{k-1}
    Subspace constraints(W.dim());
    for (int j = 0; j < n; ++j) {
      std::map<int, SparseVec> rows;
      for (int t = 0; t < W.dim(); ++t) {
        SparseVec res = prev.reduce(sym_diff(idx_k, idx_km1, W.basis()[t], j));
        for (auto& e : res.terms) rows[e.first].push(t, e.second);
      }
      for (auto& [coord, row] : rows) {
        SparseVec r = row;
        r.normalize();
        constraints.insert(std::move(r));
      }
    }
    Subspace sols = constraints.annihilator();
    Subspace vk((int)idx_k.dim());
    for (auto& coeff : sols.basis()) {
      SparseVec v;
      for (auto& t : coeff.terms) axpy(v, t.second, W.basis()[t.first]);
      vk.insert(std::move(v));
    }
    if (vk.dim() == 0) {
      lad.degree = k - 1;
      break;
    }
    lad.pieces.push_back(std::move(vk));
  }
  if (lad.degree == 0 && !lad.capped) lad.degree = (int)lad.pieces.size() - 1;
  if (lad.capped) lad.degree = (int)lad.pieces.size() - 1;
  lad.total = 0;
  for (auto& p : lad.pieces) lad.total += p.dim();
  return lad;
}

// Action of the assembled algebra on V = (+) V_j. The semisimple part acts
// by derivation, the center by j - d/2 on V_j, T* by differentiation, and
// T level-by-level as the unique solution of the commutation constraints.
inline Rep build_module_action(std::shared_ptr<const LieAlgebra> g,
                               const Rep& T, const IdealLadder& lad,
                               const ThetaMap& th) {
  if (lad.capped)
    throw std::runtime_error("build_module_action: ladder was capped");
  int n = T.dim(), m = T.algebra().dim();
  int d = lad.degree;
  int levels = (int)lad.pieces.size();
  std::vector<int> off(levels + 1, 0);
  for (int j = 0; j < levels; ++j) off[j + 1] = off[j] + lad.pieces[j].dim();
  int N = off[levels];
  std::vector<TensorIndex> idx;
  for (int j = 0; j < levels; ++j) idx.push_back(TensorIndex::sym(n, j));

  auto level_coords = [&](int j, const SparseVec& ambient) {
    auto c = lad.pieces[j].coordinates(ambient);
    if (!c)
      throw std::runtime_error("build_module_action: vector escapes ladder piece");
    return *c;
  };
  auto gamma = [&](int j) { return Rat(2 * j - d, 2); };

  std::vector<std::vector<SparseVec>> cols(g->dim(),
                                           std::vector<SparseVec>(N));
  // T*: differentiation, lowering V_j -> V_{j-1}
  for (int l = 0; l < n; ++l)
    for (int j = 1; j < levels; ++j)
      for (int a = 0; a < lad.pieces[j].dim(); ++a) {
        SparseVec der = sym_diff(idx[j], idx[j - 1], lad.pieces[j].basis()[a], l);
        if (der.empty()) continue;
        DenseVec c = level_coords(j - 1, der);
        SparseVec& col = cols[l][off[j] + a];
        for (int t = 0; t < (int)c.size(); ++t) col.push(off[j - 1] + t, c[t]);
        col.normalize();
      }
  // h: derivation action level by level
  for (int b = 0; b < m; ++b)
    for (int j = 0; j < levels; ++j)
      for (int a = 0; a < lad.pieces[j].dim(); ++a) {
        SparseVec w = sym_derivation(idx[j], T.action_columns(b),
                                     lad.pieces[j].basis()[a]);
        if (w.empty()) continue;
        DenseVec c = level_coords(j, w);
        SparseVec& col = cols[n + b][off[j] + a];
        for (int t = 0; t < (int)c.size(); ++t) col.push(off[j] + t, c[t]);
        col.normalize();
      }
  // center
  for (int j = 0; j < levels; ++j)
    for (int a = 0; a < lad.pieces[j].dim(); ++a)
      cols[n + m][off[j] + a].push(off[j] + a, gamma(j));
  // T: raising, solved level by level from [rho(u*), rho(w_k)] = rho([u*,w_k])
  // ambient images of level-j basis vectors under rho(e_k), per level
  std::vector<std::vector<std::vector<SparseVec>>> amb(
      n, std::vector<std::vector<SparseVec>>(levels));
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < levels; ++j) {
      int rj = lad.pieces[j].dim();
      amb[k][j].resize(rj);
      for (int a = 0; a < rj; ++a) {
        const SparseVec& b = lad.pieces[j].basis()[a];
        // prescribed partials g_l of the image
        std::vector<SparseVec> gl(n);
        for (int l = 0; l < n; ++l) {
          SparseVec acc;
          if (j > 0) {
            SparseVec der = sym_diff(idx[j], idx[j - 1], b, l);
            if (!der.empty()) {
              DenseVec c = level_coords(j - 1, der);
              for (int t = 0; t < (int)c.size(); ++t)
                if (!is_zero(c[t])) axpy(acc, c[t], amb[k][j - 1][t]);
            }
          }
          if (l == k) axpy(acc, gamma(j), b);
          for (auto& e : th.t[l][k].terms)
            axpy(acc, th.scale * e.second,
                 sym_derivation(idx[j], T.action_columns(e.first), b));
          gl[l] = std::move(acc);
        }
        if (j == levels - 1) {
          for (int l = 0; l < n; ++l)
            if (!gl[l].empty())
              throw std::runtime_error(
                  "build_module_action: raising action not well defined at top");
          continue;
        }
        SparseVec q;
        for (int l = 0; l < n; ++l)
          if (!gl[l].empty()) axpy(q, rat(1, j + 1), sym_mul_var(idx[j], idx[j + 1], gl[l], l));
        for (int l = 0; l < n; ++l) {
          SparseVec check = sym_diff(idx[j + 1], idx[j], q, l);
          axpy(check, Rat(-1), gl[l]);
          if (!check.empty())
            throw std::runtime_error(
                "build_module_action: raising action not well defined");
        }
        if (!lad.pieces[j + 1].contains(q))
          throw std::runtime_error(
              "build_module_action: raising image escapes the ladder");
        amb[k][j][a] = std::move(q);
      }
    }
    // convert ambient images into module columns
    for (int j = 0; j + 1 < levels; ++j)
      for (int a = 0; a < lad.pieces[j].dim(); ++a) {
        if (amb[k][j][a].empty()) continue;
        DenseVec c = level_coords(j + 1, amb[k][j][a]);
        SparseVec& col = cols[n + m + 1 + k][off[j] + a];
        for (int t = 0; t < (int)c.size(); ++t) col.push(off[j + 1] + t, c[t]);
        col.normalize();
      }
  }

  std::vector<SparseMatrix> acts;
  acts.reserve(g->dim());
  for (int gi = 0; gi < g->dim(); ++gi)
    acts.push_back(matrix_from_columns(std::move(cols[gi]), N));
  Rep module(std::move(g), N, std::move(acts), SparseVec::unit(0),
             "V(" + T.label() + ")");
  if (!module.homomorphism_check())
    throw std::logic_error("build_module_action: homomorphism check failed");
  return module;
}

struct PhiResult {
  bool indeterminate = false;
  DenseVec coords;
};

// Ladder of ideals on the primal side: pieces in S^j T* vanishing on the
// secant varieties of the closed orbit in P(T). This is the prolongation
// ladder of the dual module.
inline IdealLadder ideal_ladder(const Rep& T, const EngineCaps& caps) {
  Rep dual = dual_rep(T);
  return prolong_ladder(dual, caps);
}

// phi([x0 : t]) = [x0^d, x0^{d-1} t_i, x0^{d-j} q(t)] over the ideal ladder.
inline PhiResult evaluate_phi(const IdealLadder& ideals, const DenseVec& point) {
  if (ideals.capped)
    throw std::runtime_error("evaluate_phi: ladder was capped");
  int d = ideals.degree;
  int n = ideals.pieces.size() > 1 ? ideals.pieces[1].ambient_dim() : 0;
  if ((int)point.size() != n + 1)
    throw std::invalid_argument("evaluate_phi: point has wrong length");
  Rat x0 = point[0];
  DenseVec t(point.begin() + 1, point.end());
  PhiResult res;
  auto x0pow = [&](int e) {
    Rat p(1);
    for (int i = 0; i < e; ++i) p *= x0;
    return p;
  };
  res.coords.push_back(x0pow(d));
  for (int i = 0; i < n; ++i) res.coords.push_back(x0pow(d - 1) * t[i]);
  for (int j = 2; j < (int)ideals.pieces.size(); ++j) {
    TensorIndex idx = TensorIndex::sym(n, j);
    for (auto& q : ideals.pieces[j].basis())
      res.coords.push_back(x0pow(d - j) * sym_eval(idx, q, t));
  }
  bool all_zero = true;
  for (auto& c : res.coords)
    if (!is_zero(c)) {
      all_zero = false;
      break;
    }
  res.indeterminate = all_zero;
  return res;
}

struct MinusculeOutput {
  std::shared_ptr<LieAlgebra> algebra;
  std::optional<Rep> module;
  IdealLadder ladder;
  ThetaMap theta;
  JacobiCertificate jacobi;
  bool simple = false;
};

// Full pipeline on an admissible input; throws on internal inconsistency.
inline MinusculeOutput run_minuscule(const Rep& T, const EngineCaps& caps) {
  MinusculeOutput out;
  out.theta = build_theta(T);
  out.algebra = assemble_algebra(T, out.theta);
  if (out.algebra->dim() <= caps.jacobi_full_cap) {
    out.jacobi = out.algebra->verify_jacobi_full();
  } else {
    Rng rng(caps.seed);
    out.jacobi = out.algebra->verify_jacobi_sampled(caps.jacobi_samples, rng);
  }
  if (!out.jacobi.ok)
    throw std::logic_error("run_minuscule: Jacobi identity failed for " +
                           out.algebra->label());
  out.simple = out.algebra->simplicity_probe(10, caps.seed);
  out.ladder = prolong_ladder(T, caps);
  if (!out.ladder.capped)
    out.module = build_module_action(out.algebra, T, out.ladder, out.theta);
  return out;
}

}  // namespace lieforge
