#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "seminf/complexes.hpp"
#include "seminf/module.hpp"
#include "seminf/qgroup.hpp"

namespace seminf {
namespace detail {

/// Expresses each map in `targets` in the given basis of an intertwiner
/// space. Throws if some target is outside the span.
inline std::vector<SparseRow> coords_in_basis(const std::vector<GradedMap>& basis,
                                              const std::vector<GradedMap>& targets, int p) {
  std::map<Weight, std::pair<int, int>> shape;  // weight -> (rows, cols)
  auto note = [&](const GradedMap& f) {
    for (const auto& [w, b] : f.blocks) shape[w] = {b.nrows(), b.ncols()};
  };
  for (const auto& f : basis) note(f);
  for (const auto& f : targets) note(f);
  std::map<Weight, int> offset;
  int nvars = 0;
  for (const auto& [w, sh] : shape) {
    offset[w] = nvars;
    nvars += sh.first * sh.second;
  }
  auto flatten = [&](const GradedMap& f, SparseMat& into, int col) {
    for (const auto& [w, b] : f.blocks) {
      int off = offset.at(w), nc = shape.at(w).second;
      for (int r = 0; r < b.nrows(); ++r)
        for (const auto& [c, v] : b.row(r)) into.add(off + r * nc + c, col, v);
    }
  };
  SparseMat B(nvars, (int)basis.size()), T(nvars, (int)targets.size());
  for (int j = 0; j < (int)basis.size(); ++j) flatten(basis[j], B, j);
  for (int j = 0; j < (int)targets.size(); ++j) flatten(targets[j], T, j);
  if (T.is_zero()) return std::vector<SparseRow>(targets.size());
  auto sol = B.solve(T);
  if (!sol) throw std::logic_error("coords_in_basis: target escapes the span");
  std::vector<SparseRow> out(targets.size());
  for (int r = 0; r < sol->nrows(); ++r)
    for (const auto& [j, v] : sol->row(r)) out[j][r] = v;
  return out;
}

inline GradedMap scale_map(GradedMap f, const Cyclo& s) {
  for (auto& [w, b] : f.blocks) b = b.scale(s);
  return f;
}

/// Height interval of the support of a graded module; false when empty.
inline bool height_range(const GradedModule& M, Rat& lo, Rat& hi) {
  bool first = true;
  for (const auto& [w, d] : M.dims) {
    Rat h = w.height();
    if (first || h < lo) lo = h;
    if (first || hi < h) hi = h;
    first = false;
  }
  return !first;
}

/// Maximum height step of a single generator action.
inline Rat max_gen_step(const PBWAlgebra& A) {
  Rat s(0);
  for (const auto& g : A.gens) {
    Rat h = g.degree.height();
    if (h < Rat(0)) h = -h;
    if (s < h) s = h;
  }
  return s;
}

/// Basis of the degree-gamma intertwiners X -> R where R is the coinduction
/// of the character at lam. Such a map is determined by its top component,
/// a functional phi on X_{lam - gamma} that kills every F_i-translate and is
/// K-equivariant; the remaining components are phi(n . x) over the raising
/// monomials n indexing the coinduced basis. This avoids solving the full
/// intertwiner system on large bar terms.
inline std::vector<GradedMap> cofree_cell(const GradedModule& X, const Weight& lam,
                                          const Weight& gamma, const GradedModule& R) {
  const QuantumGroup& U = *X.U;
  const PBWAlgebra& A = U.A;
  std::vector<GradedMap> out;
  Weight wx = lam - gamma;
  int dx = X.dim(wx);
  if (!dx) return out;
  // K-equivariance: the K_i-scalar on X_{lam-gamma} must equal the one on the
  // character, i.e. zeta^{(alpha_i|gamma)} = 1 for every i
  for (int i = 0; i < U.rd.rank; ++i) {
    Rat e = U.rd.bilinear(simple_root(U.rd.rank, i), gamma);
    if (e.get_den() != 1) return out;
    if (!(U.q(e.get_num().get_si()) - Cyclo::one(U.p)).is_zero()) return out;
  }
  // functionals on X_{wx} annihilating each F_i X_{wx + alpha_i}
  std::vector<SparseRow> eqs;
  for (int g : U.minus_part()) {
    Weight src = wx - A.gens[g].degree;
    if (!X.dim(src)) continue;
    SparseMat Bt = X.block(g, src).transpose();
    for (int c = 0; c < Bt.nrows(); ++c)
      if (!Bt.row(c).empty()) eqs.push_back(Bt.row(c));
  }
  std::vector<SparseRow> phis;
  if (eqs.empty()) {
    for (int r = 0; r < dx; ++r) {
      SparseRow e;
      e[r] = Cyclo::one(U.p);
      phis.push_back(std::move(e));
    }
  } else {
    SparseMat C((int)eqs.size(), dx);
    for (int r = 0; r < (int)eqs.size(); ++r)
      for (const auto& [c, v] : eqs[r]) C.add(r, c, v);
    phis = C.kernel_basis(U.p);
  }
  if (phis.empty()) return out;
  std::map<Weight, std::vector<Mono>> layout;
  coinduced_module(U, lam, &layout);
  for (const auto& phi : phis) {
    GradedMap f;
    f.gamma = gamma;
    for (const auto& [rw, monos] : layout) {
      Weight w = rw - gamma;
      int cols = X.dim(w);
      if (!cols) continue;
      SparseMat b(R.dim(rw), cols);
      for (int r = 0; r < (int)monos.size(); ++r) {
        SparseMat blk = X.word_block(PBWAlgebra::mono_to_word(monos[r]), w);
        for (const auto& [ri, pv] : phi)
          for (const auto& [c, bv] : blk.row(ri)) b.add(r, c, pv * bv);
      }
      if (!b.is_zero()) f.blocks[w] = std::move(b);
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace detail

/// Dimensions, per cohomological degree, of the homology of the complex
/// Hom(Bar(L), R)_gamma, where Bar(L) is the relative bar resolution of L
/// described by ctx and R is a complex in degrees <= 0.
///
/// The cell in bidegree (n, m) is the space of degree-gamma intertwiners
/// Bar^{-n}(L) -> R^{-m}, contributing to total degree n - m; the
/// differential is (d_R o f) - (-1)^{n-m} (f o d_Bar). Bar terms are
/// materialized only on the window of weights where some cell can be
/// nonzero (plus a one-step halo), which keeps every cell finite.
///
/// When R is a truncated resolution, the deepest term must already be out
/// of range for every requested degree; otherwise this throws (pass
/// allow_shallow for right sides that are complete complexes on their own).
inline std::map<int, int> ext_relative(const BarContext& ctx, const GradedModule& L,
                                       const ChainComplex& R, const Weight& gamma, int dmin,
                                       int dmax, bool allow_shallow = false) {
  const int p = ctx.U->p;
  Rat Llo, Lhi;
  if (!detail::height_range(L, Llo, Lhi)) return {};
  std::map<int, std::pair<Rat, Rat>> yrange;
  for (const auto& [deg, term] : R.term) {
    Rat lo, hi;
    if (detail::height_range(term, lo, hi)) yrange[-deg] = {lo, hi};
  }
  Rat hg = gamma.height();
  auto xlo = [&](int n) -> Rat { return ctx.head_lo + Rat(n) * ctx.bar_lo + Llo; };
  auto xhi = [&](int n) -> Rat { return ctx.head_hi + Rat(n) * ctx.bar_hi + Lhi; };
  // active cells and, per bar column, the hull of its cell weight windows
  std::map<std::pair<int, int>, bool> active;
  std::map<int, std::pair<Rat, Rat>> win;
  int nmax = -1, mdeep = 0;
  for (const auto& [m, yr] : yrange) {
    mdeep = std::max(mdeep, m);
    for (int d = dmin - 1; d <= dmax + 1; ++d) {
      int n = m + d;
      if (n < 0 || (n > 0 && ctx.nbar.empty())) continue;
      Rat lo = std::max(xlo(n), Rat(yr.first - hg));
      Rat hi = std::min(xhi(n), Rat(yr.second - hg));
      if (hi < lo) continue;
      active[{n, m}] = true;
      nmax = std::max(nmax, n);
      auto it = win.find(n);
      if (it == win.end()) {
        win[n] = {lo, hi};
      } else {
        if (lo < it->second.first) it->second.first = lo;
        if (it->second.second < hi) it->second.second = hi;
      }
    }
  }
  std::map<int, int> hdims;
  for (int d = dmin; d <= dmax; ++d) hdims[d] = 0;
  if (nmax < 0) return hdims;
  if (!allow_shallow)
    for (int d = dmin - 1; d <= dmax + 1; ++d)
      if (active.count({mdeep + d, mdeep}))
        throw std::length_error("ext_relative: right complex too shallow");
  Rat step = detail::max_gen_step(ctx.U->A);
  // bar terms on their own windows; the differential may legitimately leave
  // a narrower destination window (those components pair to zero against
  // every cell of the destination column)
  WordBlockCache wbc(L);
  std::map<int, BarTerm> xterm;
  for (const auto& [n, w] : win)
    xterm[n] = bar_term(ctx, L, n, w.first - step, w.second + step, &wbc);
  ChainComplex X;
  for (auto it = xterm.begin(); it != xterm.end(); ++it) {
    auto nx = std::next(it);
    if (nx != xterm.end() && nx->first == it->first + 1)
      X.diff[-nx->first] =
          bar_diff(ctx, L, nx->second, it->second, &wbc, /*allow_truncation=*/true);
  }
  for (auto& [n, T] : xterm) X.term[-n] = std::move(T.mod);
  // cell bases (adjunction shortcut for coinduced right-hand terms)
  std::map<std::pair<int, int>, std::vector<GradedMap>> cells;
  for (const auto& [nm, on] : active) {
    auto cf = R.cofree.find(-nm.second);
    if (cf != R.cofree.end())
      cells[nm] =
          detail::cofree_cell(X.term[-nm.first], cf->second, gamma, R.term.at(-nm.second));
    else
      cells[nm] = hom_space(X.term[-nm.first], R.term.at(-nm.second), gamma);
  }
  // per-degree layout
  auto layout = [&](int d, std::map<std::pair<int, int>, int>& off) {
    int total = 0;
    for (const auto& [nm, basis] : cells)
      if (nm.first - nm.second == d) {
        off[nm] = total;
        total += (int)basis.size();
      }
    return total;
  };
  std::map<int, int> rank_of_D;
  for (int d = dmin - 1; d <= dmax; ++d) {
    std::map<std::pair<int, int>, int> src_off, dst_off;
    int ncols = layout(d, src_off), nrows = layout(d + 1, dst_off);
    SparseMat D(nrows, ncols);
    Cyclo sgn = (d % 2 == 0) ? -Cyclo::one(p) : Cyclo::one(p);
    for (const auto& [nm, basis] : cells) {
      if (nm.first - nm.second != d || basis.empty()) continue;
      auto [n, m] = nm;
      auto scatter = [&](std::pair<int, int> target, const std::vector<GradedMap>& images) {
        auto it = cells.find(target);
        if (it == cells.end()) {
          for (const auto& g : images)
            if (!g.blocks.empty())
              throw std::logic_error("ext_relative: differential hits an inactive cell");
          return;
        }
        auto coords = detail::coords_in_basis(it->second, images, p);
        int roff = dst_off.at(target), coff = src_off.at(nm);
        for (int j = 0; j < (int)coords.size(); ++j)
          for (const auto& [r, v] : coords[j]) D.add(roff + r, coff + j, v);
      };
      if (m >= 1 && R.diff.count(-m)) {
        std::vector<GradedMap> images;
        for (const auto& f : basis)
          images.push_back(
              compose(R.diff.at(-m), f, X.term.at(-n), R.term.at(-m), R.term.at(-m + 1)));
        scatter({n, m - 1}, images);
      }
      if (X.diff.count(-n - 1)) {
        std::vector<GradedMap> images;
        for (const auto& f : basis)
          images.push_back(detail::scale_map(
              compose(f, X.diff.at(-n - 1), X.term.at(-n - 1), X.term.at(-n), R.term.at(-m)),
              sgn));
        scatter({n + 1, m}, images);
      }
    }
    rank_of_D[d] = D.rank();
  }
  for (int d = dmin; d <= dmax; ++d) {
    int dim = 0;
    for (const auto& [nm, basis] : cells)
      if (nm.first - nm.second == d) dim += (int)basis.size();
    hdims[d] = dim - rank_of_D.at(d) - rank_of_D.at(d - 1);
  }
  return hdims;
}

/// Semiinfinite Ext of (L, head of R) in internal degree gamma, degrees
/// dmin..dmax, with the left argument resolved by the bar resolution over
/// the upper Borel.
inline std::map<int, int> ext_seminf(const QuantumGroup& U, const GradedModule& L,
                                     const ChainComplex& R, const Weight& gamma, int dmin,
                                     int dmax, bool allow_shallow = false) {
  BarContext ctx(U, U.minus_part(), U.borel_plus(), U.A.all_gen_indices());
  return ext_relative(ctx, L, R, gamma, dmin, dmax, allow_shallow);
}

/// Semiinfinite Ext of (L, k<gamma>) against the Verma-headed resolution of
/// the trivial module (rank one only); depth chosen from the support of L.
inline std::map<int, int> ext_seminf_verma(const QuantumGroup& U, const GradedModule& L,
                                           const Weight& gamma, int dmin, int dmax) {
  Rat lo, hi;
  if (!detail::height_range(L, lo, hi)) return {};
  Rat top = hi - gamma.height();
  long bound = top < Rat(0) ? 0 : (long)(mpz_class(top.get_num() / top.get_den()).get_si());
  int depth = (int)(2 * (bound / U.p + 2)) + std::max(0, dmax) - std::min(0, dmin);
  return ext_seminf(U, L, verma_headed_resolution(U, depth), gamma, dmin, dmax);
}

/// Degree-zero semiinfinite Tor of (k, M) in internal degree zero, computed
/// through the comparison with Ext against the trivial module.
inline int tor_seminf_deg0(const QuantumGroup& U, const GradedModule& M) {
  return ext_seminf_verma(U, M, Weight(U.rd.rank), 0, 0).at(0);
}

/// Ext over the lower Borel of (k, k_mu<gamma>), via the bar resolution of k
/// relative to the Cartan subalgebra. Degrees here are >= 0.
inline std::map<int, int> ext_graded_borel(const QuantumGroup& U, const Weight& mu,
                                           const Weight& gamma, int dmin, int dmax) {
  BarContext ctx(U, U.minus_part(), U.zero_part(), U.borel_minus());
  GradedModule kk = trivial_module(U, Weight(U.rd.rank), U.borel_minus());
  GradedModule km = trivial_module(U, mu, U.borel_minus());
  return ext_relative(ctx, kk, single_term_complex(std::move(km)), gamma, dmin, dmax,
                      /*allow_shallow=*/true);
}

/// First page of the spectral sequence of the standard complex filtered by
/// the bar degree of the left argument: for each fixed column n, the
/// homology of the cells Hom(Bar^{-n}(L), R^{-m})_gamma along m. Keys are
/// (n, m); values are dimensions.
inline std::map<std::pair<int, int>, int> spectral_e1_columns(const BarContext& ctx,
                                                              const GradedModule& L,
                                                              const ChainComplex& R,
                                                              const Weight& gamma, int nmax,
                                                              int mmax) {
  if ((int)R.depth() < mmax + 1)
    throw std::invalid_argument("spectral_e1_columns: right complex too shallow");
  Rat wlo(0), whi(0);
  bool any = false;
  Rat hg = gamma.height();
  for (const auto& [deg, term] : R.term) {
    Rat lo, hi;
    if (!detail::height_range(term, lo, hi)) continue;
    if (!any || lo - hg < wlo) wlo = lo - hg;
    if (!any || whi < hi - hg) whi = hi - hg;
    any = true;
  }
  if (!any) return {};
  Rat step = detail::max_gen_step(ctx.U->A);
  ChainComplex X = bar_family(ctx, L, nmax, wlo - step, whi + step);
  std::map<std::pair<int, int>, int> out;
  for (int n = 0; n <= nmax; ++n) {
    std::map<int, std::vector<GradedMap>> col;
    for (int m = 0; m <= mmax + 1; ++m)
      col[m] = hom_space(X.term.at(-n), R.term.at(-m), gamma);
    std::map<int, int> rk;  // rank of C^{n,m} -> C^{n,m-1}
    rk[0] = 0;
    for (int m = 1; m <= mmax + 1; ++m) {
      std::vector<GradedMap> images;
      for (const auto& f : col[m])
        images.push_back(
            compose(R.diff.at(-m), f, X.term.at(-n), R.term.at(-m), R.term.at(-m + 1)));
      auto coords = detail::coords_in_basis(col[m - 1], images, ctx.U->p);
      SparseMat D((int)col[m - 1].size(), (int)coords.size());
      for (int j = 0; j < (int)coords.size(); ++j)
        for (const auto& [r, v] : coords[j]) D.add(r, j, v);
      rk[m] = D.rank();
    }
    for (int m = 0; m <= mmax; ++m)
      out[{n, m}] = (int)col[m].size() - rk[m] - rk[m + 1];
  }
  return out;
}

/// The two sides of the composition pairing against a Verma-headed
/// resolution R of k: side A is the degree-0 cohomology of Hom(M, R),
/// side B the degree-1 cohomology of Hom(R, M), and the pairing sends
/// (f, q) to the coefficient of f o q along the head arrow R^{-1} -> R^0.
struct DualityReport {
  int dim_a = 0, dim_b = 0;
  bool well_defined = true, full_rank = false;
};

inline DualityReport duality_pairing(const QuantumGroup& U, const GradedModule& M,
                                     int depth = 3) {
  ChainComplex R = verma_headed_resolution(U, depth);
  Weight zero(U.rd.rank);
  int p = U.p;
  // side A: coker( Hom(M, R^{-1}) -> Hom(M, R^0) )
  auto a0 = hom_space(M, R.term.at(0), zero);
  auto a1 = hom_space(M, R.term.at(-1), zero);
  std::vector<GradedMap> a_im;
  for (const auto& f : a1)
    a_im.push_back(compose(R.diff.at(-1), f, M, R.term.at(-1), R.term.at(0)));
  auto a_im_coords = detail::coords_in_basis(a0, a_im, p);
  std::vector<int> a_reps;  // representatives: coordinates not hit by the image
  // pivots of the row-reduced image span; representatives of the cokernel
  // are the complementary coordinates.
  std::vector<SparseRow> im_rows;
  for (int j = 0; j < (int)a_im_coords.size(); ++j) im_rows.push_back(a_im_coords[j]);
  SparseMat ImMat((int)im_rows.size(), (int)a0.size());
  for (int i = 0; i < (int)im_rows.size(); ++i)
    for (const auto& [c, v] : im_rows[i]) ImMat.add(i, c, v);
  auto imref = ImMat.rref();
  std::vector<bool> is_piv(a0.size(), false);
  for (int c : imref.pivot_cols) is_piv[c] = true;
  for (int i = 0; i < (int)a0.size(); ++i)
    if (!is_piv[i]) a_reps.push_back(i);
  // side B: ker( Hom(R^{-1}, M) -> Hom(R^{-2}, M) ) modulo
  //         im( Hom(R^0, M) -> Hom(R^{-1}, M) )
  auto b0 = hom_space(R.term.at(0), M, zero);
  auto b1 = hom_space(R.term.at(-1), M, zero);
  auto b2 = hom_space(R.term.at(-2), M, zero);
  std::vector<GradedMap> b1_out, b0_out;
  for (const auto& q : b1)
    b1_out.push_back(compose(q, R.diff.at(-2), R.term.at(-2), R.term.at(-1), M));
  for (const auto& q : b0)
    b0_out.push_back(compose(q, R.diff.at(-1), R.term.at(-1), R.term.at(0), M));
  auto d1c = detail::coords_in_basis(b2, b1_out, p);
  SparseMat D1((int)b2.size(), (int)d1c.size());
  for (int j = 0; j < (int)d1c.size(); ++j)
    for (const auto& [r, v] : d1c[j]) D1.add(r, j, v);
  auto kerB = D1.kernel_basis(p);
  auto d0c = detail::coords_in_basis(b1, b0_out, p);
  SparseMat ImB((int)d0c.size(), (int)b1.size());
  for (int j = 0; j < (int)d0c.size(); ++j)
    for (const auto& [r, v] : d0c[j]) ImB.add(j, r, v);
  int rank_im_b = ImB.rank();
  DualityReport rep;
  rep.dim_a = (int)a_reps.size();
  rep.dim_b = (int)kerB.size() - rank_im_b;
  // pairing matrix on representatives, plus well-definedness checks
  std::vector<GradedMap> head = {R.diff.at(-1)};
  auto pair_with = [&](const GradedMap& f, const SparseRow& qc) -> Cyclo {
    // q = sum qc_j b1[j]; value = coefficient of f o q along the head arrow
    Cyclo acc = Cyclo::zero(p);
    for (const auto& [j, v] : qc) {
      GradedMap comp = compose(f, b1[j], R.term.at(-1), M, R.term.at(0));
      auto cc = detail::coords_in_basis(head, {comp}, p);
      auto it = cc[0].find(0);
      if (it != cc[0].end()) acc += v * it->second;
    }
    return acc;
  };
  // choose kernel representatives modulo the image: complement coordinates
  std::vector<SparseRow> b_classes;
  {
    SparseMat K((int)kerB.size() + (int)d0c.size(), (int)b1.size());
    for (int j = 0; j < (int)d0c.size(); ++j)
      for (const auto& [r, v] : d0c[j]) K.add(j, r, v);
    int base = (int)d0c.size(), kept = 0;
    for (int i = 0; i < (int)kerB.size(); ++i)
      for (const auto& [c, v] : kerB[i]) K.add(base + i, c, v);
    // rows of the image first; kernel rows that increase the rank represent
    // homology classes
    SparseMat Im((int)d0c.size(), (int)b1.size());
    for (int j = 0; j < (int)d0c.size(); ++j)
      for (const auto& [r, v] : d0c[j]) Im.add(j, r, v);
    int r0 = Im.rank();
    std::vector<SparseRow> acc_rows;
    for (int j = 0; j < (int)d0c.size(); ++j) acc_rows.push_back(d0c[j]);
    for (int i = 0; i < (int)kerB.size() && kept < rep.dim_b; ++i) {
      auto trial = acc_rows;
      trial.push_back(kerB[i]);
      SparseMat Tm((int)trial.size(), (int)b1.size());
      for (int a = 0; a < (int)trial.size(); ++a)
        for (const auto& [c, v] : trial[a]) Tm.add(a, c, v);
      if (Tm.rank() > r0) {
        acc_rows = std::move(trial);
        r0++;
        kept++;
        b_classes.push_back(kerB[i]);
      }
    }
  }
  // well-definedness: image classes pair to zero on both sides
  for (const auto& g : a_im)
    for (const auto& qc : b_classes)
      if (!pair_with(g, qc).is_zero()) rep.well_defined = false;
  for (int i : a_reps)
    for (int j = 0; j < (int)d0c.size(); ++j)
      if (!pair_with(a0[i], d0c[j]).is_zero()) rep.well_defined = false;
  SparseMat P((int)a_reps.size(), (int)b_classes.size());
  for (int i = 0; i < (int)a_reps.size(); ++i)
    for (int j = 0; j < (int)b_classes.size(); ++j) {
      Cyclo v = pair_with(a0[a_reps[i]], b_classes[j]);
      if (!v.is_zero()) P.add(i, j, v);
    }
  rep.full_rank = rep.dim_a == rep.dim_b && P.rank() == rep.dim_a && rep.well_defined;
  return rep;
}

}  // namespace seminf
