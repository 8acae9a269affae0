#pragma once

#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "seminf/module.hpp"

namespace seminf {

/// The semiregular right module S = Hom_B(A, B) on the basis N* (x) B,
/// together with the operator algebra spanned by the composites of the
/// B-postcomposition and transported coregular-N endomorphisms.
struct SemiregularData {
  GradedModule S;                       // right A-module
  std::vector<Mono> nbasis, bbasis;     // index conventions for S
  // position of basis vector f_n (x) b inside its weight component
  std::map<std::pair<Mono, Mono>, std::pair<Weight, int>> index;
  // A^sharp as a multiplication table on the basis pairs (b, n)
  MulTable sharp;
  // per-pair operator blocks on S (degree wt(b) + wt(n))
  std::vector<std::map<Weight, SparseMat>> sharp_ops;
  std::vector<std::pair<Mono, Mono>> sharp_basis;  // (b, n) pairs
};

namespace detail {
/// Flattens a graded operator into its coordinates over a list of same-degree
/// operators; returns false if it is not in their span.
inline bool solve_in_span(const std::vector<std::map<Weight, SparseMat>>& basis_ops,
                          const std::map<Weight, SparseMat>& target,
                          const std::map<Weight, std::pair<int, int>>& shapes, int p,
                          SparseRow& coords) {
  // rows: flattened (weight, entry) positions; columns: basis ops, last: target
  std::map<Weight, int> offset;
  int nrows = 0;
  for (const auto& [w, sh] : shapes) {
    offset[w] = nrows;
    nrows += sh.first * sh.second;
  }
  SparseMat sys(nrows, (int)basis_ops.size());
  SparseMat rhs(nrows, 1);
  auto fill = [&](const std::map<Weight, SparseMat>& op, auto&& put) {
    for (const auto& [w, blk] : op) {
      auto it = shapes.find(w);
      if (it == shapes.end()) {
        if (!blk.is_zero()) throw std::logic_error("solve_in_span: stray block");
        continue;
      }
      int base = offset.at(w), cols = it->second.second;
      for (int i = 0; i < blk.nrows(); ++i)
        for (const auto& [j, v] : blk.row(i)) put(base + i * cols + j, v);
    }
  };
  for (int k = 0; k < (int)basis_ops.size(); ++k)
    fill(basis_ops[k], [&](int r, const Cyclo& v) { sys.set(r, k, v); });
  fill(target, [&](int r, const Cyclo& v) { rhs.set(r, 0, v); });
  auto X = sys.solve(rhs);
  if (!X) return false;
  coords.clear();
  for (int k = 0; k < (int)basis_ops.size(); ++k) {
    Cyclo v = X->get(k, 0);
    if (!v.is_zero()) coords[k] = v;
  }
  return true;
}
}  // namespace detail

/// Builds the semiregular module S = Hom_B(A, B) (maps of right B-modules,
/// graded by weight-shifted components), whose right A-action is
/// (F * a)(x) = F(a x), on the functional basis F_{n,b}: n' -> delta_{n,n'} b.
/// Alongside it builds the operator algebra A^sharp spanned by the degree
/// wt(b) + wt(n) endomorphisms T_{b,n} = L_b o C_n, where L_b postcomposes
/// with left multiplication by b and C_n is the endomorphism theta_n (x) id of
/// the tensor model N* (x)_N A (theta_n f = f(. n)) transported through the
/// pairing phi(f (x) a, x) = f_1(a x). Both families commute with the right
/// A-action. Verifies closure of the span under composition and extracts the
/// structure constants.
inline SemiregularData build_semiregular(const QuantumGroup& U, const std::vector<int>& nset,
                                         const std::vector<int>& bset) {
  SemiregularData out;
  const PBWAlgebra& A = U.A;
  TriangularSplit split(&A, nset, bset, /*n_first=*/true);  // decompose as n * b
  out.nbasis = A.full_basis(nset);
  out.bbasis = A.full_basis(bset);
  std::map<Mono, int> bindex;
  for (int i = 0; i < (int)out.bbasis.size(); ++i) bindex[out.bbasis[i]] = i;

  GradedModule S(U, /*right=*/true);
  std::map<Weight, std::vector<std::pair<Mono, Mono>>> by_wt;
  for (const auto& n : out.nbasis)
    for (const auto& b : out.bbasis)
      by_wt[A.weight_of(b) - A.weight_of(n)].push_back({n, b});
  for (auto& [w, list] : by_wt) {
    S.set_dim(w, (int)list.size());
    for (int i = 0; i < (int)list.size(); ++i) out.index[list[i]] = {w, i};
  }
  auto locate = [&](const Mono& n, const Mono& b, const Weight& expect) {
    auto it = out.index.find({n, b});
    if (it == out.index.end() || !(it->second.first == expect))
      throw std::logic_error("semiregular: basis bookkeeping failure");
    return it->second.second;
  };

  // right action of each generator g on the Hom model:
  // (F_{n,b} * g)(n') = F(g n') through the N-first decomposition of g n'
  // and right-B-linearity F(m c) = F(m) c.
  for (int g : A.all_gen_indices()) {
    Weight dg = A.gens[g].degree;
    Mono gmono = A.unit();
    gmono[g] = 1;
    for (const auto& [w, list] : by_wt) {
      if (!S.dim(w + dg)) continue;
      SparseMat blk(S.dim(w + dg), (int)list.size());
      for (int col = 0; col < (int)list.size(); ++col) {
        const auto& [n, b] = list[col];
        for (const auto& nprime : out.nbasis)
          for (const auto& [mono, c] : A.mul_mono(gmono, nprime))
            for (const auto& [nk, bk, cc] : split.decompose(mono)) {
              if (nk != n) continue;
              for (const auto& [bprod, c3] : A.mul_mono(b, bk))
                blk.add(locate(nprime, bprod, w + dg), col, c * cc * c3);
            }
      }
      if (!blk.is_zero()) S.act[g][w] = std::move(blk);
    }
  }
  require_module(S, "semiregular right action");

  // tensor model N* (x)_N A = N* (x) B on the same index pairs (f_n, b):
  // (f_n (x) b) * g straightens b g and moves the N-parts into the functional
  // through the right N-action (f * m)(x) = f(m x).
  std::map<int, std::map<Weight, SparseMat>> tens_act;
  for (int g : A.all_gen_indices()) {
    Weight dg = A.gens[g].degree;
    Mono gmono = A.unit();
    gmono[g] = 1;
    for (const auto& [w, list] : by_wt) {
      if (!S.dim(w + dg)) continue;
      SparseMat blk(S.dim(w + dg), (int)list.size());
      for (int col = 0; col < (int)list.size(); ++col) {
        const auto& [n, b] = list[col];
        for (const auto& [mono, c] : A.mul_mono(b, gmono))
          for (const auto& [nk, bk, cc] : split.decompose(mono))
            for (const auto& m : out.nbasis) {
              auto& prod = A.mul_mono(nk, m);
              auto it = prod.find(n);
              if (it == prod.end()) continue;
              blk.add(locate(m, bk, w + dg), col, c * cc * it->second);
            }
      }
      if (!blk.is_zero()) tens_act[g][w] = std::move(blk);
    }
  }

  // the pairing phi: tensor model -> Hom model, phi(f_n (x) b)(n') = f_1(b n')
  // (apply f_n to the N-part of the N-first decomposition of b n'); it must be
  // bijective in every degree and intertwine the two right actions.
  std::map<Weight, SparseMat> phi, phi_inv;
  for (const auto& [w, list] : by_wt) {
    SparseMat blk((int)list.size(), (int)list.size());
    for (int col = 0; col < (int)list.size(); ++col) {
      const auto& [n, b] = list[col];
      for (const auto& nprime : out.nbasis)
        for (const auto& [mono, c] : A.mul_mono(b, nprime))
          for (const auto& [nk, bk, cc] : split.decompose(mono)) {
            if (nk != n) continue;
            blk.add(locate(nprime, bk, w), col, c * cc);
          }
    }
    auto inv = blk.solve(SparseMat::identity((int)list.size(), A.p));
    if (!inv) throw std::logic_error("semiregular: pairing phi is degenerate");
    phi_inv[w] = std::move(*inv);
    phi[w] = std::move(blk);
  }
  for (int g : A.all_gen_indices()) {
    Weight dg = A.gens[g].degree;
    for (const auto& [w, list] : by_wt) {
      if (!S.dim(w + dg)) continue;
      auto at = [&](const std::map<Weight, SparseMat>& m, const Weight& ww, int r, int c) {
        auto it = m.find(ww);
        return it == m.end() ? SparseMat(r, c) : it->second;
      };
      SparseMat lhs = phi.at(w + dg) * at(tens_act[g], w, S.dim(w + dg), S.dim(w));
      SparseMat rhs = at(S.act[g], w, S.dim(w + dg), S.dim(w)) * phi.at(w);
      if (!(lhs - rhs).is_zero())
        throw std::logic_error("semiregular: phi does not intertwine the right actions");
    }
  }
  out.S = std::move(S);

  // operator families on the Hom model:
  //   L_b:      F_{n,b'} -> sum [b b']-expansion, degree wt(b)
  //   C_n:      phi o (theta_n (x) id) o phi^{-1}, degree wt(n),
  //             theta_n(f_{n'}) = sum_m [m n]_{n'} f_m on the tensor model
  // and the composites T_{b,n} = L_b o C_n spanning A^sharp.
  for (const auto& b : out.bbasis)
    for (const auto& n : out.nbasis) out.sharp_basis.push_back({b, n});
  std::map<Mono, std::map<Weight, SparseMat>> cop;  // C_n blocks per n
  for (const auto& n : out.nbasis) {
    Weight dn = A.weight_of(n);
    std::map<Weight, SparseMat> op;
    for (const auto& [w, list] : by_wt) {
      if (!out.S.dim(w + dn)) continue;
      SparseMat theta(out.S.dim(w + dn), (int)list.size());
      for (int col = 0; col < (int)list.size(); ++col) {
        const auto& [nprime, bprime] = list[col];
        for (const auto& m : out.nbasis) {
          auto& prod = A.mul_mono(m, n);
          auto it = prod.find(nprime);
          if (it == prod.end()) continue;
          theta.add(locate(m, bprime, w + dn), col, it->second);
        }
      }
      SparseMat blk = phi.at(w + dn) * (theta * phi_inv.at(w));
      if (!blk.is_zero()) op[w] = std::move(blk);
    }
    cop[n] = std::move(op);
  }
  for (const auto& [b, n] : out.sharp_basis) {
    Weight dn = A.weight_of(n), db = A.weight_of(b);
    std::map<Weight, SparseMat> op;
    for (const auto& [w, cblk] : cop[n]) {
      if (!out.S.dim(w + dn + db)) continue;
      // L_b on the (w + dn)-component: touches only the B-factor
      const auto& list = by_wt.at(w + dn);
      SparseMat lb(out.S.dim(w + dn + db), (int)list.size());
      for (int col = 0; col < (int)list.size(); ++col) {
        const auto& [nprime, bprime] = list[col];
        for (const auto& [bprod, c] : A.mul_mono(b, bprime))
          lb.add(locate(nprime, bprod, w + dn + db), col, c);
      }
      SparseMat blk = lb * cblk;
      if (!blk.is_zero()) op[w] = std::move(blk);
    }
    out.sharp_ops.push_back(std::move(op));
  }

  // closure + structure constants per degree
  out.sharp.p = A.p;
  out.sharp.basis.clear();
  out.sharp.wt.clear();
  for (const auto& [b, n] : out.sharp_basis) {
    Mono m = b;
    for (size_t i = 0; i < m.size(); ++i) m[i] += n[i];
    out.sharp.basis.push_back(m);
    out.sharp.wt.push_back(A.weight_of(b) + A.weight_of(n));
    if (b == A.unit() && n == A.unit()) out.sharp.unit = (int)out.sharp.basis.size() - 1;
  }
  int dim = (int)out.sharp_basis.size();
  out.sharp.mul.assign(dim, std::vector<SparseRow>(dim));
  // group basis operators by degree once
  std::map<Weight, std::vector<int>> by_deg;
  for (int k = 0; k < dim; ++k) by_deg[out.sharp.wt[k]].push_back(k);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      // composite T_i o T_j as a graded operator
      Weight dj = out.sharp.wt[j], deg = out.sharp.wt[i] + dj;
      std::map<Weight, SparseMat> comp;
      for (const auto& [w, blkj] : out.sharp_ops[j]) {
        auto iti = out.sharp_ops[i].find(w + dj);
        if (iti == out.sharp_ops[i].end()) continue;
        SparseMat c = iti->second * blkj;
        if (!c.is_zero()) comp[w] = std::move(c);
      }
      auto itd = by_deg.find(deg);
      if (itd == by_deg.end()) {
        for (const auto& [w, blk] : comp)
          if (!blk.is_zero()) throw std::logic_error("A#: not closed under composition");
        continue;
      }
      std::map<Weight, std::pair<int, int>> shapes;
      for (const auto& [w, d] : out.S.dims)
        if (out.S.dim(w + deg)) shapes[w] = {out.S.dim(w + deg), d};
      std::vector<std::map<Weight, SparseMat>> cand;
      for (int k : itd->second) cand.push_back(out.sharp_ops[k]);
      SparseRow coords;
      if (!detail::solve_in_span(cand, comp, shapes, A.p, coords))
        throw std::logic_error("A#: not closed under composition");
      for (const auto& [kk, v] : coords) out.sharp.mul[i][j][itd->second[kk]] = v;
    }
  return out;
}

/// The right regular representation of the algebra as a graded right module.
inline GradedModule right_regular_module(const QuantumGroup& U) {
  const PBWAlgebra& A = U.A;
  GradedModule R(U, /*right=*/true);
  auto basis = A.full_basis(A.all_gen_indices());
  std::map<Weight, std::vector<Mono>> by_wt;
  for (const auto& m : basis) by_wt[A.weight_of(m)].push_back(m);
  std::map<Mono, std::pair<Weight, int>> index;
  for (auto& [w, list] : by_wt) {
    R.set_dim(w, (int)list.size());
    for (int i = 0; i < (int)list.size(); ++i) index[list[i]] = {w, i};
  }
  for (int g : A.all_gen_indices()) {
    Weight dg = A.gens[g].degree;
    for (const auto& [w, list] : by_wt) {
      if (!R.dim(w + dg)) continue;
      SparseMat blk(R.dim(w + dg), (int)list.size());
      Mono gmono = A.unit();
      gmono[g] = 1;
      for (int col = 0; col < (int)list.size(); ++col)
        for (const auto& [mono, c] : A.mul_mono(list[col], gmono))
          blk.add(index.at(mono).second, col, c);
      if (!blk.is_zero()) R.act[g][w] = std::move(blk);
    }
  }
  require_module(R, "right_regular_module");
  return R;
}

/// Searches the intertwiner space Hom_A(M, N) (degree 0) for an invertible
/// element; returns it, or nothing when none of the seeded samples works.
inline std::optional<GradedMap> find_module_isomorphism(const GradedModule& M,
                                                        const GradedModule& N, uint64_t seed,
                                                        int tries = 24) {
  if (M.dims != N.dims) return std::nullopt;
  auto homs = hom_space(M, N, Weight(M.U->rd.rank));
  if (homs.empty()) return std::nullopt;
  auto invertible = [&](const GradedMap& f) {
    for (const auto& [w, d] : M.dims) {
      auto it = f.blocks.find(w);
      if (it == f.blocks.end() || it->second.rank() != d) return false;
    }
    return true;
  };
  for (const auto& h : homs)
    if (invertible(h)) return h;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int t = 0; t < tries; ++t) {
    GradedMap f;
    f.gamma = Weight(M.U->rd.rank);
    for (const auto& h : homs) {
      Rat c(coef(rng));
      if (c == 0) continue;
      for (const auto& [w, blk] : h.blocks) {
        SparseMat scaled = blk * c;
        auto [pos, fresh] = f.blocks.try_emplace(w, scaled);
        if (!fresh) pos->second = pos->second + scaled;
      }
    }
    if (invertible(f)) return f;
  }
  return std::nullopt;
}

}  // namespace seminf
