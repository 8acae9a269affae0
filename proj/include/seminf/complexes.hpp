#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "seminf/module.hpp"
#include "seminf/qgroup.hpp"
#include "seminf/triangular.hpp"

namespace seminf {

/// Cohomological complex of graded modules concentrated in degrees <= 0.
/// diff[d] maps term[d] -> term[d+1] and has internal degree zero.
struct ChainComplex {
  std::map<int, GradedModule> term;
  std::map<int, GradedMap> diff;
  // degrees whose term is coinduced from a character, with the top weight;
  // intertwiner spaces into such terms admit a much cheaper description
  std::map<int, Weight> cofree;

  bool has(int d) const { return term.count(d) != 0; }
  int depth() const { return term.empty() ? 0 : -term.begin()->first; }
};

/// Memoized word-action blocks of one module (products of generator blocks
/// get reused heavily while building bar terms).
struct WordBlockCache {
  const GradedModule* M;
  std::map<std::pair<Mono, Weight>, SparseMat> blk;

  explicit WordBlockCache(const GradedModule& m) : M(&m) {}
  const SparseMat& get(const Mono& carry, const Weight& mw) {
    auto key = std::make_pair(carry, mw);
    auto it = blk.find(key);
    if (it == blk.end())
      it = blk.emplace(key, M->word_block(PBWAlgebra::mono_to_word(carry), mw)).first;
    return it->second;
  }
};

/// Shared data for building relative bar terms N (x) Nbar^{(x)n} (x) M of an
/// algebra presented as N (x) B (monomials in n-first normal order). The
/// "bars" run over the non-unit part of the PBW basis of the N side.
struct BarContext {
  const QuantumGroup* U = nullptr;
  std::vector<int> nset, bset, acting;
  TriangularSplit split;
  std::vector<Mono> nbasis;  // PBW basis of the N side, unit first
  std::vector<Mono> nbar;    // nbasis without the unit
  std::map<Mono, int> nbar_pos;
  Rat head_lo, head_hi;  // height range of N-side basis weights
  Rat bar_lo, bar_hi;    // height range of nbar weights

  BarContext(const QuantumGroup& u, std::vector<int> ns, std::vector<int> bs,
             std::vector<int> act)
      : U(&u),
        nset(std::move(ns)),
        bset(std::move(bs)),
        acting(std::move(act)),
        split(&u.A, nset, bset, /*n_first=*/true) {
    nbasis = U->A.full_basis(nset);
    bool first = true;
    for (const auto& m : nbasis) {
      Rat h = U->A.weight_of(m).height();
      if (first || h < head_lo) head_lo = h;
      if (first || head_hi < h) head_hi = h;
      first = false;
      if (m == U->A.unit()) continue;
      int k = (int)nbar.size();
      nbar.push_back(m);
      nbar_pos[m] = k;
    }
    if (nbar.empty()) return;
    first = true;
    for (const auto& m : nbar) {
      Rat h = U->A.weight_of(m).height();
      if (first || h < bar_lo) bar_lo = h;
      if (first || bar_hi < h) bar_hi = h;
      first = false;
    }
  }
};

/// A basis vector of a bar term: head (x) bar_1 (x) ... (x) bar_n (x) m,
/// where m is the basis vector number mi of the coefficient module in
/// weight mw. Its total weight is wt(head) + sum wt(bars) + mw.
struct BarElem {
  Mono head;
  std::vector<int> bars;  // indices into BarContext::nbar
  Weight mw;
  int mi = 0;

  bool operator<(const BarElem& o) const {
    return std::tie(head, bars, mw, mi) < std::tie(o.head, o.bars, o.mw, o.mi);
  }
};

/// One bar term materialized on a window of weights, as a graded module with
/// the basis bookkeeping needed to build differentials and actions.
struct BarTerm {
  GradedModule mod;
  std::map<Weight, std::vector<BarElem>> elems;
  std::map<BarElem, int> pos;  // index inside the weight component

  int locate(const BarElem& e) const {
    auto it = pos.find(e);
    return it == pos.end() ? -1 : it->second;
  }
};

namespace detail {

/// Applies a monomial of the algebra to the module slot of a bar element,
/// emitting (element, coefficient) pairs for one fixed head/bars prefix.
inline void bar_module_slot(WordBlockCache& wbc, const Mono& carry, const Cyclo& coeff,
                            const Mono& head, const std::vector<int>& bars, const Weight& mw,
                            int mi, std::vector<std::pair<BarElem, Cyclo>>& out) {
  const PBWAlgebra& A = wbc.M->U->A;
  Weight dw = A.weight_of(carry);
  const SparseMat& blk = wbc.get(carry, mw);
  for (int r = 0; r < blk.nrows(); ++r) {
    auto it = blk.row(r).find(mi);
    if (it == blk.row(r).end() || it->second.is_zero()) continue;
    out.push_back({BarElem{head, bars, mw + dw, r}, coeff * it->second});
  }
}

/// g . (head (x) bars (x) m): split g*head in n-first order, then pass the
/// B-side factor through the bars (projecting each product back to the
/// non-unit part of N) and let the remainder act on the module slot.
inline std::vector<std::pair<BarElem, Cyclo>> bar_apply_gen(const BarContext& ctx,
                                                            WordBlockCache& wbc, int g,
                                                            const BarElem& e) {
  const PBWAlgebra& A = ctx.U->A;
  struct State {
    Mono head;
    std::vector<int> bars;
    Mono carry;
    Cyclo c;
  };
  Mono gmono = A.unit();
  gmono[g] = 1;
  std::vector<State> frontier;
  for (const auto& [mono, c] : A.mul_mono(gmono, e.head))
    for (const auto& [nk, bk, ck] : ctx.split.decompose(mono))
      frontier.push_back({nk, {}, bk, c * ck});
  for (int slot = 0; slot < (int)e.bars.size(); ++slot) {
    std::vector<State> next;
    for (const auto& st : frontier)
      for (const auto& [mono, c] : A.mul_mono(st.carry, ctx.nbar[e.bars[slot]]))
        for (const auto& [nk, bk, ck] : ctx.split.decompose(mono)) {
          if (nk == A.unit()) continue;  // projection N -> N/k kills the unit
          State ns{st.head, st.bars, bk, st.c * c * ck};
          ns.bars.push_back(ctx.nbar_pos.at(nk));
          next.push_back(std::move(ns));
        }
    frontier = std::move(next);
  }
  std::vector<std::pair<BarElem, Cyclo>> out;
  for (const auto& st : frontier)
    bar_module_slot(wbc, st.carry, st.c, st.head, st.bars, e.mw, e.mi, out);
  return out;
}

}  // namespace detail

/// Builds the n-th bar term of the coefficient module M, keeping only basis
/// vectors whose total weight height lies in [hlo, hhi].
inline BarTerm bar_term(const BarContext& ctx, const GradedModule& M, int n, const Rat& hlo,
                        const Rat& hhi, WordBlockCache* cache = nullptr) {
  const PBWAlgebra& A = ctx.U->A;
  WordBlockCache local(M);
  WordBlockCache& wbc = cache ? *cache : local;
  BarTerm T;
  T.mod = GradedModule(*ctx.U);
  T.mod.acting = ctx.acting;
  if (M.dims.empty()) return T;
  Rat mlo = M.dims.begin()->first.height(), mhi = mlo;
  for (const auto& [w, d] : M.dims) {
    Rat h = w.height();
    if (h < mlo) mlo = h;
    if (mhi < h) mhi = h;
  }
  // enumerate bars, then head, then the module slot, pruning on reachable
  // height intervals
  std::vector<int> bars;
  Weight rank0(ctx.U->rd.rank);
  auto feasible = [&](const Rat& partial, int slots_left, bool head_chosen) {
    Rat lo = partial + Rat(slots_left) * ctx.bar_lo + mlo;
    Rat hi = partial + Rat(slots_left) * ctx.bar_hi + mhi;
    if (!head_chosen) {
      lo += ctx.head_lo;
      hi += ctx.head_hi;
    }
    return !(hi < hlo) && !(hhi < lo);
  };
  std::vector<std::pair<Weight, BarElem>> found;
  auto emit_heads = [&](const Weight& barwt, const Rat& barh) {
    for (const auto& head : ctx.nbasis) {
      Weight hw = A.weight_of(head);
      if (!feasible(barh + hw.height(), 0, true)) continue;
      for (const auto& [mw, dm] : M.dims) {
        Weight tot = hw + barwt + mw;
        Rat h = tot.height();
        if (h < hlo || hhi < h) continue;
        for (int mi = 0; mi < dm; ++mi) found.push_back({tot, BarElem{head, bars, mw, mi}});
      }
    }
  };
  auto rec = [&](auto&& self, const Weight& barwt, const Rat& barh, int slots_left) -> void {
    if (!feasible(barh, slots_left, false)) return;
    if (slots_left == 0) {
      emit_heads(barwt, barh);
      return;
    }
    for (int k = 0; k < (int)ctx.nbar.size(); ++k) {
      bars.push_back(k);
      Weight bw = A.weight_of(ctx.nbar[k]);
      self(self, barwt + bw, barh + bw.height(), slots_left - 1);
      bars.pop_back();
    }
  };
  rec(rec, rank0, Rat(0), n);
  std::stable_sort(found.begin(), found.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [w, e] : found) {
    int idx = (int)T.elems[w].size();
    T.pos[e] = idx;
    T.elems[w].push_back(std::move(e));
  }
  for (const auto& [w, list] : T.elems) T.mod.set_dim(w, (int)list.size());
  // action blocks (targets outside the window are dropped; hom_space treats
  // the missing weights as genuinely zero, which is valid one step past the
  // support of the other side)
  for (int g : ctx.acting) {
    Weight dg = A.gens[g].degree;
    std::map<Weight, SparseMat> blocks;
    for (const auto& [w, list] : T.elems) {
      int rows = T.mod.dim(w + dg);
      if (!rows) continue;
      SparseMat b(rows, (int)list.size());
      for (int col = 0; col < (int)list.size(); ++col)
        for (const auto& [e2, c] : detail::bar_apply_gen(ctx, wbc, g, list[col])) {
          int r = T.locate(e2);
          if (r >= 0) b.add(r, col, c);
        }
      if (!b.is_zero()) blocks[w] = std::move(b);
    }
    T.mod.act[g] = std::move(blocks);
  }
  return T;
}

/// Bar differential Bar^{-n} -> Bar^{-n+1}: alternating sum of the face maps
/// merging head*bar_1, bar_i*bar_{i+1} (projected back to the non-unit part),
/// and bar_n acting on the module slot.
inline GradedMap bar_diff(const BarContext& ctx, const GradedModule& M, const BarTerm& from,
                          const BarTerm& to, WordBlockCache* cache = nullptr,
                          bool allow_truncation = false) {
  const PBWAlgebra& A = ctx.U->A;
  WordBlockCache local(M);
  WordBlockCache& wbc = cache ? *cache : local;
  GradedMap d;
  d.gamma = Weight(ctx.U->rd.rank);
  for (const auto& [w, list] : from.elems) {
    SparseMat b(to.mod.dim(w), (int)list.size());
    for (int col = 0; col < (int)list.size(); ++col) {
      const BarElem& e = list[col];
      int n = (int)e.bars.size();
      std::vector<std::pair<BarElem, Cyclo>> terms;
      // face 0: merge the head with the first bar (stays inside N)
      for (const auto& [mono, c] : A.mul_mono(e.head, ctx.nbar[e.bars[0]])) {
        BarElem t{mono, std::vector<int>(e.bars.begin() + 1, e.bars.end()), e.mw, e.mi};
        terms.push_back({std::move(t), c});
      }
      // faces 1..n-1: merge consecutive bars
      for (int i = 1; i < n; ++i) {
        Cyclo sgn = (i % 2) ? -Cyclo::one(ctx.U->p) : Cyclo::one(ctx.U->p);
        for (const auto& [mono, c] :
             A.mul_mono(ctx.nbar[e.bars[i - 1]], ctx.nbar[e.bars[i]])) {
          if (mono == A.unit()) continue;
          std::vector<int> bars2;
          bars2.reserve(n - 1);
          for (int j = 0; j < n; ++j) {
            if (j == i - 1) continue;
            bars2.push_back(j == i ? ctx.nbar_pos.at(mono) : e.bars[j]);
          }
          terms.push_back({BarElem{e.head, std::move(bars2), e.mw, e.mi}, sgn * c});
        }
      }
      // face n: the last bar acts on the module slot
      {
        Cyclo sgn = (n % 2) ? -Cyclo::one(ctx.U->p) : Cyclo::one(ctx.U->p);
        std::vector<int> bars2(e.bars.begin(), e.bars.end() - 1);
        detail::bar_module_slot(wbc, ctx.nbar[e.bars[n - 1]], sgn, e.head, bars2, e.mw, e.mi,
                                terms);
      }
      for (const auto& [t, c] : terms) {
        int r = to.locate(t);
        if (r < 0) {
          if (allow_truncation) continue;
          throw std::logic_error("bar_diff: image escapes the weight window");
        }
        b.add(r, col, c);
      }
    }
    if (!b.is_zero()) d.blocks[w] = std::move(b);
  }
  return d;
}

/// Bar terms 0..depth of M on a common weight window, with differentials
/// (as a ChainComplex in degrees -depth .. 0).
inline ChainComplex bar_family(const BarContext& ctx, const GradedModule& M, int depth,
                               const Rat& hlo, const Rat& hhi) {
  ChainComplex C;
  WordBlockCache wbc(M);
  std::vector<BarTerm> terms;
  for (int n = 0; n <= depth; ++n) terms.push_back(bar_term(ctx, M, n, hlo, hhi, &wbc));
  for (int n = depth; n >= 1; --n)
    C.diff[-n] = bar_diff(ctx, M, terms[n], terms[n - 1], &wbc);
  for (int n = depth; n >= 0; --n) C.term[-n] = std::move(terms[n].mod);
  return C;
}

/// The counit-side map Bar^0 = N (x) M -> M, head . m (for exactness tests).
inline GradedMap bar_augmentation(const BarContext& ctx, const GradedModule& M,
                                  const BarTerm& bar0) {
  WordBlockCache wbc(M);
  GradedMap a;
  a.gamma = Weight(ctx.U->rd.rank);
  for (const auto& [w, list] : bar0.elems) {
    SparseMat b(M.dim(w), (int)list.size());
    for (int col = 0; col < (int)list.size(); ++col) {
      std::vector<std::pair<BarElem, Cyclo>> terms;
      detail::bar_module_slot(wbc, list[col].head, Cyclo::one(ctx.U->p), ctx.U->A.unit(), {},
                              list[col].mw, list[col].mi, terms);
      for (const auto& [t, c] : terms) b.add(t.mi, col, c);
    }
    if (!b.is_zero()) a.blocks[w] = std::move(b);
  }
  return a;
}

/// Resolution of the trivial module by raising Verma-type modules (rank one
/// root data): ... -> V(mu_2) -> V(mu_1) -> V(mu_0 = 0) -> k -> 0 with
/// mu_{2j} = jp alpha and mu_{2j+1} = (jp+1) alpha. Each arrow is the unique
/// degree-zero intertwiner; exactness is verified degree by degree.
inline ChainComplex verma_headed_resolution(const QuantumGroup& U, int depth,
                                            bool coinduced_terms = true) {
  if (U.rd.rank != 1)
    throw std::invalid_argument("verma_headed_resolution: rank one only");
  auto mu = [&](int m) {
    Weight w(1);
    w.c[0] = Rat((m / 2) * U.p + (m % 2));
    return w;
  };
  ChainComplex R;
  // each term is realized as the coinduction of the character at its top
  // weight nu = mu + (p-1) alpha; intertwiners into coinduced modules reduce
  // to Borel-equivariant functionals, which downstream solvers exploit
  Weight shift(1);
  shift.c[0] = Rat(U.p - 1);
  for (int m = 0; m <= depth + 1; ++m) {
    if (coinduced_terms) {
      Weight nu = mu(m) + shift;
      R.term[-m] = coinduced_module(U, nu);
      R.cofree[-m] = nu;
    } else {
      R.term[-m] = verma_module(U, mu(m), +1);
    }
  }
  for (int m = 1; m <= depth + 1; ++m) {
    auto maps = hom_space(R.term[-m], R.term[-m + 1], Weight(1));
    if (maps.size() != 1)
      throw std::logic_error("verma_headed_resolution: arrow space has dimension " +
                             std::to_string(maps.size()));
    R.diff[-m] = maps[0];
  }
  // d^2 = 0 and exactness (the head has homology k in degree zero)
  for (int m = 2; m <= depth + 1; ++m) {
    GradedMap sq = compose(R.diff[-m + 1], R.diff[-m], R.term[-m], R.term[-m + 1],
                           R.term[-m + 2]);
    if (!sq.blocks.empty()) throw std::logic_error("verma_headed_resolution: d^2 != 0");
  }
  auto rank_of = [](const GradedMap& f) {
    int r = 0;
    for (const auto& [w, b] : f.blocks) r += b.rank();
    return r;
  };
  std::vector<int> rk;
  for (int m = 1; m <= depth + 1; ++m) rk.push_back(rank_of(R.diff[-m]));
  if ((int)R.term[0].total_dim() - rk[0] != 1)
    throw std::logic_error("verma_headed_resolution: cokernel of the head is not k");
  for (int m = 1; m <= depth; ++m)
    if (rk[m - 1] + rk[m] != (int)R.term[-m].total_dim())
      throw std::logic_error("verma_headed_resolution: not exact at step " +
                             std::to_string(m));
  R.term.erase(-depth - 1);
  R.diff.erase(-depth - 1);
  R.cofree.erase(-depth - 1);
  return R;
}

/// A one-term complex concentrated in degree zero.
inline ChainComplex single_term_complex(GradedModule M) {
  ChainComplex C;
  C.term[0] = std::move(M);
  return C;
}

}  // namespace seminf
