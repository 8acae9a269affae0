#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "seminf/qgroup.hpp"
#include "seminf/triangular.hpp"

namespace seminf {

/// Weight-graded vector: one sparse coordinate vector per weight.
using GVec = std::map<Weight, SparseRow>;

/// A finite-dimensional X-graded module over a presented algebra, given by
/// per-weight action blocks of each generator. `right` marks right modules;
/// in both cases the block of generator g at weight w maps the w-component
/// to the (w + deg g)-component.
struct GradedModule {
  const QuantumGroup* U = nullptr;
  bool right = false;
  std::vector<int> acting;                       // generators with defined action
  std::map<Weight, int> dims;
  std::vector<std::map<Weight, SparseMat>> act;  // act[g][w], absent = zero block

  GradedModule() = default;
  explicit GradedModule(const QuantumGroup& u, bool right_module = false)
      : U(&u), right(right_module), acting(u.A.all_gen_indices()), act(u.A.ngens()) {}

  int p() const { return U->p; }
  int dim(const Weight& w) const {
    auto it = dims.find(w);
    return it == dims.end() ? 0 : it->second;
  }
  long total_dim() const {
    long t = 0;
    for (const auto& [w, d] : dims) t += d;
    return t;
  }

  void set_dim(const Weight& w, int d) {
    if (d > 0)
      dims[w] = d;
    else
      dims.erase(w);
  }

  SparseMat block(int g, const Weight& w) const {
    auto it = act[g].find(w);
    if (it != act[g].end()) return it->second;
    return SparseMat(dim(w + U->A.gens[g].degree), dim(w));
  }
  void set_block(int g, const Weight& w, SparseMat m) {
    if (m.nrows() != dim(w + U->A.gens[g].degree) || m.ncols() != dim(w))
      throw std::invalid_argument("set_block: shape mismatch");
    if (m.is_zero())
      act[g].erase(w);
    else
      act[g][w] = std::move(m);
  }

  /// Matrix of the action of a word on the w-component. For left modules the
  /// rightmost factor acts first; for right modules the leftmost does.
  SparseMat word_block(const Word& word, Weight w) const {
    SparseMat m = SparseMat::identity(dim(w), p());
    auto step = [&](int g, int e) {
      for (int k = 0; k < e; ++k) {
        m = block(g, w) * m;
        w += U->A.gens[g].degree;
      }
    };
    if (right) {
      for (const auto& [g, e] : word) step(g, e);
    } else {
      for (auto it = word.rbegin(); it != word.rend(); ++it) step(it->first, it->second);
    }
    return m;
  }

  GVec apply_word(const Word& word, const GVec& v) const {
    GVec out;
    Weight shift = U->A.weight_of_word(word);
    for (const auto& [w, x] : v) {
      SparseRow y = word_block(word, w).apply(x);
      if (!y.empty()) out[w + shift] = std::move(y);
    }
    return out;
  }

  GVec apply_lincomb(const LinComb& a, const GVec& v) const {
    GVec out;
    for (const auto& [m, c] : a) {
      GVec t = apply_word(PBWAlgebra::mono_to_word(m), v);
      for (auto& [w, x] : t)
        for (auto& [i, val] : x) {
          Cyclo add = val * c;
          auto [pos, fresh] = out[w].try_emplace(i, add);
          if (!fresh) {
            pos->second += add;
            if (pos->second.is_zero()) out[w].erase(pos);
          }
        }
    }
    for (auto it = out.begin(); it != out.end();)
      it = it->second.empty() ? out.erase(it) : std::next(it);
    return out;
  }
};

/// A degree-gamma map of graded modules: blocks _w M -> _{w+gamma} N.
struct GradedMap {
  Weight gamma;
  std::map<Weight, SparseMat> blocks;

  SparseMat block_or_zero(const Weight& w, const GradedModule& src,
                          const GradedModule& dst) const {
    auto it = blocks.find(w);
    if (it != blocks.end()) return it->second;
    return SparseMat(dst.dim(w + gamma), src.dim(w));
  }
};

/// Composition g o f (apply f first).
inline GradedMap compose(const GradedMap& g, const GradedMap& f, const GradedModule& srcf,
                         const GradedModule& mid, const GradedModule& dst) {
  GradedMap out;
  out.gamma = f.gamma + g.gamma;
  for (const auto& [w, fb] : f.blocks) {
    SparseMat gb = g.block_or_zero(w + f.gamma, mid, dst);
    SparseMat c = gb * fb;
    if (!c.is_zero()) out.blocks[w] = std::move(c);
  }
  return out;
}

/// Checks the defining relations of the algebra against the action blocks,
/// restricted to the acting generators. Returns an explanation on failure.
inline std::optional<std::string> module_defect(const GradedModule& M) {
  const PBWAlgebra& A = M.U->A;
  std::vector<Weight> supp;
  for (const auto& [w, d] : M.dims)
    if (d) supp.push_back(w);
  auto rhs_block = [&](const std::vector<std::pair<Cyclo, Word>>& terms, const Weight& w,
                       const Weight& shift) {
    SparseMat s(M.dim(w + shift), M.dim(w));
    for (const auto& [c, word] : terms) s = s + M.word_block(word, w).scale(c);
    return s;
  };
  for (int j : M.acting)
    for (int i : M.acting) {
      if (j <= i) continue;
      const SwapRule& r = A.swap_rule(j, i);
      Weight shift = A.gens[i].degree + A.gens[j].degree;
      for (const Weight& w : supp) {
        SparseMat lhs = M.word_block({{j, 1}, {i, 1}}, w);
        SparseMat rhs = r.scalar
                            ? M.word_block({{i, 1}, {j, 1}}, w).scale(r.factor)
                            : rhs_block(r.terms, w, shift);
        if (!(lhs - rhs).is_zero())
          return "relation " + A.gens[j].name + "*" + A.gens[i].name + " fails at weight " +
                 w.to_string();
      }
    }
  for (int g : M.acting) {
    Weight shift = A.gens[g].degree * Rat(A.gens[g].power);
    for (const Weight& w : supp) {
      SparseMat lhs = M.word_block({{g, A.gens[g].power}}, w);
      SparseMat rhs = rhs_block(A.power_rule(g), w, shift);
      if (!(lhs - rhs).is_zero())
        return "power relation for " + A.gens[g].name + " fails at weight " + w.to_string();
    }
  }
  return std::nullopt;
}

inline void require_module(const GradedModule& M, const std::string& what) {
  if (auto why = module_defect(M)) throw std::logic_error(what + ": " + *why);
}

/// Checks that a left module lies in the integrable category: every weight
/// in X and each K_i acting on the w-component by zeta^{(alpha_i|w)}.
inline std::optional<std::string> category_defect(const GradedModule& M) {
  for (const auto& [w, d] : M.dims) {
    if (!d) continue;
    if (!M.U->in_X(w)) return "weight " + w.to_string() + " outside the weight lattice";
    for (size_t i = 0; i < M.U->k_gens.size(); ++i) {
      int kg = M.U->k_gens[i];
      bool acts = std::count(M.acting.begin(), M.acting.end(), kg) > 0;
      if (!acts) continue;
      Cyclo s = M.U->k_scalar((int)i, w);
      SparseMat expect = SparseMat::identity(d, M.p()).scale(s);
      if (!(M.block(kg, w) - expect).is_zero())
        return "K_" + std::to_string(i + 1) + " not acting by its weight scalar at " +
               w.to_string();
    }
  }
  return std::nullopt;
}

/// One-dimensional module k_mu over the generators in `acting` (defaults to
/// the whole algebra): K_i act by the weight scalar, raising and lowering
/// generators by zero. Throws if the relations force it to be inconsistent
/// (e.g. over all of u(sl2) this needs (alpha_i|mu) divisible by p).
inline GradedModule trivial_module(const QuantumGroup& U, const Weight& mu,
                                   std::vector<int> acting = {}) {
  GradedModule M(U);
  if (!acting.empty()) M.acting = std::move(acting);
  if (!U.in_X(mu)) throw std::invalid_argument("trivial_module: weight outside X");
  M.set_dim(mu, 1);
  for (size_t i = 0; i < U.k_gens.size(); ++i) {
    int kg = U.k_gens[i];
    if (!std::count(M.acting.begin(), M.acting.end(), kg)) continue;
    SparseMat b(1, 1);
    b.set(0, 0, U.k_scalar((int)i, mu));
    M.set_block(kg, mu, b);
  }
  if (auto why = module_defect(M))
    throw std::invalid_argument("trivial_module: inconsistent at mu = " + mu.to_string() +
                                ": " + *why);
  return M;
}

namespace detail {
/// Scalar by which a borel basis monomial acts on the highest/lowest weight
/// line k_lambda: product of K-scalars; zero if any non-grouplike generator
/// appears.
inline Cyclo borel_scalar(const QuantumGroup& U, const Mono& b, const Weight& lambda) {
  Cyclo s = Cyclo::one(U.p);
  for (size_t g = 0; g < b.size(); ++g) {
    if (!b[g]) continue;
    bool isk = false;
    for (size_t i = 0; i < U.k_gens.size(); ++i)
      if (U.k_gens[i] == (int)g) {
        s *= U.k_scalar((int)i, lambda).pow(b[g]);
        isk = true;
      }
    if (!isk) return Cyclo::zero(U.p);
  }
  return s;
}
}  // namespace detail

/// Verma-type induced module: sign=+1 gives u (x)_{b^-} k_lambda with free
/// raising action (weights lambda .. lambda + top of N^+), sign=-1 gives
/// u (x)_{b^+} k_lambda with free lowering action.
inline GradedModule verma_module(const QuantumGroup& U, const Weight& lambda, int sign) {
  std::vector<int> nset = sign > 0 ? U.plus_part() : U.minus_part();
  std::vector<int> bset = sign > 0 ? U.borel_minus() : U.borel_plus();
  TriangularSplit split(&U.A, nset, bset, true);
  std::vector<Mono> nbasis = U.A.full_basis(nset);
  GradedModule M(U);
  // index monomials inside each weight component
  std::map<Weight, std::vector<Mono>> by_wt;
  for (const auto& n : nbasis) by_wt[lambda + U.A.weight_of(n)].push_back(n);
  std::map<Mono, std::pair<Weight, int>> index;
  for (auto& [w, list] : by_wt) {
    M.set_dim(w, (int)list.size());
    for (int i = 0; i < (int)list.size(); ++i) index[list[i]] = {w, i};
  }
  for (int g : U.A.all_gen_indices()) {
    Weight dg = U.A.gens[g].degree;
    std::map<Weight, SparseMat> blocks;
    for (const auto& [w, list] : by_wt) {
      SparseMat b(M.dim(w + dg), (int)list.size());
      for (int col = 0; col < (int)list.size(); ++col) {
        Mono gmono = U.A.unit();
        gmono[g] = 1;
        for (const auto& [mono, c] : U.A.mul_mono(gmono, list[col]))
          for (const auto& [npart, bpart, cc] : split.decompose(mono)) {
            Cyclo s = detail::borel_scalar(U, bpart, lambda) * c * cc;
            if (s.is_zero()) continue;
            b.add(index.at(npart).second, col, s);
          }
      }
      if (!b.is_zero()) blocks[w] = std::move(b);
    }
    M.act[g] = std::move(blocks);
  }
  require_module(M, "verma_module");
  return M;
}

/// Coinduced module Hom_{b^-}(u, k_lambda), with basis dual to the raising
/// monomials; the basis functional dual to n sits in weight lambda - wt(n).
/// This is the restricted dual of a lowering Verma and has a highest weight.
inline GradedModule coinduced_module(const QuantumGroup& U, const Weight& lambda,
                                     std::map<Weight, std::vector<Mono>>* basis_out = nullptr) {
  std::vector<int> nset = U.plus_part();
  std::vector<int> bset = U.borel_minus();
  TriangularSplit split(&U.A, nset, bset, /*n_first=*/false);  // decompose as b * n
  std::vector<Mono> nbasis = U.A.full_basis(nset);
  GradedModule M(U);
  std::map<Weight, std::vector<Mono>> by_wt;
  for (const auto& n : nbasis) by_wt[lambda - U.A.weight_of(n)].push_back(n);
  if (basis_out) *basis_out = by_wt;
  std::map<Mono, std::pair<Weight, int>> index;
  for (auto& [w, list] : by_wt) {
    M.set_dim(w, (int)list.size());
    for (int i = 0; i < (int)list.size(); ++i) index[list[i]] = {w, i};
  }
  for (int g : U.A.all_gen_indices()) {
    Weight dg = U.A.gens[g].degree;
    std::map<Weight, SparseMat> blocks;
    for (const auto& [w, list] : by_wt) {
      // column: f dual to list[col]; row: evaluation against the monomial
      // m' dual-indexing the (w+dg)-component: (g*f)(m') = f(m' * g).
      auto itrows = by_wt.find(w + dg);
      if (itrows == by_wt.end()) continue;
      const auto& rows = itrows->second;
      SparseMat b((int)rows.size(), (int)list.size());
      for (int r = 0; r < (int)rows.size(); ++r) {
        Mono gmono = U.A.unit();
        gmono[g] = 1;
        for (const auto& [mono, c] : U.A.mul_mono(rows[r], gmono))
          for (const auto& [npart, bpart, cc] : split.decompose(mono)) {
            for (int col = 0; col < (int)list.size(); ++col) {
              if (npart != list[col]) continue;
              Cyclo s = detail::borel_scalar(U, bpart, lambda) * c * cc;
              if (!s.is_zero()) b.add(r, col, s);
            }
          }
      }
      if (!b.is_zero()) blocks[w] = std::move(b);
    }
    M.act[g] = std::move(blocks);
  }
  require_module(M, "coinduced_module");
  return M;
}

/// Basis of the intertwiner space of degree-gamma module maps M -> N
/// (blocks _w M -> _{w+gamma} N commuting with all acting generators).
inline std::vector<GradedMap> hom_space(const GradedModule& M, const GradedModule& N,
                                        const Weight& gamma) {
  // unknowns: T_w entries for weights w with dim M_w > 0 and dim N_{w+gamma} > 0
  struct Slot {
    Weight w;
    int rows, cols, offset;
  };
  std::vector<Slot> slots;
  std::map<Weight, int> slot_of;
  int nvars = 0;
  for (const auto& [w, dm] : M.dims) {
    int dn = N.dim(w + gamma);
    if (!dm || !dn) continue;
    slot_of[w] = (int)slots.size();
    slots.push_back({w, dn, dm, nvars});
    nvars += dn * dm;
  }
  auto var = [&](int s, int r, int c) { return slots[s].offset + r * slots[s].cols + c; };
  std::vector<SparseRow> eqs;
  auto add_entry = [](SparseRow& row, int j, const Cyclo& v) {
    if (v.is_zero()) return;
    auto [pos, fresh] = row.try_emplace(j, v);
    if (!fresh) {
      pos->second += v;
      if (pos->second.is_zero()) row.erase(pos);
    }
  };
  std::vector<int> gens = M.acting;
  for (int g : gens) {
    Weight dg = M.U->A.gens[g].degree;
    for (const auto& [w, dmw] : M.dims) {
      if (!dmw) continue;
      // constraint: T_{w+dg} * M_g[w] = N_g[w+gamma] * T_w  (both sides into
      // N_{w+gamma+dg}), including the cases where one side vanishes.
      int rows_out = N.dim(w + gamma + dg);
      if (!rows_out) continue;
      auto s1 = slot_of.find(w + dg);  // for T_{w+dg}
      auto s0 = slot_of.find(w);       // for T_w
      if (s1 == slot_of.end() && s0 == slot_of.end()) continue;
      SparseMat Mgt = M.block(g, w).transpose();
      SparseMat Ng = N.block(g, w + gamma);
      // one equation per (row r of N_{w+gamma+dg}, col c of M_w)
      std::vector<SparseRow> local((size_t)rows_out * dmw);
      if (s1 != slot_of.end())
        for (int c = 0; c < Mgt.nrows(); ++c)
          for (const auto& [k, v] : Mgt.row(c))  // Mg[k][c]
            for (int r = 0; r < rows_out; ++r)
              add_entry(local[(size_t)r * dmw + c], var(s1->second, r, k), v);
      if (s0 != slot_of.end())
        for (int r = 0; r < Ng.nrows(); ++r)
          for (const auto& [k, v] : Ng.row(r))
            for (int c = 0; c < dmw; ++c)
              add_entry(local[(size_t)r * dmw + c], var(s0->second, k, c), -v);
      for (auto& row : local)
        if (!row.empty()) eqs.push_back(std::move(row));
    }
  }
  SparseMat system((int)eqs.size(), nvars);
  for (int i = 0; i < (int)eqs.size(); ++i)
    for (const auto& [j, v] : eqs[i]) system.set(i, j, v);
  std::vector<GradedMap> out;
  for (const auto& sol : system.kernel_basis(M.p())) {
    GradedMap f;
    f.gamma = gamma;
    for (const auto& s : slots) {
      SparseMat b(s.rows, s.cols);
      for (const auto& [j, v] : sol)
        if (j >= s.offset && j < s.offset + s.rows * s.cols)
          b.set((j - s.offset) / s.cols, (j - s.offset) % s.cols, v);
      if (!b.is_zero()) f.blocks[s.w] = std::move(b);
    }
    out.push_back(std::move(f));
  }
  return out;
}

/// The image of a degree-0 module map as a submodule of its target, with the
/// action blocks rewritten in a basis of the image.
inline GradedModule image_module(const GradedMap& f, const GradedModule& M,
                                 const GradedModule& N) {
  if (!f.gamma.is_zero()) throw std::invalid_argument("image_module: needs degree 0");
  // column space basis per weight, as columns in N's coordinates
  std::map<Weight, SparseMat> basis;  // dim N_w x image dim
  GradedModule I(*N.U);
  I.acting = N.acting;
  for (const auto& [w, blk] : f.blocks) {
    auto R = blk.transpose().rref();  // row space of transpose = column space
    if (R.rows.empty()) continue;
    SparseMat B(N.dim(w + f.gamma), (int)R.rows.size());
    for (int j = 0; j < (int)R.rows.size(); ++j)
      for (const auto& [i, v] : R.rows[j]) B.set(i, j, v);
    basis[w] = B;
    I.set_dim(w, B.ncols());
  }
  for (int g : N.acting) {
    Weight dg = N.U->A.gens[g].degree;
    for (const auto& [w, B] : basis) {
      auto itn = basis.find(w + dg);
      SparseMat gB = N.block(g, w) * B;
      if (itn == basis.end()) {
        if (!gB.is_zero()) throw std::logic_error("image_module: image not a submodule");
        continue;
      }
      auto X = itn->second.solve(gB);
      if (!X) throw std::logic_error("image_module: image not a submodule");
      I.set_block(g, w, *X);
    }
  }
  require_module(I, "image_module");
  return I;
}

/// Simple module L_lambda for u(sl2)-type data, lambda a dominant weight of
/// X: the image of the canonical (one-dimensional) intertwiner from the
/// lowering Verma of highest weight lambda into the coinduced module of the
/// same highest weight.
inline GradedModule simple_module(const QuantumGroup& U, const Weight& lambda) {
  GradedModule Mm = verma_module(U, lambda, -1);
  GradedModule Cm = coinduced_module(U, lambda);
  auto maps = hom_space(Mm, Cm, Weight(U.rd.rank));
  if (maps.size() != 1)
    throw std::logic_error("simple_module: canonical map not unique (dim = " +
                           std::to_string(maps.size()) + ")");
  return image_module(maps[0], Mm, Cm);
}

/// Tensor product along the coproduct (left modules over a Hopf presentation).
inline GradedModule tensor_module(const GradedModule& M, const GradedModule& N) {
  const QuantumGroup& U = *M.U;
  GradedModule T(U);
  // index pairs (wm, i) x (wn, j) inside each total weight
  struct Pair {
    Weight wm, wn;
    int i, j;
  };
  std::map<Weight, std::vector<Pair>> by_wt;
  for (const auto& [wm, dm] : M.dims)
    for (const auto& [wn, dn] : N.dims)
      for (int i = 0; i < dm; ++i)
        for (int j = 0; j < dn; ++j) by_wt[wm + wn].push_back({wm, wn, i, j});
  std::map<std::tuple<Weight, Weight, int, int>, int> index;
  for (auto& [w, list] : by_wt) {
    T.set_dim(w, (int)list.size());
    for (int k = 0; k < (int)list.size(); ++k)
      index[{list[k].wm, list[k].wn, list[k].i, list[k].j}] = k;
  }
  for (int g : U.A.all_gen_indices()) {
    Weight dg = U.A.gens[g].degree;
    auto delta = U.coproduct(g);
    for (const auto& [w, list] : by_wt) {
      if (!T.dim(w + dg)) continue;
      SparseMat b(T.dim(w + dg), (int)list.size());
      for (int col = 0; col < (int)list.size(); ++col) {
        const Pair& pr = list[col];
        for (const auto& [c, wl, wr] : delta) {
          Weight dl = U.A.weight_of_word(wl), dr = U.A.weight_of_word(wr);
          SparseMat blt = M.word_block(wl, pr.wm).transpose();
          SparseMat brt = N.word_block(wr, pr.wn).transpose();
          for (const auto& [i2, vl] : blt.row(pr.i))
            for (const auto& [j2, vr] : brt.row(pr.j)) {
              auto it = index.find({pr.wm + dl, pr.wn + dr, i2, j2});
              if (it == index.end()) throw std::logic_error("tensor_module: index escape");
              b.add(it->second, col, c * vl * vr);
            }
        }
      }
      if (!b.is_zero()) T.act[g][w] = std::move(b);
    }
  }
  require_module(T, "tensor_module");
  return T;
}

/// Weight twist M<gamma>: the mu-component of M<gamma> is the (gamma+mu)-
/// component of M (so the trivial module twisted by gamma is k_{-gamma}).
inline GradedModule twist_module(const GradedModule& M, const Weight& gamma) {
  GradedModule T = M;
  T.dims.clear();
  for (const auto& [w, d] : M.dims) T.set_dim(w - gamma, d);
  for (int g = 0; g < (int)M.act.size(); ++g) {
    T.act[g].clear();
    for (const auto& [w, b] : M.act[g]) T.act[g][w - gamma] = b;
  }
  return T;
}

/// View over a subalgebra: same underlying graded space, action only defined
/// for the listed generators.
inline GradedModule restrict_module(const GradedModule& M, std::vector<int> acting) {
  GradedModule R = M;
  R.acting = std::move(acting);
  return R;
}

/// Duality: the linear dual of a left u-module as a left module over the
/// Galois twin, via the antiisomorphism phi (a~ . f = f o rho(phi^{-1}(a~))).
/// The w-component of the result is the dual of the w-component of M, and
/// supports coincide.
inline GradedModule dual_module(const GradedModule& M, const DualityTwin& tw) {
  GradedModule D(tw.twin);
  for (const auto& [w, d] : M.dims) D.set_dim(w, d);
  for (int g : tw.twin.A.all_gen_indices()) {
    Weight dg = tw.twin.A.gens[g].degree;
    const Word& pre = tw.phi_inv[g];
    for (const auto& [w, d] : M.dims) {
      if (!D.dim(w + dg)) continue;
      // (g~ f)(m) = f(phi^{-1}(g~) m) for m in the (w+dg)-component of M
      SparseMat b = M.word_block(pre, w + dg).transpose();
      if (M.U->A.weight_of_word(pre) != -dg)
        throw std::logic_error("dual_module: antiisomorphism degree mismatch");
      if (!b.is_zero()) D.act[g][w] = std::move(b);
    }
  }
  require_module(D, "dual_module");
  return D;
}

/// Rank of the evaluation pairing Hom(k, M) x Hom(M, k) -> Hom(k, k) = k;
/// this counts the trivial direct summands split off by M.
inline int max_trivial_summand_rank(const GradedModule& M) {
  const QuantumGroup& U = *M.U;
  Weight zero(U.rd.rank);
  GradedModule K = trivial_module(U, zero);
  auto incl = hom_space(K, M, zero);
  auto proj = hom_space(M, K, zero);
  SparseMat pairing((int)proj.size(), (int)incl.size());
  for (int i = 0; i < (int)proj.size(); ++i)
    for (int j = 0; j < (int)incl.size(); ++j) {
      GradedMap c = compose(proj[i], incl[j], K, M, K);
      auto it = c.blocks.find(zero);
      if (it != c.blocks.end()) pairing.set(i, j, it->second.get(0, 0));
    }
  return pairing.rank();
}

}  // namespace seminf
