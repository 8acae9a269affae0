#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "seminf/presentation.hpp"

namespace seminf {

/// Per-weight change of basis between the monomial basis of a PBW algebra
/// and the product bases N (x) B or B (x) N attached to a partition of the
/// generators. Built lazily one Y-degree at a time so it works for algebras
/// whose total dimension is astronomically large.
class TriangularSplit {
 public:
  TriangularSplit(const PBWAlgebra* A, std::vector<int> nset, std::vector<int> bset,
                  bool n_first = true)
      : A_(A), nset_(std::move(nset)), bset_(std::move(bset)), n_first_(n_first) {
    all_ = nset_;
    all_.insert(all_.end(), bset_.begin(), bset_.end());
    std::sort(all_.begin(), all_.end());
  }

  /// Splits a normal basis monomial into sum_k c_k * (n_k, b_k) with the
  /// product in the chosen order (n*b when n_first, else b*n).
  const std::vector<std::tuple<Mono, Mono, Cyclo>>& decompose(const Mono& m) const {
    Weight w = A_->weight_of(m);
    auto& table = cache_[w];
    if (table.empty()) build_weight(w, table);
    auto it = table.find(m);
    if (it == table.end()) throw std::invalid_argument("TriangularSplit: monomial not in basis");
    return it->second;
  }

  /// Multiplication N_* x B_* -> A_w (or B x N) is bijective at weight w.
  bool bijective_at(const Weight& w) const {
    try {
      std::map<Mono, std::vector<std::tuple<Mono, Mono, Cyclo>>> table;
      build_weight(w, table);
      return true;
    } catch (const std::runtime_error&) {
      return false;
    }
  }

  void split_support(const Mono& m, Mono& npart, Mono& bpart) const {
    npart = Mono(m.size(), 0);
    bpart = Mono(m.size(), 0);
    for (int g : nset_) npart[g] = m[g];
    for (int g : bset_) bpart[g] = m[g];
  }

 private:
  void build_weight(const Weight& w,
                    std::map<Mono, std::vector<std::tuple<Mono, Mono, Cyclo>>>& table) const {
    std::vector<Mono> basis = A_->basis_of_weight(w, all_);
    int n = (int)basis.size();
    if (n == 0) return;
    std::map<Mono, int> index;
    for (int i = 0; i < n; ++i) index[basis[i]] = i;
    // column j: normal form of the ordered product attached to basis[j]
    SparseMat M(n, n);
    for (int j = 0; j < n; ++j) {
      Mono npart, bpart;
      split_support(basis[j], npart, bpart);
      const LinComb& prod =
          n_first_ ? A_->mul_mono(npart, bpart) : A_->mul_mono(bpart, npart);
      for (const auto& [mono, c] : prod) {
        auto it = index.find(mono);
        if (it == index.end())
          throw std::runtime_error("TriangularSplit: product escaped the weight component");
        M.set(it->second, j, c);
      }
    }
    auto X = M.solve(SparseMat::identity(n, A_->p));
    if (!X)
      throw std::runtime_error("TriangularSplit: multiplication not bijective at weight " +
                               w.to_string());
    for (int i = 0; i < n; ++i) {
      std::vector<std::tuple<Mono, Mono, Cyclo>> dec;
      for (int j = 0; j < n; ++j) {
        Cyclo c = X->get(j, i);
        if (c.is_zero()) continue;
        Mono npart, bpart;
        split_support(basis[j], npart, bpart);
        dec.emplace_back(std::move(npart), std::move(bpart), std::move(c));
      }
      table[basis[i]] = std::move(dec);
    }
  }

  const PBWAlgebra* A_;
  std::vector<int> nset_, bset_, all_;
  bool n_first_;
  mutable std::map<Weight, std::map<Mono, std::vector<std::tuple<Mono, Mono, Cyclo>>>> cache_;
};

struct TriangularReport {
  bool ok = true;
  std::string failure;
  int weights_checked = 0;
};

/// Verifies the triangular-decomposition axioms for a generator partition
/// (N | B): N graded in the positive cone minus 0, B in the opposite cone
/// union 0, and multiplication N (x) B -> A and B (x) N -> A bijective in
/// each Y-degree with |height| <= height_bound.
inline TriangularReport verify_triangular(const PBWAlgebra& A, const std::vector<int>& nset,
                                          const std::vector<int>& bset, long height_bound) {
  TriangularReport rep;
  auto fail = [&rep](const std::string& why) {
    rep.ok = false;
    if (rep.failure.empty()) rep.failure = why;
  };
  std::set<int> seen;
  for (int g : nset) seen.insert(g);
  for (int g : bset) seen.insert(g);
  if ((int)seen.size() != A.ngens() || (int)(nset.size() + bset.size()) != A.ngens()) {
    fail("generator sets do not partition the generators");
    return rep;
  }
  for (int g : nset) {
    const Weight& d = A.gens[g].degree;
    if (!d.is_integral() || !d.is_nonneg() || d.is_zero())
      fail("N generator " + A.gens[g].name + " not graded in the positive cone minus 0");
  }
  for (int g : bset) {
    const Weight& d = A.gens[g].degree;
    if (!d.is_integral() || !(-d).is_nonneg())
      fail("B generator " + A.gens[g].name + " not graded in the nonpositive cone");
  }
  if (!rep.ok) return rep;

  TriangularSplit nb(&A, nset, bset, true);
  TriangularSplit bn(&A, nset, bset, false);
  int rank = A.gens.empty() ? 0 : A.gens[0].degree.rank();
  // iterate integer weight vectors in the box [-H, H]^rank
  std::vector<long> v(rank, -height_bound);
  while (true) {
    Weight w(rank);
    for (int i = 0; i < rank; ++i) w.c[i] = Rat(v[i]);
    if (!A.basis_of_weight(w, A.all_gen_indices()).empty()) {
      ++rep.weights_checked;
      if (!nb.bijective_at(w)) fail("N (x) B -> A not bijective at " + w.to_string());
      if (!bn.bijective_at(w)) fail("B (x) N -> A not bijective at " + w.to_string());
    }
    int i = 0;
    for (; i < rank; ++i) {
      if (v[i] < height_bound) {
        ++v[i];
        break;
      }
      v[i] = -height_bound;
    }
    if (i == rank) break;
  }
  return rep;
}

/// Dense multiplication table of a (small) presented algebra: the whole
/// monomial basis with structure constants, plus the Y-grading. Used by the
/// Frobenius-form search and the semiregular construction.
struct MulTable {
  int p = 0;
  int unit = -1;
  std::vector<Mono> basis;
  std::vector<Weight> wt;
  std::vector<std::vector<SparseRow>> mul;  // mul[i][j] = coords of e_i e_j

  int dim() const { return (int)basis.size(); }
};

inline MulTable make_mul_table(const PBWAlgebra& A) {
  MulTable T;
  T.p = A.p;
  T.basis = A.full_basis(A.all_gen_indices());
  if (T.basis.size() > 4000) throw std::length_error("make_mul_table: algebra too large");
  std::map<Mono, int> index;
  for (int i = 0; i < (int)T.basis.size(); ++i) {
    index[T.basis[i]] = i;
    T.wt.push_back(A.weight_of(T.basis[i]));
    if (T.basis[i] == A.unit()) T.unit = i;
  }
  T.mul.assign(T.dim(), std::vector<SparseRow>(T.dim()));
  for (int i = 0; i < T.dim(); ++i)
    for (int j = 0; j < T.dim(); ++j)
      for (const auto& [m, c] : A.mul_mono(T.basis[i], T.basis[j])) T.mul[i][j][index.at(m)] = c;
  return T;
}

}  // namespace seminf
