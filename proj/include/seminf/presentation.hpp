#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "seminf/linalg.hpp"
#include "seminf/weights.hpp"

namespace seminf {

/// Exponent vector in generator order; the normal (PBW-style) monomial basis.
using Mono = std::vector<int>;

/// Unreduced word: (generator index, exponent >= 1) factors, left to right.
using Word = std::vector<std::pair<int, int>>;

/// Linear combination of normal monomials.
using LinComb = std::map<Mono, Cyclo>;

/// One generator of a presented algebra.
struct Generator {
  std::string name;
  Weight degree;  // Y-grading degree
  int power;      // normal exponents live in [0, power); g^power rewrites
};

/// Straightening rule for a descending adjacent pair g_j g_i (j > i).
struct SwapRule {
  bool scalar = true;
  Cyclo factor;                                // g_j g_i = factor * g_i g_j
  std::vector<std::pair<Cyclo, Word>> terms;   // general right-hand side
};

/// A finite-dimensional algebra presented by a PBW-type confluent rewriting
/// system: ordered generators, scalar or small general straightening rules
/// for each descending pair, and a rewrite for each generator power bound.
/// Every element has a unique normal form sum c_m * g_0^{m_0} ... g_k^{m_k}.
class PBWAlgebra {
 public:
  int p = 0;  // order of the root of unity; field is Q(zeta_p)
  std::vector<Generator> gens;

  explicit PBWAlgebra(int p_) : p(p_) {}

  int add_generator(const std::string& name, const Weight& degree, int power) {
    if (power < 1) throw std::invalid_argument("add_generator: power bound must be >= 1");
    gens.push_back({name, degree, power});
    int idx = (int)gens.size() - 1;
    swap_.resize(gens.size());
    swap_.back().resize(idx);
    power_rule_.resize(gens.size());
    return idx;
  }

  void set_scalar_swap(int j, int i, const Cyclo& factor) {
    rule_at(j, i) = SwapRule{true, factor, {}};
  }
  void set_general_swap(int j, int i, std::vector<std::pair<Cyclo, Word>> terms) {
    rule_at(j, i) = SwapRule{false, Cyclo(), std::move(terms)};
  }
  /// g_i^{power_i} = sum of terms (empty vector means 0; empty Word means 1).
  void set_power_rule(int i, std::vector<std::pair<Cyclo, Word>> terms) {
    power_rule_[i] = std::move(terms);
  }

  int ngens() const { return (int)gens.size(); }
  Mono unit() const { return Mono(gens.size(), 0); }

  Weight weight_of(const Mono& m) const {
    Weight w(gens.empty() ? 0 : gens[0].degree.rank());
    for (size_t i = 0; i < m.size(); ++i)
      if (m[i]) w += gens[i].degree * Rat(m[i]);
    return w;
  }
  Weight weight_of_word(const Word& w) const {
    Weight acc(gens.empty() ? 0 : gens[0].degree.rank());
    for (const auto& [g, e] : w) acc += gens[g].degree * Rat(e);
    return acc;
  }

  /// Normal form of a linear combination of words.
  LinComb normal_form(std::vector<std::pair<Cyclo, Word>> work) const {
    LinComb out;
    while (!work.empty()) {
      auto [coeff, word] = std::move(work.back());
      work.pop_back();
      if (coeff.is_zero()) continue;
      if (!straighten(coeff, word, work)) continue;  // emitted new work items
      // word is now normal: ascending generators, exponents within bounds
      Mono m = unit();
      for (const auto& [g, e] : word) m[g] = e;
      auto [pos, fresh] = out.try_emplace(m, coeff);
      if (!fresh) {
        pos->second += coeff;
        if (pos->second.is_zero()) out.erase(pos);
      }
    }
    return out;
  }

  /// Structure constants: product of two normal monomials (memoized).
  const LinComb& mul_mono(const Mono& a, const Mono& b) const {
    std::scoped_lock lk(*mu_);
    auto key = std::make_pair(a, b);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Word w = mono_to_word(a);
    Word wb = mono_to_word(b);
    w.insert(w.end(), wb.begin(), wb.end());
    LinComb r = normal_form({{Cyclo::one(p), w}});
    return memo_.emplace(std::move(key), std::move(r)).first->second;
  }

  LinComb mul(const LinComb& a, const LinComb& b) const {
    LinComb out;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) {
        Cyclo c = ca * cb;
        if (c.is_zero()) continue;
        for (const auto& [m, cm] : mul_mono(ma, mb)) {
          auto [pos, fresh] = out.try_emplace(m, cm * c);
          if (!fresh) {
            pos->second += cm * c;
            if (pos->second.is_zero()) out.erase(pos);
          }
        }
      }
    return out;
  }

  static Word mono_to_word(const Mono& m) {
    Word w;
    for (size_t i = 0; i < m.size(); ++i)
      if (m[i]) w.push_back({(int)i, m[i]});
    return w;
  }

  /// All normal monomials supported on `gen_subset` (ascending indices) with
  /// the given Y-degree. Enumerated lazily with cone pruning, so this stays
  /// cheap even when the full basis is astronomically large.
  std::vector<Mono> basis_of_weight(const Weight& w, const std::vector<int>& gen_subset) const {
    int rank = w.rank();
    size_t k = gen_subset.size();
    // suffix coordinate ranges reachable from position i onward
    std::vector<Weight> suf_lo(k + 1, Weight(rank)), suf_hi(k + 1, Weight(rank));
    for (size_t i = k; i-- > 0;) {
      const Generator& g = gens[gen_subset[i]];
      Weight top = g.degree * Rat(g.power - 1);
      suf_lo[i] = suf_lo[i + 1];
      suf_hi[i] = suf_hi[i + 1];
      for (int r = 0; r < rank; ++r) {
        Rat a(0), b = top.c[r];
        if (b < a) std::swap(a, b);
        suf_lo[i].c[r] += a;
        suf_hi[i].c[r] += b;
      }
    }
    std::vector<Mono> out;
    Mono cur = unit();
    dfs_basis(w, gen_subset, 0, cur, suf_lo, suf_hi, out);
    return out;
  }

  /// All weights of normal monomials on `gen_subset` whose every exponent is
  /// within bounds; only safe for small subsets (used for borels, tensor
  /// factors of bar terms, etc.).
  std::vector<Mono> full_basis(const std::vector<int>& gen_subset) const {
    std::vector<Mono> out{unit()};
    for (int g : gen_subset) {
      std::vector<Mono> next;
      next.reserve(out.size() * gens[g].power);
      for (const auto& m : out)
        for (int e = 0; e < gens[g].power; ++e) {
          Mono m2 = m;
          m2[g] = e;
          next.push_back(std::move(m2));
        }
      out = std::move(next);
      if (out.size() > 2000000) throw std::length_error("full_basis: too large");
    }
    return out;
  }

  std::vector<int> all_gen_indices() const {
    std::vector<int> v(gens.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = (int)i;
    return v;
  }

  const SwapRule& swap_rule(int j, int i) const { return swap_[j][i]; }
  const std::vector<std::pair<Cyclo, Word>>& power_rule(int i) const { return power_rule_[i]; }

  /// Expands one application of the swap rule for the descending pair (a, b)
  /// as a linear combination of words.
  std::vector<std::pair<Cyclo, Word>> swap_once(int a, int b) const {
    const SwapRule& r = swap_[a][b];
    if (r.scalar) {
      if (r.factor.is_zero()) throw std::logic_error("swap_once: missing rule");
      return {{r.factor, {{b, 1}, {a, 1}}}};
    }
    return r.terms;
  }

  /// Local confluence (diamond) check on all overlapping rule applications:
  /// descending triples a > b > c, and overlaps of power rules with swaps.
  /// Throws std::logic_error naming the first failing overlap.
  void check_confluence() const {
    auto splice = [](const Word& pre, const std::vector<std::pair<Cyclo, Word>>& mid,
                     const Word& post, const Cyclo& outer) {
      std::vector<std::pair<Cyclo, Word>> out;
      for (const auto& [c, w] : mid) {
        Word full = pre;
        full.insert(full.end(), w.begin(), w.end());
        full.insert(full.end(), post.begin(), post.end());
        out.push_back({outer * c, full});
      }
      return out;
    };
    auto expect_equal = [this](std::vector<std::pair<Cyclo, Word>> lhs,
                               std::vector<std::pair<Cyclo, Word>> rhs,
                               const std::string& what) {
      if (normal_form(std::move(lhs)) != normal_form(std::move(rhs)))
        throw std::logic_error("presentation not confluent at overlap " + what);
    };
    Cyclo one = Cyclo::one(p);
    int n = ngens();
    for (int a = 0; a < n; ++a) {
      // power-power overlap g^{P+1}
      expect_equal(splice({}, power_rule_[a], {{a, 1}}, one),
                   splice({{a, 1}}, power_rule_[a], {}, one),
                   gens[a].name + "^power overlap");
      for (int b = 0; b < a; ++b) {
        // g_a^{P_a} g_b: rewrite the power first or peel one a and swap
        expect_equal(splice({}, power_rule_[a], {{b, 1}}, one),
                     splice({{a, gens[a].power - 1}}, swap_once(a, b), {}, one),
                     gens[a].name + "^power * " + gens[b].name);
        // g_a g_b^{P_b}
        expect_equal(splice({{a, 1}}, power_rule_[b], {}, one),
                     splice({}, swap_once(a, b), {{b, gens[b].power - 1}}, one),
                     gens[a].name + " * " + gens[b].name + "^power");
        for (int c = 0; c < b; ++c)
          // descending triple a > b > c
          expect_equal(splice({}, swap_once(a, b), {{c, 1}}, one),
                       splice({{a, 1}}, swap_once(b, c), {}, one),
                       gens[a].name + gens[b].name + gens[c].name);
      }
    }
  }

 private:
  SwapRule& rule_at(int j, int i) {
    if (j <= i || j >= ngens()) throw std::invalid_argument("swap rule: need j > i");
    return swap_[j][i];
  }

  // Returns true if `word` is in normal form; otherwise pushes the rewritten
  // pieces onto `work` and returns false. May modify word/coeff in place for
  // the cheap cases (merges, scalar swaps, power splits) without recursion.
  bool straighten(Cyclo& coeff, Word& word, std::vector<std::pair<Cyclo, Word>>& work) const {
    for (size_t pos = 0; pos < word.size();) {
      auto& [g, e] = word[pos];
      if (e == 0) {
        word.erase(word.begin() + pos);
        continue;
      }
      if (e >= gens[g].power) {
        // g^e = g^{e-power} * (power rule)
        const auto& rule = power_rule_[g];
        int rest = e - gens[g].power;
        for (const auto& [rc, rw] : rule) {
          Word nw(word.begin(), word.begin() + pos);
          if (rest) nw.push_back({g, rest});
          nw.insert(nw.end(), rw.begin(), rw.end());
          nw.insert(nw.end(), word.begin() + pos + 1, word.end());
          work.push_back({coeff * rc, std::move(nw)});
        }
        return false;
      }
      if (pos + 1 < word.size()) {
        auto& [g2, e2] = word[pos + 1];
        if (g2 == g) {
          e += e2;
          word.erase(word.begin() + pos + 1);
          continue;
        }
        if (g > g2) {
          const SwapRule& r = swap_[g][g2];
          if (r.scalar) {
            if (r.factor.is_zero()) throw std::logic_error("missing swap rule");
            coeff *= r.factor.pow((long)e * e2);
            std::swap(word[pos], word[pos + 1]);
            if (pos) --pos;  // the swap may create a new violation on the left
            continue;
          }
          // general: g^e h^{e2} = g^{e-1} (g h) h^{e2-1}
          for (const auto& [rc, rw] : r.terms) {
            Word nw(word.begin(), word.begin() + pos);
            if (e > 1) nw.push_back({g, e - 1});
            nw.insert(nw.end(), rw.begin(), rw.end());
            if (e2 > 1) nw.push_back({g2, e2 - 1});
            nw.insert(nw.end(), word.begin() + pos + 2, word.end());
            work.push_back({coeff * rc, std::move(nw)});
          }
          return false;
        }
      }
      ++pos;
    }
    return true;
  }

  void dfs_basis(const Weight& target, const std::vector<int>& sub, size_t i, Mono& cur,
                 const std::vector<Weight>& suf_lo, const std::vector<Weight>& suf_hi,
                 std::vector<Mono>& out) const {
    // prune: remaining weight must be componentwise reachable
    for (int r = 0; r < target.rank(); ++r)
      if (target.c[r] < suf_lo[i].c[r] || target.c[r] > suf_hi[i].c[r]) return;
    if (i == sub.size()) {
      if (target.is_zero()) out.push_back(cur);
      return;
    }
    const Generator& g = gens[sub[i]];
    for (int e = 0; e < g.power; ++e) {
      cur[sub[i]] = e;
      dfs_basis(target - g.degree * Rat(e), sub, i + 1, cur, suf_lo, suf_hi, out);
    }
    cur[sub[i]] = 0;
  }

  std::vector<std::vector<SwapRule>> swap_;
  std::vector<std::vector<std::pair<Cyclo, Word>>> power_rule_;
  mutable std::map<std::pair<Mono, Mono>, LinComb> memo_;
  // held by pointer so the algebra stays movable
  mutable std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
};

}  // namespace seminf
