#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "seminf/root_datum.hpp"
#include "seminf/weights.hpp"

namespace seminf {

/// One monomial e^mu t^a s^b of a graded character series.
struct SeriesKey {
  Weight mu;
  int t = 0, s = 0;
  bool operator<(const SeriesKey& o) const {
    return std::tie(mu, t, s) < std::tie(o.mu, o.t, o.s);
  }
  bool operator==(const SeriesKey& o) const { return mu == o.mu && t == o.t && s == o.s; }
};

/// Truncated character series: finitely many monomials, exact for all
/// X-degrees mu with |height(mu)| <= the truncation bound used to build it.
using Series = std::map<SeriesKey, long>;

inline void series_add(Series& a, const SeriesKey& k, long v) {
  if (!v) return;
  auto [it, fresh] = a.try_emplace(k, v);
  if (!fresh && !(it->second += v)) a.erase(it);
}

inline Series series_monomial(const Weight& mu, int t, int s, long v = 1) {
  Series out;
  series_add(out, {mu, t, s}, v);
  return out;
}

inline Series series_mul(const Series& a, const Series& b, const Rat& hmax) {
  Series out;
  for (const auto& [ka, va] : a)
    for (const auto& [kb, vb] : b) {
      Weight mu = ka.mu + kb.mu;
      Rat h = mu.height();
      if (h < -hmax || hmax < h) continue;
      series_add(out, {mu, ka.t + kb.t, ka.s + kb.s}, va * vb);
    }
  return out;
}

/// 1 / (1 - x) expanded as a geometric series, truncated at X-height hmax.
/// x must have strictly one-signed nonzero heights so the expansion is
/// locally finite.
inline Series series_geom_inv(const Series& x, const Rat& hmax) {
  for (const auto& [k, v] : x)
    if (k.mu.height() == 0)
      throw std::invalid_argument("series_geom_inv: ratio has a height-zero term");
  Series out = series_monomial(Weight(x.empty() ? 0 : x.begin()->first.mu.rank()), 0, 0);
  Series pw = out;
  for (;;) {
    pw = series_mul(pw, x, hmax);
    if (pw.empty()) return out;
    for (const auto& [k, v] : pw) series_add(out, k, v);
  }
}

inline long series_coeff(const Series& a, const Weight& mu, int t, int s) {
  auto it = a.find({mu, t, s});
  return it == a.end() ? 0 : it->second;
}

/// The character formulas compared by the engine, all returned exactly up
/// to X-height hmax (in either direction).
namespace charf {

inline Series one(const RootDatum& rd) { return series_monomial(Weight(rd.rank), 0, 0); }

/// ch of Ext over u^- of (k, k):  sum_w e^{rho - w(rho)} t^{l(w)} /
/// prod_{a>0} (1 - e^{pa} t^2).
inline Series gk_minus(const RootDatum& rd, int p, const Rat& hmax) {
  Series num;
  for (const auto& w : rd.weyl)
    series_add(num, {rd.rho - rd.apply(w, rd.rho), w.length, 0}, 1);
  Series out = num;
  for (const auto& a : rd.positive_roots)
    out = series_mul(out, series_geom_inv(series_monomial(a * Rat(p), 2, 0), hmax), hmax);
  return out;
}

/// Conjectural highest-weight character of a minimal u^- -free resolution:
/// sum_w e^{w(rho) - rho} t^{l(w)} / prod_{a>0} (1 - e^{-pa} t^2).
inline Series conj_min_resolution(const RootDatum& rd, int p, const Rat& hmax) {
  Series num;
  for (const auto& w : rd.weyl)
    series_add(num, {rd.apply(w, rd.rho) - rd.rho, w.length, 0}, 1);
  Series out = num;
  for (const auto& a : rd.positive_roots)
    out = series_mul(out, series_geom_inv(series_monomial(a * Rat(-p), 2, 0), hmax), hmax);
  return out;
}

/// Rank-one closed form of the semiinfinite Ext character of (k, k<p l>):
/// e^{pa} (t + 1/t) / ((1 - e^{pa} t^2)(1 - e^{pa} t^{-2})).
inline Series sl2_seminf(const RootDatum& rd, int p, const Rat& hmax) {
  if (rd.rank != 1) throw std::invalid_argument("sl2_seminf: rank one only");
  Weight pa = rd.positive_roots[0] * Rat(p);
  Series num;
  series_add(num, {pa, 1, 0}, 1);
  series_add(num, {pa, -1, 0}, 1);
  Series out = series_mul(num, series_geom_inv(series_monomial(pa, 2, 0), hmax), hmax);
  return series_mul(out, series_geom_inv(series_monomial(pa, -2, 0), hmax), hmax);
}

/// Semiinfinite Ext character of (k, k<p l>), over u and over its associated
/// graded: t^{-dim n^-} e^{2 p rho} sum_w t^{2 l(w)} /
/// prod_{a>0} (1 - e^{pa} t^2)(1 - e^{pa} t^{-2}).
inline Series seminf_trivial(const RootDatum& rd, int p, const Rat& hmax) {
  int dimn = (int)rd.positive_roots.size();
  Series out;
  for (const auto& w : rd.weyl)
    series_add(out, {rd.two_rho * Rat(p), 2 * w.length - dimn, 0}, 1);
  for (const auto& a : rd.positive_roots) {
    out = series_mul(out, series_geom_inv(series_monomial(a * Rat(p), 2, 0), hmax), hmax);
    out = series_mul(out, series_geom_inv(series_monomial(a * Rat(p), -2, 0), hmax), hmax);
  }
  return out;
}

/// Borel Ext character of (k, k_mu<p l>) for mu = w(rho) - rho:
/// t^{l(w)} / prod_{a>0} (1 - e^{pa} t^2); zero for other mu.
inline Series borel_ext(const RootDatum& rd, int p, const WeylElement& w, const Rat& hmax) {
  Series out = series_monomial(Weight(rd.rank), w.length, 0);
  for (const auto& a : rd.positive_roots)
    out = series_mul(out, series_geom_inv(series_monomial(a * Rat(p), 2, 0), hmax), hmax);
  return out;
}

/// Character of the local cohomology of the cotangent bundle of the flag
/// variety along the nilpotent-cone lagrangian:
/// e^{2 rho} sum_w t^{l(w)} / prod_{a>0} (1 - e^a t)(1 - e^a t^{-1}),
/// times s^{dim n^-}.
inline Series lagrangian_local(const RootDatum& rd, const Rat& hmax) {
  int dimn = (int)rd.positive_roots.size();
  Series out;
  for (const auto& w : rd.weyl) series_add(out, {rd.two_rho, w.length, dimn}, 1);
  for (const auto& a : rd.positive_roots) {
    out = series_mul(out, series_geom_inv(series_monomial(a, 1, 0), hmax), hmax);
    out = series_mul(out, series_geom_inv(series_monomial(a, -1, 0), hmax), hmax);
  }
  return out;
}

/// Left side of the combinatorial identity used for the localization count:
/// sum_w t^{l(w)} prod_{a>0, wa>0} (1 - e^a t) prod_{a>0, wa<0} (1 - e^a/t).
inline Series orbit_sum_lhs(const RootDatum& rd, const Rat& hmax) {
  Series out;
  for (const auto& w : rd.weyl) {
    Series term = series_monomial(Weight(rd.rank), w.length, 0);
    for (const auto& a : rd.positive_roots) {
      bool flips = !rd.apply(w, a).is_nonneg();
      Series f = one(rd);
      series_add(f, {a, flips ? -1 : 1, 0}, -1);
      term = series_mul(term, f, hmax);
    }
    for (const auto& [k, v] : term) series_add(out, k, v);
  }
  return out;
}

/// Right side of the same identity: prod_{a>0} (1 - e^a t) * sum_w t^{l(w)}.
inline Series orbit_sum_rhs(const RootDatum& rd, const Rat& hmax) {
  Series pw;
  for (const auto& w : rd.weyl) series_add(pw, {Weight(rd.rank), w.length, 0}, 1);
  for (const auto& a : rd.positive_roots) {
    Series f = one(rd);
    series_add(f, {a, 1, 0}, -1);
    pw = series_mul(pw, f, hmax);
  }
  return pw;
}

}  // namespace charf

/// Substitution e^mu -> e^{p mu}, t -> t^2, s -> t^{-1} (maps the flag
/// variety character onto the quantum group one).
inline Series series_substitute_pt(const Series& a, int p) {
  Series out;
  for (const auto& [k, v] : a) series_add(out, {k.mu * Rat(p), 2 * k.t - k.s, 0}, v);
  return out;
}

/// Rank-one fusion coefficients at level p - 2 (labels 0..p-2): the rank of
/// the space of invariants in L_{m1} (x) ... (x) L_{mk}, computed by the
/// standard truncated Clebsch-Gordan recursion.
inline long verlinde_invariants_sl2(int p, const std::vector<int>& labels) {
  int level = p - 2;
  std::vector<long> state(level + 1, 0);
  state[0] = 1;
  for (int m : labels) {
    if (m < 0 || m > level) throw std::invalid_argument("verlinde: label out of range");
    std::vector<long> next(level + 1, 0);
    for (int a = 0; a <= level; ++a) {
      if (!state[a]) continue;
      for (int c = std::abs(a - m); c <= std::min(a + m, 2 * level - a - m); c += 2)
        next[c] += state[a];
    }
    state = std::move(next);
  }
  return state[0];
}

}  // namespace seminf
