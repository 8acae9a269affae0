#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "seminf/weights.hpp"

namespace seminf {

/// One Weyl group element: its matrix acting on root coordinates (columns =
/// images of the simple roots), its length, and the lexicographically
/// smallest reduced word (0-based generator indices).
struct WeylElement {
  std::vector<std::vector<long>> mat;
  int length = 0;
  std::vector<int> word;
};

/// A finite root system built from a Cartan matrix a_ij = <alpha_j, alpha_i^vee>.
/// The symmetrizers d_i are the minimal positive integers with d_i a_ij
/// symmetric; (alpha_i | alpha_j) = d_i a_ij defines the invariant form.
class RootDatum {
 public:
  int rank = 0;
  std::vector<std::vector<int>> cartan;
  std::vector<int> d;                     // symmetrizers
  std::vector<Weight> positive_roots;     // sorted by (height, lex)
  Weight rho;                             // half sum of positive roots
  Weight two_rho;                         // sum of positive roots (integral)
  int coxeter_number = 0;                 // height of highest root + 1
  std::vector<WeylElement> weyl;          // all elements, by (length, word) order
  int longest_index = -1;
  std::vector<Weight> convex_order;       // from the lex-least reduced word of w0

  /// Invariant bilinear form on root-coordinate vectors.
  Rat bilinear(const Weight& a, const Weight& b) const {
    Rat s(0);
    for (int i = 0; i < rank; ++i) {
      if (a.c[i] == 0) continue;
      for (int j = 0; j < rank; ++j) s += a.c[i] * b.c[j] * Rat(d[i] * cartan[i][j]);
    }
    return s;
  }

  /// <alpha_i^vee, w> = (alpha_i | w) / d_i.
  Rat coroot_pairing(int i, const Weight& w) const {
    Rat s(0);
    for (int j = 0; j < rank; ++j) s += w.c[j] * Rat(cartan[i][j]);
    return s;
  }

  /// Simple reflection s_i acting on root coordinates.
  Weight reflect(int i, const Weight& w) const {
    Weight r = w;
    r.c[i] -= coroot_pairing(i, w);
    return r;
  }

  Weight apply(const WeylElement& e, const Weight& w) const {
    Weight r(rank);
    for (int j = 0; j < rank; ++j) {
      if (w.c[j] == 0) continue;
      for (int i = 0; i < rank; ++i) r.c[i] += Rat(e.mat[i][j]) * w.c[j];
    }
    return r;
  }

  /// Coefficients of the Poincare polynomial sum_w t^{l(w)}.
  std::vector<long> poincare_polynomial() const {
    std::vector<long> coeffs;
    for (const auto& e : weyl) {
      if ((int)coeffs.size() <= e.length) coeffs.resize(e.length + 1, 0);
      coeffs[e.length]++;
    }
    return coeffs;
  }
};

namespace detail {
inline long igcd(long a, long b) { return b ? igcd(b, a % b) : (a < 0 ? -a : a); }
}  // namespace detail

/// Builds the full root datum from a Cartan matrix of finite type.
/// Throws std::invalid_argument if the matrix is not a valid finite-type
/// Cartan matrix (diagonal 2, nonpositive integers off-diagonal,
/// symmetrizable with positive-definite symmetrization).
inline RootDatum build_root_datum(const std::vector<std::vector<int>>& cartan) {
  RootDatum rd;
  rd.rank = (int)cartan.size();
  int n = rd.rank;
  if (n == 0) throw std::invalid_argument("root datum: empty Cartan matrix");
  for (const auto& row : cartan)
    if ((int)row.size() != n) throw std::invalid_argument("root datum: Cartan matrix not square");
  for (int i = 0; i < n; ++i) {
    if (cartan[i][i] != 2) throw std::invalid_argument("root datum: diagonal entries must be 2");
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (cartan[i][j] > 0) throw std::invalid_argument("root datum: positive off-diagonal entry");
      if ((cartan[i][j] == 0) != (cartan[j][i] == 0))
        throw std::invalid_argument("root datum: Cartan matrix not symmetrizable");
    }
  }
  rd.cartan = cartan;

  // Symmetrizers: propagate ratios d_i a_ij = d_j a_ji across the Dynkin
  // graph, then clear denominators to minimal positive integers.
  std::vector<Rat> dr(n);
  std::vector<int> seen(n, 0);
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    dr[start] = 1;
    seen[start] = 1;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j) {
        if (i == j || cartan[i][j] == 0) continue;
        Rat dj = dr[i] * Rat(cartan[i][j]) / Rat(cartan[j][i]);
        if (seen[j]) {
          if (dr[j] != dj) throw std::invalid_argument("root datum: not symmetrizable");
        } else {
          dr[j] = dj;
          seen[j] = 1;
          stack.push_back(j);
        }
      }
    }
  }
  long lcm_den = 1;
  for (auto& x : dr) lcm_den = lcm_den / detail::igcd(lcm_den, x.get_den().get_si()) * x.get_den().get_si();
  std::vector<long> di(n);
  long g = 0;
  for (int i = 0; i < n; ++i) {
    di[i] = Rat(dr[i] * Rat(lcm_den)).get_num().get_si();
    g = detail::igcd(g, di[i]);
  }
  rd.d.resize(n);
  for (int i = 0; i < n; ++i) rd.d[i] = (int)(di[i] / g);

  // Finite type <=> symmetrized matrix B_ij = d_i a_ij positive definite
  // (check leading principal minors).
  {
    std::vector<std::vector<Rat>> B(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) B[i][j] = Rat(rd.d[i] * cartan[i][j]);
    for (int k = 1; k <= n; ++k) {
      // determinant of leading k x k block by fraction-free elimination
      std::vector<std::vector<Rat>> m(k, std::vector<Rat>(k));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m[i][j] = B[i][j];
      Rat det(1);
      for (int col = 0; col < k; ++col) {
        int piv = -1;
        for (int r = col; r < k; ++r)
          if (m[r][col] != 0) {
            piv = r;
            break;
          }
        if (piv < 0) {
          det = 0;
          break;
        }
        if (piv != col) {
          std::swap(m[piv], m[col]);
          det = -det;
        }
        det *= m[col][col];
        for (int r = col + 1; r < k; ++r) {
          Rat f = m[r][col] / m[col][col];
          for (int c2 = col; c2 < k; ++c2) m[r][c2] -= f * m[col][c2];
        }
      }
      if (det <= 0) throw std::invalid_argument("root datum: Cartan matrix not of finite type");
    }
  }

  // Positive roots: close the simple roots under all simple reflections,
  // keep the ones with nonnegative coordinates.
  std::set<Weight> roots;
  std::vector<Weight> frontier;
  for (int i = 0; i < n; ++i) {
    Weight a = simple_root(n, i);
    roots.insert(a);
    frontier.push_back(a);
  }
  while (!frontier.empty()) {
    std::vector<Weight> next;
    for (const auto& b : frontier)
      for (int i = 0; i < n; ++i) {
        Weight r = rd.reflect(i, b);
        if (roots.insert(r).second) next.push_back(r);
      }
    frontier = std::move(next);
  }
  for (const auto& r : roots)
    if (r.is_nonneg() && !r.is_zero()) rd.positive_roots.push_back(r);
  std::sort(rd.positive_roots.begin(), rd.positive_roots.end(),
            [](const Weight& a, const Weight& b) {
              if (a.height() != b.height()) return a.height() < b.height();
              return a < b;
            });

  rd.two_rho = Weight(n);
  Rat max_h(0);
  for (const auto& r : rd.positive_roots) {
    rd.two_rho += r;
    if (r.height() > max_h) max_h = r.height();
  }
  rd.rho = rd.two_rho * Rat(1, 2);
  rd.coxeter_number = (int)max_h.get_num().get_si() + 1;

  // Weyl group BFS. Elements keyed by their matrix; levels explored in lex
  // order of words so the first word reaching an element is its lex-least
  // reduced word.
  std::vector<std::vector<long>> id(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) id[i][i] = 1;
  std::map<std::vector<std::vector<long>>, int> index_of;
  rd.weyl.push_back({id, 0, {}});
  index_of[id] = 0;
  std::vector<int> level{0};
  while (!level.empty()) {
    std::vector<int> next;
    for (int idx : level) {
      const WeylElement e = rd.weyl[idx];  // copy: vector may reallocate
      for (int i = 0; i < n; ++i) {
        // matrix of w * s_i : columns are images of alpha_j under w s_i
        std::vector<std::vector<long>> m(n, std::vector<long>(n));
        for (int j = 0; j < n; ++j) {
          Weight col = rd.apply(e, rd.reflect(i, simple_root(n, j)));
          for (int r = 0; r < n; ++r) m[r][j] = col.c[r].get_num().get_si();
        }
        if (index_of.count(m)) continue;
        WeylElement ne;
        ne.mat = m;
        ne.length = e.length + 1;
        ne.word = e.word;
        ne.word.push_back(i);
        index_of[m] = (int)rd.weyl.size();
        next.push_back((int)rd.weyl.size());
        rd.weyl.push_back(std::move(ne));
      }
    }
    level = std::move(next);
  }
  rd.longest_index = 0;
  for (int i = 0; i < (int)rd.weyl.size(); ++i)
    if (rd.weyl[i].length > rd.weyl[rd.longest_index].length) rd.longest_index = i;

  // Convex order on positive roots from the lex-least reduced word of w0:
  // beta_k = s_{i_1} ... s_{i_{k-1}} (alpha_{i_k}).
  const auto& w0 = rd.weyl[rd.longest_index].word;
  if ((int)w0.size() != (int)rd.positive_roots.size())
    throw std::logic_error("root datum: l(w0) != number of positive roots");
  for (size_t k = 0; k < w0.size(); ++k) {
    Weight b = simple_root(n, w0[k]);
    for (size_t j = k; j-- > 0;) b = rd.reflect(w0[j], b);
    rd.convex_order.push_back(b);
  }
  {
    std::set<Weight> check(rd.convex_order.begin(), rd.convex_order.end());
    if (check.size() != rd.positive_roots.size())
      throw std::logic_error("root datum: convex order is not an enumeration of R+");
  }
  return rd;
}

}  // namespace seminf
