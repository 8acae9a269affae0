#pragma once

#include <stdexcept>
#include <tuple>
#include <vector>

#include "seminf/presentation.hpp"
#include "seminf/root_datum.hpp"

namespace seminf {

/// A small quantum group (or its associated graded) with triangular
/// generator ordering: raising generators first, then grouplike K_i, then
/// lowering generators. The field is Q(zeta_p) and the deformation
/// parameter is zeta^{zeta_exp} (zeta_exp = -1 gives the Galois twin used
/// for duality).
struct QuantumGroup {
  RootDatum rd;
  int p = 0;
  long zeta_exp = 1;
  PBWAlgebra A;
  std::vector<int> e_gens, k_gens, f_gens;
  bool has_coproduct = false;

  explicit QuantumGroup(int p_) : p(p_), A(p_) {}

  Cyclo q(long e) const { return Cyclo::zeta_pow(p, zeta_exp * e); }

  std::vector<int> plus_part() const { return e_gens; }
  std::vector<int> minus_part() const { return f_gens; }
  std::vector<int> zero_part() const { return k_gens; }
  std::vector<int> borel_plus() const { return cat(e_gens, k_gens); }
  std::vector<int> borel_minus() const { return cat(k_gens, f_gens); }

  /// lambda lies in the weight lattice X iff all coroot pairings are integral.
  bool in_X(const Weight& lambda) const {
    for (int i = 0; i < rd.rank; ++i)
      if (rd.coroot_pairing(i, lambda).get_den() != 1) return false;
    return true;
  }

  /// Scalar by which K_i acts on a weight-lambda vector: zeta^{(alpha_i|lambda)}.
  /// (The exponent (alpha_i|lambda) = d_i <alpha_i^vee, lambda> matches the
  /// defining relation K_i E_beta = zeta^{(alpha_i|beta)} E_beta K_i.)
  Cyclo k_scalar(int i, const Weight& lambda) const {
    Rat e = rd.bilinear(simple_root(rd.rank, i), lambda);
    if (e.get_den() != 1) throw std::invalid_argument("k_scalar: weight not in X");
    return q(e.get_num().get_si());
  }

  bool is_k(int gen) const {
    for (int k : k_gens)
      if (k == gen) return true;
    return false;
  }

  /// Coproduct of a generator: sum of (coeff, left word, right word).
  /// Only defined for the honest quantum group (not the associated graded).
  std::vector<std::tuple<Cyclo, Word, Word>> coproduct(int gen) const {
    if (!has_coproduct) throw std::logic_error("coproduct: not a Hopf presentation");
    // sl2 only: Delta(E) = E(x)1 + K(x)E, Delta(F) = F(x)K^{-1} + 1(x)F,
    // Delta(K) = K(x)K.
    int E = e_gens[0], K = k_gens[0], F = f_gens[0];
    Cyclo one = Cyclo::one(p);
    if (gen == E)
      return {{one, {{E, 1}}, {}}, {one, {{K, 1}}, {{E, 1}}}};
    if (gen == F)
      return {{one, {{F, 1}}, {{K, 2 * p - 1}}}, {one, {}, {{F, 1}}}};
    if (gen == K)
      return {{one, {{K, 1}}, {{K, 1}}}};
    throw std::invalid_argument("coproduct: unknown generator");
  }

 private:
  static std::vector<int> cat(std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }
};

/// The small quantum group u_zeta(sl2): generators E, K, F with
///   K E = zeta^2 E K,  F K = zeta^2 K F,
///   F E = E F - (K - K^{-1}) / (zeta - zeta^{-1}),
///   E^p = F^p = 0,  K^{2p} = 1.
/// PBW basis E^a K^b F^c, dimension 2 p^3.
inline QuantumGroup build_u_sl2(int p, long zeta_exp = 1) {
  QuantumGroup u(p);
  u.zeta_exp = zeta_exp;
  u.rd = build_root_datum({{2}});
  u.has_coproduct = true;
  Weight alpha = simple_root(1, 0);
  int E = u.A.add_generator("E", alpha, p);
  int K = u.A.add_generator("K", Weight(1), 2 * p);
  int F = u.A.add_generator("F", -alpha, p);
  u.e_gens = {E};
  u.k_gens = {K};
  u.f_gens = {F};
  Cyclo one = Cyclo::one(p);
  Cyclo z = u.q(1);
  u.A.set_scalar_swap(K, E, z.pow(2));
  u.A.set_scalar_swap(F, K, z.pow(2));
  Cyclo c = (z - z.inverse()).inverse();
  u.A.set_general_swap(F, E, {{one, {{E, 1}, {F, 1}}},
                              {-c, {{K, 1}}},
                              {c, {{K, 2 * p - 1}}}});
  u.A.set_power_rule(K, {{one, {}}});
  // E^p = F^p = 0 are the defaults (empty rewrite)
  u.A.check_confluence();
  return u;
}

/// The associated graded algebra of the small quantum group of a finite root
/// datum with respect to its triangular filtration: for each positive root
/// beta (in convex order) a raising generator x_beta and a lowering generator
/// y_beta, plus grouplikes K_i, subject only to the q-commutation rules
///   x_beta x_gamma = zeta^{-(beta|gamma)} x_gamma x_beta   (beta > gamma),
///   y_beta y_gamma = zeta^{ (beta|gamma)} y_gamma y_beta   (beta > gamma),
///   K_i x_gamma = zeta^{ (alpha_i|gamma)} x_gamma K_i,
///   K_i y_gamma = zeta^{-(alpha_i|gamma)} y_gamma K_i,
///   y_beta x_gamma = x_gamma y_beta,
///   x^p = y^p = 0,  K_i^{2p} = 1.
inline QuantumGroup build_gr_u(const RootDatum& rd, int p, long zeta_exp = 1) {
  QuantumGroup g(p);
  g.zeta_exp = zeta_exp;
  g.rd = rd;
  int N = (int)rd.convex_order.size();
  auto ipair = [&](const Weight& a, const Weight& b) -> long {
    Rat r = rd.bilinear(a, b);
    if (r.get_den() != 1) throw std::logic_error("root pairing not integral");
    return r.get_num().get_si();
  };
  for (int k = 0; k < N; ++k)
    g.e_gens.push_back(g.A.add_generator("x" + std::to_string(k + 1), rd.convex_order[k], p));
  for (int i = 0; i < rd.rank; ++i)
    g.k_gens.push_back(g.A.add_generator("K" + std::to_string(i + 1), Weight(rd.rank), 2 * p));
  for (int k = 0; k < N; ++k)
    g.f_gens.push_back(g.A.add_generator("y" + std::to_string(k + 1), -rd.convex_order[k], p));
  Cyclo one = Cyclo::one(p);
  for (int b = 0; b < N; ++b)
    for (int a = 0; a < b; ++a) {
      long pr = ipair(rd.convex_order[b], rd.convex_order[a]);
      g.A.set_scalar_swap(g.e_gens[b], g.e_gens[a], g.q(-pr));
      g.A.set_scalar_swap(g.f_gens[b], g.f_gens[a], g.q(pr));
    }
  for (int i = 0; i < rd.rank; ++i) {
    Weight ai = simple_root(rd.rank, i);
    for (int a = 0; a < N; ++a) {
      long pr = ipair(ai, rd.convex_order[a]);
      g.A.set_scalar_swap(g.k_gens[i], g.e_gens[a], g.q(pr));
      g.A.set_scalar_swap(g.f_gens[a], g.k_gens[i], g.q(pr));
    }
    for (int j = 0; j < i; ++j) g.A.set_scalar_swap(g.k_gens[i], g.k_gens[j], one);
    g.A.set_power_rule(g.k_gens[i], {{one, {}}});
  }
  for (int b = 0; b < N; ++b)
    for (int a = 0; a < N; ++a) g.A.set_scalar_swap(g.f_gens[b], g.e_gens[a], one);
  g.A.check_confluence();
  return g;
}

/// The Galois twin of u_zeta(sl2) (parameter zeta^{-1}) together with the
/// antiisomorphism phi: u -> u~ sending E -> F~, F -> E~, K -> K~^{-1},
/// returned as the image word of each generator of u.
struct DualityTwin {
  QuantumGroup twin;
  std::vector<Word> phi;      // indexed by generator of the source algebra
  std::vector<Word> phi_inv;  // indexed by generator of the twin
};

inline DualityTwin build_sl2_twin(const QuantumGroup& u) {
  DualityTwin d{build_u_sl2(u.p, -u.zeta_exp), {}, {}};
  int E = u.e_gens[0], K = u.k_gens[0], F = u.f_gens[0];
  int Et = d.twin.e_gens[0], Kt = d.twin.k_gens[0], Ft = d.twin.f_gens[0];
  d.phi.resize(3);
  d.phi[E] = {{Ft, 1}};
  d.phi[K] = {{Kt, 2 * u.p - 1}};
  d.phi[F] = {{Et, 1}};
  d.phi_inv.resize(3);
  d.phi_inv[Et] = {{F, 1}};
  d.phi_inv[Kt] = {{K, 2 * u.p - 1}};
  d.phi_inv[Ft] = {{E, 1}};
  return d;
}

}  // namespace seminf
