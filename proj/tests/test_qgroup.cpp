#include <doctest.h>

#include "seminf/qgroup.hpp"

using namespace seminf;

namespace {

LinComb word_nf(const PBWAlgebra& A, const Word& w, int p) {
  return A.normal_form({{Cyclo::one(p), w}});
}

}  // namespace

TEST_CASE("u(sl2): defining relations hold in normal form") {
  for (int p : {3, 5}) {
    QuantumGroup u = build_u_sl2(p);
    const PBWAlgebra& A = u.A;
    int E = u.e_gens[0], K = u.k_gens[0], F = u.f_gens[0];
    Cyclo z = u.q(1), one = Cyclo::one(p);
    // K E K^{-1} = zeta^2 E, K F K^{-1} = zeta^{-2} F
    CHECK(word_nf(A, {{K, 1}, {E, 1}, {K, 2 * p - 1}}, p) ==
          A.mul(LinComb{{A.unit(), z.pow(2)}}, word_nf(A, {{E, 1}}, p)));
    CHECK(word_nf(A, {{K, 1}, {F, 1}, {K, 2 * p - 1}}, p) ==
          A.mul(LinComb{{A.unit(), z.pow(-2)}}, word_nf(A, {{F, 1}}, p)));
    // [E, F] = (K - K^{-1}) / (zeta - zeta^{-1})
    LinComb lhs = word_nf(A, {{E, 1}, {F, 1}}, p);
    for (const auto& [m, c] : word_nf(A, {{F, 1}, {E, 1}}, p)) {
      lhs[m] += -c;
      if (lhs[m].is_zero()) lhs.erase(m);
    }
    Cyclo c = (z - z.inverse()).inverse();
    LinComb rhs = A.mul(LinComb{{A.unit(), c}}, word_nf(A, {{K, 1}}, p));
    for (const auto& [m, cc] : A.mul(LinComb{{A.unit(), -c}}, word_nf(A, {{K, 2 * p - 1}}, p))) {
      rhs[m] += cc;
      if (rhs[m].is_zero()) rhs.erase(m);
    }
    CHECK(lhs == rhs);
    // nilpotency and the group-like order
    CHECK(word_nf(A, {{E, p}}, p).empty());
    CHECK(word_nf(A, {{F, p}}, p).empty());
    CHECK(word_nf(A, {{K, 2 * p}}, p) == LinComb{{A.unit(), one}});
    CHECK((long)A.full_basis(A.all_gen_indices()).size() == 2L * p * p * p);
  }
}

TEST_CASE("u(sl2): K-scalars and the weight lattice test") {
  QuantumGroup u = build_u_sl2(3);
  Weight alpha = simple_root(1, 0);
  CHECK(u.in_X(alpha));
  CHECK(u.in_X(alpha * Rat(1, 2)));        // the fundamental weight
  CHECK(!u.in_X(alpha * Rat(1, 4)));
  CHECK(u.k_scalar(0, alpha) == u.q(2));   // (alpha|alpha) = 2
  CHECK(u.k_scalar(0, alpha * Rat(1, 2)) == u.q(1));
  CHECK(u.k_scalar(0, Weight(1)) == Cyclo::one(3));
}

TEST_CASE("u(sl2): the coproduct is an algebra map on the relations") {
  const int p = 3;
  QuantumGroup u = build_u_sl2(p);
  const PBWAlgebra& A = u.A;
  // Delta extends multiplicatively to words; compare Delta on both sides of
  // each defining relation inside A (x) A, encoded as pairs of normal forms
  auto delta_word = [&](const Word& w) {
    std::vector<std::pair<Cyclo, std::pair<Word, Word>>> acc = {
        {Cyclo::one(p), {{}, {}}}};
    for (const auto& [g, e] : w)
      for (int rep = 0; rep < e; ++rep) {
        std::vector<std::pair<Cyclo, std::pair<Word, Word>>> next;
        for (const auto& [c0, lr] : acc)
          for (const auto& [c, wl, wr] : u.coproduct(g)) {
            auto [l0, r0] = lr;
            l0.insert(l0.end(), wl.begin(), wl.end());
            r0.insert(r0.end(), wr.begin(), wr.end());
            next.push_back({c0 * c, {std::move(l0), std::move(r0)}});
          }
        acc = std::move(next);
      }
    // normal form in the tensor square: map (normal mono, normal mono) -> coeff
    std::map<std::pair<Mono, Mono>, Cyclo> out;
    for (const auto& [c, lr] : acc)
      for (const auto& [ml, cl] : A.normal_form({{c, lr.first}}))
        for (const auto& [mr, cr] : A.normal_form({{Cyclo::one(p), lr.second}})) {
          auto [pos, fresh] = out.try_emplace({ml, mr}, cl * cr);
          if (!fresh) {
            pos->second += cl * cr;
            if (pos->second.is_zero()) out.erase(pos);
          }
        }
    return out;
  };
  int E = u.e_gens[0], K = u.k_gens[0], F = u.f_gens[0];
  // q-commutation with K and the nilpotency relations
  auto scaled = [&](std::map<std::pair<Mono, Mono>, Cyclo> m, const Cyclo& s) {
    for (auto& [k, v] : m) v *= s;
    return m;
  };
  CHECK(delta_word({{K, 1}, {E, 1}}) == scaled(delta_word({{E, 1}, {K, 1}}), u.q(2)));
  CHECK(delta_word({{F, 1}, {K, 1}}) == scaled(delta_word({{K, 1}, {F, 1}}), u.q(2)));
  CHECK(delta_word({{E, p}}).empty());
  CHECK(delta_word({{F, p}}).empty());
  // the Serre-type relation FE = EF - (K - K^{-1})/(z - z^{-1})
  auto fe = delta_word({{F, 1}, {E, 1}});
  auto ef = delta_word({{E, 1}, {F, 1}});
  Cyclo c = (u.q(1) - u.q(-1)).inverse();
  auto kk = scaled(delta_word({{K, 1}}), -c);
  auto ki = scaled(delta_word({{K, 2 * p - 1}}), c);
  for (const auto& part : {kk, ki})
    for (const auto& [k, v] : part) {
      auto [pos, fresh] = ef.try_emplace(k, v);
      if (!fresh) {
        pos->second += v;
        if (pos->second.is_zero()) ef.erase(pos);
      }
    }
  CHECK(fe == ef);
}

TEST_CASE("associated graded algebra: commutation pattern and dimension") {
  RootDatum a2 = build_root_datum({{2, -1}, {-1, 2}});
  QuantumGroup g = build_gr_u(a2, 3);
  const PBWAlgebra& A = g.A;
  // dim = p^{2N} (2p)^rank with N = 3 positive roots
  CHECK((long)A.full_basis(A.all_gen_indices()).size() == 729L * 36);
  // lowering and raising parts commute in gr
  for (int e : g.e_gens)
    for (int f : g.f_gens) {
      Word fe = {{f, 1}, {e, 1}}, ef = {{e, 1}, {f, 1}};
      CHECK(word_nf(A, fe, 3) == word_nf(A, ef, 3));
    }
  CHECK(!g.has_coproduct);
  CHECK_THROWS(g.coproduct(g.e_gens[0]));
}

TEST_CASE("Galois twin: phi reverses products into the twin algebra") {
  QuantumGroup u = build_u_sl2(3);
  DualityTwin tw = build_sl2_twin(u);
  CHECK(tw.twin.zeta_exp == -u.zeta_exp);
  // phi followed by phi_inv is the identity on generators
  for (int g = 0; g < 3; ++g) {
    Word back;
    for (const auto& [tg, e] : tw.phi[g])
      for (int r = 0; r < e; ++r)
        back.insert(back.end(), tw.phi_inv[tg].begin(), tw.phi_inv[tg].end());
    LinComb nf = u.A.normal_form({{Cyclo::one(3), back}});
    Mono m = u.A.unit();
    m[g] = 1;
    CHECK(nf == LinComb{{m, Cyclo::one(3)}});
  }
}
