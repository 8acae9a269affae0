#include <doctest.h>

#include "seminf/frobenius.hpp"
#include "seminf/qgroup.hpp"
#include "seminf/semiregular.hpp"
#include "seminf/triangular.hpp"

using namespace seminf;

TEST_CASE("u(sl2) normal forms at p=3") {
  QuantumGroup u = build_u_sl2(3);
  const PBWAlgebra& A = u.A;
  int E = u.e_gens[0], K = u.k_gens[0], F = u.f_gens[0];
  CHECK(A.full_basis(A.all_gen_indices()).size() == 54);  // 2p^3

  Cyclo z = Cyclo::zeta_pow(3, 1);
  Cyclo c = (z - z.inverse()).inverse();
  Mono mE = A.unit(), mK = A.unit(), mF = A.unit();
  mE[E] = 1;
  mK[K] = 1;
  mF[F] = 1;
  // F*E = EF - c K + c K^5
  LinComb fe = A.mul_mono(mF, mE);
  Mono mEF = A.unit();
  mEF[E] = 1;
  mEF[F] = 1;
  Mono mK5 = A.unit();
  mK5[K] = 5;
  REQUIRE(fe.size() == 3);
  CHECK(fe.at(mEF) == Cyclo::one(3));
  CHECK(fe.at(mK) == -c);
  CHECK(fe.at(mK5) == c);
  // K E = z^2 E K
  LinComb ke = A.mul_mono(mK, mE);
  Mono mEK = A.unit();
  mEK[E] = 1;
  mEK[K] = 1;
  REQUIRE(ke.size() == 1);
  CHECK(ke.at(mEK) == z.pow(2));
  // E^p = 0, K^{2p} = 1
  Mono mE2 = A.unit();
  mE2[E] = 2;
  CHECK(A.mul_mono(mE2, mE).empty());
  Mono mK3 = A.unit();
  mK3[K] = 3;
  CHECK(A.mul_mono(mK3, mK3).size() == 1);
  CHECK(A.mul_mono(mK3, mK3).at(A.unit()) == Cyclo::one(3));
}

TEST_CASE("associativity of the straightening (spot check)") {
  QuantumGroup u = build_u_sl2(3);
  const PBWAlgebra& A = u.A;
  auto basis = A.full_basis(A.all_gen_indices());
  // deterministic pseudo-random triples
  size_t s = 12345;
  auto next = [&s, &basis] {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    return basis[(s >> 33) % basis.size()];
  };
  for (int t = 0; t < 25; ++t) {
    Mono a = next(), b = next(), cmono = next();
    LinComb ab_c = A.mul(A.mul_mono(a, b), LinComb{{cmono, Cyclo::one(3)}});
    LinComb a_bc = A.mul(LinComb{{a, Cyclo::one(3)}}, A.mul_mono(b, cmono));
    CHECK(ab_c == a_bc);
  }
}

TEST_CASE("graded algebra of the A2 quantum group") {
  RootDatum rd = build_root_datum({{2, -1}, {-1, 2}});
  QuantumGroup g = build_gr_u(rd, 3);
  const PBWAlgebra& A = g.A;
  // dimension p^N (2p)^r p^N with N=3, r=2 at p=3: 27 * 36 * 27
  CHECK(A.full_basis(A.all_gen_indices()).size() == 27u * 36u * 27u);
  // q-commutation: x2 x1 = z^{-(b2|b1)} x1 x2 with (b2|b1) = (a1+a2 | a1) = 1
  Mono m1 = A.unit(), m2 = A.unit();
  m1[g.e_gens[0]] = 1;
  m2[g.e_gens[1]] = 1;
  LinComb sw = A.mul_mono(m2, m1);
  Mono m12 = A.unit();
  m12[g.e_gens[0]] = 1;
  m12[g.e_gens[1]] = 1;
  REQUIRE(sw.size() == 1);
  CHECK(sw.at(m12) == Cyclo::zeta_pow(3, -1));
  // raising and lowering halves commute elementwise
  Mono yf = A.unit();
  yf[g.f_gens[2]] = 1;
  LinComb cr = A.mul_mono(yf, m1);
  Mono both = A.unit();
  both[g.e_gens[0]] = 1;
  both[g.f_gens[2]] = 1;
  REQUIRE(cr.size() == 1);
  CHECK(cr.at(both) == Cyclo::one(3));
  // associativity spot check across the three families
  Mono k1 = A.unit();
  k1[g.k_gens[0]] = 2;
  CHECK(A.mul(A.mul_mono(yf, k1), LinComb{{m2, Cyclo::one(3)}}) ==
        A.mul(LinComb{{yf, Cyclo::one(3)}}, A.mul_mono(k1, m2)));
}

TEST_CASE("triangular decomposition verification") {
  QuantumGroup u = build_u_sl2(3);
  auto repP = verify_triangular(u.A, u.plus_part(), u.borel_minus(), 3);
  CHECK(repP.ok);
  CHECK(repP.weights_checked == 5);  // weights -2..2 in root coordinates
  // swapped roles fail the grading conditions: u^- is not positively graded
  auto repM = verify_triangular(u.A, u.minus_part(), u.borel_plus(), 3);
  CHECK(!repM.ok);
  // bad partition: K placed in N violates the positive-cone grading
  auto bad = verify_triangular(u.A, {u.e_gens[0], u.k_gens[0]}, {u.f_gens[0]}, 2);
  CHECK(!bad.ok);

  // windowed verification on the graded A2 algebra (full dim ~ 2.6 * 10^4)
  RootDatum rd = build_root_datum({{2, -1}, {-1, 2}});
  QuantumGroup g = build_gr_u(rd, 3);
  std::vector<int> nset = g.e_gens;
  std::vector<int> bset = g.k_gens;
  bset.insert(bset.end(), g.f_gens.begin(), g.f_gens.end());
  auto repG = verify_triangular(g.A, nset, bset, 2);
  CHECK(repG.ok);
  CHECK(repG.weights_checked > 10);
}

TEST_CASE("triangular split recombines") {
  QuantumGroup u = build_u_sl2(3);
  TriangularSplit split(&u.A, u.minus_part(), u.borel_plus(), true);  // F first
  for (const auto& m : u.A.full_basis(u.A.all_gen_indices())) {
    LinComb rebuilt;
    for (const auto& [n, b, c] : split.decompose(m)) {
      for (const auto& [mono, cc] : u.A.mul_mono(n, b)) {
        rebuilt[mono] += cc * c;
        if (rebuilt[mono].is_zero()) rebuilt.erase(mono);
      }
    }
    CHECK(rebuilt == LinComb{{m, Cyclo::one(3)}});
  }
}

TEST_CASE("multiplication table") {
  QuantumGroup u = build_u_sl2(3);
  MulTable T = make_mul_table(u.A);
  CHECK(T.dim() == 54);
  REQUIRE(T.unit >= 0);
  for (int i = 0; i < T.dim(); ++i) {
    CHECK(T.mul[T.unit][i] == SparseRow{{i, Cyclo::one(3)}});
    CHECK(T.mul[i][T.unit] == SparseRow{{i, Cyclo::one(3)}});
  }
}

TEST_CASE("frobenius detection") {
  // one-variable truncated polynomial algebra k[E]/(E^3): Frobenius, and the
  // dual of the top basis monomial already gives a nondegenerate pairing
  PBWAlgebra Apoly(3);
  Apoly.add_generator("E", simple_root(1, 0), 3);
  FrobeniusReport r1 = check_frobenius(make_mul_table(Apoly), 11);
  CHECK(r1.verdict == FrobeniusReport::Verdict::frobenius);
  CHECK(!r1.functional.empty());

  // the full 54-dimensional small quantum sl2 at p = 3 is Frobenius
  QuantumGroup u = build_u_sl2(3);
  FrobeniusReport r2 = check_frobenius(make_mul_table(u.A), 11);
  CHECK(r2.verdict == FrobeniusReport::Verdict::frobenius);

  // k<x,y>/(x^2, xy, yx, y^2) has a 2-dimensional square-zero radical, so no
  // functional is nondegenerate; the symbolic determinant vanishes identically
  FrobeniusReport r3 = check_frobenius(non_frobenius_example(3), 11);
  CHECK(r3.verdict == FrobeniusReport::Verdict::not_frobenius);
}

namespace {
// basis of the algebra grouped by weight, matching right_regular_module
std::map<seminf::Weight, std::vector<seminf::Mono>> regular_basis_by_weight(
    const seminf::PBWAlgebra& A) {
  std::map<seminf::Weight, std::vector<seminf::Mono>> by_wt;
  for (const auto& m : A.full_basis(A.all_gen_indices())) by_wt[A.weight_of(m)].push_back(m);
  return by_wt;
}
}  // namespace

TEST_CASE("semiregular module of u(sl2) at p = 3") {
  QuantumGroup u = build_u_sl2(3);
  SemiregularData SR = build_semiregular(u, u.e_gens, u.borel_minus());

  int total = 0;
  for (const auto& [w, d] : SR.S.dims) total += d;
  CHECK(total == 54);

  // isomorphic to the right regular representation twisted by the top weight
  // of N (the dual of N shifts the grading down by deg E^{p-1} = 2 alpha)
  Weight tau(1);
  tau.c[0] = Rat(2);
  GradedModule Reg = twist_module(right_regular_module(u), tau);
  CHECK(SR.S.dims == Reg.dims);
  auto iso = find_module_isomorphism(SR.S, Reg, 7);
  REQUIRE(iso.has_value());

  // the operator algebra closed under composition (build would have thrown);
  // its unit is the identity operator
  REQUIRE(SR.sharp.unit >= 0);
  int dim = SR.sharp.dim();
  CHECK(dim == 54);
  for (int i = 0; i < dim; ++i) {
    CHECK(SR.sharp.mul[SR.sharp.unit][i] == SparseRow{{i, Cyclo::one(3)}});
    CHECK(SR.sharp.mul[i][SR.sharp.unit] == SparseRow{{i, Cyclo::one(3)}});
  }

  // transport each operator through the module isomorphism Phi: every
  // endomorphism of the right regular module is left multiplication by its
  // value at 1, so x_k = (Phi o T_k o Phi^{-1})(1) defines a linear map from
  // the operator algebra to u; it must be bijective and multiplicative
  auto by_wt = regular_basis_by_weight(u.A);
  const auto& zlist = by_wt.at(Weight(u.rd.rank));
  int upos = -1;
  for (int i = 0; i < (int)zlist.size(); ++i)
    if (zlist[i] == u.A.unit()) upos = i;
  REQUIRE(upos >= 0);
  // Phi^{-1}(1): the unit of the twisted regular module sits at weight -tau
  SparseMat e_unit((int)zlist.size(), 1);
  e_unit.set(upos, 0, Cyclo::one(3));
  auto pre = iso->blocks.at(-tau).solve(e_unit);
  REQUIRE(pre.has_value());
  SparseRow pre_row;
  for (int i = 0; i < pre->nrows(); ++i) {
    Cyclo v = pre->get(i, 0);
    if (!v.is_zero()) pre_row[i] = v;
  }

  std::vector<LinComb> x(dim);  // transported operators as elements of u
  for (int k = 0; k < dim; ++k) {
    Weight deg = SR.sharp.wt[k];
    auto blk = SR.sharp_ops[k].find(-tau);
    if (blk == SR.sharp_ops[k].end()) continue;
    SparseRow moved = blk->second.apply(pre_row);
    SparseRow coords = iso->blocks.at(deg - tau).apply(moved);
    const auto& mlist = by_wt.at(deg);
    for (const auto& [i, c] : coords) x[k][mlist[i]] = c;
  }

  // bijectivity: the 54 transported elements span u
  std::map<Mono, int> flat;
  for (const auto& [w, list] : by_wt)
    for (const auto& m : list) flat.emplace(m, (int)flat.size());
  SparseMat span(dim, (int)flat.size());
  for (int k = 0; k < dim; ++k)
    for (const auto& [m, c] : x[k]) span.set(k, flat.at(m), c);
  CHECK(span.rank() == 54);

  // multiplicativity: composition structure constants match products in u
  auto mul_lin = [&](const LinComb& a, const LinComb& b) {
    LinComb out;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b)
        for (const auto& [m, c] : u.A.mul_mono(ma, mb)) {
          out[m] += ca * cb * c;
          if (out[m].is_zero()) out.erase(m);
        }
    return out;
  };
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      LinComb lhs;
      for (const auto& [k, c] : SR.sharp.mul[i][j])
        for (const auto& [m, xc] : x[k]) {
          lhs[m] += c * xc;
          if (lhs[m].is_zero()) lhs.erase(m);
        }
      CHECK(lhs == mul_lin(x[i], x[j]));
    }
}

TEST_CASE("semiregular degenerate case: trivial borel part") {
  // N = A = k[E]/(E^3), B = k: the semiregular module is the linear dual A*
  // and the operator algebra is A itself acting coregularly
  QuantumGroup Nonly(3);
  Nonly.rd = build_root_datum({{2}});
  int E = Nonly.A.add_generator("E", simple_root(1, 0), 3);
  Nonly.e_gens = {E};
  SemiregularData SR = build_semiregular(Nonly, {E}, {});

  // dual grading: one dimension at 0, -alpha, -2alpha
  CHECK(SR.S.dims.size() == 3);
  for (const auto& [w, d] : SR.S.dims) {
    CHECK(d == 1);
    CHECK(-w.height() >= 0);
  }

  // A^sharp has the same multiplication table as A on matching monomials
  MulTable TA = make_mul_table(Nonly.A);
  REQUIRE(SR.sharp.dim() == TA.dim());
  std::map<Mono, int> ta_index;
  for (int i = 0; i < TA.dim(); ++i) ta_index[TA.basis[i]] = i;
  for (int i = 0; i < SR.sharp.dim(); ++i)
    for (int j = 0; j < SR.sharp.dim(); ++j) {
      SparseRow expect;
      for (const auto& [k, c] : TA.mul[ta_index.at(SR.sharp.basis[i])]
                                      [ta_index.at(SR.sharp.basis[j])]) {
        // translate table indices back through the shared monomial labels
        for (int kk = 0; kk < SR.sharp.dim(); ++kk)
          if (SR.sharp.basis[kk] == TA.basis[k]) expect[kk] = c;
      }
      CHECK(SR.sharp.mul[i][j] == expect);
    }
}
