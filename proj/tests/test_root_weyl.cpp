#include <doctest.h>

#include <set>

#include "seminf/root_datum.hpp"

using namespace seminf;

namespace {
std::vector<std::vector<int>> A1{{2}};
std::vector<std::vector<int>> A2{{2, -1}, {-1, 2}};
std::vector<std::vector<int>> B2{{2, -2}, {-1, 2}};
std::vector<std::vector<int>> G2{{2, -1}, {-3, 2}};
}  // namespace

TEST_CASE("A1 root datum") {
  RootDatum rd = build_root_datum(A1);
  CHECK(rd.positive_roots.size() == 1);
  CHECK(rd.d == std::vector<int>{1});
  CHECK(rd.coxeter_number == 2);
  CHECK(rd.weyl.size() == 2);
  CHECK(rd.two_rho.c[0] == 1);
  CHECK(rd.bilinear(simple_root(1, 0), simple_root(1, 0)) == 2);
}

TEST_CASE("A2 root datum") {
  RootDatum rd = build_root_datum(A2);
  REQUIRE(rd.positive_roots.size() == 3);
  // heights {1,1,2}
  std::multiset<long> hts;
  for (const auto& r : rd.positive_roots) hts.insert(r.height().get_num().get_si());
  CHECK(hts == std::multiset<long>{1, 1, 2});
  CHECK(rd.coxeter_number == 3);
  CHECK(rd.weyl.size() == 6);
  CHECK(rd.poincare_polynomial() == std::vector<long>{1, 2, 2, 1});
  // lex-least reduced word for w0 is s1 s2 s1 -> convex order a1, a1+a2, a2
  CHECK(rd.weyl[rd.longest_index].word == std::vector<int>{0, 1, 0});
  Weight a1 = simple_root(2, 0), a2 = simple_root(2, 1);
  REQUIRE(rd.convex_order.size() == 3);
  CHECK(rd.convex_order[0] == a1);
  CHECK(rd.convex_order[1] == a1 + a2);
  CHECK(rd.convex_order[2] == a2);
  // invariant form: (a1|a1) = 2, (a1|a2) = -1
  CHECK(rd.bilinear(a1, a1) == 2);
  CHECK(rd.bilinear(a1, a2) == -1);
  CHECK(rd.bilinear(a1 + a2, a1 + a2) == 2);
  CHECK(rd.two_rho == (a1 + a2) * Rat(2));
}

TEST_CASE("B2 and G2 root data") {
  RootDatum b2 = build_root_datum(B2);
  CHECK(b2.positive_roots.size() == 4);
  CHECK(b2.coxeter_number == 4);
  CHECK(b2.weyl.size() == 8);
  CHECK(b2.d == std::vector<int>{1, 2});  // a_12=-2, a_21=-1 => alpha_2 long
  RootDatum g2 = build_root_datum(G2);
  CHECK(g2.positive_roots.size() == 6);
  CHECK(g2.coxeter_number == 6);
  CHECK(g2.weyl.size() == 12);
}

TEST_CASE("Weyl group words are reduced and consistent") {
  RootDatum rd = build_root_datum(B2);
  for (const auto& e : rd.weyl) {
    CHECK((int)e.word.size() == e.length);
    // the word multiplies out to the stored matrix
    Weight probe(2);
    probe.c[0] = rat(1);
    probe.c[1] = rat(5);
    Weight via_word = probe;
    for (size_t j = e.word.size(); j-- > 0;) via_word = rd.reflect(e.word[j], via_word);
    CHECK(via_word == rd.apply(e, probe));
  }
}

TEST_CASE("invalid Cartan matrices are rejected") {
  CHECK_THROWS_AS(build_root_datum({{2, -1}, {0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(build_root_datum({{1}}), std::invalid_argument);
  CHECK_THROWS_AS(build_root_datum({{2, -2}, {-2, 2}}), std::invalid_argument);  // affine
  CHECK_THROWS_AS(build_root_datum({{2, 1}, {1, 2}}), std::invalid_argument);
}
