#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fw/poset.hpp"

using fw::FinitePoset;

namespace {

// x0 <= p01,p02; x1 <= p01,p12; x2 <= p02,p12 — the "three pairs" poset.
FinitePoset three_pairs() {
  return FinitePoset({"p01", "p02", "p12", "x0", "x1", "x2"},
                     {{3, 0}, {3, 1}, {4, 0}, {4, 2}, {5, 1}, {5, 2}});
}

}  // namespace

TEST_CASE("transitive closure and reflexivity") {
  FinitePoset P({"a", "b", "c"}, {{0, 1}, {1, 2}});
  CHECK(P.leq(0, 0));
  CHECK(P.leq(0, 1));
  CHECK(P.leq(0, 2));  // closure
  CHECK(P.leq(1, 2));
  CHECK_FALSE(P.leq(2, 0));
  CHECK(P.partial_order());
}

TEST_CASE("preorders are accepted and flagged") {
  FinitePoset P({"a", "b"}, {{0, 1}, {1, 0}});
  CHECK(P.leq(0, 1));
  CHECK(P.leq(1, 0));
  CHECK_FALSE(P.partial_order());
}

TEST_CASE("duplicate labels rejected") {
  CHECK_THROWS_AS(FinitePoset({"a", "a"}, {}), std::invalid_argument);
}

TEST_CASE("compatibility") {
  FinitePoset P = three_pairs();
  int p01 = P.index_of("p01"), p02 = P.index_of("p02"), x0 = P.index_of("x0"),
      x1 = P.index_of("x1"), x2 = P.index_of("x2");
  CHECK(P.compatible(p01, p02));      // via x0
  CHECK_FALSE(P.compatible(x0, x2));  // distinct minimal elements
  CHECK(P.compatible(x1, p01));
  CHECK_FALSE(P.compatible(x2, p01));
}

TEST_CASE("separative order") {
  // c below both a and b: every extension of a meets c, so a <=* c.
  FinitePoset V({"a", "b", "c"}, {{2, 0}, {2, 1}});
  CHECK(V.separative_leq(0, 2));
  CHECK(V.separative_leq(1, 2));
  CHECK(V.separative_leq(0, 1));

  FinitePoset P = three_pairs();
  int p01 = P.index_of("p01"), p02 = P.index_of("p02"), x2 = P.index_of("x2");
  CHECK_FALSE(P.separative_leq(p02, p01));  // x2 <= p02 is incompatible with p01
  CHECK_FALSE(P.separative_leq(x2, p01));
  CHECK(P.separative_leq(x2, p02));
}

TEST_CASE("separative bound is constructive") {
  FinitePoset V({"a", "b", "c"}, {{2, 0}, {2, 1}});
  auto q = V.separative_bound(0, {1});
  REQUIRE(q.has_value());
  CHECK(V.leq(*q, 0));
  CHECK(V.leq(*q, 1));

  FinitePoset P = three_pairs();
  CHECK_FALSE(P.separative_bound(P.index_of("p02"), {P.index_of("p01")})
                  .has_value());
  // Trivial case: empty list returns p itself.
  auto self = P.separative_bound(0, {});
  REQUIRE(self.has_value());
  CHECK(*self == 0);
}

TEST_CASE("upward closure") {
  FinitePoset P = three_pairs();
  auto up = P.upward_closure({P.index_of("x0")});
  std::vector<int> expect = {P.index_of("p01"), P.index_of("p02"),
                             P.index_of("x0")};
  std::sort(expect.begin(), expect.end());
  CHECK(up == expect);
}

TEST_CASE("antichain, centered, m-linked") {
  FinitePoset A({"a", "b", "c"}, {});
  CHECK(A.is_antichain({0, 1, 2}));
  CHECK_FALSE(A.is_centered({0, 1}));
  CHECK(A.is_m_linked({0}, 1));
  CHECK_FALSE(A.is_m_linked({0, 1}, 2));

  FinitePoset P = three_pairs();
  std::vector<int> pairs = {P.index_of("p01"), P.index_of("p02"),
                            P.index_of("p12")};
  CHECK(P.is_m_linked(pairs, 2));        // every pair shares a point
  CHECK_FALSE(P.is_m_linked(pairs, 3));  // no common point
  CHECK_FALSE(P.is_antichain(pairs));
  CHECK(P.is_centered({P.index_of("p01"), P.index_of("x0")}));
  CHECK_THROWS_AS(P.is_m_linked(pairs, 0), std::invalid_argument);
}

TEST_CASE("has_lower_bound edge cases") {
  FinitePoset P = three_pairs();
  CHECK(P.has_lower_bound({}));
  CHECK(P.has_lower_bound({P.index_of("p01"), P.index_of("p02")}));
  CHECK_FALSE(P.has_lower_bound(
      {P.index_of("p01"), P.index_of("p02"), P.index_of("p12")}));
}
