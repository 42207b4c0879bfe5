#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fw/instancegen.hpp"
#include "fw/linkedness.hpp"
#include "fw/suites.hpp"

using fw::FieldOfSets;
using fw::FinitePoset;
using fw::LinkedFamily;
using fw::Rational;
using Mask = FieldOfSets::Mask;

namespace {
FieldOfSets powerset(int n) {
  std::vector<Mask> gens;
  for (int i = 0; i < n; ++i) gens.push_back(Mask{1} << i);
  return fw::make_field(n, gens);
}
}  // namespace

TEST_CASE("forcing shims agree across the two structures") {
  FieldOfSets B = powerset(2);
  auto elems = fw::forcing_elements(B);
  CHECK(elems.size() == 3);
  int a = B.id_of(0b01), b = B.id_of(0b10), x = B.id_of(0b11);
  CHECK(fw::forcing_leq(B, a, x));
  CHECK_FALSE(fw::forcing_leq(B, x, a));
  CHECK(fw::forcing_has_lower_bound(B, {a, x}));
  CHECK_FALSE(fw::forcing_has_lower_bound(B, {a, b}));
  auto up = fw::forcing_upward_closure(B, {a});
  CHECK(up == std::vector<int>{a, x});
}

TEST_CASE("forcing_m_linked") {
  FinitePoset A({"a", "b", "c"}, {});
  CHECK_FALSE(fw::forcing_m_linked(A, {0, 1}, 2));
  FieldOfSets B = powerset(3);
  std::vector<int> pairs = {B.id_of(0b011), B.id_of(0b101), B.id_of(0b110)};
  CHECK(fw::forcing_m_linked(B, pairs, 2));
  CHECK_FALSE(fw::forcing_m_linked(B, pairs, 3));
}

TEST_CASE("singleton family verifies everywhere") {
  fw::Rng rng(29);
  for (int k = 0; k < 20; ++k) {
    FinitePoset P = fw::random_poset(rng, 6);
    auto F = fw::singleton_family(P, {Rational(1, 4), Rational(1, 2)});
    CHECK(fw::verify_intersection_linked(P, F).ok);
  }
}

TEST_CASE("verification reports both failure kinds") {
  FinitePoset A({"a", "b", "c"}, {});
  LinkedFamily<FinitePoset> F;
  F.index_labels = {"u"};
  F.eps_grid = {Rational(1, 4)};
  F.cells[{0, 0}] = {0, 1};  // antichain pair: int = 1/2 < 3/4, and c uncovered
  auto v = fw::verify_intersection_linked(A, F);
  CHECK_FALSE(v.ok);
  bool bound = false, density = false;
  for (const auto& f : v.failures) {
    if (f.density_failure) {
      density = true;
      CHECK(f.element == 2);
    } else {
      bound = true;
      CHECK(f.achieved == Rational(1, 2));
    }
  }
  CHECK(bound);
  CHECK(density);
}

TEST_CASE("upward closing a family preserves verification") {
  FinitePoset P({"p", "x", "y"}, {{1, 0}, {2, 0}});
  auto F = fw::singleton_family(P, {Rational(1, 2)});
  auto G = fw::upward_close_family(P, F);
  CHECK(fw::verify_intersection_linked(P, G).ok);
  // The cell of x now also carries p.
  const auto& cell = G.cell(1, 0);
  CHECK(std::find(cell.begin(), cell.end(), 0) != cell.end());
}

TEST_CASE("m-linked cover derivation") {
  FinitePoset P({"a", "b", "c"}, {});
  auto F = fw::singleton_family(P, {Rational(1, 5), Rational(1, 2)});
  for (int m = 2; m <= 3; ++m) {
    auto cover = fw::derive_m_linked_cover(P, F, m);
    std::vector<char> covered(3, 0);
    for (const auto& cell : cover) {
      CHECK(fw::forcing_m_linked(P, cell, m));
      for (int p : cell) covered[static_cast<size_t>(p)] = 1;
    }
    CHECK(covered == std::vector<char>(3, 1));
  }
  // m = 4 needs a grid point below 1/5.
  CHECK_THROWS_AS(fw::derive_m_linked_cover(P, F, 4), std::invalid_argument);
}

TEST_CASE("transfer forward and backward through the completion") {
  fw::Rng rng(31);
  for (int k = 0; k < 15; ++k) {
    FinitePoset P = fw::random_poset(rng, 6);
    fw::RoCompletion ro = fw::ro_completion(P);
    std::vector<Rational> grid = {Rational(1, 4), Rational(1, 2)};

    auto F = fw::singleton_family(P, grid);
    REQUIRE(fw::verify_intersection_linked(P, F).ok);
    auto G = fw::transfer_forward(P, F, ro.iota);
    CHECK(fw::verify_intersection_linked(ro.algebra, G).ok);

    auto back = fw::transfer_backward(P, G, ro.iota);
    CHECK(fw::verify_intersection_linked(P, back).ok);
  }
}

TEST_CASE("density construction yields a verified family") {
  FieldOfSets B = powerset(3);
  fw::Fam m = fw::Fam::uniform(B);
  std::vector<Mask> S = B.atoms();
  S.push_back(B.full_mask());
  std::vector<Rational> grid = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  auto F = fw::density_to_linked_family(B, m, S, grid);
  CHECK(F.index_labels.size() == 4);
  auto v = fw::verify_intersection_linked(B, F);
  CHECK(v.ok);
  // A failing grid raises instead of constructing silently.
  FieldOfSets C = powerset(2);
  CHECK_THROWS_AS(
      fw::density_to_linked_family(C, fw::Fam::uniform(C), {Mask{0b01}},
                                   {Rational(1, 2)}),
      std::invalid_argument);
}

TEST_CASE("map index translation round-trips") {
  FieldOfSets B = powerset(2);
  for (int id : B.nonzero_ids())
    CHECK(fw::from_map_index(B, fw::to_map_index(B, id)) == id);
  CHECK_THROWS_AS(fw::to_map_index(B, B.id_of(0)), std::invalid_argument);
}
