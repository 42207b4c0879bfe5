#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fw/completion.hpp"
#include "fw/field.hpp"
#include "fw/instancegen.hpp"

using fw::FieldOfSets;
using Mask = FieldOfSets::Mask;

TEST_CASE("make_field closes under the operations") {
  FieldOfSets B = fw::make_field(3, {0b011});
  // {0, {0,1}, {2}, X}
  CHECK(B.size() == 4);
  CHECK(B.contains(0));
  CHECK(B.contains(0b011));
  CHECK(B.contains(0b100));
  CHECK(B.contains(0b111));
  CHECK_FALSE(B.contains(0b001));
}

TEST_CASE("field constructor validates closure") {
  CHECK_THROWS_AS(FieldOfSets(2, {0, 0b01, 0b11}), std::invalid_argument);
  CHECK_THROWS_AS(FieldOfSets(2, {0b01, 0b10, 0b11}), std::invalid_argument);
  CHECK_THROWS_AS(FieldOfSets(1, {0, 0b10, 0b11}), std::invalid_argument);
  CHECK_NOTHROW(FieldOfSets(2, {0, 0b01, 0b10, 0b11}));
}

TEST_CASE("atoms partition the ground set") {
  fw::Rng rng(7);
  for (int k = 0; k < 50; ++k) {
    FieldOfSets B = fw::random_field(rng, 5);
    auto atoms = B.atoms();
    Mask uni = 0;
    for (size_t i = 0; i < atoms.size(); ++i) {
      CHECK(atoms[i] != 0);
      for (size_t j = i + 1; j < atoms.size(); ++j)
        CHECK((atoms[i] & atoms[j]) == 0);
      uni |= atoms[i];
    }
    CHECK(uni == B.full_mask());
    // Every member is the union of the atoms below it.
    for (auto m : B.members()) {
      Mask rebuilt = 0;
      for (auto a : atoms)
        if ((a & ~m) == 0) rebuilt |= a;
      CHECK(rebuilt == m);
    }
  }
}

TEST_CASE("id_of and nonzero_ids") {
  FieldOfSets B = fw::make_field(2, {0b01});
  CHECK(B.member(B.id_of(0b01)) == 0b01);
  CHECK_THROWS_AS(B.id_of(0b100), std::invalid_argument);
  auto nz = B.nonzero_ids();
  CHECK(nz.size() == 3);
  for (int id : nz) CHECK(B.member(id) != 0);
}

TEST_CASE("has_subalgebra") {
  FieldOfSets B = fw::make_field(2, {0b01});
  FieldOfSets C = fw::make_field(2, {});
  CHECK(B.has_subalgebra(C));
  CHECK_FALSE(C.has_subalgebra(B));
}

TEST_CASE("member_poset orders nonzero members by inclusion") {
  FieldOfSets B = fw::make_field(2, {0b01});
  fw::FinitePoset P = B.member_poset();
  CHECK(P.size() == 3);
  int a = P.index_of("0"), x = P.index_of("0,1");
  CHECK(P.leq(a, x));
  CHECK_FALSE(P.leq(x, a));
}

TEST_CASE("ground cap honored") {
  CHECK_THROWS_AS(fw::make_field(63, {}), std::invalid_argument);
  CHECK_THROWS_AS(fw::make_field(0, {}), std::invalid_argument);
}

// Independent oracle for the completion: ro is idempotent, the cones are
// regular open, and the atoms of the completion are exactly the minimal
// distinct cones. Exhaustive over subsets for |P| <= 7 would be 2^7 sets;
// cones and random subsets suffice to pin the operator down.
TEST_CASE("ro operator is a closure into regular opens") {
  fw::Rng rng(11);
  for (int k = 0; k < 40; ++k) {
    fw::FinitePoset P = fw::random_poset(rng, 7);
    int n = P.size();
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
      std::vector<char> A(n, 0);
      for (int i = 0; i < n; ++i)
        if (s & (Mask{1} << i)) A[i] = 1;
      auto r = fw::ro_of(P, A);
      CHECK(fw::ro_of(P, r) == r);  // idempotent
      // ro(A) is down-closed intersected with density of A^up below it:
      // every element of ro(A) has all extensions meeting A^up.
      for (int p = 0; p < n; ++p)
        if (A[p]) {
          // A itself need not be inside ro(A) (only its closure is), but
          // down-closed A is: check the one-way inclusion on down-sets.
          bool down_closed = true;
          for (int q = 0; q < n; ++q)
            if (P.leq(q, p) && !A[q]) down_closed = false;
          if (down_closed) CHECK(r[p]);
        }
    }
  }
}

TEST_CASE("completion atoms are the minimal cones and iota is structural") {
  fw::Rng rng(13);
  for (int k = 0; k < 40; ++k) {
    fw::FinitePoset P = fw::random_poset(rng, 7);
    fw::RoCompletion ro = fw::ro_completion(P);
    CHECK(ro.algebra.size() == (1 << ro.algebra.ground_size()));
    CHECK(fw::is_dense_embedding(ro.iota));
    CHECK(fw::is_complete_embedding(ro.iota));
    // The atoms below iota(p) join (ro of their union) back to the cone.
    for (int p = 0; p < P.size(); ++p) {
      auto cone = fw::ro_cone(P, p);
      CHECK(fw::ro_of(P, cone) == cone);  // cones are regular open
      std::vector<char> rebuilt(P.size(), 0);
      Mask m = ro.algebra.member(ro.iota.map[static_cast<size_t>(p)]);
      for (int i = 0; i < ro.algebra.ground_size(); ++i)
        if (m & (Mask{1} << i))
          for (int q = 0; q < P.size(); ++q)
            if (ro.atom_sets[static_cast<size_t>(i)][static_cast<size_t>(q)])
              rebuilt[static_cast<size_t>(q)] = 1;
      CHECK(fw::ro_of(P, rebuilt) == cone);
    }
  }
}
