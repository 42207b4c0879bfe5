#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fw/instancegen.hpp"
#include "fw/intersection.hpp"

using fw::ConditionSeq;
using fw::FieldOfSets;
using fw::FinitePoset;
using fw::Rational;
using Mask = FieldOfSets::Mask;

namespace {

FieldOfSets powerset(int n) {
  std::vector<Mask> gens;
  for (int i = 0; i < n; ++i) gens.push_back(Mask{1} << i);
  return fw::make_field(n, gens);
}

FinitePoset three_pairs() {
  return FinitePoset({"p01", "p02", "p12", "x0", "x1", "x2"},
                     {{3, 0}, {3, 1}, {4, 0}, {4, 2}, {5, 1}, {5, 2}});
}

}  // namespace

TEST_CASE("i_star on posets") {
  FinitePoset P = three_pairs();
  ConditionSeq seq{{0, 1, 2}};  // the three pairs
  CHECK(fw::i_star(P, seq) == 2);
  ConditionSeq rep{{0, 0, 0}};
  CHECK(fw::i_star(P, rep) == 3);
  CHECK_THROWS_AS(fw::i_star(P, ConditionSeq{}), std::invalid_argument);
}

TEST_CASE("i_star on fields") {
  FieldOfSets B = powerset(3);
  std::vector<Mask> seq = {0b011, 0b101, 0b110};
  CHECK(fw::i_star(B, seq) == 2);
  CHECK(fw::i_star(B, {Mask{0b001}, Mask{0b010}}) == 1);
}

TEST_CASE("three pairs have intersection number 2/3") {
  FieldOfSets B = powerset(3);
  std::vector<int> Q = {B.id_of(0b011), B.id_of(0b101), B.id_of(0b110)};
  auto cert = fw::int_exact(B, Q);
  CHECK(cert.value == Rational(2, 3));
  CHECK(fw::verify_certificate(B, Q, cert));

  FinitePoset P = three_pairs();
  auto pcert = fw::int_exact(P, {0, 1, 2});
  CHECK(pcert.value == Rational(2, 3));
  CHECK(fw::verify_certificate(P, {0, 1, 2}, pcert));
}

TEST_CASE("antichains have intersection number 1/k") {
  for (int k = 2; k <= 6; ++k) {
    std::vector<std::string> labels;
    for (int i = 0; i < k; ++i) labels.push_back("a" + std::to_string(i));
    FinitePoset P(labels, {});
    std::vector<int> Q;
    for (int i = 0; i < k; ++i) Q.push_back(i);
    auto cert = fw::int_exact(P, Q);
    CHECK(cert.value == Rational(1, k));
    CHECK(fw::verify_certificate(P, Q, cert));
  }
}

TEST_CASE("centered sets have intersection number 1") {
  FinitePoset V({"a", "b", "c"}, {{2, 0}, {2, 1}});
  auto cert = fw::int_exact(V, {0, 1});
  CHECK(cert.value == 1);
  CHECK(fw::verify_certificate(V, {0, 1}, cert));
}

TEST_CASE("empty Q has intersection number 1 by convention") {
  FinitePoset P({"a"}, {});
  CHECK(fw::int_exact(P, {}).value == 1);
  FieldOfSets B = powerset(2);
  CHECK(fw::int_exact(B, {}).value == 1);
}

TEST_CASE("zero member rejected") {
  FieldOfSets B = powerset(2);
  CHECK_THROWS_AS(fw::int_exact(B, {B.id_of(0)}), std::invalid_argument);
}

TEST_CASE("tampered certificates fail verification") {
  FieldOfSets B = powerset(3);
  std::vector<int> Q = {B.id_of(0b011), B.id_of(0b101), B.id_of(0b110)};
  auto cert = fw::int_exact(B, Q);
  auto bad = cert;
  bad.value = Rational(1, 2);
  CHECK_FALSE(fw::verify_certificate(B, Q, bad));
  bad = cert;
  bad.atom_weights[0] += Rational(1, 10);
  CHECK_FALSE(fw::verify_certificate(B, Q, bad));
  bad = cert;
  bad.dual_witness.entries.push_back(B.id_of(0b111));  // outside Q
  CHECK_FALSE(fw::verify_certificate(B, Q, bad));
}

TEST_CASE("duality against the enumerated upper bound") {
  fw::Rng rng(17);
  for (int k = 0; k < 40; ++k) {
    FieldOfSets B = fw::random_field(rng, 5);
    std::vector<int> Q = fw::random_nonzero_members(rng, B, 4);
    auto cert = fw::int_exact(B, Q);
    CHECK(fw::verify_certificate(B, Q, cert));
    int n = static_cast<int>(cert.dual_witness.entries.size());
    CHECK(fw::int_upper_bound(B, Q, n) == cert.value);
  }
}

TEST_CASE("kelley bound and replay") {
  FieldOfSets B = powerset(2);
  fw::Fam m = fw::Fam::uniform(B);
  auto kb = fw::kelley_lower_bound(B, m, Rational(1, 2));
  // Q = {{0}, {1}, {0,1}}.
  CHECK(kb.Q.size() == 3);
  auto cert = fw::int_exact(B, kb.Q);
  CHECK(cert.value == Rational(1, 2));
  // Replay the integral argument on the dual witness itself.
  CHECK(fw::kelley_replay(B, kb, cert.dual_witness));
  // Sequences with entries outside Q are rejected.
  ConditionSeq outside{{B.id_of(0)}};
  CHECK_FALSE(fw::kelley_replay(B, kb, outside));
  CHECK_THROWS_AS(fw::kelley_lower_bound(B, m, Rational(3, 2)),
                  std::invalid_argument);
}

TEST_CASE("upward invariance") {
  fw::Rng rng(19);
  for (int k = 0; k < 40; ++k) {
    FinitePoset P = fw::random_poset(rng, 7);
    std::vector<int> Q = fw::random_subset(rng, P.size(), 5);
    CHECK(fw::check_upward_invariance(P, Q));
  }
}

TEST_CASE("embedding preservation through the completion") {
  fw::Rng rng(23);
  for (int k = 0; k < 25; ++k) {
    FinitePoset P = fw::random_poset(rng, 6);
    fw::RoCompletion ro = fw::ro_completion(P);
    std::vector<int> Q = fw::random_subset(rng, P.size(), 4);
    std::vector<std::vector<int>> sampled;
    for (int r = 0; r < 3; ++r)
      sampled.push_back(fw::random_nonzero_members(rng, ro.algebra, 3));
    CHECK(fw::check_embedding_preservation(ro.iota, Q, sampled));
  }
}

TEST_CASE("int_upper_bound input validation") {
  FinitePoset P({"a"}, {});
  CHECK_THROWS_AS(fw::int_upper_bound(P, {0}, 0), std::invalid_argument);
  CHECK(fw::int_upper_bound(P, {}, 3) == 1);
}
