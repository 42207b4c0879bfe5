#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "fw/completion.hpp"
#include "fw/field.hpp"
#include "fw/instancegen.hpp"
#include "fw/intersection.hpp"
#include "fw/linkedness.hpp"
#include "fw/measure.hpp"
#include "fw/poset.hpp"

namespace fw {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string note;
};

struct Report {
  std::vector<CheckResult> items;
  bool all_pass() const {
    return std::all_of(items.begin(), items.end(),
                       [](const CheckResult& c) { return c.pass; });
  }
  void fail(size_t item, const std::string& note) {
    items[item].pass = false;
    if (items[item].note.empty()) items[item].note = note;
  }
};

namespace detail {
/// All count vectors over Q with 1 <= total <= n_max, fed to fn as sequences.
template <typename Fn>
inline void for_each_multiset_seq(const std::vector<int>& Q, int n_max, Fn fn) {
  std::vector<int> counts(Q.size(), 0);
  for (;;) {
    size_t pos = 0;
    for (;;) {
      if (pos == counts.size()) return;
      ++counts[pos];
      int total = 0;
      for (int c : counts) total += c;
      if (total <= n_max) break;
      counts[pos] = 0;
      ++pos;
    }
    ConditionSeq seq;
    for (size_t i = 0; i < Q.size(); ++i)
      for (int r = 0; r < counts[i]; ++r) seq.entries.push_back(Q[i]);
    fn(seq);
  }
}
}  // namespace detail

/// Checks the eight basic intersection-number properties on one instance.
inline Report lemma_s8_suite(const FinitePoset& P, const std::vector<int>& Q,
                             int seq_len_cap = 4) {
  Report rep;
  for (int i = 1; i <= 8; ++i)
    rep.items.push_back({"s8(" + std::to_string(i) + ")", true, ""});
  if (Q.empty()) return rep;

  Rational intQ = int_exact(P, Q).value;

  int max_m = 0;
  for (int m = 1; m <= static_cast<int>(Q.size()); ++m)
    if (P.is_m_linked(Q, m)) max_m = m;

  detail::for_each_multiset_seq(Q, seq_len_cap, [&](const ConditionSeq& seq) {
    int istar = i_star(P, seq);
    int n = static_cast<int>(seq.entries.size());
    if (max_m > 0 && istar < std::min(max_m, n))
      rep.fail(0, "i* below min(m,n)");
    if (istar < 1 || istar > n) rep.fail(1, "i* outside [1,n]");
    if (P.is_centered(Q) && istar != n) rep.fail(2, "centered but i* < n");
  });
  if (intQ < 0 || intQ > 1) rep.fail(1, "int outside [0,1]");
  if ((intQ == 1) != P.is_centered(Q))
    rep.fail(2, "int(Q)=1 iff centered violated");

  for (int p = 0; p < P.size(); ++p)
    if (int_exact(P, {p}).value != 1) rep.fail(3, "int of singleton not 1");

  if (intQ < Rational(1, static_cast<long>(Q.size())))
    rep.fail(4, "int below 1/|Q|");

  if (P.is_antichain(Q) &&
      intQ != Rational(1, static_cast<long>(Q.size())))
    rep.fail(5, "antichain int not 1/|Q|");

  for (int m = 2; m <= 3; ++m)
    if (intQ >= 1 - Rational(1, m + 1) && !P.is_m_linked(Q, m))
      rep.fail(6, "int bound without m-linkedness");

  {
    std::vector<int> closure = P.upward_closure(Q);
    std::vector<int> all;
    for (int p = 0; p < P.size(); ++p) all.push_back(p);
    if (int_exact(P, closure).value > intQ) rep.fail(7, "int(Q^up) > int(Q)");
    if (int_exact(P, all).value > intQ) rep.fail(7, "int(P) > int(Q)");
  }
  return rep;
}

inline Report run_suite_s8(unsigned long seed, int count, int max_n = 8) {
  Rng rng(seed);
  Report rep;
  for (int i = 1; i <= 8; ++i)
    rep.items.push_back({"s8(" + std::to_string(i) + ")", true, ""});
  for (int k = 0; k < count; ++k) {
    FinitePoset P = random_poset(rng, max_n);
    std::vector<int> Q = random_subset(rng, P.size(), 6);
    Report one = lemma_s8_suite(P, Q);
    for (size_t i = 0; i < 8; ++i)
      if (!one.items[i].pass)
        rep.fail(i, "instance " + std::to_string(k) + ": " + one.items[i].note);
  }
  return rep;
}

inline Report run_suite_s7(unsigned long seed, int count, int max_n = 8) {
  Rng rng(seed);
  Report rep;
  rep.items.push_back({"s7 upward invariance", true, ""});
  for (int k = 0; k < count; ++k) {
    FinitePoset P = random_poset(rng, max_n);
    std::vector<int> Q = random_subset(rng, P.size(), 6);
    if (!check_upward_invariance(P, Q))
      rep.fail(0, "instance " + std::to_string(k));
  }
  return rep;
}

/// i* equality across the completion, the embedding predicates, and the
/// preservation corollaries, on random posets.
inline Report run_suite_s3(unsigned long seed, int count, int max_n = 7) {
  Rng rng(seed);
  Report rep;
  rep.items.push_back({"s3 i* equality through iota", true, ""});
  rep.items.push_back({"iota is a complete embedding", true, ""});
  rep.items.push_back({"iota is a dense embedding", true, ""});
  rep.items.push_back({"s4/s6 int preservation", true, ""});
  for (int k = 0; k < count; ++k) {
    FinitePoset P = random_poset(rng, max_n);
    RoCompletion ro = ro_completion(P);
    std::string tag = "instance " + std::to_string(k);

    std::vector<int> Q = random_subset(rng, P.size(), 5);
    // All sequences of length <= 5 are covered up to permutation.
    detail::for_each_multiset_seq(Q, 5, [&](const ConditionSeq& seq) {
      int lhs = i_star(P, seq);
      int n = static_cast<int>(seq.entries.size());
      // max |I| with meet of iota(q_i), i in I, nonzero.
      int rhs = 0;
      for (unsigned mask = 1; mask < (1u << n); ++mask) {
        FieldOfSets::Mask meet = ro.algebra.full_mask();
        int sz = 0;
        for (int i = 0; i < n; ++i)
          if (mask & (1u << i)) {
            meet &= ro.algebra.member(
                ro.iota.map[static_cast<size_t>(seq.entries[static_cast<size_t>(i)])]);
            ++sz;
          }
        if (meet != 0) rhs = std::max(rhs, sz);
      }
      if (lhs != rhs) rep.fail(0, tag);
    });

    if (!is_complete_embedding(ro.iota)) rep.fail(1, tag);
    if (!is_dense_embedding(ro.iota)) rep.fail(2, tag);

    std::vector<std::vector<int>> sampled_R;
    for (int r = 0; r < 3; ++r)
      sampled_R.push_back(
          random_nonzero_members(rng, ro.algebra, 4));
    if (!check_embedding_preservation(ro.iota, Q, sampled_R)) rep.fail(3, tag);
  }
  return rep;
}

/// The everywhere-valid witness family built from singletons.
inline LinkedFamily<FinitePoset> singleton_family(
    const FinitePoset& P, const std::vector<Rational>& eps_grid) {
  LinkedFamily<FinitePoset> F;
  F.eps_grid = eps_grid;
  for (int p = 0; p < P.size(); ++p) {
    F.index_labels.push_back(P.label(p));
    for (size_t ei = 0; ei < eps_grid.size(); ++ei)
      F.cells[{p, static_cast<int>(ei)}] = {p};
  }
  return F;
}

inline Report run_suite_i7(unsigned long seed, int count, int max_n = 7,
                           std::vector<Rational> grid = {}) {
  Rng rng(seed);
  Report rep;
  rep.items.push_back({"i7 forward transfer (dense)", true, ""});
  rep.items.push_back({"i7 backward transfer (complete)", true, ""});
  if (grid.empty()) grid = {Rational(1, 4), Rational(1, 2)};
  for (int k = 0; k < count; ++k) {
    FinitePoset P = random_poset(rng, max_n);
    RoCompletion ro = ro_completion(P);
    std::string tag = "instance " + std::to_string(k);

    LinkedFamily<FinitePoset> F = singleton_family(P, grid);
    if (!verify_intersection_linked(P, F).ok) { rep.fail(0, tag); continue; }
    LinkedFamily<FieldOfSets> G = transfer_forward(P, F, ro.iota);
    if (!verify_intersection_linked(ro.algebra, G).ok) rep.fail(0, tag);

    LinkedFamily<FieldOfSets> H;
    H.eps_grid = grid;
    auto nz = ro.algebra.nonzero_ids();
    for (size_t i = 0; i < nz.size(); ++i) {
      H.index_labels.push_back("b" + std::to_string(nz[i]));
      for (size_t ei = 0; ei < grid.size(); ++ei)
        H.cells[{static_cast<int>(i), static_cast<int>(ei)}] = {nz[i]};
    }
    if (!verify_intersection_linked(ro.algebra, H).ok) { rep.fail(1, tag); continue; }
    LinkedFamily<FinitePoset> back = transfer_backward(P, H, ro.iota);
    if (!verify_intersection_linked(P, back).ok) rep.fail(1, tag);
  }
  return rep;
}

inline Report run_suite_i15(unsigned long seed, int count, int max_n = 7,
                            std::vector<Rational> grid = {}) {
  Rng rng(seed);
  Report rep;
  rep.items.push_back({"i15 m-linked covers (m=2,3)", true, ""});
  if (grid.empty()) grid = {Rational(1, 5), Rational(1, 2)};
  for (int k = 0; k < count; ++k) {
    FinitePoset P = random_poset(rng, max_n);
    LinkedFamily<FinitePoset> F = singleton_family(P, grid);
    std::string tag = "instance " + std::to_string(k);
    for (int m = 2; m <= 3; ++m) {
      auto cover = derive_m_linked_cover(P, F, m);
      std::vector<char> covered(static_cast<size_t>(P.size()), 0);
      for (const auto& cell : cover) {
        if (!forcing_m_linked(P, cell, m)) rep.fail(0, tag);
        for (int p : cell) covered[static_cast<size_t>(p)] = 1;
      }
      if (std::find(covered.begin(), covered.end(), 0) != covered.end())
        rep.fail(0, tag + " (cover gap)");
    }
  }
  return rep;
}

inline Report run_suite_i70(unsigned long seed, int count, int max_ground = 4,
                            std::vector<Rational> grid = {}) {
  Rng rng(seed);
  Report rep;
  rep.items.push_back({"i70 density family verifies", true, ""});
  if (grid.empty())
    grid = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  for (int k = 0; k < count; ++k) {
    FieldOfSets B = random_field(rng, max_ground);
    Fam m = Fam::uniform(B);
    std::vector<FieldOfSets::Mask> S = B.atoms();
    S.push_back(B.full_mask());
    std::string tag = "instance " + std::to_string(k);
    if (density_property_check(m, S, grid)) { rep.fail(0, tag); continue; }
    LinkedFamily<FieldOfSets> F = density_to_linked_family(B, m, S, grid);
    if (!verify_intersection_linked(B, F).ok) rep.fail(0, tag);
  }
  return rep;
}

/// Dispatcher; max_n = 0 and an empty grid pick the per-suite defaults.
inline Report run_suite(const std::string& name, unsigned long seed, int count,
                        int max_n = 0, const std::vector<Rational>& grid = {}) {
  if (name == "s8") return run_suite_s8(seed, count, max_n ? max_n : 8);
  if (name == "s7") return run_suite_s7(seed, count, max_n ? max_n : 8);
  if (name == "s3") return run_suite_s3(seed, count, max_n ? max_n : 7);
  if (name == "i7") return run_suite_i7(seed, count, max_n ? max_n : 7, grid);
  if (name == "i15") return run_suite_i15(seed, count, max_n ? max_n : 7, grid);
  if (name == "i70") return run_suite_i70(seed, count, max_n ? max_n : 4, grid);
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace fw
