#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fw/completion.hpp"
#include "fw/field.hpp"
#include "fw/measure.hpp"
#include "fw/poset.hpp"
#include "fw/rational.hpp"
#include "fw/simplex.hpp"

namespace fw {

/// i*(qbar) = max_r |{i : r <= q_i}|. Any bounded subfamily is contained in
/// such an index set, so the single scan suffices.
inline int i_star(const FinitePoset& P, const ConditionSeq& qbar) {
  if (qbar.entries.empty()) throw std::invalid_argument("i* of empty sequence");
  int best = 0;
  for (int r = 0; r < P.size(); ++r) {
    int count = 0;
    for (int q : qbar.entries)
      if (P.leq(r, q)) ++count;
    best = std::max(best, count);
  }
  return best;
}

/// i* over a field of sets: the maximum number of entries sharing a point.
inline int i_star(const FieldOfSets& B, const std::vector<FieldOfSets::Mask>& seq) {
  if (seq.empty()) throw std::invalid_argument("i* of empty sequence");
  int best = 0;
  for (int x = 0; x < B.ground_size(); ++x) {
    FieldOfSets::Mask bit = FieldOfSets::Mask{1} << x;
    int count = 0;
    for (auto q : seq)
      if (q & bit) ++count;
    best = std::max(best, count);
  }
  return best;
}

enum class CertMethod { LP_EXACT, SEQUENCE_BOUND };

/// Exact intersection number with both certificates. The primal witness is
/// a probability measure on the completion's atoms with min measure over
/// iota(Q) equal to the value; the dual witness is a sequence over Q whose
/// i*/n equals the value.
struct IntersectionCertificate {
  Rational value;
  FieldOfSets completion;       // ambient algebra the LP ran in
  std::vector<int> iota_q;      // member id of iota(q) for each q in Q
  std::vector<Rational> atom_weights;  // primal witness, per completion atom
  ConditionSeq dual_witness;    // indices into the queried structure
  CertMethod method = CertMethod::LP_EXACT;

  Fam primal_witness() const {
    std::map<FieldOfSets::Mask, Rational> w;
    auto atoms = completion.atoms();
    for (size_t i = 0; i < atoms.size(); ++i) w[atoms[i]] = atom_weights[i];
    return Fam(completion, std::move(w));
  }
};

namespace detail {

/// Shared LP step: rows are the atoms of `ambient`, columns the distinct
/// members iota_q. Returns the certificate with the dual witness written
/// over the original Q positions.
inline IntersectionCertificate game_certificate(const FieldOfSets& ambient,
                                                const std::vector<int>& iota_q,
                                                const std::vector<int>& q_ids) {
  auto atoms = ambient.atoms();
  // Distinct columns with a representative original position.
  std::vector<int> col_member, col_rep;
  for (size_t qi = 0; qi < iota_q.size(); ++qi) {
    if (std::find(col_member.begin(), col_member.end(), iota_q[qi]) ==
        col_member.end()) {
      col_member.push_back(iota_q[qi]);
      col_rep.push_back(static_cast<int>(qi));
    }
  }
  std::vector<std::vector<int>> payoff(atoms.size(),
                                       std::vector<int>(col_member.size(), 0));
  for (size_t i = 0; i < atoms.size(); ++i)
    for (size_t j = 0; j < col_member.size(); ++j)
      if ((atoms[i] & ~ambient.member(col_member[j])) == 0) payoff[i][j] = 1;

  GameSolution g = solve_matrix_game(payoff);

  IntersectionCertificate cert;
  cert.value = g.value;
  cert.completion = ambient;
  cert.iota_q = iota_q;
  cert.atom_weights = g.row_strategy;
  // Clear denominators of the column strategy into a witness sequence.
  BigInt lcm = 1;
  for (const auto& z : g.col_strategy)
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), z.get_den_mpz_t());
  for (size_t j = 0; j < col_member.size(); ++j) {
    BigInt count = g.col_strategy[j].get_num() * (lcm / g.col_strategy[j].get_den());
    long reps = count.get_si();
    for (long r = 0; r < reps; ++r)
      cert.dual_witness.entries.push_back(q_ids[col_rep[j]]);
  }
  return cert;
}

}  // namespace detail

/// int(Q) for Q a set of elements of a finite poset, through the
/// regular-open completion. int of the empty set is 1 by convention.
inline IntersectionCertificate int_exact(const FinitePoset& P,
                                         const std::vector<int>& Q) {
  if (Q.empty()) {
    IntersectionCertificate c;
    c.value = 1;
    c.method = CertMethod::SEQUENCE_BOUND;
    c.completion = make_field(1, {});
    c.atom_weights = {Rational(1)};
    return c;
  }
  RoCompletion ro = ro_completion(P);
  std::vector<int> iota_q;
  for (int q : Q) iota_q.push_back(ro.iota.map.at(static_cast<size_t>(q)));
  return detail::game_certificate(ro.algebra, iota_q, Q);
}

/// int(Q) for Q a set of nonzero members (by member id) of a field of sets;
/// the field is its own ambient algebra.
inline IntersectionCertificate int_exact(const FieldOfSets& B,
                                         const std::vector<int>& Q) {
  if (Q.empty()) {
    IntersectionCertificate c;
    c.value = 1;
    c.method = CertMethod::SEQUENCE_BOUND;
    c.completion = B;
    c.atom_weights.assign(B.atoms().size(), 0);
    c.atom_weights[0] = 1;
    return c;
  }
  for (int q : Q)
    if (B.member(q) == 0)
      throw std::invalid_argument("Q must avoid the zero member");
  return detail::game_certificate(B, Q, Q);
}

/// Replays both certificate halves with independent arithmetic: the primal
/// measure bounds int from below (the Kelley argument), the dual sequence
/// from above (the defining infimum).
inline bool verify_certificate(const FinitePoset& P, const std::vector<int>& Q,
                               const IntersectionCertificate& cert) {
  if (Q.empty()) return cert.value == 1;
  // Primal: probability measure with min measure over iota(Q) == value.
  Rational total = 0;
  for (const auto& w : cert.atom_weights) {
    if (w < 0) return false;
    total += w;
  }
  if (total != 1) return false;
  Fam mu = cert.primal_witness();
  std::optional<Rational> minq;
  for (int m : cert.iota_q) {
    Rational v = mu.measure_of(cert.completion.member(m));
    if (!minq || v < *minq) minq = v;
  }
  if (!minq || *minq != cert.value) return false;
  // Dual: every entry lies in Q and i*/n == value.
  for (int e : cert.dual_witness.entries)
    if (std::find(Q.begin(), Q.end(), e) == Q.end()) return false;
  int n = static_cast<int>(cert.dual_witness.entries.size());
  if (n == 0) return false;
  return Rational(i_star(P, cert.dual_witness), n) == cert.value;
}

inline bool verify_certificate(const FieldOfSets& B, const std::vector<int>& Q,
                               const IntersectionCertificate& cert) {
  if (Q.empty()) return cert.value == 1;
  Rational total = 0;
  for (const auto& w : cert.atom_weights) {
    if (w < 0) return false;
    total += w;
  }
  if (total != 1) return false;
  Fam mu = cert.primal_witness();
  std::optional<Rational> minq;
  for (int m : cert.iota_q) {
    Rational v = mu.measure_of(cert.completion.member(m));
    if (!minq || v < *minq) minq = v;
  }
  if (!minq || *minq != cert.value) return false;
  std::vector<FieldOfSets::Mask> seq;
  for (int e : cert.dual_witness.entries) {
    if (std::find(Q.begin(), Q.end(), e) == Q.end()) return false;
    seq.push_back(B.member(e));
  }
  if (seq.empty()) return false;
  return Rational(i_star(B, seq), static_cast<int>(seq.size())) == cert.value;
}

/// min over nonempty multisets of Q of size <= n_max of i*/n. Multisets
/// suffice: i* is permutation-invariant.
template <typename Structure>
inline Rational int_upper_bound(const Structure& S, const std::vector<int>& Q,
                                int n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  if (Q.empty()) return 1;
  std::vector<int> counts(Q.size(), 0);
  Rational best = 1;
  // Enumerate count vectors with 1 <= sum <= n_max.
  auto eval = [&] {
    ConditionSeq seq;
    for (size_t i = 0; i < Q.size(); ++i)
      for (int r = 0; r < counts[i]; ++r) seq.entries.push_back(Q[i]);
    if (seq.entries.empty()) return;
    Rational v = eval_seq(S, seq);
    if (v < best) best = v;
  };
  // Odometer over count vectors.
  for (;;) {
    size_t pos = 0;
    for (;;) {
      if (pos == counts.size()) return best;
      ++counts[pos];
      int total = std::accumulate(counts.begin(), counts.end(), 0);
      if (total <= n_max) break;
      counts[pos] = 0;
      ++pos;
    }
    eval();
  }
}

inline Rational eval_seq(const FinitePoset& P, const ConditionSeq& seq) {
  return Rational(i_star(P, seq), static_cast<int>(seq.entries.size()));
}
inline Rational eval_seq(const FieldOfSets& B, const ConditionSeq& seq) {
  std::vector<FieldOfSets::Mask> masks;
  for (int e : seq.entries) masks.push_back(B.member(e));
  return Rational(i_star(B, masks), static_cast<int>(masks.size()));
}

/// Thm-style lower bound: Q = {p in B+ : Xi(p) >= delta} has int >= delta,
/// certified by the measure itself. The returned certificate carries the
/// data needed to replay the integral argument.
struct KelleyBound {
  std::vector<int> Q;  // member ids
  Fam measure;
  Rational delta;
};

inline KelleyBound kelley_lower_bound(const FieldOfSets& B, const Fam& m,
                                      const Rational& delta) {
  if (delta < 0 || delta > 1) throw std::invalid_argument("delta outside [0,1]");
  if (m.total() > 1)
    throw std::invalid_argument("measure must take values in [0,1]");
  KelleyBound kb{{}, m, delta};
  for (int id : B.nonzero_ids())
    if (m.measure_of(B.member(id)) >= delta) kb.Q.push_back(id);
  return kb;
}

/// Replays the integral inequality for one sequence over the bound's Q:
/// sum of indicators <= i* pointwise, so n*delta <= sum Xi(q_i) <= i*.
inline bool kelley_replay(const FieldOfSets& B, const KelleyBound& kb,
                          const ConditionSeq& seq) {
  if (seq.entries.empty()) return true;
  for (int e : seq.entries)
    if (std::find(kb.Q.begin(), kb.Q.end(), e) == kb.Q.end()) return false;
  SimpleFunction sum = SimpleFunction::constant(B, 0);
  Rational xi_sum = 0;
  for (int e : seq.entries) {
    sum = sum + SimpleFunction::indicator(B, B.member(e));
    xi_sum += kb.measure.measure_of(B.member(e));
  }
  std::vector<FieldOfSets::Mask> masks;
  for (int e : seq.entries) masks.push_back(B.member(e));
  int istar = i_star(B, masks);
  // Pointwise bound on atoms, then the integrated chain.
  for (const auto& [a, v] : sum.values)
    if (v > istar) return false;
  if (integrate(sum, kb.measure) != xi_sum) return false;
  int n = static_cast<int>(seq.entries.size());
  if (xi_sum < n * kb.delta) return false;
  return Rational(istar, 1) >= xi_sum;
}

/// Lemma-style invariance: closing Q upward leaves int unchanged.
inline bool check_upward_invariance(const FinitePoset& P,
                                    const std::vector<int>& Q) {
  return int_exact(P, Q).value == int_exact(P, P.upward_closure(Q)).value;
}

/// Preservation through a complete embedding: int of Q in the source equals
/// int of the image in the target; and for subsets R of the target,
/// int_target(R) <= int_source(preimage R).
inline bool check_embedding_preservation(const EmbeddingMap& e,
                                         const std::vector<int>& Q,
                                         const std::vector<std::vector<int>>& sampled_R = {}) {
  if (!is_complete_embedding(e))
    throw std::invalid_argument("embedding is not complete");
  std::vector<int> image;
  for (int q : Q) {
    int nz = -1;
    // iota(q) as an element of the target forcing notion = nonzero member.
    auto ids = e.target.nonzero_ids();
    for (size_t i = 0; i < ids.size(); ++i)
      if (ids[i] == e.map[static_cast<size_t>(q)]) { nz = e.map[static_cast<size_t>(q)]; break; }
    if (nz < 0) return false;
    image.push_back(nz);
  }
  Rational src, tgt = int_exact(e.target, image).value;
  if (auto* p = std::get_if<FinitePoset>(&e.source)) {
    src = int_exact(*p, Q).value;
  } else {
    const auto& f = std::get<FieldOfSets>(e.source);
    auto nzids = f.nonzero_ids();
    std::vector<int> qmem;
    for (int q : Q) qmem.push_back(nzids[static_cast<size_t>(q)]);
    src = int_exact(f, qmem).value;
  }
  if (src != tgt) return false;
  for (const auto& R : sampled_R) {
    std::vector<int> pre;
    for (int a = 0; a < e.source_size(); ++a)
      if (std::find(R.begin(), R.end(), e.map[static_cast<size_t>(a)]) != R.end())
        pre.push_back(a);
    Rational int_R = int_exact(e.target, R).value;
    Rational int_pre;
    if (auto* p = std::get_if<FinitePoset>(&e.source)) {
      int_pre = int_exact(*p, pre).value;
    } else {
      const auto& f = std::get<FieldOfSets>(e.source);
      auto nzids = f.nonzero_ids();
      std::vector<int> mem;
      for (int q : pre) mem.push_back(nzids[static_cast<size_t>(q)]);
      int_pre = int_exact(f, mem).value;
    }
    if (int_R > int_pre) return false;
  }
  return true;
}

}  // namespace fw
