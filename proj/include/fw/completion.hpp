#pragma once

#include <stdexcept>
#include <variant>
#include <vector>

#include "fw/field.hpp"
#include "fw/poset.hpp"

namespace fw {

/// A map from a finite forcing notion (poset or field of sets) into the
/// nonzero part of a field of sets. For a field-of-sets source, element i
/// is its i-th nonzero member.
struct EmbeddingMap {
  std::variant<FinitePoset, FieldOfSets> source;
  FieldOfSets target;
  std::vector<int> map;  // source element -> target member id

  int source_size() const {
    if (auto* p = std::get_if<FinitePoset>(&source)) return p->size();
    return static_cast<int>(std::get<FieldOfSets>(source).nonzero_ids().size());
  }
  bool source_leq(int a, int b) const {
    if (auto* p = std::get_if<FinitePoset>(&source)) return p->leq(a, b);
    const auto& f = std::get<FieldOfSets>(source);
    auto nz = f.nonzero_ids();
    return (f.member(nz[a]) & ~f.member(nz[b])) == 0;
  }
  bool source_compatible(int a, int b) const {
    if (auto* p = std::get_if<FinitePoset>(&source)) return p->compatible(a, b);
    const auto& f = std::get<FieldOfSets>(source);
    auto nz = f.nonzero_ids();
    return (f.member(nz[a]) & f.member(nz[b])) != 0;
  }
};

/// int(cl(A)) in the downward topology: open sets are the down-closed ones,
/// cl(A) = A^up. So p is in ro(A) iff every r <= p lies above some a in A.
inline std::vector<char> ro_of(const FinitePoset& P, const std::vector<char>& A) {
  int n = P.size();
  std::vector<char> cl(n, 0);
  for (int a = 0; a < n; ++a)
    if (A[a])
      for (int q = 0; q < n; ++q)
        if (P.leq(a, q)) cl[q] = 1;
  std::vector<char> out(n, 0);
  for (int p = 0; p < n; ++p) {
    bool in = true;
    for (int r = 0; r < n && in; ++r)
      if (P.leq(r, p) && !cl[r]) in = false;
    out[p] = in;
  }
  return out;
}

/// ro of the cone of p. Unfolds to {q : q <=* p}.
inline std::vector<char> ro_cone(const FinitePoset& P, int p) {
  int n = P.size();
  std::vector<char> out(n, 0);
  for (int q = 0; q < n; ++q) out[q] = P.separative_leq(q, p);
  return out;
}

struct RoCompletion {
  FieldOfSets algebra;       // powerset of the completion's atoms
  EmbeddingMap iota;         // p -> member id in `algebra`
  std::vector<std::vector<char>> atom_sets;  // each atom as a subset of P
};

/// The regular-open completion of a finite poset, presented concretely as
/// the powerset of its atoms. The atoms are the minimal nonempty sets among
/// the ro-cones; iota(p) collects the atoms contained in ro(cone(p)).
inline RoCompletion ro_completion(const FinitePoset& P) {
  int n = P.size();
  if (n < 1) throw std::invalid_argument("empty poset has no completion");
  std::vector<std::vector<char>> cones(n);
  for (int p = 0; p < n; ++p) cones[p] = ro_cone(P, p);

  auto subset = [n](const std::vector<char>& a, const std::vector<char>& b) {
    for (int i = 0; i < n; ++i)
      if (a[i] && !b[i]) return false;
    return true;
  };
  // Minimal distinct cones are the atoms: iota is dense, so every nonzero
  // regular open set contains a cone.
  std::vector<std::vector<char>> atoms;
  for (int p = 0; p < n; ++p) {
    bool minimal = true;
    for (int q = 0; q < n && minimal; ++q)
      if (subset(cones[q], cones[p]) && cones[q] != cones[p]) minimal = false;
    if (minimal) {
      bool dup = false;
      for (auto& a : atoms)
        if (a == cones[p]) { dup = true; break; }
      if (!dup) atoms.push_back(cones[p]);
    }
  }
  int k = static_cast<int>(atoms.size());
  if (k > max_ground_size())
    throw std::invalid_argument("completion exceeds ground-set cap");

  std::vector<FieldOfSets::Mask> members;
  for (FieldOfSets::Mask m = 0; m < (FieldOfSets::Mask{1} << k); ++m)
    members.push_back(m);
  FieldOfSets algebra(k, std::move(members));

  std::vector<int> map(n);
  for (int p = 0; p < n; ++p) {
    FieldOfSets::Mask m = 0;
    for (int i = 0; i < k; ++i)
      if (subset(atoms[i], cones[p])) m |= FieldOfSets::Mask{1} << i;
    map[p] = algebra.id_of(m);
  }
  return RoCompletion{algebra, EmbeddingMap{P, algebra, std::move(map)}, atoms};
}

namespace detail {
inline bool embedding_structure_ok(const EmbeddingMap& e) {
  int n = e.source_size();
  if (static_cast<int>(e.map.size()) != n) return false;
  for (int a = 0; a < n; ++a)
    if (e.target.member(e.map[a]) == 0) return false;  // image must avoid 0
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto ma = e.target.member(e.map[a]);
      auto mb = e.target.member(e.map[b]);
      if (e.source_leq(a, b) && (ma & ~mb) != 0) return false;
      if (!e.source_compatible(a, b) && (ma & mb) != 0) return false;
    }
  return true;
}
}  // namespace detail

/// Complete embedding via the reduction criterion: order and incompatibility
/// preserved, and every nonzero target member b has a reduction r (every
/// extension of r meets b).
inline bool is_complete_embedding(const EmbeddingMap& e) {
  if (!detail::embedding_structure_ok(e)) return false;
  int n = e.source_size();
  for (int bid : e.target.nonzero_ids()) {
    auto b = e.target.member(bid);
    bool has_reduction = false;
    for (int r = 0; r < n && !has_reduction; ++r) {
      bool reduction = true;
      for (int r2 = 0; r2 < n && reduction; ++r2)
        if (e.source_leq(r2, r) && (e.target.member(e.map[r2]) & b) == 0)
          reduction = false;
      has_reduction = reduction;
    }
    if (!has_reduction) return false;
  }
  return true;
}

/// Order/incompatibility preserving with dense image in the nonzero part.
inline bool is_dense_embedding(const EmbeddingMap& e) {
  if (!detail::embedding_structure_ok(e)) return false;
  int n = e.source_size();
  for (int bid : e.target.nonzero_ids()) {
    auto b = e.target.member(bid);
    bool below = false;
    for (int a = 0; a < n && !below; ++a)
      if ((e.target.member(e.map[a]) & ~b) == 0) below = true;
    if (!below) return false;
  }
  return true;
}

}  // namespace fw
