#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fw/completion.hpp"
#include "fw/field.hpp"
#include "fw/intersection.hpp"
#include "fw/measure.hpp"
#include "fw/poset.hpp"
#include "fw/rational.hpp"

namespace fw {

// Uniform element view of the two forcing structures. Poset elements are
// poset indices; field elements are member ids of nonzero members.
inline std::vector<int> forcing_elements(const FinitePoset& P) {
  std::vector<int> out(P.size());
  for (int i = 0; i < P.size(); ++i) out[i] = i;
  return out;
}
inline std::vector<int> forcing_elements(const FieldOfSets& B) {
  return B.nonzero_ids();
}
inline bool forcing_leq(const FinitePoset& P, int a, int b) { return P.leq(a, b); }
inline bool forcing_leq(const FieldOfSets& B, int a, int b) {
  return (B.member(a) & ~B.member(b)) == 0;
}
inline bool forcing_has_lower_bound(const FinitePoset& P, const std::vector<int>& S) {
  return P.has_lower_bound(S);
}
inline bool forcing_has_lower_bound(const FieldOfSets& B, const std::vector<int>& S) {
  auto m = B.full_mask();
  for (int s : S) m &= B.member(s);
  return m != 0;
}
inline std::vector<int> forcing_upward_closure(const FinitePoset& P,
                                               const std::vector<int>& S) {
  return P.upward_closure(S);
}
inline std::vector<int> forcing_upward_closure(const FieldOfSets& B,
                                               const std::vector<int>& S) {
  std::vector<int> out;
  for (int id : B.nonzero_ids())
    for (int s : S)
      if ((B.member(s) & ~B.member(id)) == 0) { out.push_back(id); break; }
  return out;
}

template <typename Structure>
inline bool forcing_m_linked(const Structure& S, const std::vector<int>& Q, int m) {
  if (m < 1) throw std::invalid_argument("m must be positive");
  // Every subset of size <= m must have a lower bound.
  std::vector<int> subset;
  auto rec = [&](auto&& self, size_t start) -> bool {
    if (!forcing_has_lower_bound(S, subset)) return false;
    if (static_cast<int>(subset.size()) == m) return true;
    for (size_t i = start; i < Q.size(); ++i) {
      subset.push_back(Q[i]);
      bool ok = self(self, i + 1);
      subset.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return rec(rec, 0);
}

/// Finite stand-in for a mu-intersection-linked witness: finitely many
/// indices, a finite epsilon grid, one cell per (index, eps).
template <typename Structure>
struct LinkedFamily {
  std::vector<std::string> index_labels;
  std::vector<Rational> eps_grid;  // sorted ascending
  std::map<std::pair<int, int>, std::vector<int>> cells;  // (index, eps pos)

  const std::vector<int>& cell(int idx, int eps_pos) const {
    static const std::vector<int> empty;
    auto it = cells.find({idx, eps_pos});
    return it == cells.end() ? empty : it->second;
  }
};

struct LinkedFailure {
  int index;
  int eps_pos;
  bool density_failure;  // otherwise an int-bound failure
  Rational achieved;     // int value of the failing cell (bound failures)
  int element = -1;      // element with no cell condition below it (density)
};

struct LinkedVerdict {
  bool ok = true;
  std::vector<LinkedFailure> failures;
};

/// Checks both witness conditions on the grid: every cell has intersection
/// number >= 1 - eps (exact LP), and for every eps the union of the cells
/// is dense.
template <typename Structure>
inline LinkedVerdict verify_intersection_linked(const Structure& S,
                                                const LinkedFamily<Structure>& F) {
  LinkedVerdict v;
  for (size_t ei = 0; ei < F.eps_grid.size(); ++ei) {
    const Rational& eps = F.eps_grid[ei];
    for (size_t ai = 0; ai < F.index_labels.size(); ++ai) {
      const auto& cell = F.cell(static_cast<int>(ai), static_cast<int>(ei));
      Rational val = int_exact(S, cell).value;
      if (val < 1 - eps) {
        v.ok = false;
        v.failures.push_back({static_cast<int>(ai), static_cast<int>(ei),
                              false, val});
      }
    }
    // Density of the union.
    std::vector<int> uni;
    for (size_t ai = 0; ai < F.index_labels.size(); ++ai) {
      const auto& cell = F.cell(static_cast<int>(ai), static_cast<int>(ei));
      uni.insert(uni.end(), cell.begin(), cell.end());
    }
    for (int p : forcing_elements(S)) {
      bool found = false;
      for (int q : uni)
        if (forcing_leq(S, q, p)) { found = true; break; }
      if (!found) {
        v.ok = false;
        v.failures.push_back({-1, static_cast<int>(ei), true, Rational(0), p});
      }
    }
  }
  return v;
}

template <typename Structure>
inline LinkedFamily<Structure> upward_close_family(const Structure& S,
                                                   const LinkedFamily<Structure>& F) {
  LinkedFamily<Structure> out = F;
  for (auto& [key, cell] : out.cells) cell = forcing_upward_closure(S, cell);
  return out;
}

/// Cells at the largest grid epsilon below 1/(m+1), upward closed; each is
/// m-linked and together they cover the whole structure.
template <typename Structure>
inline std::vector<std::vector<int>> derive_m_linked_cover(
    const Structure& S, const LinkedFamily<Structure>& F, int m) {
  if (m < 1) throw std::invalid_argument("m must be positive");
  int eps_pos = -1;
  for (size_t i = 0; i < F.eps_grid.size(); ++i)
    if (F.eps_grid[i] < Rational(1, m + 1)) eps_pos = static_cast<int>(i);
  if (eps_pos < 0)
    throw std::invalid_argument("epsilon grid has no point below 1/(m+1)");
  std::vector<std::vector<int>> cover;
  for (size_t ai = 0; ai < F.index_labels.size(); ++ai)
    cover.push_back(forcing_upward_closure(
        S, F.cell(static_cast<int>(ai), eps_pos)));
  return cover;
}

// Element <-> embedding-map index translation. EmbeddingMap indexes a field
// source by nonzero position, while family cells over a field use member ids.
inline int to_map_index(const FinitePoset&, int elem) { return elem; }
inline int to_map_index(const FieldOfSets& B, int elem) {
  auto nz = B.nonzero_ids();
  auto it = std::find(nz.begin(), nz.end(), elem);
  if (it == nz.end()) throw std::invalid_argument("not a nonzero member");
  return static_cast<int>(it - nz.begin());
}
inline int from_map_index(const FinitePoset&, int idx) { return idx; }
inline int from_map_index(const FieldOfSets& B, int idx) {
  return B.nonzero_ids().at(static_cast<size_t>(idx));
}

/// Pushes a family forward along a dense embedding: cells become images.
template <typename Src>
inline LinkedFamily<FieldOfSets> transfer_forward(const Src& src,
                                                  const LinkedFamily<Src>& F,
                                                  const EmbeddingMap& e) {
  if (!is_dense_embedding(e))
    throw std::invalid_argument("forward transfer needs a dense embedding");
  LinkedFamily<FieldOfSets> out;
  out.index_labels = F.index_labels;
  out.eps_grid = F.eps_grid;
  for (const auto& [key, cell] : F.cells) {
    std::vector<int> image;
    for (int p : cell) {
      int mid = e.map.at(static_cast<size_t>(to_map_index(src, p)));
      if (std::find(image.begin(), image.end(), mid) == image.end())
        image.push_back(mid);
    }
    out.cells[key] = std::move(image);
  }
  return out;
}

/// Pulls a family back along a complete embedding: cells become preimages.
template <typename Src>
inline LinkedFamily<Src> transfer_backward(const Src& src,
                                           const LinkedFamily<FieldOfSets>& F,
                                           const EmbeddingMap& e) {
  if (!is_complete_embedding(e))
    throw std::invalid_argument("backward transfer needs a complete embedding");
  LinkedFamily<Src> out;
  out.index_labels = F.index_labels;
  out.eps_grid = F.eps_grid;
  for (const auto& [key, cell] : F.cells) {
    std::vector<int> pre;
    for (int idx = 0; idx < e.source_size(); ++idx)
      if (std::find(cell.begin(), cell.end(),
                    e.map.at(static_cast<size_t>(idx))) != cell.end())
        pre.push_back(from_map_index(src, idx));
    out.cells[key] = std::move(pre);
  }
  return out;
}

/// The density-property construction: cells Q_{s,eps} = {b : mu_s(b) >= 1-eps}.
inline LinkedFamily<FieldOfSets> density_to_linked_family(
    const FieldOfSets& B, const Fam& m,
    const std::vector<FieldOfSets::Mask>& S,
    const std::vector<Rational>& eps_grid) {
  if (density_property_check(m, S, eps_grid).has_value())
    throw std::invalid_argument("measure lacks the density property on this grid");
  LinkedFamily<FieldOfSets> F;
  F.eps_grid = eps_grid;
  std::sort(F.eps_grid.begin(), F.eps_grid.end());
  for (auto s : S) F.index_labels.push_back(FieldOfSets::mask_label(s));
  for (size_t si = 0; si < S.size(); ++si) {
    Fam mu_s = m.relative_to(S[si]);
    for (size_t ei = 0; ei < F.eps_grid.size(); ++ei) {
      std::vector<int> cell;
      for (int id : B.nonzero_ids())
        if (mu_s.measure_of(B.member(id)) >= 1 - F.eps_grid[ei])
          cell.push_back(id);
      F.cells[{static_cast<int>(si), static_cast<int>(ei)}] = std::move(cell);
    }
  }
  return F;
}

}  // namespace fw
