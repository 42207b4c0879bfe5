#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "fw/poset.hpp"

namespace fw {

/// Ground-set size cap for field enumeration; overridable through the
/// FW_MAX_GROUND environment variable.
inline int max_ground_size() {
  if (const char* env = std::getenv("FW_MAX_GROUND")) {
    int v = std::atoi(env);
    if (v > 0 && v <= 62) return v;
  }
  return 16;
}

/// A finite field of sets over ground set {0,...,ground_size-1}. Members are
/// bit masks, kept sorted; member 0 is the empty set, the last member is the
/// whole ground set.
class FieldOfSets {
 public:
  using Mask = std::uint64_t;

  FieldOfSets() = default;
  FieldOfSets(int ground_size, std::vector<Mask> members)
      : ground_(ground_size), members_(std::move(members)) {
    if (ground_ < 1 || ground_ > max_ground_size())
      throw std::invalid_argument("ground-set size out of range");
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()),
                   members_.end());
    Mask full = full_mask();
    for (Mask m : members_)
      if (m & ~full) throw std::invalid_argument("member outside ground set");
    // Closure sanity: empty, full, complements, pairwise unions.
    auto has = [&](Mask m) {
      return std::binary_search(members_.begin(), members_.end(), m);
    };
    if (!has(0) || !has(full))
      throw std::invalid_argument("field must contain 0 and 1");
    for (Mask a : members_) {
      if (!has(full & ~a))
        throw std::invalid_argument("field not closed under complement");
      for (Mask b : members_)
        if (!has(a | b))
          throw std::invalid_argument("field not closed under union");
    }
  }

  int ground_size() const { return ground_; }
  Mask full_mask() const { return (Mask{1} << ground_) - 1; }
  int size() const { return static_cast<int>(members_.size()); }
  const std::vector<Mask>& members() const { return members_; }
  Mask member(int id) const { return members_.at(static_cast<size_t>(id)); }

  bool contains(Mask m) const {
    return std::binary_search(members_.begin(), members_.end(), m);
  }
  int id_of(Mask m) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), m);
    if (it == members_.end() || *it != m)
      throw std::invalid_argument("not a member of the field");
    return static_cast<int>(it - members_.begin());
  }

  /// Minimal nonzero members; they partition the ground set.
  std::vector<Mask> atoms() const {
    std::vector<Mask> out;
    for (Mask a : members_) {
      if (a == 0) continue;
      bool minimal = true;
      for (Mask b : members_)
        if (b != 0 && b != a && (b & ~a) == 0) { minimal = false; break; }
      if (minimal) out.push_back(a);
    }
    return out;
  }

  /// Ids of the nonzero members, in mask order.
  std::vector<int> nonzero_ids() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (members_[static_cast<size_t>(i)] != 0) out.push_back(i);
    return out;
  }

  /// True iff C's members all belong to this field and C is a field itself.
  bool has_subalgebra(const FieldOfSets& C) const {
    if (C.ground_size() != ground_) return false;
    for (Mask m : C.members())
      if (!contains(m)) return false;
    return true;
  }

  /// The nonzero members as a forcing notion ordered by inclusion.
  FinitePoset member_poset() const {
    std::vector<std::string> labels;
    std::vector<std::pair<int, int>> le;
    auto nz = nonzero_ids();
    for (size_t i = 0; i < nz.size(); ++i)
      labels.push_back(mask_label(member(nz[i])));
    for (size_t i = 0; i < nz.size(); ++i)
      for (size_t j = 0; j < nz.size(); ++j)
        if ((member(nz[i]) & ~member(nz[j])) == 0)
          le.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return FinitePoset(std::move(labels), le);
  }

  static std::string mask_label(Mask m) {
    if (m == 0) return "{}";
    std::string s;
    for (int x = 0; x < 64; ++x)
      if (m & (Mask{1} << x)) {
        if (!s.empty()) s += ',';
        s += std::to_string(x);
      }
    return s;
  }

 private:
  int ground_ = 1;
  std::vector<Mask> members_;
};

/// Smallest field over {0,...,ground_size-1} containing the generators.
inline FieldOfSets make_field(int ground_size,
                              const std::vector<FieldOfSets::Mask>& generators) {
  using Mask = FieldOfSets::Mask;
  if (ground_size < 1 || ground_size > max_ground_size())
    throw std::invalid_argument("ground-set size out of range");
  Mask full = (Mask{1} << ground_size) - 1;
  for (Mask g : generators)
    if (g & ~full) throw std::invalid_argument("generator outside ground set");
  std::vector<Mask> fam = {0, full};
  fam.insert(fam.end(), generators.begin(), generators.end());
  auto dedup = [&] {
    std::sort(fam.begin(), fam.end());
    fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
  };
  dedup();
  for (;;) {
    size_t before = fam.size();
    size_t cur = fam.size();
    for (size_t i = 0; i < cur; ++i) {
      fam.push_back(full & ~fam[i]);
      for (size_t j = i + 1; j < cur; ++j) fam.push_back(fam[i] | fam[j]);
    }
    dedup();
    if (fam.size() == before) break;
  }
  return FieldOfSets(ground_size, std::move(fam));
}

inline std::vector<FieldOfSets::Mask> atoms_of(const FieldOfSets& B) {
  return B.atoms();
}

}  // namespace fw
