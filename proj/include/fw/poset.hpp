#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fw {

/// Finite preorder with the forcing convention: q <= p means q is the
/// stronger condition. Antisymmetry is not required; `partial_order()`
/// reports whether the input happened to be antisymmetric.
class FinitePoset {
 public:
  FinitePoset() = default;

  /// Builds the poset from element labels and a list of (stronger, weaker)
  /// pairs; the reflexive-transitive closure is applied.
  FinitePoset(std::vector<std::string> labels,
              const std::vector<std::pair<int, int>>& le_pairs)
      : labels_(std::move(labels)), n_(static_cast<int>(labels_.size())) {
    {
      std::set<std::string> seen(labels_.begin(), labels_.end());
      if (static_cast<int>(seen.size()) != n_)
        throw std::invalid_argument("duplicate element label");
    }
    rel_.assign(static_cast<size_t>(n_) * n_, 0);
    for (int i = 0; i < n_; ++i) rel_[idx(i, i)] = 1;
    for (auto [a, b] : le_pairs) {
      check_index(a);
      check_index(b);
      rel_[idx(a, b)] = 1;
    }
    // Floyd-Warshall transitive closure.
    for (int k = 0; k < n_; ++k)
      for (int i = 0; i < n_; ++i)
        if (rel_[idx(i, k)])
          for (int j = 0; j < n_; ++j)
            if (rel_[idx(k, j)]) rel_[idx(i, j)] = 1;
    partial_order_ = true;
    for (int i = 0; i < n_ && partial_order_; ++i)
      for (int j = 0; j < n_; ++j)
        if (i != j && rel_[idx(i, j)] && rel_[idx(j, i)]) {
          partial_order_ = false;
          break;
        }
  }

  int size() const { return n_; }
  bool partial_order() const { return partial_order_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { check_index(i); return labels_[i]; }

  int index_of(const std::string& label) const {
    for (int i = 0; i < n_; ++i)
      if (labels_[i] == label) return i;
    throw std::invalid_argument("unknown element label: " + label);
  }

  /// a <= b in the forcing order (a is at least as strong as b).
  bool leq(int a, int b) const {
    check_index(a);
    check_index(b);
    return rel_[idx(a, b)] != 0;
  }

  /// a || b: some r with r <= a and r <= b.
  bool compatible(int a, int b) const {
    check_index(a);
    check_index(b);
    for (int r = 0; r < n_; ++r)
      if (rel_[idx(r, a)] && rel_[idx(r, b)]) return true;
    return false;
  }

  /// Separative order: p <=* q iff every r <= p is compatible with q.
  bool separative_leq(int p, int q) const {
    check_index(p);
    check_index(q);
    for (int r = 0; r < n_; ++r)
      if (rel_[idx(r, p)] && !compatible(r, q)) return false;
    return true;
  }

  /// If p <=* p_i for every i, produces some q <= p with q <= p_i for all i;
  /// nullopt exactly when the hypothesis fails. Constructive: extends
  /// through each p_i in turn.
  std::optional<int> separative_bound(int p, const std::vector<int>& ps) const {
    check_index(p);
    for (int pi : ps)
      if (!separative_leq(p, pi)) return std::nullopt;
    int q = p;
    for (size_t k = 0; k < ps.size(); ++k) {
      // q <=* p_i for all i (inherited: q <= p and <=* is transitive over <=),
      // and q <= p_j for j < k. Pick a common extension of q and p_k that
      // keeps the already-collected bounds.
      int next = -1;
      for (int r = 0; r < n_; ++r) {
        if (!rel_[idx(r, q)] || !rel_[idx(r, ps[k])]) continue;
        bool keeps = true;
        for (size_t j = 0; j < k && keeps; ++j)
          if (!rel_[idx(r, ps[j])]) keeps = false;
        bool separ = true;
        for (size_t j = k + 1; j < ps.size() && separ; ++j)
          if (!separative_leq(r, ps[j])) separ = false;
        if (keeps && separ) { next = r; break; }
      }
      if (next < 0) return std::nullopt;  // cannot happen when hypothesis holds
      q = next;
    }
    return q;
  }

  /// B^up = {a : exists b in B with b <= a}.
  std::vector<int> upward_closure(const std::vector<int>& B) const {
    std::vector<char> in(n_, 0);
    for (int b : B) {
      check_index(b);
      for (int a = 0; a < n_; ++a)
        if (rel_[idx(b, a)]) in[a] = 1;
    }
    std::vector<int> out;
    for (int a = 0; a < n_; ++a)
      if (in[a]) out.push_back(a);
    return out;
  }

  bool has_lower_bound(const std::vector<int>& S) const {
    if (S.empty()) return true;
    for (int r = 0; r < n_; ++r) {
      bool all = true;
      for (int s : S)
        if (!rel_[idx(r, s)]) { all = false; break; }
      if (all) return true;
    }
    return false;
  }

  bool is_antichain(const std::vector<int>& Q) const {
    for (size_t i = 0; i < Q.size(); ++i)
      for (size_t j = i + 1; j < Q.size(); ++j)
        if (compatible(Q[i], Q[j])) return false;
    return true;
  }

  /// On a finite poset "every finite subset bounded" reduces to the whole
  /// set being bounded.
  bool is_centered(const std::vector<int>& Q) const {
    return has_lower_bound(Q);
  }

  bool is_m_linked(const std::vector<int>& Q, int m) const {
    if (m < 1) throw std::invalid_argument("m must be positive");
    std::vector<int> subset;
    return m_linked_rec(Q, m, 0, subset);
  }

 private:
  bool m_linked_rec(const std::vector<int>& Q, int m, size_t start,
                    std::vector<int>& subset) const {
    if (!has_lower_bound(subset)) return false;
    if (static_cast<int>(subset.size()) == m) return true;
    for (size_t i = start; i < Q.size(); ++i) {
      subset.push_back(Q[i]);
      bool ok = m_linked_rec(Q, m, i + 1, subset);
      subset.pop_back();
      if (!ok) return false;
    }
    return true;
  }

  size_t idx(int i, int j) const { return static_cast<size_t>(i) * n_ + j; }
  void check_index(int i) const {
    if (i < 0 || i >= n_) throw std::out_of_range("element index out of range");
  }

  std::vector<std::string> labels_;
  int n_ = 0;
  std::vector<char> rel_;
  bool partial_order_ = true;
};

/// Finite sequence of conditions (repetition allowed), by element index.
struct ConditionSeq {
  std::vector<int> entries;
};

}  // namespace fw
