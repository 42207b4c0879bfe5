#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fw/rational.hpp"

namespace fw {

/// Raised when a request needs paper-profile constants beyond level 1;
/// those are not approximated, they are refused.
struct CapabilityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Per-level growth data for the norm arithmetic: branching M(h) and norm
/// base a(h). rho and pi are informational for custom profiles.
struct LevelData {
  BigInt M;
  BigInt a;
};

/// The tree's growth functions. The paper-exact profile carries levels 0
/// and 1 only: pi(2) already needs about 2^1928 bits, which no machine can
/// store, so requests beyond level 1 are refused rather than approximated.
class GrowthProfile {
 public:
  enum class Kind { PAPER, CUSTOM };

  static GrowthProfile paper() { return GrowthProfile(Kind::PAPER, {}); }

  static GrowthProfile custom(std::vector<LevelData> levels) {
    for (const auto& l : levels)
      if (l.M < 2 || l.a < 2)
        throw std::invalid_argument("profile needs M >= 2 and a >= 2");
    if (levels.empty()) throw std::invalid_argument("profile needs a level");
    return GrowthProfile(Kind::CUSTOM, std::move(levels));
  }

  Kind kind() const { return kind_; }

  bool supports(int h) const {
    if (h < 0) return false;
    if (kind_ == Kind::PAPER) return h <= 1;
    return h < static_cast<int>(levels_.size());
  }

  BigInt branching(int h) const {  // M(h)
    require(h);
    if (kind_ == Kind::CUSTOM) return levels_[static_cast<size_t>(h)].M;
    if (h == 0) return 16;
    BigInt m;
    mpz_ui_pow_ui(m.get_mpz_t(), 2, 960);
    return m;
  }

  BigInt norm_base(int h) const {  // a(h)
    require(h);
    if (kind_ == Kind::CUSTOM) return levels_[static_cast<size_t>(h)].a;
    if (h == 0) return 4;
    BigInt a;
    mpz_ui_pow_ui(a.get_mpz_t(), 2, 480);
    return a;
  }

 private:
  GrowthProfile(Kind k, std::vector<LevelData> levels)
      : kind_(k), levels_(std::move(levels)) {}
  void require(int h) const {
    if (!supports(h)) {
      if (kind_ == Kind::PAPER)
        throw CapabilityError(
            "paper profile supports levels 0 and 1 only; level-2 "
            "constants exceed physical storage (~2^1928 bits)");
      throw std::invalid_argument("level beyond the profile's tables");
    }
  }
  Kind kind_;
  std::vector<LevelData> levels_;
};

struct PaperConstants {
  BigInt rho, pi, a, M;
};

/// Exact growth constants of the paper profile. Level 0 is the base case;
/// level 1 evaluates the recursion: rho(1) = max{|Lev_1|, 3} = 16,
/// pi(1) = [4 * 16^2]^16 = 2^160, a(1) = pi(1)^3, M(1) = a(1)^2.
inline PaperConstants paper_constants(int h) {
  if (h == 0) return {2, 2, 4, 16};
  if (h == 1) {
    PaperConstants c;
    c.rho = 16;
    mpz_ui_pow_ui(c.pi.get_mpz_t(), 2, 160);
    mpz_ui_pow_ui(c.a.get_mpz_t(), 2, 480);
    mpz_ui_pow_ui(c.M.get_mpz_t(), 2, 960);
    return c;
  }
  throw CapabilityError(
      "paper constants stop at level 1: |Lev_2| = 2^964, so pi(2) = "
      "[9*rho(2)^3]^(rho(2)^2) needs about 2^1928 bits");
}

struct NormValue {
  bool infinite = false;
  double approx = 0.0;  // advisory only; exact comparisons use norm_at_least
};

namespace detail {
inline double log2_mpz(const BigInt& z) {
  long exp;
  double d = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log2(d) + static_cast<double>(exp);
}
}  // namespace detail

/// mu_h(n) = log_{a(h)}(M(h)/(M(h)-n)); infinity at n = M(h).
inline NormValue norm_value(const GrowthProfile& pr, int h, const BigInt& n) {
  BigInt M = pr.branching(h);
  if (n < 0 || n > M) throw std::invalid_argument("count out of range");
  if (n == M) return {true, 0.0};
  double num = detail::log2_mpz(M) - detail::log2_mpz(M - n);
  return {false, num / detail::log2_mpz(pr.norm_base(h))};
}

/// Decides mu_h(n) >= u/v without logarithms: equivalent to
/// M^v >= a^u * (M-n)^v in exact integers (true unconditionally at n = M).
inline bool norm_at_least(const GrowthProfile& pr, int h, const BigInt& n,
                          const Rational& threshold) {
  BigInt M = pr.branching(h);
  if (n < 0 || n > M) throw std::invalid_argument("count out of range");
  if (threshold <= 0) throw std::invalid_argument("threshold must be positive");
  if (n == M) return true;
  BigInt u = threshold.get_num(), v = threshold.get_den();
  if (!u.fits_ulong_p() || !v.fits_ulong_p())
    throw std::invalid_argument("threshold too large");
  BigInt lhs, rhs, pw;
  mpz_pow_ui(lhs.get_mpz_t(), M.get_mpz_t(), v.get_ui());
  mpz_pow_ui(rhs.get_mpz_t(), pr.norm_base(h).get_mpz_t(), u.get_ui());
  BigInt rem = M - n;
  mpz_pow_ui(pw.get_mpz_t(), rem.get_mpz_t(), v.get_ui());
  rhs *= pw;
  return lhs >= rhs;
}

/// The cardinality identity |A| = M(h) * (1 - a(h)^{-mu(A)}), checked in the
/// rearranged exact form n = M * (1 - (M-n)/M). Exhaustive when M(h) is
/// enumerable, endpoint-and-sample otherwise.
inline bool lemma_v50_check(const GrowthProfile& pr, int h) {
  BigInt M = pr.branching(h);
  auto check = [&](const BigInt& n) {
    if (n == M) return true;  // a^{-inf} = 0 convention: both sides M * 1
    Rational lhs(n);
    Rational rhs = Rational(M) * (1 - Rational(M - n, M));
    if (lhs != rhs) return false;
    // mu(n) > 0 iff M/(M-n) > 1 iff n > 0; at n = 0 even a tiny positive
    // threshold fails (checked through the integer form, kept small so the
    // exponent stays cheap for huge M).
    if (n == 0) return !norm_at_least(pr, h, n, Rational(1, 4));
    return M > M - n;
  };
  if (M <= 65536) {
    for (BigInt n = 0; n <= M; ++n)
      if (!check(n)) return false;
    return true;
  }
  for (int k = 0; k <= 64; ++k)
    if (!check(BigInt(k)) || !check(M - k)) return false;
  return true;
}

/// Kept-children set of a node; the cofinite mode exists because paper
/// profile conditions exclude at most a handful of 2^960 children.
struct SuccessorSet {
  enum class Mode { EXPLICIT, COFINITE };
  Mode mode = Mode::EXPLICIT;
  std::vector<BigInt> children;  // EXPLICIT: kept; COFINITE: excluded
  BigInt total = 0;              // COFINITE only: |succ| of the full tree

  static SuccessorSet explicit_set(std::vector<BigInt> kept) {
    SuccessorSet s;
    s.mode = Mode::EXPLICIT;
    s.children = std::move(kept);
    std::sort(s.children.begin(), s.children.end());
    s.children.erase(std::unique(s.children.begin(), s.children.end()),
                     s.children.end());
    return s;
  }
  static SuccessorSet cofinite(BigInt total, std::vector<BigInt> excluded) {
    SuccessorSet s;
    s.mode = Mode::COFINITE;
    s.total = std::move(total);
    s.children = std::move(excluded);
    std::sort(s.children.begin(), s.children.end());
    s.children.erase(std::unique(s.children.begin(), s.children.end()),
                     s.children.end());
    if (BigInt(static_cast<long>(s.children.size())) >= s.total)
      throw std::invalid_argument("cofinite set must be nonempty");
    return s;
  }

  BigInt cardinality() const {
    if (mode == Mode::EXPLICIT) return BigInt(static_cast<long>(children.size()));
    return total - BigInt(static_cast<long>(children.size()));
  }
  bool keeps(const BigInt& child) const {
    bool listed = std::binary_search(children.begin(), children.end(), child);
    return mode == Mode::EXPLICIT ? listed : !listed;
  }
};

using NodePath = std::vector<BigInt>;

/// Finite truncation of a tree condition: explicit trunk, recorded successor
/// sets strictly below it, full extension assumed at and past the frontier.
struct ECondition {
  GrowthProfile profile = GrowthProfile::paper();
  NodePath trunk;
  std::map<NodePath, SuccessorSet> branches;
  int frontier_depth = 0;
};

namespace detail {
inline bool path_extends(const NodePath& base, const NodePath& p) {
  if (p.size() < base.size()) return false;
  return std::equal(base.begin(), base.end(), p.begin());
}
}  // namespace detail

/// Structural sanity: valid child indices, recorded nodes extend the trunk
/// and stay above the frontier, recorded sets nonempty, no recorded orphan
/// (a node's parent either is the trunk end or is itself recorded keeping
/// the node).
inline void validate_structure(const ECondition& c) {
  const auto& pr = c.profile;
  auto check_path = [&](const NodePath& p) {
    for (size_t d = 0; d < p.size(); ++d) {
      if (!pr.supports(static_cast<int>(d)))
        throw std::invalid_argument("node at unsupported level");
      if (p[d] < 0 || p[d] >= pr.branching(static_cast<int>(d)))
        throw std::invalid_argument("child index out of range");
    }
  };
  check_path(c.trunk);
  if (c.frontier_depth < static_cast<int>(c.trunk.size()))
    throw std::invalid_argument("frontier above the trunk end");
  for (const auto& [path, succ] : c.branches) {
    check_path(path);
    if (!detail::path_extends(c.trunk, path))
      throw std::invalid_argument("recorded node does not extend the trunk");
    if (static_cast<int>(path.size()) >= c.frontier_depth)
      throw std::invalid_argument("recorded node at or past the frontier");
    int h = static_cast<int>(path.size());
    if (succ.cardinality() <= 0)
      throw std::invalid_argument("recorded successor set is empty");
    if (succ.mode == SuccessorSet::Mode::COFINITE) {
      if (succ.total != pr.branching(h))
        throw std::invalid_argument("cofinite total differs from M(level)");
    } else {
      for (const auto& ch : succ.children)
        if (ch < 0 || ch >= pr.branching(h))
          throw std::invalid_argument("kept child out of range");
    }
    if (path.size() > c.trunk.size()) {
      NodePath parent(path.begin(), path.end() - 1);
      auto it = c.branches.find(parent);
      if (it == c.branches.end())
        throw std::invalid_argument("recorded node with unrecorded parent");
      if (!it->second.keeps(path.back()))
        throw std::invalid_argument("recorded node excluded by its parent");
    }
  }
}

/// Def-of-the-forcing membership: every recorded node at or below the trunk
/// end meets the norm threshold 1 + 1/lg(trunk). An empty trunk makes the
/// threshold infinite, so only fully extended trees qualify.
inline bool is_condition(const ECondition& c) {
  validate_structure(c);
  size_t L = c.trunk.size();
  for (const auto& [path, succ] : c.branches) {
    int h = static_cast<int>(path.size());
    if (L == 0) {
      if (succ.cardinality() != c.profile.branching(h)) return false;
    } else {
      Rational threshold(static_cast<long>(L) + 1, static_cast<long>(L));
      if (!norm_at_least(c.profile, h, succ.cardinality(), threshold))
        return false;
    }
  }
  return true;
}

/// loss(p) = 1/m for the maximal m > 2 with 3m < lg(trunk) and all norms at
/// least 1 + 1/m. Only the largest trunk-admissible m needs testing: the
/// norm clause weakens as m grows.
inline std::optional<Rational> loss_of(const ECondition& c) {
  if (!is_condition(c)) return std::nullopt;
  long L = static_cast<long>(c.trunk.size());
  long m = (L - 1) / 3;  // largest m with 3m < L
  if (m <= 2) return std::nullopt;
  Rational threshold(m + 1, m);
  for (const auto& [path, succ] : c.branches) {
    int h = static_cast<int>(path.size());
    if (!norm_at_least(c.profile, h, succ.cardinality(), threshold))
      return std::nullopt;
  }
  return Rational(1, m);
}

/// Leb([p]) / Leb([trunk(p)]) under the uniform splitting measure: each
/// level-h node spreads its mass equally over its M(h) children.
inline Rational leb_ratio(const ECondition& c) {
  validate_structure(c);
  auto rec = [&](auto&& self, const NodePath& path) -> Rational {
    if (static_cast<int>(path.size()) >= c.frontier_depth) return 1;
    auto it = c.branches.find(path);
    if (it == c.branches.end()) return 1;  // implicitly fully extended
    const SuccessorSet& succ = it->second;
    int h = static_cast<int>(path.size());
    BigInt M = c.profile.branching(h);
    // Recorded kept children recurse; the rest carry full mass.
    Rational kept_mass = Rational(succ.cardinality());
    NodePath child = path;
    child.push_back(0);
    for (const auto& [other, os] : c.branches) {
      if (other.size() != path.size() + 1) continue;
      if (!std::equal(path.begin(), path.end(), other.begin())) continue;
      if (!succ.keeps(other.back())) continue;
      kept_mass += self(self, other) - 1;
    }
    return kept_mass / Rational(M);
  };
  return rec(rec, c.trunk);
}

/// Membership in Q_{t,eps}: loss defined, trunk equal to t, loss <= eps.
inline bool q_t_eps_membership(const ECondition& c, const NodePath& t,
                               const Rational& eps) {
  auto l = loss_of(c);
  return l.has_value() && c.trunk == t && *l <= eps;
}

}  // namespace fw
