#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fw/field.hpp"
#include "fw/rational.hpp"

namespace fw {

/// Finitely additive measure on a finite field of sets, given by nonnegative
/// rational weights on the atoms. The trivial measure (total 0) is excluded.
class Fam {
 public:
  using Mask = FieldOfSets::Mask;

  Fam(FieldOfSets algebra, std::map<Mask, Rational> atom_weights)
      : algebra_(std::move(algebra)), weights_(std::move(atom_weights)) {
    Rational total = 0;
    for (Mask a : algebra_.atoms()) {
      auto it = weights_.find(a);
      if (it == weights_.end())
        throw std::invalid_argument("missing atom weight");
      if (it->second < 0)
        throw std::invalid_argument("negative atom weight");
      total += it->second;
    }
    if (weights_.size() != algebra_.atoms().size())
      throw std::invalid_argument("weight on a non-atom");
    if (total == 0)
      throw std::invalid_argument("trivial measure excluded");
  }

  static Fam uniform(const FieldOfSets& B) {
    std::map<Mask, Rational> w;
    auto atoms = B.atoms();
    for (Mask a : atoms) w[a] = Rational(1, static_cast<long>(atoms.size()));
    return Fam(B, std::move(w));
  }

  const FieldOfSets& algebra() const { return algebra_; }
  const std::map<Mask, Rational>& atom_weights() const { return weights_; }

  Rational operator()(Mask E) const { return measure_of(E); }

  Rational measure_of(Mask E) const {
    if (!algebra_.contains(E))
      throw std::invalid_argument("not a member of the measure's algebra");
    Rational sum = 0;
    for (const auto& [a, w] : weights_)
      if ((a & ~E) == 0) sum += w;
    return sum;
  }

  Rational total() const { return measure_of(algebra_.full_mask()); }

  bool is_probability() const { return total() == 1; }

  bool is_strictly_positive() const {
    for (const auto& [a, w] : weights_)
      if (w == 0) return false;
    return true;
  }

  /// Xi_b : a -> Xi(a & b) / Xi(b). Requires Xi(b) > 0.
  Fam relative_to(Mask b) const {
    Rational xb = measure_of(b);
    if (xb == 0) throw std::invalid_argument("relative measure needs Xi(b) > 0");
    std::map<Mask, Rational> w;
    for (const auto& [a, wt] : weights_)
      w[a] = (a & ~b) == 0 ? wt / xb : Rational(0);
    return Fam(algebra_, std::move(w));
  }

 private:
  FieldOfSets algebra_;
  std::map<Mask, Rational> weights_;
};

inline Rational measure_of(const Fam& m, FieldOfSets::Mask E) {
  return m.measure_of(E);
}
inline Fam relative_measure(const Fam& m, FieldOfSets::Mask b) {
  return m.relative_to(b);
}
inline bool is_strictly_positive(const Fam& m) {
  return m.is_strictly_positive();
}

/// Rational-valued function constant on the atoms of a field.
struct SimpleFunction {
  using Mask = FieldOfSets::Mask;
  std::map<Mask, Rational> values;  // atom -> value

  static SimpleFunction indicator(const FieldOfSets& B, Mask E) {
    if (!B.contains(E)) throw std::invalid_argument("indicator of a non-member");
    SimpleFunction f;
    for (Mask a : B.atoms()) f.values[a] = (a & ~E) == 0 ? 1 : 0;
    return f;
  }
  static SimpleFunction constant(const FieldOfSets& B, const Rational& c) {
    SimpleFunction f;
    for (Mask a : B.atoms()) f.values[a] = c;
    return f;
  }

  SimpleFunction operator+(const SimpleFunction& g) const {
    SimpleFunction h = *this;
    for (auto& [a, v] : h.values) v += g.values.at(a);
    return h;
  }
  SimpleFunction scaled(const Rational& c) const {
    SimpleFunction h = *this;
    for (auto& [a, v] : h.values) v *= c;
    return h;
  }
};

/// Integral of an atom-constant function: the finite weighted sum.
inline Rational integrate(const SimpleFunction& f, const Fam& m) {
  if (f.values.size() != m.atom_weights().size())
    throw std::invalid_argument("function and measure algebras differ");
  Rational sum = 0;
  for (const auto& [a, w] : m.atom_weights()) {
    auto it = f.values.find(a);
    if (it == f.values.end())
      throw std::invalid_argument("function and measure algebras differ");
    sum += it->second * w;
  }
  return sum;
}

struct DensityCounterexample {
  Rational eps;
  FieldOfSets::Mask b;
};

/// The density property on a finite grid: for every eps in the grid and
/// every nonzero b there must be s in S with mu_s(b) >= 1 - eps. The check
/// is monotone in eps, so the smallest grid point dominates.
inline std::optional<DensityCounterexample> density_property_check(
    const Fam& m, const std::vector<FieldOfSets::Mask>& S,
    const std::vector<Rational>& eps_grid) {
  if (!m.is_strictly_positive() || !m.is_probability())
    throw std::invalid_argument("density check needs a strictly positive probability measure");
  for (auto s : S)
    if (s == 0) throw std::invalid_argument("S must avoid the zero member");
  for (const auto& eps : eps_grid) {
    if (eps <= 0 || eps >= 1)
      throw std::invalid_argument("eps must lie in (0,1)");
    for (int bid : m.algebra().nonzero_ids()) {
      auto b = m.algebra().member(bid);
      bool found = false;
      for (auto s : S)
        if (m.relative_to(s).measure_of(b) >= 1 - eps) { found = true; break; }
      if (!found) return DensityCounterexample{eps, b};
    }
  }
  return std::nullopt;
}

/// Restriction of m to a subalgebra C, and whether the density property
/// (with the same S, which must lie inside C) survives the restriction.
inline std::pair<Fam, bool> restrict_to_subalgebra(
    const Fam& m, const FieldOfSets& C,
    const std::vector<FieldOfSets::Mask>& S,
    const std::vector<Rational>& eps_grid) {
  if (!m.algebra().has_subalgebra(C))
    throw std::invalid_argument("C is not a subalgebra");
  std::map<FieldOfSets::Mask, Rational> w;
  for (auto a : C.atoms()) w[a] = m.measure_of(a);
  Fam restricted(C, std::move(w));
  for (auto s : S)
    if (!C.contains(s)) throw std::invalid_argument("S must lie inside C");
  bool ok = !density_property_check(restricted, S, eps_grid).has_value();
  return {std::move(restricted), ok};
}

}  // namespace fw
