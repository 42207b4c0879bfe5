#pragma once

#include <random>
#include <string>
#include <vector>

#include "fw/field.hpp"
#include "fw/poset.hpp"

namespace fw {

using Rng = std::mt19937_64;

inline FinitePoset random_poset(Rng& rng, int max_n) {
  std::uniform_int_distribution<int> size_dist(1, max_n);
  int n = size_dist(rng);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  std::vector<std::pair<int, int>> le;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  // Edges mostly from higher to lower index keep the order antisymmetric;
  // an occasional reverse edge produces a genuine preorder.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      if (coin(rng) < 0.3) le.emplace_back(i, j);
      if (coin(rng) < 0.02) le.emplace_back(j, i);
    }
  return FinitePoset(std::move(labels), le);
}

inline std::vector<int> random_subset(Rng& rng, int n, int max_size) {
  std::uniform_int_distribution<int> size_dist(1, std::min(n, max_size));
  int k = size_dist(rng);
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(static_cast<size_t>(k));
  std::sort(pool.begin(), pool.end());
  return pool;
}

inline FieldOfSets random_field(Rng& rng, int max_ground) {
  std::uniform_int_distribution<int> gdist(1, max_ground);
  int g = gdist(rng);
  std::uniform_int_distribution<int> ndist(0, 3);
  int ngen = ndist(rng);
  std::uniform_int_distribution<FieldOfSets::Mask> mdist(
      0, (FieldOfSets::Mask{1} << g) - 1);
  std::vector<FieldOfSets::Mask> gens;
  for (int i = 0; i < ngen; ++i) gens.push_back(mdist(rng));
  return make_field(g, gens);
}

/// Up to max_size distinct nonzero member ids.
inline std::vector<int> random_nonzero_members(Rng& rng, const FieldOfSets& B,
                                               int max_size) {
  auto ids = B.nonzero_ids();
  std::shuffle(ids.begin(), ids.end(), rng);
  std::uniform_int_distribution<int> size_dist(
      1, std::min(static_cast<int>(ids.size()), max_size));
  ids.resize(static_cast<size_t>(size_dist(rng)));
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace fw
