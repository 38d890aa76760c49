#pragma once

// Small helpers shared by the unit tests.

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "formation_lab/catalog.hpp"
#include "formation_lab/group.hpp"

namespace test_support {

using namespace formation_lab;

inline Permutation cyc(std::size_t degree, std::vector<std::vector<std::size_t>> cycles) {
  return Permutation::from_cycles(degree, cycles);
}

/// Element id of a permutation inside a permutation-built group.
inline Elem elem_of(const GroupPtr& G, const Permutation& p) {
  for (Elem x = 0; x < G->order(); ++x)
    if (G->permutation(x) == p) return x;
  throw std::invalid_argument("permutation not in group");
}

inline Subgroup random_subgroup(const GroupPtr& G, std::mt19937_64& rng) {
  std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(G->order() - 1));
  const int gens = std::uniform_int_distribution<int>(0, 2)(rng);
  std::vector<Elem> seed;
  for (int i = 0; i < gens; ++i) seed.push_back(pick(rng));
  return subgroup_generated(G, seed);
}

/// A permutation group on 3..6 points from two random generators; every
/// subgroup of S6 is reachable.
inline GroupPtr random_group(std::mt19937_64& rng) {
  const std::size_t degree = std::uniform_int_distribution<std::size_t>(3, 6)(rng);
  std::vector<Permutation> gens;
  for (int i = 0; i < 2; ++i) {
    std::vector<Permutation::Point> img(degree);
    for (std::size_t j = 0; j < degree; ++j) img[j] = static_cast<Permutation::Point>(j);
    std::shuffle(img.begin(), img.end(), rng);
    gens.emplace_back(img);
  }
  return group_from_generators(gens, "random");
}

/// The built-in catalog cut at `max_order`, built once per bound.
inline const std::vector<GroupPtr>& catalog_up_to(std::size_t max_order) {
  static std::map<std::size_t, std::vector<GroupPtr>> cache;
  auto it = cache.find(max_order);
  if (it == cache.end()) {
    CatalogSpec spec;
    spec.max_order = max_order;
    it = cache.emplace(max_order, build_catalog(spec).groups()).first;
  }
  return it->second;
}

}  // namespace test_support
