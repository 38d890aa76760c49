#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "formation_lab/group.hpp"
#include "formation_lab/series.hpp"

namespace formation_lab {

/// Distinct cyclic subgroups <x>, sorted by (order, members).
inline std::vector<Subgroup> cyclic_subgroups(const Subgroup& h) {
  const GroupPtr& G = h.parent();
  std::vector<char> seen(G->order(), 0);
  std::vector<Subgroup> out;
  for (Elem x : h.members()) {
    if (seen[x]) continue;
    Subgroup c = subgroup_generated(G, {x});
    // generators of the same cyclic subgroup give the same subgroup
    for (Elem y : c.members()) {
      if (G->element_order(y) == c.size()) seen[y] = 1;
    }
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Subgroup> cyclic_subgroups(const GroupPtr& G) { return cyclic_subgroups(whole_group(G)); }

/// Every subgroup of H, by cyclic extension: starting from 1, repeatedly
/// join with cyclic subgroups of prime-power order. Sorted by (order,
/// members). Throws SubgroupEnumerationBound above the configured order.
inline std::vector<Subgroup> all_subgroups(const Subgroup& h) {
  if (h.size() > limits().subgroup_enumeration) {
    throw Error(ErrorKind::SubgroupEnumerationBound, "subgroup enumeration bound " +
                                                         std::to_string(limits().subgroup_enumeration) + " < " +
                                                         std::to_string(h.size()));
  }
  std::vector<Subgroup> pp;
  for (auto& c : cyclic_subgroups(h)) {
    if (c.size() > 1 && prime_power(c.size())) pp.push_back(std::move(c));
  }
  const GroupPtr& G = h.parent();
  std::vector<Subgroup> all{trivial_subgroup(G)};
  std::set<std::vector<Elem>> seen{all.front().members()};
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (const auto& c : pp) {
      if (c.subset_of(all[i])) continue;
      Subgroup j = join(all[i], c);
      if (seen.insert(j.members()).second) all.push_back(std::move(j));
    }
  }
  std::sort(all.begin(), all.end());
  return all;
}

inline std::vector<Subgroup> all_subgroups(const GroupPtr& G) { return all_subgroups(whole_group(G)); }

}  // namespace formation_lab
