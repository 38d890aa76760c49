#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "formation_lab/group.hpp"

namespace formation_lab {

/// Isomorphism invariant: order, |G/G'| and the multiset of
/// (element order, class size) over conjugacy classes.
struct Fingerprint {
  std::size_t order = 0;
  std::size_t abelianization_order = 0;
  std::vector<std::pair<std::uint32_t, std::size_t>> class_profile;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  friend auto operator<=>(const Fingerprint&, const Fingerprint&) = default;

  std::string to_string() const {
    std::string s = "order=" + std::to_string(order) + " ab=" + std::to_string(abelianization_order) + " classes=[";
    for (std::size_t i = 0; i < class_profile.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(class_profile[i].first) + ":" + std::to_string(class_profile[i].second);
    }
    return s + "]";
  }
};

inline Fingerprint fingerprint(const GroupPtr& g) {
  Fingerprint f;
  f.order = g->order();
  f.abelianization_order = g->order() / derived_subgroup(g).size();
  for (const auto& cls : g->conjugacy_classes()) f.class_profile.emplace_back(g->element_order(cls.front()), cls.size());
  std::sort(f.class_profile.begin(), f.class_profile.end());
  return f;
}

enum class IsoResult { NotIsomorphic, Isomorphic, FingerprintsMatch };

inline constexpr std::size_t kBruteForceIsomorphismBound = 360;

namespace detail {

inline std::vector<Elem> small_generating_set(const FiniteGroup& g, const GroupPtr& gp) {
  std::vector<Elem> order(g.order());
  for (Elem x = 0; x < g.order(); ++x) order[x] = x;
  std::stable_sort(order.begin(), order.end(),
                   [&](Elem a, Elem b) { return g.element_order(a) > g.element_order(b); });
  SubgroupBuilder b(gp);
  std::vector<Elem> gens;
  for (Elem x : order) {
    if (b.size() == g.order()) break;
    if (!b.contains(x)) {
      b.add(x);
      gens.push_back(x);
    }
  }
  return gens;
}

/// Extends generator images to a map along the Cayley graph and checks it is
/// a well-defined bijective homomorphism.
inline bool extends_to_isomorphism(const FiniteGroup& a, const FiniteGroup& b, const std::vector<Elem>& gens,
                                   const std::vector<Elem>& images) {
  std::vector<Elem> phi(a.order(), kNoElem);
  std::vector<char> hit(b.order(), 0);
  phi[0] = 0;
  hit[0] = 1;
  std::vector<Elem> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Elem x = queue[i];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const Elem y = a.mul(x, gens[k]);
      const Elem py = b.mul(phi[x], images[k]);
      if (phi[y] == kNoElem) {
        if (hit[py]) return false;
        phi[y] = py;
        hit[py] = 1;
        queue.push_back(y);
      } else if (phi[y] != py) {
        return false;
      }
    }
  }
  return queue.size() == a.order();
}

}  // namespace detail

/// Brute-force generator-image search up to kBruteForceIsomorphismBound;
/// above it only fingerprints are compared.
inline IsoResult are_isomorphic(const GroupPtr& a, const GroupPtr& b) {
  if (a->order() != b->order()) return IsoResult::NotIsomorphic;
  if (fingerprint(a) != fingerprint(b)) return IsoResult::NotIsomorphic;
  if (a->order() > kBruteForceIsomorphismBound) return IsoResult::FingerprintsMatch;
  const auto gens = detail::small_generating_set(*a, a);
  std::vector<std::vector<Elem>> candidates(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto ord = a->element_order(gens[k]);
    const auto csize = a->conjugacy_classes()[a->class_index(gens[k])].size();
    for (Elem y = 0; y < b->order(); ++y) {
      if (b->element_order(y) == ord && b->conjugacy_classes()[b->class_index(y)].size() == csize) {
        candidates[k].push_back(y);
      }
    }
  }
  std::vector<Elem> images(gens.size());
  // The first generator's image can be fixed up to conjugacy in b.
  std::vector<char> first_class_seen(b->conjugacy_classes().size(), 0);
  auto search = [&](auto&& self, std::size_t k) -> bool {
    if (k == gens.size()) return detail::extends_to_isomorphism(*a, *b, gens, images);
    for (Elem y : candidates[k]) {
      if (k == 0) {
        auto ci = b->class_index(y);
        if (first_class_seen[ci]) continue;
        first_class_seen[ci] = 1;
      }
      images[k] = y;
      if (self(self, k + 1)) return true;
    }
    return false;
  };
  return search(search, 0) ? IsoResult::Isomorphic : IsoResult::NotIsomorphic;
}

}  // namespace formation_lab
