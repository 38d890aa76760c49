#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "formation_lab/group.hpp"
#include "formation_lab/isomorphism.hpp"

namespace formation_lab {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// If n = p^a returns (p, a).
inline std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t n) {
  const auto ps = prime_divisors(n);
  if (ps.size() != 1) return std::nullopt;
  unsigned a = 0;
  while (n > 1) {
    n /= ps[0];
    ++a;
  }
  return std::make_pair(ps[0], a);
}

/// One factor H/K of a chief series of G.
struct ChiefFactor {
  Section section;
  std::size_t order = 0;
  bool is_abelian = false;
  std::optional<std::uint64_t> prime;  // set iff the factor is elementary abelian
  unsigned rank = 0;                   // a when order = p^a, 0 for non-abelian factors
  Subgroup centralizer;                // C_G(H/K)
  Fingerprint simple_fingerprint;      // of one composition factor
  bool factor_simple = false;          // H/K has no proper non-trivial normal subgroup

  const Subgroup& top() const { return section.top; }
  const Subgroup& bottom() const { return section.bottom; }

  std::string describe() const {
    return std::to_string(top().size()) + "/" + std::to_string(bottom().size()) + " (order " +
           std::to_string(order) + (is_abelian ? ", abelian" : ", non-abelian") + ")";
  }
};

struct ChiefSeries {
  GroupPtr group;
  std::vector<Subgroup> chain;  // 1 = N_0 < N_1 < ... < N_r = G
  std::vector<ChiefFactor> factors;

  std::vector<std::size_t> factor_orders() const {
    std::vector<std::size_t> out;
    for (const auto& f : factors) out.push_back(f.order);
    return out;
  }
};

/// Series-independent data of a chief factor, compared as a multiset across
/// different chief series of one group.
using ChiefFactorInvariant = std::tuple<std::size_t, bool, Fingerprint, std::size_t>;

inline std::vector<ChiefFactorInvariant> factor_invariants(const ChiefSeries& s) {
  std::vector<ChiefFactorInvariant> out;
  for (const auto& f : s.factors) out.emplace_back(f.order, f.is_abelian, f.simple_fingerprint, f.centralizer.size());
  std::sort(out.begin(), out.end());
  return out;
}

/// Normal closures of the non-trivial conjugacy classes, deduplicated and
/// sorted by (order, members).
inline std::vector<Subgroup> class_closures(const GroupPtr& G) {
  std::vector<Subgroup> out;
  const Subgroup one = trivial_subgroup(G);
  for (const auto& cls : G->conjugacy_classes()) {
    if (cls.front() == 0) continue;
    Subgroup c = normal_closure_over(one, std::span<const Elem>(&cls.front(), 1));
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Every normal subgroup of G, as the join-closure of class closures.
inline std::vector<Subgroup> normal_subgroups(const GroupPtr& G) {
  if (G->order() > limits().normal_enumeration) {
    throw Error(ErrorKind::BoundExceeded, "normal subgroup enumeration bound " +
                                              std::to_string(limits().normal_enumeration) + " < |G| = " +
                                              std::to_string(G->order()));
  }
  const auto base = class_closures(G);
  std::vector<Subgroup> all{trivial_subgroup(G)};
  std::map<std::vector<Elem>, std::size_t> seen{{all.front().members(), 0}};
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (const auto& b : base) {
      if (b.subset_of(all[i])) continue;
      Subgroup j = join(all[i], b);
      if (seen.try_emplace(j.members(), all.size()).second) all.push_back(std::move(j));
    }
  }
  std::sort(all.begin(), all.end());
  return all;
}

namespace detail {

/// Minimal normal subgroups of G/N inside T/N, returned as their preimages
/// in G and sorted by (order, members).
inline std::vector<Subgroup> minimal_normal_between(const Subgroup& n, const Subgroup& t) {
  const GroupPtr& G = n.parent();
  std::vector<Subgroup> cands;
  for (const auto& cls : G->conjugacy_classes()) {
    const Elem x = cls.front();
    if (n.contains(x) || !t.contains(x)) continue;
    Subgroup c = normal_closure_over(n, std::span<const Elem>(&x, 1));
    if (std::find(cands.begin(), cands.end(), c) == cands.end()) cands.push_back(std::move(c));
  }
  std::sort(cands.begin(), cands.end());
  std::vector<Subgroup> minimal;
  for (const auto& c : cands) {
    const bool has_smaller =
        std::any_of(minimal.begin(), minimal.end(), [&](const Subgroup& m) { return m.subset_of(c); });
    if (!has_smaller) minimal.push_back(c);
  }
  return minimal;
}

inline Fingerprint cyclic_prime_fingerprint(std::uint64_t p) {
  Fingerprint f;
  f.order = p;
  f.abelianization_order = p;
  f.class_profile.emplace_back(1, 1);
  for (std::uint64_t i = 1; i < p; ++i) f.class_profile.emplace_back(static_cast<std::uint32_t>(p), 1);
  return f;
}

/// Smallest normal closure of a non-trivial class of a group (a minimal
/// normal subgroup).
inline Subgroup first_minimal_normal(const GroupPtr& g) {
  return minimal_normal_between(trivial_subgroup(g), whole_group(g)).front();
}

inline ChiefFactor annotate_factor(const Subgroup& top, const Subgroup& bottom) {
  ChiefFactor f;
  f.section = make_section(top, bottom);
  f.order = f.section.factor_order;
  f.centralizer = centralizer_of_section(f.section);
  const FiniteGroup& G = *top.parent();
  f.is_abelian = true;
  for (Elem a : top.generators()) {
    for (Elem b : top.generators()) {
      if (!bottom.contains(G.comm(a, b))) {
        f.is_abelian = false;
        break;
      }
    }
    if (!f.is_abelian) break;
  }
  if (f.is_abelian) {
    // A chief factor that is abelian is elementary abelian.
    const auto pp = prime_power(f.order);
    f.prime = pp->first;
    f.rank = pp->second;
    f.simple_fingerprint = cyclic_prime_fingerprint(pp->first);
    f.factor_simple = pp->second == 1;
    return f;
  }
  const Embedding e = as_group(top);
  const Quotient q = quotient_group(e.to_local(bottom));
  const Subgroup m = first_minimal_normal(q.group);
  f.factor_simple = m.is_whole();
  f.simple_fingerprint = fingerprint(f.factor_simple ? q.group : as_group(m).group);
  return f;
}

inline std::vector<Subgroup> validate_seed(const GroupPtr& G, const std::vector<Subgroup>& seed) {
  std::vector<Subgroup> chain = seed;
  for (const auto& s : chain) {
    if (s.parent() != G) throw Error(ErrorKind::ParentMismatch, "seed subgroup belongs to another group");
    if (!is_normal(s)) throw Error(ErrorKind::SeedNotNormal, "seed subgroup is not normal");
  }
  std::sort(chain.begin(), chain.end());
  chain.erase(std::unique(chain.begin(), chain.end()), chain.end());
  for (std::size_t i = 1; i < chain.size(); ++i) {
    if (!chain[i - 1].subset_of(chain[i])) throw Error(ErrorKind::SeedNotChain, "seed subgroups are not nested");
  }
  return chain;
}

}  // namespace detail

/// Atoms of the normal-subgroup lattice.
inline std::vector<Subgroup> minimal_normal_subgroups(const GroupPtr& G) {
  if (G->is_trivial()) throw Error(ErrorKind::TrivialGroup, "the trivial group has no minimal normal subgroup");
  return detail::minimal_normal_between(trivial_subgroup(G), whole_group(G));
}

/// A chief series refining `seed`. At each step the smallest minimal normal
/// subgroup of G/N_i (by order, then member list) is taken; with `rng` a
/// uniformly random one is taken instead.
inline ChiefSeries chief_series(const GroupPtr& G, const std::vector<Subgroup>& seed = {},
                                std::mt19937_64* rng = nullptr) {
  auto targets = detail::validate_seed(G, seed);
  targets.push_back(whole_group(G));
  ChiefSeries s;
  s.group = G;
  s.chain.push_back(trivial_subgroup(G));
  for (const auto& t : targets) {
    while (!(s.chain.back() == t)) {
      if (t.size() <= s.chain.back().size()) break;
      auto mins = detail::minimal_normal_between(s.chain.back(), t);
      std::size_t pick = 0;
      if (rng && mins.size() > 1) pick = std::uniform_int_distribution<std::size_t>(0, mins.size() - 1)(*rng);
      s.chain.push_back(mins[pick]);
    }
  }
  for (std::size_t i = 1; i < s.chain.size(); ++i) s.factors.push_back(detail::annotate_factor(s.chain[i], s.chain[i - 1]));
  return s;
}

/// A chief series through a random chain of normal subgroups with random
/// minimal choices at each step.
inline ChiefSeries random_chief_series(const GroupPtr& G, std::mt19937_64& rng) {
  std::vector<Subgroup> seed;
  const auto closures = class_closures(G);
  if (!closures.empty()) {
    const auto pick = std::uniform_int_distribution<std::size_t>(0, closures.size())(rng);
    if (pick < closures.size()) seed.push_back(closures[pick]);
  }
  return chief_series(G, seed, &rng);
}

struct ClassicalSeries {
  std::vector<Subgroup> derived;
  std::vector<Subgroup> lower_central;
};

/// Derived and lower central series, each until it stabilizes.
inline ClassicalSeries classical_series(const GroupPtr& G) {
  ClassicalSeries out;
  out.derived.push_back(whole_group(G));
  while (true) {
    Subgroup next = derived_subgroup(out.derived.back());
    if (next == out.derived.back()) break;
    out.derived.push_back(std::move(next));
  }
  out.lower_central.push_back(whole_group(G));
  while (true) {
    Subgroup next = commutator_with_group(out.lower_central.back());
    if (next == out.lower_central.back()) break;
    out.lower_central.push_back(std::move(next));
  }
  return out;
}

/// G^S: the terminal term of the derived series.
inline Subgroup soluble_residual(const GroupPtr& G) {
  Subgroup cur = whole_group(G);
  while (true) {
    Subgroup next = derived_subgroup(cur);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

inline bool is_soluble(const GroupPtr& G) { return soluble_residual(G).is_trivial(); }

inline bool is_nilpotent(const GroupPtr& G) {
  Subgroup cur = whole_group(G);
  while (!cur.is_trivial()) {
    Subgroup next = commutator_with_group(cur);
    if (next == cur) return false;
    cur = std::move(next);
  }
  return true;
}

/// [N, H] for N normal in H, as a subgroup of the common parent.
inline Subgroup commutator_in(const Subgroup& n, const Subgroup& h) {
  const FiniteGroup& G = *n.parent();
  std::vector<Elem> comms;
  for (Elem x : n.generators()) {
    for (Elem g : h.generators()) comms.push_back(G.comm(x, g));
  }
  return normal_closure_in(h, comms);
}

/// Terminal term of the lower central series of H.
inline Subgroup nilpotent_residual(const Subgroup& h) {
  Subgroup cur = h;
  while (!cur.is_trivial()) {
    Subgroup next = commutator_in(cur, h);
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur;
}

inline bool is_nilpotent(const Subgroup& h) { return nilpotent_residual(h).is_trivial(); }

/// Terminal term of the derived series of H.
inline Subgroup soluble_residual(const Subgroup& h) {
  Subgroup cur = h;
  while (true) {
    Subgroup next = derived_subgroup(cur);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

inline bool is_soluble(const Subgroup& h) { return soluble_residual(h).is_trivial(); }

/// Subgroup generated by the elements whose order is divisible only by
/// primes outside `pi` (that is, O^pi(G)).
inline Subgroup pi_prime_generated(const GroupPtr& G, const std::vector<std::uint64_t>& pi) {
  std::vector<Elem> gens;
  for (const auto& cls : G->conjugacy_classes()) {
    const auto ord = G->element_order(cls.front());
    bool outside = true;
    for (std::uint64_t p : pi) {
      if (ord % p == 0) outside = false;
    }
    if (outside) gens.insert(gens.end(), cls.begin(), cls.end());
  }
  return subgroup_generated(G, gens);
}

inline bool is_simple(const GroupPtr& G) {
  if (G->is_trivial()) throw Error(ErrorKind::TrivialGroup, "simplicity of the trivial group is undefined");
  for (const auto& c : class_closures(G)) {
    if (!c.is_whole()) return false;
  }
  return true;
}

/// Join of all minimal normal subgroups.
inline Subgroup socle(const GroupPtr& G) {
  Subgroup s = trivial_subgroup(G);
  for (const auto& m : minimal_normal_subgroups(G)) s = join(s, m);
  return s;
}

}  // namespace formation_lab
