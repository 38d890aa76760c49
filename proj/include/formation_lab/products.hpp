#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "formation_lab/classifier.hpp"
#include "formation_lab/formations.hpp"
#include "formation_lab/subgroups.hpp"

namespace formation_lab {

enum class PermutabilityMode {
  Cyclic,  // test against cyclic subgroups only
  Full,    // test against every subgroup
};

/// H permutes with every subgroup of K and K with every subgroup of H.
inline bool are_mutually_permutable(const Subgroup& h, const Subgroup& k,
                                    PermutabilityMode mode = PermutabilityMode::Cyclic) {
  detail::check_same_parent(h, k);
  auto side = [mode](const Subgroup& a, const Subgroup& b) {
    const auto subs = mode == PermutabilityMode::Cyclic ? cyclic_subgroups(b) : all_subgroups(b);
    return std::all_of(subs.begin(), subs.end(), [&](const Subgroup& s) { return permutes(a, s); });
  };
  return side(h, k) && side(k, h);
}

struct Factorization {
  GroupPtr group;
  Subgroup H;
  Subgroup K;
  bool mutually_permutable = false;
  bool H_normal = false;
  bool K_normal = false;
};

/// "<(1,2), (1,2,3)> of order 6", or element ids for table-only groups.
inline std::string subgroup_label(const Subgroup& h) {
  const FiniteGroup& G = *h.parent();
  std::string s = "<";
  for (std::size_t i = 0; i < h.generators().size(); ++i) {
    if (i) s += ", ";
    const Elem x = h.generators()[i];
    s += G.has_permutations() ? G.permutation(x).to_string() : "#" + std::to_string(x);
  }
  return s + "> of order " + std::to_string(h.size());
}

inline std::string factorization_label(const Factorization& f) {
  return f.group->name() + " = H K with H = " + subgroup_label(f.H) + ", K = " + subgroup_label(f.K);
}

namespace detail {

inline std::size_t intersection_size(const Subgroup& a, const Subgroup& b) {
  std::size_t n = 0;
  for (Elem x : a.members()) n += b.contains(x) ? 1 : 0;
  return n;
}

/// Smallest conjugate of the pair (a, b) under G, as member lists.
inline std::pair<std::vector<Elem>, std::vector<Elem>> canonical_pair(const Subgroup& a, const Subgroup& b) {
  const FiniteGroup& G = *a.parent();
  std::pair<std::vector<Elem>, std::vector<Elem>> best{a.members(), b.members()};
  if (best.second < best.first) std::swap(best.first, best.second);
  for (Elem g = 1; g < G.order(); ++g) {
    std::vector<Elem> ca, cb;
    for (Elem x : a.members()) ca.push_back(G.conj(x, g));
    for (Elem x : b.members()) cb.push_back(G.conj(x, g));
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    if (cb < ca) std::swap(ca, cb);
    std::pair<std::vector<Elem>, std::vector<Elem>> cand{std::move(ca), std::move(cb)};
    if (cand < best) best = std::move(cand);
  }
  return best;
}

}  // namespace detail

/// All unordered pairs {H, K} of proper subgroups with HK = G that are
/// mutually permutable. With `up_to_conjugacy` only one pair per G-class of
/// pairs is kept.
inline std::vector<Factorization> enumerate_mp_factorizations(const GroupPtr& G, bool up_to_conjugacy = false) {
  const auto subs = all_subgroups(G);
  std::vector<std::vector<Subgroup>> cyclics;
  cyclics.reserve(subs.size());
  for (const auto& s : subs) cyclics.push_back(cyclic_subgroups(s));
  auto permutes_all = [](const Subgroup& a, const std::vector<Subgroup>& cs) {
    return std::all_of(cs.begin(), cs.end(), [&](const Subgroup& c) { return permutes(a, c); });
  };
  std::vector<Factorization> out;
  std::set<std::pair<std::vector<Elem>, std::vector<Elem>>> seen;
  const std::size_t n = G->order();
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i].is_whole()) continue;
    for (std::size_t j = i + 1; j < subs.size(); ++j) {
      if (subs[j].is_whole()) continue;
      const std::size_t a = subs[i].size(), b = subs[j].size();
      if (a * b < n) continue;
      if (a * b != n * detail::intersection_size(subs[i], subs[j])) continue;
      if (!permutes_all(subs[i], cyclics[j]) || !permutes_all(subs[j], cyclics[i])) continue;
      if (up_to_conjugacy) {
        auto key = detail::canonical_pair(subs[i], subs[j]);
        if (!seen.insert(std::move(key)).second) continue;
      }
      out.push_back({G, subs[i], subs[j], true, is_normal(subs[i]), is_normal(subs[j])});
    }
  }
  return out;
}

struct LemmaVerdict {
  std::string id;
  bool applicable = false;
  bool holds = true;  // meaningful only when applicable
  std::string witness;
  std::string note;
};

namespace detail {

/// is_ca_f on subgroups of one group, cached by member set.
class CaCache {
 public:
  explicit CaCache(Formation F) : F_(std::move(F)) {}

  bool operator()(const Subgroup& h) {
    const auto it = memo_.find(h.members());
    if (it != memo_.end()) return it->second;
    const bool v = is_ca_f(as_group(h).group, F_).holds;
    memo_.emplace(h.members(), v);
    return v;
  }

 private:
  Formation F_;
  std::map<std::vector<Elem>, bool> memo_;
};

inline void require_theorem_formation(const Formation& F) {
  if (!F.flags().saturated || !F.flags().contains_U) {
    throw Error(ErrorKind::FormationNotEligible, F.name() + " is not declared saturated and containing U");
  }
}

}  // namespace detail

/// For each mutually permutable factorization of a ca-F group G, checks
/// that both factors are ca-F.
inline std::vector<LemmaVerdict> theorem_b_verify(const GroupPtr& G, const Formation& F,
                                                  const std::vector<Factorization>& facts) {
  detail::require_theorem_formation(F);
  detail::CaCache ca(F);
  const bool g_ca = facts.empty() ? false : ca(whole_group(G));
  std::vector<LemmaVerdict> out;
  for (const auto& f : facts) {
    LemmaVerdict v{"theorem-b"};
    v.applicable = g_ca;
    if (g_ca) {
      const bool h = ca(f.H), k = ca(f.K);
      v.holds = h && k;
      if (!v.holds) v.witness = factorization_label(f) + (h ? "" : "; H is not ca-" + F.name()) + (k ? "" : "; K is not ca-" + F.name());
    }
    out.push_back(std::move(v));
  }
  return out;
}

inline std::vector<LemmaVerdict> theorem_b_verify(const GroupPtr& G, const Formation& F) {
  return theorem_b_verify(G, F, enumerate_mp_factorizations(G));
}

/// One instance of the product theorem: H, K ca-F, mutually permutable,
/// HK = G and G' quasinilpotent imply G ca-F.
inline LemmaVerdict theorem_c_check(const Subgroup& H, const Subgroup& K, const Formation& F) {
  detail::require_theorem_formation(F);
  const GroupPtr& G = H.parent();
  Factorization f{G, H, K, are_mutually_permutable(H, K), is_normal(H), is_normal(K)};
  LemmaVerdict v{"theorem-c"};
  const bool covers = set_product(H, K).elements.size() == G->order();
  const GroupPtr derived = as_group(derived_subgroup(G)).group;
  v.applicable = covers && f.mutually_permutable && is_ca_f(as_group(H).group, F).holds &&
                 is_ca_f(as_group(K).group, F).holds && formations::quasinilpotent().contains(derived);
  if (v.applicable) {
    const CaVerdict g = is_ca_f(G, F);
    v.holds = g.holds;
    if (!g.holds) v.witness = factorization_label(f) + "; " + g.reason;
  }
  return v;
}

inline std::vector<LemmaVerdict> theorem_c_verify(const GroupPtr& G, const Formation& F,
                                                  const std::vector<Factorization>& facts) {
  detail::require_theorem_formation(F);
  detail::CaCache ca(F);
  std::vector<LemmaVerdict> out;
  if (facts.empty()) return out;
  const bool qn = formations::quasinilpotent().contains(as_group(derived_subgroup(G)).group);
  const bool g_ca = ca(whole_group(G));
  for (const auto& f : facts) {
    LemmaVerdict v{"theorem-c"};
    v.applicable = qn && ca(f.H) && ca(f.K);
    if (v.applicable) {
      v.holds = g_ca;
      if (!g_ca) v.witness = factorization_label(f) + "; G is not ca-" + F.name();
    }
    out.push_back(std::move(v));
  }
  return out;
}

inline std::vector<LemmaVerdict> theorem_c_verify(const GroupPtr& G, const Formation& F) {
  return theorem_c_verify(G, F, enumerate_mp_factorizations(G));
}

namespace detail {

/// G in N_p F: the F-residual is a p-group.
inline bool in_n_p_f(const GroupPtr& Q, std::uint64_t p, const Formation& F) {
  const Subgroup r = residual(F, Q);
  return r.is_trivial() || prime_divisors(r.size()) == std::vector<std::uint64_t>{p};
}

inline bool is_one_or_all(const Subgroup& x, const Subgroup& n) { return x.is_trivial() || x == n; }

/// Subgroups of G containing the normal subgroup N: preimages of the
/// subgroups of G/N when that lattice is affordable, otherwise G together
/// with the listed extra candidates.
inline std::vector<Subgroup> overgroups(const Subgroup& n, const std::vector<Subgroup>& extra) {
  const GroupPtr& G = n.parent();
  std::vector<Subgroup> out;
  if (G->order() / n.size() <= limits().subgroup_enumeration) {
    const Quotient q = quotient_group(n);
    for (const auto& s : all_subgroups(q.group)) out.push_back(q.preimage(s));
    return out;
  }
  out.push_back(whole_group(G));
  for (const auto& h : extra) {
    if (n.subset_of(h) && std::find(out.begin(), out.end(), h) == out.end()) out.push_back(h);
  }
  return out;
}

}  // namespace detail

/// Lemma identifiers, in reporting order.
inline const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids = {
      "centralizer-quotient-np",
      "mp-quotient",
      "mp-max-normal",
      "mp-nonabelian-minimal-prefactorised",
      "mp-minimal-in-or-centralizes-intersection",
      "mp-minimal-intersections",
      "mp-minimal-centralizes-factor",
      "mp-core-free-membership",
      "ca-residual-centralizes-radical",
      "ca-residual-radical-central",
      "ca-subgroup-normalizes-simple-factors",
      "central-iff-local-value",
      "mp-np-local-extension",
  };
  return ids;
}

/// Instantiates the supporting lemmas on G, its given mutually permutable
/// factorizations, its normal structure and F. Every lemma id appears at
/// least once; ids without an applicable instance appear once with
/// applicable = false.
inline std::vector<LemmaVerdict> lemma_suite(const GroupPtr& G, const Formation& F,
                                             const std::vector<Factorization>& facts) {
  std::vector<LemmaVerdict> out;
  auto emit = [&](const std::string& id, bool holds, std::string witness, std::string note = {}) {
    out.push_back({id, true, holds, holds ? std::string() : std::move(witness), std::move(note)});
  };
  const Subgroup one = trivial_subgroup(G);
  const Subgroup all = whole_group(G);
  const std::vector<Subgroup> mins = G->is_trivial() ? std::vector<Subgroup>{} : minimal_normal_subgroups(G);
  std::vector<Subgroup> factor_subgroups;
  for (const auto& f : facts) {
    factor_subgroups.push_back(f.H);
    factor_subgroups.push_back(f.K);
  }

  // H/C_H(U/V) in F for the H-chief factors U/V of N gives H/C_H(N) in N_p F.
  for (const auto& n : mins) {
    const auto pp = prime_power(n.size());
    if (!pp) continue;
    const std::uint64_t p = pp->first;
    for (const auto& h : detail::overgroups(n, factor_subgroups)) {
      const Embedding e = as_group(h);
      const Subgroup nl = e.to_local(n);
      const auto s = chief_series(e.group, {nl});
      bool hyp = true;
      for (const auto& f : s.factors) {
        if (f.top().subset_of(nl) && !F.contains(quotient_group(f.centralizer).group)) hyp = false;
      }
      if (!hyp) continue;
      const GroupPtr q = quotient_group(centralizer_in(whole_group(e.group), nl)).group;
      emit("centralizer-quotient-np", detail::in_n_p_f(q, p, F),
           "H = " + subgroup_label(h) + ", N = " + subgroup_label(n) + ": H/C_H(N) not in N_" + std::to_string(p) +
               F.name());
    }
  }

  std::vector<Subgroup> normals;
  std::vector<Subgroup> maximal_normals;
  if (!facts.empty()) {
    normals = normal_subgroups(G);
    for (const auto& n : normals) {
      if (n.is_whole()) continue;
      const bool maximal = std::none_of(normals.begin(), normals.end(), [&](const Subgroup& m) {
        return !m.is_whole() && !(m == n) && n.subset_of(m);
      });
      if (maximal) maximal_normals.push_back(n);
    }
  }

  for (const auto& f : facts) {
    const Subgroup& A = f.H;
    const Subgroup& B = f.K;
    const std::string fl = factorization_label(f);
    const Subgroup ab = intersection(A, B);

    for (const auto& n : normals) {
      const Quotient q = quotient_group(n);
      emit("mp-quotient", are_mutually_permutable(q.image(A), q.image(B)),
           fl + ", N = " + subgroup_label(n) + ": images are not mutually permutable");
    }
    for (const auto& n : maximal_normals) {
      auto ok = [&](const Subgroup& x) {
        const Subgroup j = join(x, n);
        return j == n || j.is_whole();
      };
      emit("mp-max-normal", ok(A) && ok(B) && ok(ab), fl + ", N = " + subgroup_label(n));
    }
    for (const auto& n : mins) {
      const Subgroup an = intersection(A, n), bn = intersection(B, n);
      const bool nonabelian = !as_group(n).group->is_abelian();
      if (nonabelian) {
        const bool pref = set_product(an, bn).elements.size() == n.size();
        emit("mp-nonabelian-minimal-prefactorised",
             detail::is_one_or_all(an, n) && detail::is_one_or_all(bn, n) && pref, fl + ", N = " + subgroup_label(n));
      }
      emit("mp-minimal-in-or-centralizes-intersection", n.subset_of(ab) || commute_elementwise(n, ab),
           fl + ", N = " + subgroup_label(n));
      emit("mp-minimal-intersections", detail::is_one_or_all(an, n) && detail::is_one_or_all(bn, n),
           fl + ", N = " + subgroup_label(n));
      // both orientations of the statement
      const std::pair<const Subgroup*, const Subgroup*> sides[2] = {{&A, &B}, {&B, &A}};
      for (const auto& [X, Y] : sides) {
        if (!n.subset_of(*X) || !intersection(*Y, n).is_trivial()) continue;
        const bool cx = commute_elementwise(n, *X), cy = commute_elementwise(n, *Y);
        const bool cyclic = std::any_of(n.members().begin(), n.members().end(),
                                        [&](Elem x) { return G->element_order(x) == n.size(); });
        emit("mp-minimal-centralizes-factor", (cx || cy) && (cyclic || cy),
             fl + ", N = " + subgroup_label(n) + " inside " + subgroup_label(*X));
      }
    }
    if (F.flags().saturated && F.flags().contains_U && core(ab).is_trivial()) {
      const bool g = F.contains(G);
      const bool a = F.contains(as_group(A).group), b = F.contains(as_group(B).group);
      emit("mp-core-free-membership", g == (a && b),
           fl + ": G in " + F.name() + " is " + (g ? "true" : "false") + ", factors " + (a ? "true" : "false") + "/" +
               (b ? "true" : "false"));
    }
  }

  // Soluble residual against soluble radical in a ca-F group.
  if (F.flags().soluble && F.flags().contains_U && is_ca_f(G, F).holds) {
    const Subgroup d = soluble_residual(G);
    const Subgroup r = soluble_radical(G);
    emit("ca-residual-centralizes-radical", commute_elementwise(d, r),
         "G^S = " + subgroup_label(d) + " does not centralize the soluble radical " + subgroup_label(r));
    const Embedding e = as_group(d);
    const Subgroup rd = e.to_parent_subgroup(soluble_radical(e.group));
    emit("ca-residual-radical-central", rd.subset_of(center_of(d)),
         "soluble radical of G^S = " + subgroup_label(rd) + " is not central in G^S");
  }

  // Unique minimal normal subgroup.
  if (mins.size() == 1) {
    const Subgroup& n = mins.front();
    const Embedding en = as_group(n);
    if (!en.group->is_abelian()) {
      std::vector<Subgroup> simple_factors;
      for (const auto& m : minimal_normal_subgroups(en.group)) simple_factors.push_back(en.to_parent_subgroup(m));
      detail::CaCache ca(F);
      for (const auto& h : detail::overgroups(n, factor_subgroups)) {
        if (!ca(h)) continue;
        bool ok = true;
        for (const auto& s : simple_factors) ok = ok && is_normal_in(s, h);
        emit("ca-subgroup-normalizes-simple-factors", ok,
             "H = " + subgroup_label(h) + " does not normalize every simple factor of N = " + subgroup_label(n));
      }
    } else if (F.has_local_function()) {
      const std::uint64_t p = prime_divisors(n.size()).front();
      const ChiefFactor cf = detail::annotate_factor(n, one);
      const bool central = is_f_central(cf, F);
      const bool local = F.local_value(p).contains(quotient_group(cf.centralizer).group);
      emit("central-iff-local-value", central == local,
           "N = " + subgroup_label(n) + ": F-central " + (central ? "true" : "false") + ", G/C_G(N) in f(p) " +
               (local ? "true" : "false"));
    }
  }

  // N_p A(p-1) extension for mutually permutable products inside N_p A.
  for (const auto& f : facts) {
    for (std::uint64_t p : prime_divisors(G->order())) {
      const Formation np_local = formations::local_value_u(p);
      if (!formations::p_by_abelian(p).contains(G)) continue;
      if (!np_local.contains(as_group(f.H).group) || !np_local.contains(as_group(f.K).group)) continue;
      std::string note;
      if (mins.size() == 1) {
        const Subgroup& n = mins.front();
        const bool q_group = n.size() % p != 0 && prime_power(n.size()).has_value();
        if (!q_group && np_local.contains(quotient_group(n).group)) {
          note = "p=" + std::to_string(p) + ": unique minimal normal subgroup " + subgroup_label(n) +
                 " is not a q-group with q != p";
        }
      }
      emit("mp-np-local-extension", np_local.contains(G),
           factorization_label(f) + ", p = " + std::to_string(p) + ": G not in " + np_local.name(), std::move(note));
    }
  }

  for (const auto& id : lemma_ids()) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](const LemmaVerdict& v) { return v.id == id; });
    if (!seen) out.push_back({id, false, true, {}, {}});
  }
  return out;
}

inline std::vector<LemmaVerdict> lemma_suite(const GroupPtr& G, const Formation& F) {
  std::vector<Factorization> facts;
  if (G->order() <= limits().subgroup_enumeration) facts = enumerate_mp_factorizations(G);
  return lemma_suite(G, F, facts);
}

struct BaerPair {
  std::string group;
  std::size_t order = 0;
  std::string H, K;
  bool derived_nilpotent = false;
};

struct BaerReport {
  std::size_t pairs_checked = 0;             // normal supersoluble pairs with G' nilpotent
  std::vector<BaerPair> counterexamples;     // direction (a)
  std::optional<BaerPair> smallest_witness;  // direction (b)
  std::vector<std::string> skipped;          // groups above the normal enumeration bound
};

/// Products of two normal supersoluble subgroups: (a) with G' nilpotent the
/// product is supersoluble; (b) the smallest group in the list that is such
/// a product without being supersoluble.
inline BaerReport baer_checks(const std::vector<GroupPtr>& catalog) {
  BaerReport rep;
  const Formation U = formations::supersoluble();
  for (const auto& G : catalog) {
    if (G->order() > limits().normal_enumeration) {
      rep.skipped.push_back(G->name());
      continue;
    }
    std::vector<Subgroup> ss;
    for (const auto& n : normal_subgroups(G)) {
      if (U.contains(as_group(n).group)) ss.push_back(n);
    }
    const bool g_u = U.contains(G);
    const bool dn = is_nilpotent(derived_subgroup(G));
    for (std::size_t i = 0; i < ss.size(); ++i) {
      for (std::size_t j = i; j < ss.size(); ++j) {
        if (!join(ss[i], ss[j]).is_whole()) continue;
        const BaerPair pair{G->name(), G->order(), subgroup_label(ss[i]), subgroup_label(ss[j]), dn};
        if (dn) {
          ++rep.pairs_checked;
          if (!g_u) rep.counterexamples.push_back(pair);
        }
        if (!g_u && (!rep.smallest_witness || G->order() < rep.smallest_witness->order)) rep.smallest_witness = pair;
      }
    }
  }
  return rep;
}

}  // namespace formation_lab
