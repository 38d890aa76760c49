#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "formation_lab/group.hpp"
#include "formation_lab/series.hpp"

namespace formation_lab {

/// Properties asserted for a built-in formation. They gate which theorems
/// may be run against it; they are not checked.
struct FormationFlags {
  bool saturated = false;
  bool soluble = false;
  bool contains_U = false;
};

/// A named class of groups given by a membership predicate, with an optional
/// direct residual procedure and optional local function p -> f(p).
class Formation {
 public:
  using Predicate = std::function<bool(const GroupPtr&)>;
  using ResidualFn = std::function<Subgroup(const GroupPtr&)>;
  using LocalFn = std::function<Formation(std::uint64_t)>;

  Formation(std::string name, Predicate member, FormationFlags flags = {}, ResidualFn hint = {}, LocalFn local = {})
      : d_(std::make_shared<const Data>(
            Data{std::move(name), std::move(member), flags, std::move(hint), std::move(local)})) {}

  const std::string& name() const { return d_->name; }
  const FormationFlags& flags() const { return d_->flags; }
  bool contains(const GroupPtr& G) const { return d_->member(G); }

  bool has_residual_hint() const { return static_cast<bool>(d_->hint); }
  Subgroup residual_hint(const GroupPtr& G) const { return d_->hint(G); }

  bool has_local_function() const { return static_cast<bool>(d_->local); }
  Formation local_value(std::uint64_t p) const {
    if (!d_->local) throw Error(ErrorKind::NotSupported, "no local function for " + name());
    return d_->local(p);
  }

 private:
  struct Data {
    std::string name;
    Predicate member;
    FormationFlags flags;
    ResidualFn hint;
    LocalFn local;
  };
  std::shared_ptr<const Data> d_;
};

inline bool membership(const Formation& F, const GroupPtr& G) { return F.contains(G); }

namespace detail {

inline bool all_chief_factors(const GroupPtr& G, const std::function<bool(const ChiefFactor&)>& pred) {
  if (G->is_trivial()) return true;
  const auto s = chief_series(G);
  return std::all_of(s.factors.begin(), s.factors.end(), pred);
}

inline bool divides_some(std::uint64_t x, const std::vector<std::uint64_t>& candidates) {
  return std::any_of(candidates.begin(), candidates.end(), [x](std::uint64_t e) { return e % x == 0; });
}

/// True when M/R is abelian.
inline bool abelian_over(const Subgroup& m, const Subgroup& r) {
  const FiniteGroup& G = *m.parent();
  for (Elem a : m.generators()) {
    for (Elem b : m.generators()) {
      if (!r.contains(G.comm(a, b))) return false;
    }
  }
  return true;
}

inline std::string join_numbers(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

}  // namespace detail

namespace formations {

/// 𝔄: abelian groups.
inline Formation abelian() {
  return Formation(
      "A", [](const GroupPtr& G) { return G->is_abelian(); }, {false, true, false},
      [](const GroupPtr& G) { return derived_subgroup(G); });
}

/// 𝔄(n): abelian groups of exponent dividing n.
inline Formation abelian_exponent(std::uint64_t n) {
  return Formation(
      "A(" + std::to_string(n) + ")", [n](const GroupPtr& G) { return G->is_abelian() && n % G->exponent() == 0; },
      {false, true, false},
      [n](const GroupPtr& G) {
        // G'G^n
        Subgroup d = derived_subgroup(G);
        std::vector<Elem> powers;
        for (Elem x = 0; x < G->order(); ++x) powers.push_back(G->power(x, n));
        return normal_closure_over(d, powers);
      });
}

/// 𝔑_p: p-groups.
inline Formation p_groups(std::uint64_t p) {
  return Formation(
      "N_" + std::to_string(p),
      [p](const GroupPtr& G) { return G->is_trivial() || prime_divisors(G->order()) == std::vector<std::uint64_t>{p}; },
      {true, true, false}, [p](const GroupPtr& G) { return pi_prime_generated(G, {p}); });
}

/// 𝔑: nilpotent groups; f(p) = 𝔑_p.
inline Formation nilpotent() {
  return Formation(
      "N", [](const GroupPtr& G) { return is_nilpotent(G); }, {true, true, false},
      [](const GroupPtr& G) { return nilpotent_residual(whole_group(G)); }, [](std::uint64_t p) { return p_groups(p); });
}

/// 𝔊: all groups; f(p) = 𝔊.
inline Formation all_groups() {
  return Formation(
      "G", [](const GroupPtr&) { return true; }, {true, false, true},
      [](const GroupPtr& G) { return trivial_subgroup(G); }, [](std::uint64_t) { return all_groups(); });
}

/// 𝔖: soluble groups; f(p) = 𝔖.
inline Formation soluble() {
  return Formation(
      "S", [](const GroupPtr& G) { return is_soluble(G); }, {true, true, true},
      [](const GroupPtr& G) { return soluble_residual(G); }, [](std::uint64_t) { return soluble(); });
}

/// 𝔖_π: soluble π-groups.
inline Formation soluble_pi(std::vector<std::uint64_t> pi) {
  std::sort(pi.begin(), pi.end());
  pi.erase(std::unique(pi.begin(), pi.end()), pi.end());
  return Formation(
      "S_{" + detail::join_numbers(pi) + "}",
      [pi](const GroupPtr& G) {
        for (std::uint64_t q : prime_divisors(G->order())) {
          if (!std::binary_search(pi.begin(), pi.end(), q)) return false;
        }
        return is_soluble(G);
      },
      {true, true, false},
      [pi](const GroupPtr& G) { return join(soluble_residual(G), pi_prime_generated(G, pi)); });
}

/// 𝔑_p𝔄(p-1): groups G for which <G', x^(p-1)> is a p-group. This is the
/// local value of 𝔘 at p.
inline Formation local_value_u(std::uint64_t p) {
  return Formation(
      "N_" + std::to_string(p) + "A(" + std::to_string(p - 1) + ")",
      [p](const GroupPtr& G) {
        Subgroup d = derived_subgroup(G);
        std::vector<Elem> powers;
        for (Elem x = 0; x < G->order(); ++x) powers.push_back(G->power(x, p - 1));
        const Subgroup n = normal_closure_over(d, powers);
        return n.is_trivial() || prime_divisors(n.size()) == std::vector<std::uint64_t>{p};
      },
      {true, true, false});
}

/// 𝔘: supersoluble groups (every chief factor of prime order).
inline Formation supersoluble() {
  return Formation(
      "U",
      [](const GroupPtr& G) {
        if (!is_soluble(G)) return false;
        return detail::all_chief_factors(G, [](const ChiefFactor& f) { return is_prime(f.order); });
      },
      {true, true, true}, {}, [](std::uint64_t p) { return local_value_u(p); });
}

/// 𝔑_p𝔄: groups whose derived subgroup is a p-group.
inline Formation p_by_abelian(std::uint64_t p) {
  return Formation(
      "N_" + std::to_string(p) + "A",
      [p](const GroupPtr& G) {
        const Subgroup d = derived_subgroup(G);
        return d.is_trivial() || prime_divisors(d.size()) == std::vector<std::uint64_t>{p};
      },
      {true, true, false});
}

/// 𝔑𝔄: groups with nilpotent derived subgroup; f(p) = 𝔑_p𝔄.
inline Formation metanilpotent() {
  return Formation(
      "NA", [](const GroupPtr& G) { return is_nilpotent(derived_subgroup(G)); }, {true, true, true},
      [](const GroupPtr& G) { return nilpotent_residual(derived_subgroup(G)); },
      [](std::uint64_t p) { return p_by_abelian(p); });
}

/// 𝔑*: quasinilpotent groups, by the chief factor criterion: abelian chief
/// factors are central and G = H C_G(H/K) for every chief factor H/K.
inline Formation quasinilpotent() {
  return Formation(
      "N*",
      [](const GroupPtr& G) {
        return detail::all_chief_factors(G, [](const ChiefFactor& f) {
          if (f.is_abelian && !f.centralizer.is_whole()) return false;
          return join(f.top(), f.centralizer).is_whole();
        });
      },
      {false, false, false});
}

/// 𝔄_{π'}(e): abelian π'-groups whose exponent divides some member of `exponents`.
inline Formation abelian_pi_prime_exponent(std::vector<std::uint64_t> pi, std::vector<std::uint64_t> exponents) {
  std::sort(pi.begin(), pi.end());
  const std::string name = "A_{" + detail::join_numbers(pi) + "}'(" + detail::join_numbers(exponents) + ")";
  return Formation(
      name,
      [pi, exponents](const GroupPtr& G) {
        if (!G->is_abelian()) return false;
        for (std::uint64_t q : prime_divisors(G->order())) {
          if (std::binary_search(pi.begin(), pi.end(), q)) return false;
        }
        return detail::divides_some(G->exponent(), exponents);
      },
      {false, true, false});
}

}  // namespace formations

namespace detail {

/// Intersection of all normal N with G/N in F, verified to lie in F.
inline Subgroup residual_by_enumeration(const Formation& F, const GroupPtr& G) {
  Subgroup r = whole_group(G);
  for (const auto& n : normal_subgroups(G)) {
    if (!r.subset_of(n) && F.contains(quotient_group(n).group)) r = intersection(r, n);
  }
  if (!F.contains(quotient_group(r).group)) {
    throw Error(ErrorKind::ResidualVerificationFailed,
                F.name() + ": intersection of residual candidates has quotient outside the class");
  }
  return r;
}

}  // namespace detail

/// G^F: the smallest normal subgroup with quotient in F.
inline Subgroup residual(const Formation& F, const GroupPtr& G) {
  if (F.contains(G)) return trivial_subgroup(G);
  if (F.has_residual_hint()) return F.residual_hint(G);
  if (F.flags().soluble) {
    // every quotient in F is soluble, so the residual contains G^S
    const Subgroup d = soluble_residual(G);
    if (!d.is_trivial()) {
      const Quotient q = quotient_group(d);
      return q.preimage(detail::residual_by_enumeration(F, q.group));
    }
  }
  return detail::residual_by_enumeration(F, G);
}

/// Largest soluble normal subgroup, grown through abelian minimal normal
/// subgroups of successive quotients.
inline Subgroup soluble_radical(const GroupPtr& G) {
  Subgroup r = trivial_subgroup(G);
  const Subgroup all = whole_group(G);
  while (!r.is_whole()) {
    bool grew = false;
    for (const auto& m : detail::minimal_normal_between(r, all)) {
      if (detail::abelian_over(m, r)) {
        r = m;
        grew = true;
        break;
      }
    }
    if (!grew) break;
  }
  if (!is_soluble(r)) throw Error(ErrorKind::ResidualVerificationFailed, "soluble radical is not soluble");
  return r;
}

/// True when H/K of the chief factor satisfies (H/K) x| G/C_G(H/K) in F.
inline bool is_f_central(const ChiefFactor& cf, const Formation& F) {
  // the product contains H/K as a normal subgroup, so it is insoluble
  if (!cf.is_abelian && F.flags().soluble) return false;
  return F.contains(section_semidirect(cf.section, cf.centralizer));
}

/// The classical test for 𝔘-centrality of an abelian chief factor: prime
/// order p and G/C_G(H/K) cyclic of order dividing p - 1.
inline bool u_central_by_action(const ChiefFactor& cf) {
  if (!cf.is_abelian || !is_prime(cf.order)) return false;
  const GroupPtr& G = cf.top().parent();
  const std::size_t q = G->order() / cf.centralizer.size();
  if ((cf.order - 1) % q != 0) return false;
  const Quotient a = quotient_group(cf.centralizer);
  const auto& ords = a.group->element_orders();
  return std::find(ords.begin(), ords.end(), static_cast<std::uint32_t>(q)) != ords.end();
}

namespace detail {

/// Product of all normal subgroups whose chief factors (in one chief series
/// through them) are all F-central.
inline Subgroup hypercenter_by_definition(const Formation& F, const GroupPtr& G) {
  Subgroup z = trivial_subgroup(G);
  for (const auto& n : normal_subgroups(G)) {
    if (n.is_trivial() || n.subset_of(z)) continue;
    const auto s = chief_series(G, {n});
    bool central = true;
    for (const auto& f : s.factors) {
      if (f.top().subset_of(n) && !is_f_central(f, F)) {
        central = false;
        break;
      }
    }
    if (central) z = join(z, n);
  }
  return z;
}

}  // namespace detail

/// Z^F_inf(G), built upwards one F-central minimal normal subgroup of G/Z at
/// a time. When `cross_check` is set and the normal subgroup lattice is
/// affordable, the result is compared against the literal definition.
inline Subgroup f_hypercenter(const GroupPtr& G, const Formation& F, bool cross_check = true) {
  Subgroup z = trivial_subgroup(G);
  const Subgroup all = whole_group(G);
  while (!z.is_whole()) {
    bool grew = false;
    for (const auto& m : detail::minimal_normal_between(z, all)) {
      if (is_f_central(detail::annotate_factor(m, z), F)) {
        z = m;
        grew = true;
        break;
      }
    }
    if (!grew) break;
  }
  if (cross_check && G->order() <= limits().normal_enumeration) {
    if (!(detail::hypercenter_by_definition(F, G) == z)) {
      throw Error(ErrorKind::HypercenterMismatch, F.name() + "-hypercenter of " + G->name());
    }
  }
  return z;
}

}  // namespace formation_lab
