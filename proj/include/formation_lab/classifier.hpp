#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "formation_lab/formations.hpp"
#include "formation_lab/series.hpp"

namespace formation_lab {

struct CaVerdict {
  bool holds = true;
  std::optional<ChiefFactor> witness;  // first offending chief factor
  std::string reason;

  explicit operator bool() const { return holds; }
};

/// ca-F on a given chief series: every non-abelian factor simple, every
/// abelian factor F-central.
inline CaVerdict is_ca_f(const ChiefSeries& s, const Formation& F) {
  for (const auto& f : s.factors) {
    if (!f.is_abelian && !f.factor_simple) return {false, f, "non-abelian chief factor " + f.describe() + " is not simple"};
    if (f.is_abelian && !is_f_central(f, F)) {
      return {false, f, "abelian chief factor " + f.describe() + " is not " + F.name() + "-central"};
    }
  }
  return {};
}

inline CaVerdict is_ca_f(const GroupPtr& G, const Formation& F) {
  if (G->is_trivial()) return {};
  return is_ca_f(chief_series(G), F);
}

namespace detail {

/// Simplicity of H/K tested on the standalone factor group.
inline bool section_simple(const ChiefFactor& f) {
  if (f.is_abelian) return is_prime(f.order);
  const Embedding e = as_group(f.top());
  return is_simple(quotient_group(e.to_local(f.bottom())).group);
}

}  // namespace detail

/// "Every chief factor of G is simple", evaluated directly.
inline bool every_chief_factor_simple(const GroupPtr& G) {
  if (G->is_trivial()) return true;
  for (const auto& f : chief_series(G).factors) {
    if (!detail::section_simple(f)) return false;
  }
  return true;
}

/// "Every non-abelian chief factor of G is simple", evaluated directly.
inline bool every_nonabelian_chief_factor_simple(const GroupPtr& G) {
  if (G->is_trivial()) return true;
  for (const auto& f : chief_series(G).factors) {
    if (!f.is_abelian && !detail::section_simple(f)) return false;
  }
  return true;
}

/// SNAC and c-supersolubility by their textual definitions; they coincide
/// with ca-𝔊 and ca-𝔘.
inline bool is_snac(const GroupPtr& G) { return every_nonabelian_chief_factor_simple(G); }
inline bool is_c_supersoluble(const GroupPtr& G) { return every_chief_factor_simple(G); }

struct TheoremAReport {
  Subgroup soluble_residual;  // D = G^S
  Subgroup f_residual;        // G^F
  Subgroup center;            // Z(D)
  Subgroup hypercenter;       // Z^F_inf(G)
  bool s1_residuals_equal = false;
  bool s2_central_quotient_ok = false;
  std::vector<Fingerprint> s2_factors;
  bool s3_center_in_hypercenter = false;
  bool overall = false;
};

/// The three structural statements for a soluble saturated F: G^S = G^F;
/// D/Z(D) is the direct product of G-invariant non-abelian simple groups;
/// Z(D) lies in the F-hypercenter.
inline TheoremAReport theorem_a_report(const GroupPtr& G, const Formation& F) {
  if (!F.flags().soluble || !F.flags().saturated) {
    throw Error(ErrorKind::FormationNotEligible, F.name() + " is not declared soluble and saturated");
  }
  TheoremAReport r;
  r.soluble_residual = soluble_residual(G);
  r.f_residual = residual(F, G);
  r.center = center_of(r.soluble_residual);
  r.hypercenter = f_hypercenter(G, F);
  r.s1_residuals_equal = r.soluble_residual == r.f_residual;
  r.s3_center_in_hypercenter = r.center.subset_of(r.hypercenter);

  const Quotient q = quotient_group(r.center);
  const Subgroup dbar = q.image(r.soluble_residual);
  const auto mins = detail::minimal_normal_between(trivial_subgroup(q.group), dbar);
  bool ok = !mins.empty() || dbar.is_trivial();
  Subgroup all = trivial_subgroup(q.group);
  for (std::size_t i = 0; i < mins.size(); ++i) {
    const Embedding e = as_group(mins[i]);
    const bool simple_nonabelian = !e.group->is_abelian() && is_simple(e.group);
    ok = ok && simple_nonabelian;
    r.s2_factors.push_back(fingerprint(e.group));
    Subgroup others = trivial_subgroup(q.group);
    for (std::size_t j = 0; j < mins.size(); ++j) {
      if (j != i) others = join(others, mins[j]);
    }
    ok = ok && intersection(mins[i], others).is_trivial();
    all = join(all, mins[i]);
  }
  r.s2_central_quotient_ok = ok && all == dbar;
  r.overall = r.s1_residuals_equal && (r.soluble_residual.is_trivial() || (r.s2_central_quotient_ok && r.s3_center_in_hypercenter));
  return r;
}

/// Membership through the composition satellite of 𝔘: for every chief factor
/// H/K, G/C_G(H/K) lies in N_pA(p-1) when H/K is a p-group and is itself a
/// ca-𝔘-group when H/K is non-abelian.
inline bool satellite_membership(const GroupPtr& G, const Formation& F) {
  if (F.name() != "U") throw Error(ErrorKind::NotSupported, "satellite membership is only defined for U");
  if (G->is_trivial()) return true;
  for (const auto& f : chief_series(G).factors) {
    const GroupPtr acting = quotient_group(f.centralizer).group;
    if (f.is_abelian) {
      if (!formations::local_value_u(*f.prime).contains(acting)) return false;
    } else if (!is_ca_f(acting, F).holds) {
      return false;
    }
  }
  return true;
}

struct FormationVerdicts {
  bool ca_def = false;
  std::optional<bool> thm_a;      // absent when F is not eligible
  std::optional<bool> satellite;  // absent when not supported
};

struct ClassificationRecord {
  std::string group;
  std::size_t order = 0;
  std::map<std::string, FormationVerdicts> verdicts;
  std::map<std::string, std::string> witness;  // per formation, set when ca_def fails
};

inline ClassificationRecord classify(const GroupPtr& G, const std::vector<Formation>& Fs) {
  ClassificationRecord rec;
  rec.group = G->name();
  rec.order = G->order();
  for (const auto& F : Fs) {
    FormationVerdicts v;
    const CaVerdict ca = is_ca_f(G, F);
    v.ca_def = ca.holds;
    if (!ca.holds) rec.witness[F.name()] = ca.reason;
    if (F.flags().soluble && F.flags().saturated) v.thm_a = theorem_a_report(G, F).overall;
    if (F.name() == "U") v.satellite = satellite_membership(G, F);
    rec.verdicts[F.name()] = v;
  }
  return rec;
}

}  // namespace formation_lab
