#pragma once

#include <atomic>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "formation_lab/classifier.hpp"
#include "formation_lab/io.hpp"
#include "formation_lab/products.hpp"
#include "formation_lab/rank.hpp"

namespace formation_lab {

/// "u", "na", "g" or "rank:<file>".
inline Formation formation_from_arg(const std::string& arg) {
  if (arg == "u") return formations::supersoluble();
  if (arg == "na") return formations::metanilpotent();
  if (arg == "g") return formations::all_groups();
  if (arg.rfind("rank:", 0) == 0) {
    const std::string path = arg.substr(5);
    return formations::rank_formation(parse_rank_file(path), 50, "F(" + path + ")");
  }
  throw Error(ErrorKind::ParseError, "unknown formation '" + arg + "' (expected u, na, g or rank:<file>)");
}

namespace detail {

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline VerdictRecord fact_record(const GroupPtr& G, std::string check, bool value) {
  VerdictRecord r = make_record(G->name(), G->order(), std::move(check), true);
  r.verdict = yes_no(value);
  return r;
}

/// One pass/fail record summarising a list of instance verdicts.
inline VerdictRecord summarize(const GroupPtr& G, const std::string& check, const std::vector<LemmaVerdict>& vs) {
  for (const auto& v : vs) {
    if (v.applicable && !v.holds) return make_record(G->name(), G->order(), check, false, v.witness);
  }
  return make_record(G->name(), G->order(), check, true);
}

}  // namespace detail

/// Membership facts (yes/no) and cross-checks (pass/fail) for one group.
/// The cross-checks compare the definition with the structural report,
/// the satellite test, the textual SNAC / c-supersoluble tests and one
/// chief series drawn from `seed`.
inline std::vector<VerdictRecord> classify_records(const GroupPtr& G, const std::vector<Formation>& Fs,
                                                   std::uint64_t seed) {
  std::vector<VerdictRecord> out;
  const ChiefSeries base = G->is_trivial() ? ChiefSeries{G, {}, {}} : chief_series(G);
  std::mt19937_64 rng(seed);
  const ChiefSeries other = G->is_trivial() ? base : random_chief_series(G, rng);
  const bool same_factors = factor_invariants(base) == factor_invariants(other);
  for (const auto& F : Fs) {
    const std::string id = "ca:" + F.name();
    const CaVerdict def = is_ca_f(base, F);
    out.push_back(detail::fact_record(G, id, def.holds));
    const CaVerdict again = is_ca_f(other, F);
    out.push_back(make_record(G->name(), G->order(), id + ":series-recheck", same_factors && again.holds == def.holds,
                              "chief series from seed " + std::to_string(seed) + " disagrees"));
    if (F.flags().soluble && F.flags().saturated) {
      const TheoremAReport a = theorem_a_report(G, F);
      out.push_back(make_record(G->name(), G->order(), id + ":theorem-a", a.overall == def.holds,
                                "definition " + detail::yes_no(def.holds) + ", structural report " +
                                    detail::yes_no(a.overall)));
    }
    if (F.name() == "U") {
      const bool sat = satellite_membership(G, F);
      out.push_back(make_record(G->name(), G->order(), id + ":satellite", sat == def.holds,
                                "definition " + detail::yes_no(def.holds) + ", satellite " + detail::yes_no(sat)));
      const bool text = is_c_supersoluble(G);
      out.push_back(make_record(G->name(), G->order(), id + ":chief-factors-simple", text == def.holds,
                                "definition " + detail::yes_no(def.holds) + ", textual test " + detail::yes_no(text)));
    }
    if (F.name() == "G") {
      const bool text = is_snac(G);
      out.push_back(make_record(G->name(), G->order(), id + ":nonabelian-factors-simple", text == def.holds,
                                "definition " + detail::yes_no(def.holds) + ", textual test " + detail::yes_no(text)));
    }
  }
  return out;
}

enum class TheoremKind { A, B, C, Lemmas };

inline TheoremKind theorem_from_arg(const std::string& s) {
  if (s == "a") return TheoremKind::A;
  if (s == "b") return TheoremKind::B;
  if (s == "c") return TheoremKind::C;
  if (s == "lemmas") return TheoremKind::Lemmas;
  throw Error(ErrorKind::ParseError, "unknown theorem '" + s + "' (expected a, b, c, lemmas or baer)");
}

/// Verification records for one group. Factorization-based checks are
/// emitted only for groups within the subgroup enumeration bound.
inline std::vector<VerdictRecord> verify_records(const GroupPtr& G, TheoremKind kind, const Formation& F) {
  std::vector<VerdictRecord> out;
  const bool enumerable = G->order() <= limits().subgroup_enumeration;
  switch (kind) {
    case TheoremKind::A: {
      const bool def = is_ca_f(G, F).holds;
      const TheoremAReport a = theorem_a_report(G, F);
      std::string w = "definition " + detail::yes_no(def) + ", report " + detail::yes_no(a.overall) +
                      " (residuals equal " + detail::yes_no(a.s1_residuals_equal) + ", central quotient " +
                      detail::yes_no(a.s2_central_quotient_ok) + ", center in hypercenter " +
                      detail::yes_no(a.s3_center_in_hypercenter) + ")";
      out.push_back(make_record(G->name(), G->order(), "theorem-a:" + F.name(), def == a.overall, w));
      break;
    }
    case TheoremKind::B:
      if (enumerable) out.push_back(detail::summarize(G, "theorem-b:" + F.name(), theorem_b_verify(G, F)));
      break;
    case TheoremKind::C:
      if (enumerable) out.push_back(detail::summarize(G, "theorem-c:" + F.name(), theorem_c_verify(G, F)));
      break;
    case TheoremKind::Lemmas: {
      std::map<std::string, std::vector<LemmaVerdict>> by_id;
      for (auto& v : lemma_suite(G, F)) by_id[v.id].push_back(std::move(v));
      for (const auto& [id, vs] : by_id) {
        const bool any = std::any_of(vs.begin(), vs.end(), [](const LemmaVerdict& v) { return v.applicable; });
        if (any) out.push_back(detail::summarize(G, "lemma:" + id + ":" + F.name(), vs));
      }
      break;
    }
  }
  return out;
}

/// Direction (a) failures as fail records; the smallest direction (b)
/// witness as a "yes" fact.
inline std::vector<VerdictRecord> baer_records(const std::vector<GroupPtr>& catalog) {
  std::vector<VerdictRecord> out;
  const BaerReport rep = baer_checks(catalog);
  for (const auto& c : rep.counterexamples) {
    out.push_back(make_record(c.group, c.order, "baer-nilpotent-derived", false, "H = " + c.H + ", K = " + c.K));
  }
  for (const auto& G : catalog) {
    const bool bad = std::any_of(rep.counterexamples.begin(), rep.counterexamples.end(),
                                 [&](const BaerPair& c) { return c.group == G->name(); });
    const bool skipped = std::find(rep.skipped.begin(), rep.skipped.end(), G->name()) != rep.skipped.end();
    if (!bad && !skipped) out.push_back(make_record(G->name(), G->order(), "baer-nilpotent-derived", true));
  }
  if (rep.smallest_witness) {
    const auto& w = *rep.smallest_witness;
    VerdictRecord r = make_record(w.group, w.order, "baer-non-nilpotent-witness", true);
    r.verdict = "yes";
    out.push_back(std::move(r));
  }
  return out;
}

/// Runs `work(i)` for i in [0, n) on `jobs` threads and concatenates the
/// per-index results in index order.
inline std::vector<VerdictRecord> run_parallel(std::size_t n, unsigned jobs,
                                               const std::function<std::vector<VerdictRecord>(std::size_t)>& work) {
  std::vector<std::vector<VerdictRecord>> buffers(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        buffers[i] = work(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<VerdictRecord> out;
  for (auto& b : buffers) std::move(b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool any_failure(const std::vector<VerdictRecord>& records) {
  return std::any_of(records.begin(), records.end(), [](const VerdictRecord& r) { return r.verdict == "fail"; });
}

}  // namespace formation_lab
