#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "formation_lab/formations.hpp"

namespace formation_lab {

/// p -> R(p), a set of positive integers per prime. Primes without an
/// explicit entry use `default_entry`.
struct RankFunction {
  std::map<std::uint64_t, std::set<std::uint64_t>> table;
  std::set<std::uint64_t> default_entry;

  const std::set<std::uint64_t>& at(std::uint64_t p) const {
    const auto it = table.find(p);
    return it == table.end() ? default_entry : it->second;
  }
  bool has(std::uint64_t p, std::uint64_t n) const { return at(p).count(n) != 0; }

  /// Largest prime with an explicit entry (0 when there is none).
  std::uint64_t prime_bound() const { return table.empty() ? 0 : table.rbegin()->first; }

  bool full_characteristic() const {
    if (default_entry.empty()) return false;
    for (const auto& [p, s] : table) {
      if (s.empty()) return false;
    }
    return true;
  }

  /// R(p) = {1} for every p.
  static RankFunction supersoluble() {
    RankFunction r;
    r.default_entry = {1};
    return r;
  }
};

/// π(p) = R(p) ∩ P.
inline std::vector<std::uint64_t> rank_primes(const RankFunction& R, std::uint64_t p) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n : R.at(p)) {
    if (is_prime(n)) out.push_back(n);
  }
  return out;
}

/// base^e mod m
inline std::uint64_t modpow(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  if (m == 1) return 0;
  unsigned __int128 r = 1, b = base % m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

/// x | (p^m - 1)
inline bool divides_power_minus_one(std::uint64_t x, std::uint64_t p, std::uint64_t m) {
  return modpow(p, m, x) == 1 % x;
}

/// p^m - 1 when it is at most `cap`.
inline std::optional<std::uint64_t> power_minus_one(std::uint64_t p, std::uint64_t m, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < m; ++i) {
    if (v > (cap + 1) / p) return std::nullopt;
    v *= p;
  }
  if (v - 1 > cap) return std::nullopt;
  return v - 1;
}

struct RankConditionReport {
  bool rf1 = true, rf2 = true, rf3 = true, rf4 = true;
  std::string rf1_witness, rf2_witness, rf3_witness, rf4_witness;

  bool all() const { return rf1 && rf2 && rf3 && rf4; }
};

/// Checks RF1-RF4 as stated, with every quantified prime and integer
/// running up to `bound`. Values computed from them (mn, q^m - 1) that
/// exceed the bound are not looked up.
inline RankConditionReport rank_conditions(const RankFunction& R, std::uint64_t bound) {
  RankConditionReport rep;
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p <= bound; ++p) {
    if (is_prime(p)) primes.push_back(p);
  }
  auto entries = [&](std::uint64_t p) {
    std::vector<std::uint64_t> v;
    for (std::uint64_t n : R.at(p)) {
      if (n <= bound) v.push_back(n);
    }
    return v;
  };
  for (std::uint64_t p : primes) {
    const auto rp = entries(p);
    const std::string at = "p=" + std::to_string(p);
    // RF1: n in R(p), m | n => m in R(p)
    for (std::uint64_t n : rp) {
      for (std::uint64_t m = 1; m <= n && rep.rf1; ++m) {
        if (n % m == 0 && !R.has(p, m)) {
          rep.rf1 = false;
          rep.rf1_witness = at + ", n=" + std::to_string(n) + ", m=" + std::to_string(m);
        }
      }
    }
    // RF2: m, n in R(p) => mn in R(p)
    for (std::uint64_t m : rp) {
      for (std::uint64_t n : rp) {
        if (!rep.rf2 || m * n > bound) continue;
        if (!R.has(p, m * n)) {
          rep.rf2 = false;
          rep.rf2_witness = at + ", m=" + std::to_string(m) + ", n=" + std::to_string(n);
        }
      }
    }
    // RF3: q != p prime, q in R(p), m in R(p) => q^m - 1 in R(p)
    for (std::uint64_t q : rp) {
      if (q == p || !is_prime(q)) continue;
      for (std::uint64_t m : rp) {
        const auto v = power_minus_one(q, m, bound);
        if (!rep.rf3 || !v) continue;
        if (!R.has(p, *v)) {
          rep.rf3 = false;
          rep.rf3_witness = at + ", q=" + std::to_string(q) + ", m=" + std::to_string(m);
        }
      }
    }
    // RF4: (i)-(iv) => r in R(p)
    if (!R.has(p, p)) continue;  // (iv) fails for every r
    for (std::uint64_t q : primes) {
      const bool i = std::any_of(rp.begin(), rp.end(), [&](std::uint64_t m) { return divides_power_minus_one(p, q, m); });
      const bool ii = std::any_of(rp.begin(), rp.end(), [&](std::uint64_t n) { return divides_power_minus_one(q, p, n); });
      if (!i || !ii) continue;
      for (std::uint64_t r = 1; r <= bound && rep.rf4; ++r) {
        const bool iii = std::any_of(rp.begin(), rp.end(), [&](std::uint64_t k) { return divides_power_minus_one(r, p, k); });
        const bool iv = R.has(p, r);
        if (iii && iv && !R.has(p, r)) {
          rep.rf4 = false;
          rep.rf4_witness = at + ", q=" + std::to_string(q) + ", r=" + std::to_string(r);
        }
      }
    }
  }
  return rep;
}

/// G in F(R): G soluble and every chief factor of order p^a has a in R(p).
inline bool rank_membership(const RankFunction& R, const GroupPtr& G) {
  if (!is_soluble(G)) return false;
  return detail::all_chief_factors(G, [&](const ChiefFactor& f) { return R.has(*f.prime, f.rank); });
}

/// G in f(p) = 𝔄_{π(p)'}(e(p)) 𝔖_{π(p)}, with "exponent dividing e(p)" read
/// as "exponent divides p^m - 1 for some m in R(p)".
inline bool rank_local_membership(const RankFunction& R, std::uint64_t p, const GroupPtr& G) {
  const auto pi = rank_primes(R, p);
  const Subgroup n = residual(formations::soluble_pi(pi), G);
  if (n.is_trivial()) return true;
  const Embedding e = as_group(n);
  if (!e.group->is_abelian()) return false;
  for (std::uint64_t q : prime_divisors(n.size())) {
    if (std::find(pi.begin(), pi.end(), q) != pi.end()) return false;
  }
  const std::uint64_t exp = e.group->exponent();
  for (std::uint64_t m : R.at(p)) {
    if (divides_power_minus_one(exp, p, m)) return true;
  }
  return false;
}

namespace formations {

inline Formation rank_local(const RankFunction& R, std::uint64_t p) {
  return Formation(
      "f_R(" + std::to_string(p) + ")", [R, p](const GroupPtr& G) { return rank_local_membership(R, p, G); },
      {false, true, false});
}

/// F(R). Declared saturated when R has full characteristic and passes
/// RF1-RF4 up to `check_bound`; contains 𝔘 when 1 lies in every R(p).
inline Formation rank_formation(const RankFunction& R, std::uint64_t check_bound = 50, std::string name = "F(R)") {
  bool one_everywhere = R.default_entry.count(1) != 0;
  for (const auto& [p, s] : R.table) one_everywhere = one_everywhere && s.count(1) != 0;
  const bool saturated = R.full_characteristic() && rank_conditions(R, check_bound).all();
  return Formation(
      std::move(name), [R](const GroupPtr& G) { return rank_membership(R, G); }, {saturated, true, one_everywhere}, {},
      [R](std::uint64_t p) { return rank_local(R, p); });
}

}  // namespace formations

}  // namespace formation_lab
