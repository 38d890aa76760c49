#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "formation_lab/group.hpp"

// Constructors for the standard families of small groups.

namespace formation_lab::families {

namespace detail {
inline std::vector<std::size_t> range1(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> v;
  for (std::size_t i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}
}  // namespace detail

inline GroupPtr cyclic(std::size_t n) {
  if (n == 1) return group_from_generators({Permutation::identity(1)}, "C1");
  return group_from_generators({Permutation::from_cycles(n, {detail::range1(1, n)})}, "C" + std::to_string(n));
}

/// Dihedral group of order 2n (symmetries of an n-gon).
inline GroupPtr dihedral(std::size_t n) {
  const std::string name = "D" + std::to_string(2 * n);
  if (n == 1) return group_from_generators({Permutation::from_cycles(2, {{1, 2}})}, name);
  if (n == 2) {
    return group_from_generators({Permutation::from_cycles(4, {{1, 2}, {3, 4}}), Permutation::from_cycles(4, {{1, 3}, {2, 4}})},
                                 name);
  }
  std::vector<std::vector<std::size_t>> refl;
  for (std::size_t i = 1; i < n + 1 - i; ++i) refl.push_back({i, n + 1 - i});
  return group_from_generators({Permutation::from_cycles(n, {detail::range1(1, n)}), Permutation::from_cycles(n, refl)},
                               name);
}

/// Dicyclic group of order 4n: <a, x | a^2n = 1, x^2 = a^n, x^-1 a x = a^-1>.
inline GroupPtr dicyclic(std::size_t n) {
  const std::uint64_t m = 2 * n;
  // element a^i x^j encoded as i + m*j
  auto mul = [m, n](std::uint64_t u, std::uint64_t v) -> std::uint64_t {
    const std::uint64_t i = u % m, j = u / m, k = v % m, l = v / m;
    if (j == 0) return (i + k) % m + m * l;
    // x a^k = a^-k x
    const std::uint64_t e = (i + m - k) % m;
    if (l == 0) return e + m;
    return (e + n) % m;  // x^2 = a^n
  };
  return group_from_operation<std::uint64_t>(n == 2 ? "Q8" : "Dic" + std::to_string(n), 0, {1, m}, mul);
}

/// Abelian group C_{d1} x ... x C_{dk}.
inline GroupPtr abelian(const std::vector<std::size_t>& invariants) {
  std::string name;
  for (std::size_t d : invariants) name += (name.empty() ? "C" : "xC") + std::to_string(d);
  std::vector<std::uint64_t> gens;
  std::uint64_t radix = 1;
  for (std::size_t d : invariants) {
    gens.push_back(radix);
    radix *= d;
  }
  auto mul = [&invariants](std::uint64_t u, std::uint64_t v) {
    std::uint64_t r = 0, radix = 1;
    for (std::size_t d : invariants) {
      r += ((u % d + v % d) % d) * radix;
      u /= d;
      v /= d;
      radix *= d;
    }
    return r;
  };
  return group_from_operation<std::uint64_t>(name, 0, gens, mul);
}

inline GroupPtr symmetric(std::size_t n) {
  const std::string name = "S" + std::to_string(n);
  if (n <= 1) return group_from_generators({Permutation::identity(1)}, name);
  if (n == 2) return group_from_generators({Permutation::from_cycles(2, {{1, 2}})}, name);
  return group_from_generators({Permutation::from_cycles(n, {{1, 2}}), Permutation::from_cycles(n, {detail::range1(1, n)})},
                               name);
}

inline GroupPtr alternating(std::size_t n) {
  const std::string name = "A" + std::to_string(n);
  if (n <= 2) return group_from_generators({Permutation::identity(std::max<std::size_t>(n, 1))}, name);
  std::vector<Permutation> gens;
  for (std::size_t i = 3; i <= n; ++i) gens.push_back(Permutation::from_cycles(n, {{1, 2, i}}));
  return group_from_generators(gens, name);
}

namespace detail {

using Matrix2 = std::array<std::int64_t, 4>;  // row-major [[a b][c d]]

inline std::int64_t mod(std::int64_t x, std::int64_t q) { return ((x % q) + q) % q; }

/// Permutation induced by a 2x2 matrix acting on the non-zero column
/// vectors of F_q^2 (q prime); vectors are numbered x + q*y - 1.
inline Permutation linear_action(const Matrix2& m, std::int64_t q) {
  const std::size_t pts = static_cast<std::size_t>(q * q - 1);
  std::vector<Permutation::Point> img(pts);
  for (std::int64_t v = 1; v < q * q; ++v) {
    const std::int64_t x = v % q, y = v / q;
    const std::int64_t nx = mod(m[0] * x + m[1] * y, q), ny = mod(m[2] * x + m[3] * y, q);
    img[static_cast<std::size_t>(v - 1)] = static_cast<Permutation::Point>(nx + q * ny - 1);
  }
  return Permutation(img);
}

}  // namespace detail

/// SL(2, q) for prime q, acting on non-zero vectors of F_q^2.
inline GroupPtr special_linear_2(std::int64_t q) {
  return group_from_generators({detail::linear_action({1, 1, 0, 1}, q), detail::linear_action({0, q - 1, 1, 0}, q)},
                               "SL(2," + std::to_string(q) + ")");
}

/// GL(2, q) for prime q.
inline GroupPtr general_linear_2(std::int64_t q) {
  std::int64_t g = 2;
  // a generator of F_q^* (q small)
  for (; g < q; ++g) {
    std::int64_t x = g, k = 1;
    while (x != 1) {
      x = x * g % q;
      ++k;
    }
    if (k == q - 1) break;
  }
  if (q == 2) g = 1;
  return group_from_generators({detail::linear_action({1, 1, 0, 1}, q), detail::linear_action({0, q - 1, 1, 0}, q),
                                detail::linear_action({g, 0, 0, 1}, q)},
                               "GL(2," + std::to_string(q) + ")");
}

/// Affine group V x| L on V = F_p^d (p prime) with L generated by the given
/// d x d matrices (row-major); points are the p^d vectors.
inline GroupPtr affine(std::int64_t p, std::size_t d, const std::vector<std::vector<std::int64_t>>& linear,
                       std::string name) {
  std::size_t npts = 1;
  for (std::size_t i = 0; i < d; ++i) npts *= static_cast<std::size_t>(p);
  auto decode = [&](std::size_t v) {
    std::vector<std::int64_t> c(d);
    for (std::size_t i = 0; i < d; ++i) {
      c[i] = static_cast<std::int64_t>(v % static_cast<std::size_t>(p));
      v /= static_cast<std::size_t>(p);
    }
    return c;
  };
  auto encode = [&](const std::vector<std::int64_t>& c) {
    std::size_t v = 0;
    for (std::size_t i = d; i-- > 0;) v = v * static_cast<std::size_t>(p) + static_cast<std::size_t>(detail::mod(c[i], p));
    return v;
  };
  std::vector<Permutation> gens;
  {
    std::vector<Permutation::Point> img(npts);
    for (std::size_t v = 0; v < npts; ++v) {
      auto c = decode(v);
      c[0] += 1;
      img[v] = static_cast<Permutation::Point>(encode(c));
    }
    gens.emplace_back(img);
  }
  for (const auto& m : linear) {
    std::vector<Permutation::Point> img(npts);
    for (std::size_t v = 0; v < npts; ++v) {
      const auto c = decode(v);
      std::vector<std::int64_t> r(d, 0);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) r[i] += m[i * d + j] * c[j];
      img[v] = static_cast<Permutation::Point>(encode(r));
    }
    gens.emplace_back(img);
  }
  return group_from_generators(gens, std::move(name));
}

/// H wr C2 for a permutation group H of degree n, acting on 2n points.
inline GroupPtr wreath_with_c2(const GroupPtr& h, std::string name) {
  const std::size_t n = h->degree();
  std::vector<Permutation> gens;
  for (Elem g : h->generators()) {
    std::vector<Permutation::Point> img(2 * n);
    const auto& p = h->permutation(g);
    for (std::size_t i = 0; i < n; ++i) {
      img[i] = p[i];
      img[n + i] = static_cast<Permutation::Point>(n + i);
    }
    gens.emplace_back(img);
  }
  std::vector<Permutation::Point> swap(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    swap[i] = static_cast<Permutation::Point>(n + i);
    swap[n + i] = static_cast<Permutation::Point>(i);
  }
  gens.emplace_back(swap);
  return group_from_generators(gens, std::move(name));
}

}  // namespace formation_lab::families
