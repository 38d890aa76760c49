#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "formation_lab/families.hpp"
#include "formation_lab/group.hpp"

namespace formation_lab {

inline const std::vector<std::string>& catalog_family_names() {
  static const std::vector<std::string> names = {"cyclic",      "abelian",          "dihedral",
                                                 "dicyclic",    "symmetric",        "alternating",
                                                 "special_linear_2", "direct_products", "semidirect_samples"};
  return names;
}

struct CatalogSpec {
  std::vector<std::string> families = catalog_family_names();
  std::size_t max_order = 7200;
  std::vector<std::string> extra_files;
};

/// A catalog entry that has not been built yet.
struct Recipe {
  std::string name;
  std::size_t order;
  std::function<GroupPtr()> build;
  bool listed = true;  // hand-picked items warn when skipped; parametric ranges just stop
};

namespace detail {

inline GroupPtr swap_extension_a5() {
  // (A5 x A5) : C2 on 10 points, the C2 swapping the two factors
  return group_from_generators({Permutation::from_cycles(10, {{1, 2, 3, 4, 5}}), Permutation::from_cycles(10, {{3, 4, 5}}),
                                Permutation::from_cycles(10, {{1, 6}, {2, 7}, {3, 8}, {4, 9}, {5, 10}})},
                               "(A5xA5):C2");
}

inline std::vector<Recipe> family_recipes(const std::string& family) {
  namespace fam = families;
  std::vector<Recipe> r;
  if (family == "cyclic") {
    for (std::size_t n = 1; n <= 120; ++n) r.push_back({"C" + std::to_string(n), n, [n] { return fam::cyclic(n); }, false});
  } else if (family == "abelian") {
    // non-cyclic, invariant factors d1 | d2 (| d3), order at most 64
    for (std::size_t a = 2; a <= 8; ++a) {
      for (std::size_t b = a; a * b <= 64; b += a) {
        std::vector<std::size_t> inv{a, b};
        r.push_back({"C" + std::to_string(a) + "xC" + std::to_string(b), a * b, [inv] { return fam::abelian(inv); }, false});
        for (std::size_t c = b; a * b * c <= 64; c += b) {
          std::vector<std::size_t> inv3{a, b, c};
          r.push_back({"C" + std::to_string(a) + "xC" + std::to_string(b) + "xC" + std::to_string(c), a * b * c,
                       [inv3] { return fam::abelian(inv3); }, false});
        }
      }
    }
  } else if (family == "dihedral") {
    for (std::size_t n = 3; n <= 60; ++n) r.push_back({"D" + std::to_string(2 * n), 2 * n, [n] { return fam::dihedral(n); }, false});
  } else if (family == "dicyclic") {
    for (std::size_t n = 2; n <= 30; ++n) {
      r.push_back({n == 2 ? "Q8" : "Dic" + std::to_string(n), 4 * n, [n] { return fam::dicyclic(n); }, false});
    }
  } else if (family == "symmetric") {
    r.push_back({"S3", 6, [] { return fam::symmetric(3); }});
    r.push_back({"S4", 24, [] { return fam::symmetric(4); }});
    r.push_back({"S5", 120, [] { return fam::symmetric(5); }});
  } else if (family == "alternating") {
    r.push_back({"A4", 12, [] { return fam::alternating(4); }});
    r.push_back({"A5", 60, [] { return fam::alternating(5); }});
    r.push_back({"A6", 360, [] { return fam::alternating(6); }});
  } else if (family == "special_linear_2") {
    r.push_back({"SL(2,3)", 24, [] { return fam::special_linear_2(3); }});
    r.push_back({"SL(2,5)", 120, [] { return fam::special_linear_2(5); }});
    r.push_back({"SL(2,7)", 336, [] { return fam::special_linear_2(7); }});
  } else if (family == "direct_products") {
    auto dp = [&r](std::string name, std::size_t order, std::function<GroupPtr()> a, std::function<GroupPtr()> b) {
      r.push_back({name, order, [name, a, b] { return direct_product(a(), b(), name); }});
    };
    auto C = [](std::size_t n) { return [n] { return fam::cyclic(n); }; };
    auto S = [](std::size_t n) { return [n] { return fam::symmetric(n); }; };
    auto A = [](std::size_t n) { return [n] { return fam::alternating(n); }; };
    auto SL = [](std::int64_t q) { return [q] { return fam::special_linear_2(q); }; };
    auto Q8 = [] { return fam::dicyclic(2); };
    dp("C3xS3", 18, C(3), S(3));
    dp("A4xC2", 24, A(4), C(2));
    dp("Q8xC3", 24, Q8, C(3));
    dp("S3xS3", 36, S(3), S(3));
    dp("A4xC3", 36, A(4), C(3));
    dp("S4xC2", 48, S(4), C(2));
    dp("SL(2,3)xC2", 48, SL(3), C(2));
    dp("A4xS3", 72, A(4), S(3));
    dp("A5xC2", 120, A(5), C(2));
    dp("A4xA4", 144, A(4), A(4));
    dp("S4xS3", 144, S(4), S(3));
    dp("A5xC3", 180, A(5), C(3));
    dp("S5xC2", 240, S(5), C(2));
    dp("SL(2,5)xC2", 240, SL(5), C(2));
    dp("A5xS3", 360, A(5), S(3));
    dp("SL(2,5)xS3", 720, SL(5), S(3));
    dp("A5xA4", 720, A(5), A(4));
    dp("A5xA5", 3600, A(5), A(5));
  } else if (family == "semidirect_samples") {
    using M = std::vector<std::vector<std::int64_t>>;
    r.push_back({"C5:C4", 20, [] { return fam::affine(5, 1, M{{2}}, "C5:C4"); }});
    r.push_back({"C7:C3", 21, [] { return fam::affine(7, 1, M{{2}}, "C7:C3"); }});
    r.push_back({"C3^2:C4", 36, [] { return fam::affine(3, 2, M{{0, 2, 1, 0}}, "C3^2:C4"); }});
    r.push_back({"C3^2:Q8", 72, [] { return fam::affine(3, 2, M{{0, 2, 1, 0}, {1, 1, 1, 2}}, "C3^2:Q8"); }});
    r.push_back({"GL(2,3)", 48, [] { return fam::general_linear_2(3); }});
    r.push_back({"C2^3:C7", 56, [] { return fam::affine(2, 3, M{{0, 0, 1, 1, 0, 1, 0, 1, 0}}, "C2^3:C7"); }});
    r.push_back({"S3wrC2", 72, [] { return fam::wreath_with_c2(fam::symmetric(3), "S3wrC2"); }});
    r.push_back({"C2^4:C5", 80, [] { return fam::affine(2, 4, M{{0, 0, 0, 1, 1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 1, 1}}, "C2^4:C5"); }});
    r.push_back({"C5^2:Q8", 200, [] { return fam::affine(5, 2, M{{2, 0, 0, 3}, {0, 4, 1, 0}}, "C5^2:Q8"); }});
    r.push_back({"(A5xA5):C2", 7200, [] { return swap_extension_a5(); }});
  }
  return r;
}

inline GroupPtr with_name(const GroupPtr& g, const std::string& name) {
  return g->name() == name ? g : renamed(g, name);
}

}  // namespace detail

struct CatalogEntry {
  GroupPtr group;
  std::string family;
};

struct Catalog {
  std::vector<CatalogEntry> entries;
  std::vector<std::string> warnings;  // skipped items, one line each

  std::vector<GroupPtr> groups() const {
    std::vector<GroupPtr> out;
    for (const auto& e : entries) out.push_back(e.group);
    return out;
  }
};

inline GroupPtr parse_group_file(const std::string& path);  // io.hpp

/// Builds the catalog in family order. Items above `max_order` or above the
/// closure bound are skipped with a warning.
inline Catalog build_catalog(const CatalogSpec& spec) {
  if (spec.max_order < 1) throw Error(ErrorKind::OutOfRange, "max_order must be at least 1");
  if (spec.families.empty()) throw Error(ErrorKind::OutOfRange, "catalog spec names no families");
  Catalog cat;
  for (const auto& fam : spec.families) {
    const auto& known = catalog_family_names();
    if (std::find(known.begin(), known.end(), fam) == known.end()) {
      throw Error(ErrorKind::OutOfRange, "unknown catalog family '" + fam + "'");
    }
    for (const auto& rec : detail::family_recipes(fam)) {
      if (rec.order > spec.max_order) {
        if (!rec.listed) continue;
        cat.warnings.push_back("skipped " + rec.name + " (order " + std::to_string(rec.order) + " > max_order " +
                               std::to_string(spec.max_order) + ")");
        continue;
      }
      try {
        cat.entries.push_back({detail::with_name(rec.build(), rec.name), fam});
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ClosureTooLarge) throw;
        cat.warnings.push_back("skipped " + rec.name + ": " + e.what());
      }
    }
  }
  for (const auto& path : spec.extra_files) {
    try {
      GroupPtr g = parse_group_file(path);
      if (g->order() > spec.max_order) {
        cat.warnings.push_back("skipped " + g->name() + " from " + path + " (order " + std::to_string(g->order()) +
                               " > max_order " + std::to_string(spec.max_order) + ")");
        continue;
      }
      cat.entries.push_back({g, "file"});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ClosureTooLarge) throw;
      cat.warnings.push_back("skipped " + path + ": " + e.what());
    }
  }
  return cat;
}

}  // namespace formation_lab

#include "formation_lab/io.hpp"
