#include <catch_amalgamated.hpp>

#include <random>

#include "formation_lab/families.hpp"
#include "formation_lab/series.hpp"
#include "oracle/brute_force.hpp"
#include "support.hpp"

using namespace formation_lab;
using test_support::cyc;
using test_support::elem_of;

namespace {

std::vector<std::size_t> orders(const std::vector<Subgroup>& v) {
  std::vector<std::size_t> out;
  for (const auto& s : v) out.push_back(s.size());
  return out;
}

GroupPtr s3xs3() { return direct_product(families::symmetric(3), families::symmetric(3)); }

}  // namespace

TEST_CASE("normal subgroup lattices", "[series]") {
  CHECK(orders(normal_subgroups(families::cyclic(7))) == std::vector<std::size_t>{1, 7});
  CHECK(orders(normal_subgroups(families::symmetric(4))) == std::vector<std::size_t>{1, 4, 12, 24});
  const auto a5 = families::alternating(5);
  const auto g = direct_product(a5, a5);
  Limits wide = limits();
  wide.normal_enumeration = 4000;
  const auto ns = [&] {
    ScopedLimits guard(wide);
    return normal_subgroups(g);
  }();
  CHECK(orders(ns) == std::vector<std::size_t>{1, 60, 60, 3600});
  CHECK(intersection(ns[1], ns[2]).is_trivial());

  Limits small = limits();
  small.normal_enumeration = 100;
  ScopedLimits guard(small);
  try {
    normal_subgroups(families::symmetric(5));
    FAIL("expected BoundExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BoundExceeded);
  }
}

TEST_CASE("normal subgroup counts match the oracle", "[series][oracle]") {
  const auto o = oracle::closure({oracle::from_cycles(4, {{1, 2}}), oracle::from_cycles(4, {{1, 2, 3, 4}})});
  CHECK(oracle::normal_subgroups(o).size() == 4);
  const auto d = oracle::closure({oracle::from_cycles(6, {{1, 2, 3, 4, 5, 6}}), oracle::from_cycles(6, {{2, 6}, {3, 5}})});
  CHECK(normal_subgroups(families::dihedral(6)).size() == oracle::normal_subgroups(d).size());
}

TEST_CASE("minimal normal subgroups", "[series]") {
  const auto a5 = families::alternating(5);
  const auto m = minimal_normal_subgroups(a5);
  REQUIRE(m.size() == 1);
  CHECK(m.front().is_whole());
  CHECK(orders(minimal_normal_subgroups(families::symmetric(4))) == std::vector<std::size_t>{4});
  const auto mm = minimal_normal_subgroups(s3xs3());
  CHECK(orders(mm) == std::vector<std::size_t>{3, 3});
  CHECK_THROWS_AS(minimal_normal_subgroups(families::cyclic(1)), Error);
}

TEST_CASE("chief series", "[series]") {
  const auto c5 = chief_series(families::cyclic(5));
  CHECK(c5.factor_orders() == std::vector<std::size_t>{5});

  const auto sl = chief_series(families::special_linear_2(5));
  CHECK(sl.factor_orders() == std::vector<std::size_t>{2, 60});
  CHECK(sl.factors[0].is_abelian);
  CHECK_FALSE(sl.factors[1].is_abelian);
  CHECK(sl.factors[1].factor_simple);
  CHECK(sl.factors[0].prime == 2u);
  CHECK_FALSE(sl.factors[1].prime.has_value());

  const auto s4 = chief_series(families::symmetric(4));
  CHECK(s4.factor_orders() == std::vector<std::size_t>{4, 3, 2});
  CHECK(s4.factors[0].rank == 2);

  const auto a5 = families::alternating(5);
  const auto ch = chief_series(direct_product(a5, a5));
  CHECK(ch.factor_orders() == std::vector<std::size_t>{60, 60});
}

TEST_CASE("chief series through a seed", "[series]") {
  const auto g = s3xs3();
  const auto mins = minimal_normal_subgroups(g);
  const Subgroup a3a3 = join(mins[0], mins[1]);
  const auto s = chief_series(g, {a3a3});
  CHECK(std::find(s.chain.begin(), s.chain.end(), a3a3) != s.chain.end());
  CHECK(s.factor_orders() == std::vector<std::size_t>{3, 3, 2, 2});

  const auto s4 = families::symmetric(4);
  const Subgroup point = subgroup_generated(s4, {elem_of(s4, cyc(4, {{1, 2}})), elem_of(s4, cyc(4, {{1, 2, 3}}))});
  try {
    chief_series(s4, {point});
    FAIL("expected SeedNotNormal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SeedNotNormal);
  }
  try {
    chief_series(g, {mins[0], mins[1]});
    FAIL("expected SeedNotChain");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SeedNotChain);
  }
}

TEST_CASE("classical series", "[series]") {
  const auto ab = classical_series(families::abelian({2, 4}));
  CHECK(orders(ab.derived) == std::vector<std::size_t>{8, 1});
  CHECK(orders(classical_series(families::symmetric(4)).derived) == std::vector<std::size_t>{24, 12, 4, 1});
  const auto a5 = classical_series(families::alternating(5));
  CHECK(orders(a5.derived) == std::vector<std::size_t>{60});
  CHECK(orders(classical_series(families::dihedral(4)).lower_central) == std::vector<std::size_t>{8, 2, 1});
}

TEST_CASE("soluble residual, simplicity and socle", "[series]") {
  CHECK(soluble_residual(families::symmetric(4)).is_trivial());
  CHECK(soluble_residual(families::special_linear_2(5)).is_whole());
  const auto sl = families::special_linear_2(5);
  const auto g = direct_product(sl, families::symmetric(3));
  const Subgroup r = soluble_residual(g);
  CHECK(r.size() == 120);
  // the residual is the first factor: it contains (x, 1) for the generators x of SL(2,5)
  for (std::size_t i = 0; i < sl->generators().size(); ++i) CHECK(r.contains(g->generators()[i]));

  CHECK(is_simple(families::cyclic(7)));
  CHECK(is_simple(families::alternating(5)));
  CHECK_FALSE(is_simple(families::symmetric(4)));
  CHECK_THROWS_AS(is_simple(families::cyclic(1)), Error);
  CHECK(socle(families::alternating(5)).is_whole());
  CHECK(socle(families::symmetric(4)).size() == 4);
}

namespace {

std::vector<GroupPtr> series_groups() {
  const auto a5 = families::alternating(5);
  return {families::symmetric(4),
          s3xs3(),
          families::abelian({2, 2, 2}),
          families::abelian({3, 3}),
          families::dihedral(12),
          families::special_linear_2(3),
          families::special_linear_2(5),
          families::general_linear_2(3),
          direct_product(families::alternating(4), families::cyclic(2)),
          direct_product(a5, families::cyclic(2)),
          families::wreath_with_c2(families::symmetric(3), "S3wrC2")};
}

}  // namespace

TEST_CASE("chief factor invariants do not depend on the series", "[series][property]") {
  std::mt19937_64 rng(11);
  for (const auto& g : series_groups()) {
    INFO(g->name());
    const auto base = factor_invariants(chief_series(g));
    for (int i = 0; i < 5; ++i) CHECK(factor_invariants(random_chief_series(g, rng)) == base);
  }
}

TEST_CASE("chief factors are chief factors", "[series][property]") {
  for (const auto& g : series_groups()) {
    INFO(g->name());
    const auto s = chief_series(g);
    const auto ns = normal_subgroups(g);
    for (const auto& f : s.factors) {
      CHECK(is_normal(f.top()));
      for (const auto& n : ns) {
        const bool strictly_between = f.bottom().subset_of(n) && n.subset_of(f.top()) && !(n == f.bottom()) &&
                                      !(n == f.top());
        CHECK_FALSE(strictly_between);
      }
      CHECK(f.is_abelian == f.prime.has_value());
      if (f.is_abelian) {
        // elementary abelian: x^p lies in the bottom
        for (Elem x : f.top().members()) CHECK(f.bottom().contains(g->power(x, *f.prime)));
      }
      CHECK(f.bottom().subset_of(f.centralizer));
    }
  }
}

TEST_CASE("soluble residual is perfect with soluble quotient", "[series][property]") {
  for (const auto& g : series_groups()) {
    const Subgroup d = soluble_residual(g);
    CHECK(derived_subgroup(d) == d);
    CHECK(is_soluble(quotient_group(d).group));
  }
}

TEST_CASE("chief orders match the oracle", "[series][oracle]") {
  const auto o = oracle::closure({oracle::from_cycles(6, {{1, 2}}), oracle::from_cycles(6, {{1, 2, 3}}),
                                  oracle::from_cycles(6, {{4, 5}}), oracle::from_cycles(6, {{4, 5, 6}})});
  auto ref = oracle::chief_orders(o);
  auto lib = chief_series(s3xs3()).factor_orders();
  std::sort(ref.begin(), ref.end());
  std::sort(lib.begin(), lib.end());
  CHECK(std::vector<std::size_t>(ref.begin(), ref.end()) == lib);
}
